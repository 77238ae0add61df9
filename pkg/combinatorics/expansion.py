"""
Разложение E^Γ_γ двумя способами и перекрёстная проверка.

    - по путям: сумма весов x(α)y(α) по всем полным (Γ,γ)-путям;
    - по модулям: Σ_e μ_e X^{Ind + B e} Y^e, где μ_e - число замкнутых подмножеств
      с вектором размерности e, а Ind - степень x-веса пути без γ-ориентированных дуг.

verify_curve собирает структурированный отчёт: совпадение способов, однородность,
степень = индекс, биекция путей и подмножеств и (по желанию) сравнение с оракулом по флипам.
"""

import logging
from collections import Counter
from dataclasses import dataclass
from typing import Dict, List, Mapping, NamedTuple, Optional, Tuple

import numpy as np

from algebra.cluster import f_polynomial, g_vector
from algebra.laurent import (
    LaurentPoly,
    constant_term,
    degree_of,
    denominator_vector,
    monomial,
    render,
    specialize,
    zero,
)
from combinatorics.oracle import FlipOracle
from combinatorics.paths import alpha_zero, enumerate_paths, path_weight, phi, psi, recognize_path
from combinatorics.quiver import build_qp, signed_adjacency
from combinatorics.strings import (
    CurveCrossing,
    DimensionVector,
    closed_subsets,
    crossing_vector,
    mu_counts,
    string_of_curve,
)
from combinatorics.surface import Triangulation
from utils.errors import DomainError, ExpansionError, OracleNotFound
from utils.text_cleaner import truncate_text

logger = logging.getLogger(__name__)

PATHS = "paths"
MODULES = "modules"


@dataclass(frozen=True)
class ExpansionResult:
    polynomial: LaurentPoly
    index: Tuple[int, ...]
    path_count: int
    mu_table: Tuple[Tuple[DimensionVector, int], ...]
    method: str

    @property
    def mu(self) -> Dict[DimensionVector, int]:
        return dict(self.mu_table)


def exchange_matrix(triangulation: Triangulation) -> np.ndarray:
    return signed_adjacency(build_qp(triangulation))


def index_of_curve(triangulation: Triangulation, curve: CurveCrossing) -> Tuple[int, ...]:
    """
    Индекс кривой: степень x-веса пути α⁰ относительно B-градуировки (e_i для дуги τ_i).
    """
    n = triangulation.n
    if curve.is_arc:
        position = triangulation.index_of(curve.arc) - 1
        return tuple(1 if k == position else 0 for k in range(n))
    weight = path_weight(triangulation, curve, alpha_zero(triangulation, curve))
    degree = degree_of(weight, exchange_matrix(triangulation))
    if degree is None:
        raise ExpansionError("index", "the weight of the extremal path is not a monomial")
    return degree


def expansion_paths(triangulation: Triangulation, curve: CurveCrossing) -> ExpansionResult:
    """Сумма весов всех полных путей."""
    paths = enumerate_paths(triangulation, curve)
    polynomial = zero(triangulation.n)
    counts: Counter = Counter()
    for path in paths:
        weight = path_weight(triangulation, curve, path)
        polynomial = polynomial + weight
        ((_, b), _), = weight.terms.items()
        counts[b] += 1
    return ExpansionResult(
        polynomial,
        index_of_curve(triangulation, curve),
        len(paths),
        tuple(sorted(counts.items())),
        PATHS,
    )


def expansion_from_mu(mu: Mapping[DimensionVector, int], index: Tuple[int, ...], matrix) -> LaurentPoly:
    """Σ_e μ_e X^{Ind + B e} Y^e."""
    matrix = np.asarray(matrix, dtype=np.int64)
    polynomial = zero(len(index))
    base = np.asarray(index, dtype=np.int64)
    for vector, count in sorted(mu.items()):
        exponent = base + matrix @ np.asarray(vector, dtype=np.int64)
        polynomial = polynomial + monomial(count, tuple(int(v) for v in exponent), vector)
    return polynomial


def expansion_modules(triangulation: Triangulation, curve: CurveCrossing) -> ExpansionResult:
    """Сборка разложения из таблицы μ, индекса и матрицы B."""
    word = string_of_curve(triangulation, curve)
    mu = mu_counts(word)
    index = index_of_curve(triangulation, curve)
    polynomial = expansion_from_mu(mu, index, exchange_matrix(triangulation))
    return ExpansionResult(polynomial, index, sum(mu.values()), tuple(sorted(mu.items())), MODULES)


def schiffler_thomas(triangulation: Triangulation, curve: CurveCrossing) -> LaurentPoly:
    """Специализация y := 1 суммы по полным путям."""
    return specialize(expansion_paths(triangulation, curve).polynomial, set_y_to_one=True)


def cluster_character(triangulation: Triangulation, curve: CurveCrossing) -> LaurentPoly:
    """Σ_e μ_e X^{Ind + B e}: форма модульного способа без коэффициентов."""
    mu = mu_counts(string_of_curve(triangulation, curve))
    polynomial = expansion_from_mu(mu, index_of_curve(triangulation, curve), exchange_matrix(triangulation))
    return specialize(polynomial, set_y_to_one=True)


def curve_f_polynomial(triangulation: Triangulation, curve: CurveCrossing) -> LaurentPoly:
    return f_polynomial(expansion_modules(triangulation, curve).polynomial)


def curve_g_vector(triangulation: Triangulation, curve: CurveCrossing) -> Tuple[int, ...]:
    polynomial = expansion_modules(triangulation, curve).polynomial
    return g_vector(polynomial, exchange_matrix(triangulation))


# ============================================================================
# ПРОВЕРКА
# ============================================================================

class CheckResult(NamedTuple):
    name: str
    passed: bool
    detail: str = ""

    def __str__(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status} {self.name}" + (f" {self.detail}" if self.detail else "")


@dataclass(frozen=True)
class VerificationReport:
    checks: Tuple[CheckResult, ...]

    @property
    def ok(self) -> bool:
        return all(check.passed for check in self.checks)

    def failed(self) -> List[str]:
        return [check.name for check in self.checks if not check.passed]

    def lines(self) -> List[str]:
        return [str(check) for check in self.checks] + [f"RESULT {'PASS' if self.ok else 'FAIL'}"]


def _bijection_holds(triangulation: Triangulation, curve: CurveCrossing) -> Tuple[bool, str]:
    if curve.is_arc:
        path = enumerate_paths(triangulation, curve)[0]
        return phi(path) == () and recognize_path(triangulation, curve, path.arcs) == path, ""
    word = string_of_curve(triangulation, curve)
    for subset in closed_subsets(word):
        path = psi(triangulation, curve, subset, word)
        if phi(path) != subset:
            return False, f"phi(psi({list(subset)})) = {list(phi(path))}"
        if recognize_path(triangulation, curve, path.arcs) != path:
            return False, f"path '{path}' is not recognised"
    return True, ""


def build_report(
    triangulation: Triangulation,
    curve: CurveCrossing,
    by_paths: ExpansionResult,
    by_modules: ExpansionResult,
    oracle_variable: Optional[LaurentPoly] = None,
    oracle_error: Optional[str] = None,
    with_oracle: bool = False,
) -> VerificationReport:
    """
    Отчёт по готовым результатам обоих способов (и, если задано, оракула).
    """
    matrix = exchange_matrix(triangulation)
    polynomial = by_paths.polynomial
    degree = degree_of(polynomial, matrix)
    top = crossing_vector(triangulation, curve)
    bijection, bijection_detail = _bijection_holds(triangulation, curve)

    checks = [
        CheckResult("routes-agree", by_paths.polynomial == by_modules.polynomial),
        CheckResult("homogeneous", degree is not None),
        CheckResult(
            "degree-equals-index",
            degree == by_paths.index,
            "" if degree == by_paths.index else f"{degree} vs {by_paths.index}",
        ),
        CheckResult("count-matches-mu", by_paths.path_count == sum(by_modules.mu.values())),
        CheckResult("bijection-roundtrip", bijection, bijection_detail),
        CheckResult("f-constant-term", constant_term(f_polynomial(polynomial)) == 1),
        CheckResult("top-mu-one", by_modules.mu.get(top, 0) == 1),
    ]

    if with_oracle:
        checks.append(CheckResult("denominator-equals-crossings", denominator_vector(polynomial) == top))
        if oracle_variable is None:
            checks.append(CheckResult("oracle-agrees", False, oracle_error or "no oracle result"))
        else:
            checks.append(CheckResult("oracle-agrees", oracle_variable == polynomial))
    return VerificationReport(tuple(checks))


def verify_curve(
    triangulation: Triangulation,
    curve: CurveCrossing,
    with_oracle: bool = False,
    max_depth: Optional[int] = None,
    oracle: Optional[FlipOracle] = None,
) -> VerificationReport:
    """
    Перекрёстная проверка кривой. Ошибки оракула становятся записями отчёта.
    """
    logger.info("=" * 70)
    logger.info(f"Verifying curve with d={curve.d} (oracle={'on' if with_oracle else 'off'})")
    logger.info("=" * 70)

    by_paths = expansion_paths(triangulation, curve)
    by_modules = expansion_modules(triangulation, curve)

    oracle_variable = None
    oracle_error = None
    if with_oracle:
        try:
            oracle = oracle or FlipOracle(triangulation, max_depth)
            oracle_variable = oracle.variable_for(curve)
        except OracleNotFound as e:
            oracle_error = f"NOT-FOUND depth={e.depth}"
        except DomainError as e:
            oracle_error = str(e)
            logger.warning(f"Oracle failed: {e}")

    report = build_report(
        triangulation, curve, by_paths, by_modules, oracle_variable, oracle_error, with_oracle
    )
    logger.info(
        f"Verification {'passed' if report.ok else 'failed'}: "
        f"{truncate_text(render(by_paths.polynomial), 120)}"
    )
    if not report.ok:
        logger.warning(f"Failed checks: {report.failed()}")
    return report
