"""
Мутации сидов с главными коэффициентами.

Расширенная матрица B̃ размера 2n x n: верхний блок - обменная матрица B, нижний - строки
коэффициентов (в начальном сиде единичная матрица). Обменное соотношение геометрического типа:

    x'_k = (Π u_i^{[b_ik]+} + Π u_i^{[-b_ik]+}) / x_k,   u = (x_1..x_n, y_1..y_n)

Деление выполняется точно в кольце многочленов Лорана; неточность означает ошибку выше по цепочке.
"""

import logging
from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np

from algebra.laurent import LaurentPoly, degree_of, divide_exact, monomial, render, specialize, x
from utils.errors import ClusterError, LaurentError

logger = logging.getLogger(__name__)


def _as_matrix(matrix) -> np.ndarray:
    result = np.array(matrix, dtype=np.int64)
    if result.ndim != 2:
        raise ClusterError("shape", f"expected a 2-dimensional matrix, got shape {result.shape}")
    return result


def principal_matrix(exchange_matrix) -> np.ndarray:
    """B̃ с главными коэффициентами: B над единичной матрицей."""
    top = _as_matrix(exchange_matrix)
    rows, n = top.shape
    if rows != n:
        raise ClusterError("shape", f"exchange matrix must be square, got {top.shape}")
    if not np.array_equal(top, -top.T):
        raise ClusterError("not-skew-symmetric", "exchange matrix must be skew-symmetric")
    return np.vstack([top, np.eye(n, dtype=np.int64)])


def mutate_matrix(matrix, k: int) -> np.ndarray:
    """
    Мутация расширенной матрицы в направлении k (с единицы).

    b'_ij = -b_ij, если i = k или j = k, иначе b_ij + [-b_ik]_+ b_kj + b_ik [b_kj]_+.
    """
    current = _as_matrix(matrix)
    n = current.shape[1]
    if not 1 <= k <= n:
        raise ClusterError("index", f"mutation direction {k} outside 1..{n}")
    c = k - 1
    column = current[:, c]
    row = current[c, :]
    mutated = current + np.outer(np.maximum(-column, 0), row) + np.outer(column, np.maximum(row, 0))
    mutated[c, :] = -current[c, :]
    mutated[:, c] = -current[:, c]
    return mutated


@dataclass(frozen=True, eq=False)
class Seed:
    """
    Сид: расширенная матрица, кластер (многочлены Лорана от начальных переменных)
    и метки дуг для позиций кластера.
    """

    matrix: np.ndarray
    cluster: Tuple[LaurentPoly, ...]
    labels: Tuple[str, ...]

    def __post_init__(self):
        frozen = np.array(self.matrix, dtype=np.int64)
        frozen.setflags(write=False)
        object.__setattr__(self, "matrix", frozen)

    @property
    def n(self) -> int:
        return self.matrix.shape[1]

    @property
    def exchange_matrix(self) -> np.ndarray:
        return self.matrix[: self.n]

    def variable(self, label: str) -> LaurentPoly:
        return self.cluster[self.labels.index(label)]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Seed):
            return NotImplemented
        return (
            np.array_equal(self.matrix, other.matrix)
            and self.cluster == other.cluster
            and self.labels == other.labels
        )

    __hash__ = None


def initial_seed(exchange_matrix, labels: Optional[Sequence[str]] = None) -> Seed:
    """Начальный сид с главными коэффициентами: cluster[k] = x_k."""
    matrix = principal_matrix(exchange_matrix)
    n = matrix.shape[1]
    labels = tuple(labels) if labels is not None else tuple(f"x{i}" for i in range(1, n + 1))
    if len(labels) != n:
        raise ClusterError("shape", f"{len(labels)} labels for a rank {n} seed")
    return Seed(matrix, tuple(x(n, i) for i in range(1, n + 1)), labels)


def _exchange_monomial(seed: Seed, exponents: np.ndarray) -> LaurentPoly:
    n = seed.n
    result = monomial(1, (0,) * n, tuple(int(e) for e in exponents[n:]))
    for i in range(n):
        if exponents[i]:
            result = result * seed.cluster[i] ** int(exponents[i])
    return result


def mutate_seed(seed: Seed, k: int) -> Seed:
    """
    Мутация сида в направлении k (с единицы): матрица и k-я кластерная переменная.

    Raises:
        ClusterError: Индекс вне диапазона или неточное деление (нарушение свойства Лорана)
    """
    matrix = mutate_matrix(seed.matrix, k)
    column = seed.matrix[:, k - 1]
    positive = _exchange_monomial(seed, np.maximum(column, 0))
    negative = _exchange_monomial(seed, np.maximum(-column, 0))
    try:
        exchanged = divide_exact(positive + negative, seed.cluster[k - 1])
    except LaurentError as e:
        raise ClusterError("laurent-violation", f"exchange at direction {k} is not exact: {e.message}") from e

    cluster = list(seed.cluster)
    cluster[k - 1] = exchanged
    logger.debug(f"Mutated at {k}: new variable has {len(exchanged)} terms")
    return Seed(matrix, tuple(cluster), seed.labels)


def mutate_sequence(seed: Seed, directions: Iterable[int]) -> Seed:
    for k in directions:
        seed = mutate_seed(seed, k)
    return seed


def y_hat(matrix) -> List[LaurentPoly]:
    """
    ŷ_j = Π_i x_i^{b_ij} · Π_i y_i^{b_(n+i)j} по столбцам расширенной матрицы.

    Raises:
        ClusterError: Отрицательный коэффициент в нижнем блоке (не мономиален по y)
    """
    current = _as_matrix(matrix)
    n = current.shape[1]
    result = []
    for j in range(n):
        column = current[:, j]
        if np.any(column[n:] < 0):
            raise ClusterError("negative-coefficient", f"column {j + 1} has negative coefficient entries")
        result.append(monomial(1, tuple(int(e) for e in column[:n]), tuple(int(e) for e in column[n:])))
    return result


def c_vectors(seed: Seed) -> Tuple[Tuple[int, ...], ...]:
    """Столбцы нижнего блока (c-векторы)."""
    bottom = seed.matrix[seed.n:]
    return tuple(tuple(int(v) for v in bottom[:, j]) for j in range(seed.n))


def is_sign_coherent(seed: Seed) -> bool:
    """Каждый c-вектор неотрицателен или неположителен целиком."""
    return all(
        all(v >= 0 for v in vector) or all(v <= 0 for v in vector)
        for vector in c_vectors(seed)
    )


def f_polynomial(variable: LaurentPoly) -> LaurentPoly:
    """F-многочлен: подстановка x := 1."""
    return specialize(variable, set_x_to_one=True)


def g_vector(variable: LaurentPoly, exchange_matrix) -> Tuple[int, ...]:
    """
    g-вектор: общая степень a - B b всех членов.

    Raises:
        ClusterError: Многочлен неоднороден относительно B-градуировки
    """
    degree = degree_of(variable, exchange_matrix)
    if degree is None:
        raise ClusterError("not-homogeneous", "polynomial is not homogeneous with respect to the B-grading")
    return degree


def render_seed(seed: Seed) -> List[str]:
    lines = ["matrix"]
    lines += [" ".join(str(int(v)) for v in row) for row in seed.matrix]
    lines += [f"{label} = {render(variable)}" for label, variable in zip(seed.labels, seed.cluster)]
    return lines
