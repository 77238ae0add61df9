"""
Точная арифметика многочленов Лорана от x_1..x_n (целые степени) и y_1..y_n
(неотрицательные степени) с градуировкой deg(x_i) = e_i, deg(y_i) = -B e_i.

Многочлен хранится как словарь {(a, b): коэффициент}, где a - вектор степеней x,
b - вектор степеней y. Нулевые коэффициенты не хранятся, порядок членов канонический:
сначала по b лексикографически, затем по a. Коэффициенты - целые Python
произвольной точности.

Точное деление на немоном выполняется в кольце многочленов sympy (ZZ) после
сдвига степеней x в неотрицательную область.
"""

import logging
import re
from functools import lru_cache
from types import MappingProxyType
from typing import Dict, Iterator, Mapping, Optional, Sequence, Tuple, Union

import numpy as np
from sympy import ZZ
from sympy.polys.polyerrors import ExactQuotientFailed
from sympy.polys.rings import ring

from utils.errors import LaurentError

logger = logging.getLogger(__name__)

Exponent = Tuple[int, ...]
TermKey = Tuple[Exponent, Exponent]

_FACTOR_RE = re.compile(r'^([xy])(\d+)(?:\^(-?\d+))?$')
_SEPARATOR_RE = re.compile(r'\s+([+-])\s+')


def _term_order(item: Tuple[TermKey, int]) -> Tuple[Exponent, Exponent]:
    (a, b), _ = item
    return b, a


class LaurentPoly:
    """
    Неизменяемый многочлен Лорана.

    Args:
        n: Число переменных x (и столько же переменных y)
        terms: Отображение (a, b) -> целый коэффициент
    """

    __slots__ = ("_n", "_terms")

    def __init__(self, n: int, terms: Optional[Mapping[TermKey, int]] = None):
        if n < 0:
            raise LaurentError("dimension", f"number of variables must be non-negative, got {n}")

        clean: Dict[TermKey, int] = {}
        for (a, b), coefficient in (terms or {}).items():
            a = tuple(int(v) for v in a)
            b = tuple(int(v) for v in b)
            if len(a) != n or len(b) != n:
                raise LaurentError(
                    "dimension-mismatch",
                    f"exponent vectors of length {len(a)}/{len(b)} in a ring with n={n}"
                )
            if any(v < 0 for v in b):
                raise LaurentError("negative-y-exponent", f"y-exponents must be non-negative, got {b}")
            clean[(a, b)] = clean.get((a, b), 0) + int(coefficient)

        self._n = n
        self._terms = MappingProxyType(
            dict(sorted(((key, c) for key, c in clean.items() if c), key=_term_order))
        )

    @classmethod
    def _build(cls, n: int, terms: Dict[TermKey, int]) -> "LaurentPoly":
        """Быстрый конструктор для уже проверенных ключей."""
        instance = cls.__new__(cls)
        instance._n = n
        instance._terms = MappingProxyType(
            dict(sorted(((key, c) for key, c in terms.items() if c), key=_term_order))
        )
        return instance

    # ------------------------------------------------------------------
    # Доступ к данным
    # ------------------------------------------------------------------

    @property
    def n(self) -> int:
        return self._n

    @property
    def terms(self) -> Mapping[TermKey, int]:
        return self._terms

    def is_zero(self) -> bool:
        return not self._terms

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def __len__(self) -> int:
        return len(self._terms)

    def __iter__(self) -> Iterator[Tuple[TermKey, int]]:
        return iter(self._terms.items())

    # ------------------------------------------------------------------
    # Арифметика
    # ------------------------------------------------------------------

    def _coerce(self, other: Union["LaurentPoly", int]) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            if other.n != self._n:
                raise LaurentError(
                    "dimension-mismatch",
                    f"cannot combine polynomials with n={self._n} and n={other.n}"
                )
            return other
        if isinstance(other, (int, np.integer)):
            return constant(self._n, int(other))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        result = dict(self._terms)
        for key, coefficient in other._terms.items():
            result[key] = result.get(key, 0) + coefficient
        return LaurentPoly._build(self._n, result)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly._build(self._n, {key: -c for key, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        result: Dict[TermKey, int] = {}
        for (a1, b1), c1 in self._terms.items():
            for (a2, b2), c2 in other._terms.items():
                key = (
                    tuple(u + v for u, v in zip(a1, a2)),
                    tuple(u + v for u, v in zip(b1, b2)),
                )
                result[key] = result.get(key, 0) + c1 * c2
        return LaurentPoly._build(self._n, result)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "LaurentPoly":
        if exponent < 0:
            if not self.is_monomial():
                raise LaurentError("inexact-division", "only monomials can be raised to negative powers")
            return divide_exact(one(self._n), self) ** (-exponent)
        result = one(self._n)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, np.integer)):
            other = constant(self._n, int(other))
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._n == other._n and dict(self._terms) == dict(other._terms)

    def __hash__(self) -> int:
        return hash((self._n, tuple(self._terms.items())))

    def __repr__(self) -> str:
        return f"LaurentPoly(n={self._n}, {render(self)!r})"

    def __str__(self) -> str:
        return render(self)


# ============================================================================
# КОНСТРУКТОРЫ
# ============================================================================

def zero(n: int) -> LaurentPoly:
    return LaurentPoly(n)


def constant(n: int, value: int) -> LaurentPoly:
    return LaurentPoly(n, {((0,) * n, (0,) * n): value})


def one(n: int) -> LaurentPoly:
    return constant(n, 1)


def monomial(coefficient: int, a: Sequence[int], b: Sequence[int]) -> LaurentPoly:
    """
    Моном coefficient * x^a * y^b.

    Raises:
        LaurentError: Векторы разной длины или отрицательная степень y
    """
    if len(a) != len(b):
        raise LaurentError("dimension-mismatch", f"x-part has length {len(a)}, y-part {len(b)}")
    return LaurentPoly(len(a), {(tuple(a), tuple(b)): coefficient})


def x(n: int, i: int) -> LaurentPoly:
    """Переменная x_i (нумерация с единицы)."""
    return monomial(1, _unit(n, i), (0,) * n)


def y(n: int, i: int) -> LaurentPoly:
    """Переменная y_i (нумерация с единицы)."""
    return monomial(1, (0,) * n, _unit(n, i))


def _unit(n: int, i: int) -> Exponent:
    if not 1 <= i <= n:
        raise LaurentError("index", f"variable index {i} outside 1..{n}")
    return tuple(1 if k == i - 1 else 0 for k in range(n))


# ============================================================================
# ОПЕРАЦИИ
# ============================================================================

def add(left: LaurentPoly, right: LaurentPoly) -> LaurentPoly:
    return left + right


def mul(left: LaurentPoly, right: LaurentPoly) -> LaurentPoly:
    return left * right


@lru_cache(maxsize=None)
def _polynomial_ring(n: int):
    names = [f"x{i}" for i in range(1, n + 1)] + [f"y{i}" for i in range(1, n + 1)]
    return ring(names, ZZ)[0]


def _min_x_exponents(poly: LaurentPoly) -> Exponent:
    return tuple(min(a[i] for (a, _), _ in poly.terms.items()) for i in range(poly.n))


def _shifted(poly: LaurentPoly, shift: Exponent) -> Dict[Tuple[int, ...], int]:
    return {
        tuple(e - s for e, s in zip(a, shift)) + b: coefficient
        for (a, b), coefficient in poly.terms.items()
    }


def divide_exact(dividend: LaurentPoly, divisor: LaurentPoly) -> LaurentPoly:
    """
    Точное деление в кольце многочленов Лорана.

    Args:
        dividend: Делимое P
        divisor: Делитель Q (моном или делитель P)

    Returns:
        LaurentPoly: R, для которого R * Q == P

    Raises:
        LaurentError: Деление неточное или делитель нулевой
    """
    if dividend.n != divisor.n:
        raise LaurentError("dimension-mismatch", f"n={dividend.n} divided by n={divisor.n}")
    if divisor.is_zero():
        raise LaurentError("division-by-zero", "division by the zero polynomial")
    n = dividend.n
    if dividend.is_zero():
        return zero(n)

    if divisor.is_monomial():
        ((a, b), c), = divisor.terms.items()
        result: Dict[TermKey, int] = {}
        for (pa, pb), pc in dividend.terms.items():
            quotient, remainder = divmod(pc, c)
            new_b = tuple(u - v for u, v in zip(pb, b))
            if remainder or any(v < 0 for v in new_b):
                raise LaurentError("inexact-division", f"{render(dividend)} is not divisible by {render(divisor)}")
            result[(tuple(u - v for u, v in zip(pa, a)), new_b)] = quotient
        return LaurentPoly._build(n, result)

    shift_p = _min_x_exponents(dividend)
    shift_q = _min_x_exponents(divisor)
    poly_ring = _polynomial_ring(n)
    numerator = poly_ring.from_dict(_shifted(dividend, shift_p))
    denominator = poly_ring.from_dict(_shifted(divisor, shift_q))
    try:
        quotient = numerator.exquo(denominator)
    except ExactQuotientFailed as e:
        raise LaurentError(
            "inexact-division", f"{render(dividend)} is not divisible by {render(divisor)}"
        ) from e

    offset = tuple(p - q for p, q in zip(shift_p, shift_q))
    result = {}
    for monom, coefficient in quotient.items():
        a = tuple(int(e) + o for e, o in zip(monom[:n], offset))
        b = tuple(int(e) for e in monom[n:])
        result[(a, b)] = int(coefficient)
    logger.debug(f"Exact division: {len(dividend)} terms / {len(divisor)} terms -> {len(result)} terms")
    return LaurentPoly._build(n, result)


def specialize(poly: LaurentPoly, set_x_to_one: bool = False, set_y_to_one: bool = False) -> LaurentPoly:
    """
    Подстановка единиц вместо всех x и/или всех y.

    F-многочлен получается при set_x_to_one, специализация Шифлера-Томаса при set_y_to_one.
    """
    zero_exponent = (0,) * poly.n
    result: Dict[TermKey, int] = {}
    for (a, b), coefficient in poly.terms.items():
        key = (zero_exponent if set_x_to_one else a, zero_exponent if set_y_to_one else b)
        result[key] = result.get(key, 0) + coefficient
    return LaurentPoly._build(poly.n, result)


def degree_of(poly: LaurentPoly, exchange_matrix) -> Optional[Exponent]:
    """
    Степень относительно B-градуировки: a - B b для каждого члена.

    Args:
        poly: Многочлен
        exchange_matrix: Матрица B размера n x n

    Returns:
        Общая степень всех членов или None, если многочлен неоднороден (или нулевой)
    """
    matrix = np.asarray(exchange_matrix, dtype=np.int64).reshape(poly.n, poly.n)
    degree: Optional[Exponent] = None
    for (a, b), _ in poly.terms.items():
        current = tuple(int(v) for v in np.asarray(a, dtype=np.int64) - matrix @ np.asarray(b, dtype=np.int64))
        if degree is None:
            degree = current
        elif current != degree:
            return None
    return degree


def constant_term(poly: LaurentPoly) -> int:
    zero_exponent = (0,) * poly.n
    return poly.terms.get((zero_exponent, zero_exponent), 0)


def denominator_vector(poly: LaurentPoly) -> Exponent:
    """
    Вектор знаменателя: d_i = max(0, -min степени x_i по всем членам).

    Для кластерной переменной дуги совпадает с числами пересечений дуги с триангуляцией.
    """
    if poly.is_zero():
        return (0,) * poly.n
    return tuple(max(0, -value) for value in _min_x_exponents(poly))


# ============================================================================
# ТЕКСТОВОЕ ПРЕДСТАВЛЕНИЕ
# ============================================================================

def _format_factors(prefix: str, exponents: Exponent):
    parts = []
    for i, e in enumerate(exponents, start=1):
        if e == 0:
            continue
        parts.append(f"{prefix}{i}" if e == 1 else f"{prefix}{i}^{e}")
    return parts


def render(poly: LaurentPoly) -> str:
    """
    Канонический текст: `coef*x1^a1*...*y1^b1*...`, члены в каноническом порядке,
    разделители ` + ` / ` - `, единичные степени и коэффициенты опускаются.
    """
    if poly.is_zero():
        return "0"
    pieces = []
    for position, ((a, b), coefficient) in enumerate(poly.terms.items()):
        factors = _format_factors("x", a) + _format_factors("y", b)
        magnitude = abs(coefficient)
        if not factors:
            body = str(magnitude)
        elif magnitude == 1:
            body = "*".join(factors)
        else:
            body = "*".join([str(magnitude)] + factors)
        if position == 0:
            pieces.append(body if coefficient > 0 else f"-{body}")
        else:
            pieces.append(f"{'+' if coefficient > 0 else '-'} {body}")
    return " ".join(pieces)


def _parse_term(text: str, n: int, sign: int) -> LaurentPoly:
    coefficient = 1
    a = [0] * n
    b = [0] * n
    for position, factor in enumerate(text.split("*")):
        factor = factor.strip()
        if position == 0 and factor.isdigit():
            coefficient = int(factor)
            continue
        match = _FACTOR_RE.match(factor)
        if not match:
            raise LaurentError("syntax", f"cannot parse factor '{factor}'")
        index = int(match.group(2))
        if not 1 <= index <= n:
            raise LaurentError("index", f"variable {factor} outside 1..{n}")
        exponent = int(match.group(3)) if match.group(3) is not None else 1
        target = a if match.group(1) == "x" else b
        target[index - 1] += exponent
    return monomial(sign * coefficient, a, b)


def parse(text: str, n: int) -> LaurentPoly:
    """
    Разбор текста в формате render (порядок членов может быть любым).

    Raises:
        LaurentError: Синтаксическая ошибка или индекс переменной вне 1..n
    """
    body = text.strip()
    if not body:
        raise LaurentError("syntax", "empty polynomial text")
    sign = 1
    if body.startswith("-"):
        sign = -1
        body = body[1:].lstrip()
    chunks = _SEPARATOR_RE.split(body)
    signs = [sign] + [1 if s == "+" else -1 for s in chunks[1::2]]
    result = zero(n)
    for term_sign, term_text in zip(signs, chunks[0::2]):
        result = result + _parse_term(term_text, n, term_sign)
    return result
