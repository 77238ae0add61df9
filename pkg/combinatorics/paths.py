"""
Полные (Γ,γ)-пути и их веса.

Путь α_1..α_{2d+1}: чётные дуги - пересечения кривой, нечётные - соединители внутри
треугольников △_0..△_d. Каждому замкнутому подмножеству I соответствует ровно один путь ψ(I),
у которого γ-ориентированы чётные дуги с номерами из I; обратное отображение φ читает флаги.

Соединители восстанавливаются локально в треугольнике: угол прибытия α_{2k} и угол
отправления α_{2k+2} однозначно задают сторону △_k между ними.
"""

import logging
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from algebra.laurent import LaurentPoly, monomial
from combinatorics.strings import (
    CurveCrossing,
    StringWord,
    Subset,
    closed_subsets,
    format_subset,
    is_closed_subset,
    string_of_curve,
)
from combinatorics.surface import Triangulation
from utils.errors import PathError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CompletePath:
    """Дуги α_1..α_{2d+1} и флаги γ-ориентированности чётных дуг (flags[k-1] для α_{2k})."""

    arcs: Tuple[str, ...]
    flags: Tuple[bool, ...]

    @property
    def oriented(self) -> Subset:
        return tuple(k for k, flag in enumerate(self.flags, start=1) if flag)

    def __str__(self) -> str:
        return " ".join(self.arcs)


def _edge(triangulation: Triangulation, triangle: int, u: int, v: int) -> str:
    """Сторона треугольника между углами u и v."""
    slots = triangulation.triangles[triangle].slots
    if v == (u + 1) % 3:
        return slots[u].label
    if u == (v + 1) % 3:
        return slots[v].label
    raise PathError("corner-resolution", f"corners {u} and {v} of triangle {triangle + 1} coincide")


def _arrival(curve: CurveCrossing, k: int, flag: bool) -> int:
    """Угол △_k, в который приходит α_{2k} (для k = 0 - начальный угол кривой)."""
    if k == 0:
        return curve.start_corner
    s = curve.entry_slots[k]
    return (s + 1) % 3 if flag else s


def _departure(curve: CurveCrossing, k: int, flag: bool) -> int:
    """Угол △_k, из которого выходит α_{2k+2} (для k = d - конечный угол кривой)."""
    if k == curve.d:
        return curve.end_corner
    t = curve.exit_slots[k]
    return (t + 1) % 3 if flag else t


def psi(
    triangulation: Triangulation,
    curve: CurveCrossing,
    subset: Sequence[int],
    word: Optional[StringWord] = None,
) -> CompletePath:
    """
    Единственный полный путь, у которого γ-ориентированы ровно чётные дуги из subset.

    Raises:
        PathError: subset не замкнуто или соединитель не восстанавливается
    """
    if curve.is_arc:
        if subset:
            raise PathError("not-closed", f"{format_subset(subset)} is not a subset of an empty word")
        return CompletePath((curve.arc,), ())

    word = word or string_of_curve(triangulation, curve)
    members = set(subset)
    if not members <= set(range(1, curve.d + 1)) or not is_closed_subset(word, sorted(members)):
        raise PathError("not-closed", f"{format_subset(sorted(members))} is not a closed subset")

    flags = tuple(k in members for k in range(1, curve.d + 1))
    arcs: List[str] = []
    for k in range(curve.d + 1):
        arrival = _arrival(curve, k, k > 0 and flags[k - 1])
        departure = _departure(curve, k, k < curve.d and flags[k])
        arcs.append(_edge(triangulation, curve.triangles[k], arrival, departure))
        if k < curve.d:
            arcs.append(curve.crossings[k])
    return CompletePath(tuple(arcs), flags)


def alpha_zero(triangulation: Triangulation, curve: CurveCrossing) -> CompletePath:
    """Путь без γ-ориентированных чётных дуг."""
    return psi(triangulation, curve, ())


def alpha_one(triangulation: Triangulation, curve: CurveCrossing) -> CompletePath:
    """Путь, в котором γ-ориентированы все чётные дуги."""
    return psi(triangulation, curve, tuple(range(1, curve.d + 1)))


def phi(path: CompletePath) -> Subset:
    return path.oriented


def recognize_path(triangulation: Triangulation, curve: CurveCrossing, arcs: Sequence[str]) -> CompletePath:
    """
    Восстанавливает флаги по голой последовательности дуг (как пути записываются в примерах).

    Флаг α_{2k} однозначно определяется соединителем α_{2k-1} при уже известном флаге α_{2k-2}.

    Raises:
        PathError: Последовательность не является полным путём кривой
    """
    arcs = tuple(arcs)
    if curve.is_arc:
        if arcs != (curve.arc,):
            raise PathError("malformed", f"path of arc {curve.arc} must be the arc itself")
        return CompletePath(arcs, ())
    if len(arcs) != 2 * curve.d + 1 or tuple(arcs[1::2]) != curve.crossings:
        raise PathError("malformed", f"even arcs of '{' '.join(arcs)}' do not follow the crossings")

    flags: List[bool] = []
    for k in range(curve.d):
        arrival = _arrival(curve, k, k > 0 and flags[k - 1])
        candidates = []
        for flag in (False, True):
            departure = _departure(curve, k, flag)
            if departure == arrival:
                continue
            if _edge(triangulation, curve.triangles[k], arrival, departure) == arcs[2 * k]:
                candidates.append(flag)
        if len(candidates) != 1:
            raise PathError("malformed", f"connector {arcs[2 * k]} at position {2 * k + 1} does not fit")
        flags.append(candidates[0])

    arrival = _arrival(curve, curve.d, flags[-1])
    if arrival == curve.end_corner or _edge(triangulation, curve.triangles[-1], arrival, curve.end_corner) != arcs[-1]:
        raise PathError("malformed", f"final connector {arcs[-1]} does not fit")
    return CompletePath(arcs, tuple(flags))


def enumerate_paths(triangulation: Triangulation, curve: CurveCrossing) -> List[CompletePath]:
    """Множество C_Γ(γ) как образ S_Γ(γ) при ψ, в порядке подмножеств."""
    if curve.is_arc:
        return [CompletePath((curve.arc,), ())]
    word = string_of_curve(triangulation, curve)
    paths = [psi(triangulation, curve, subset, word) for subset in closed_subsets(word)]
    logger.debug(f"Enumerated {len(paths)} complete paths for d={curve.d}")
    return paths


def path_weight(triangulation: Triangulation, curve: CurveCrossing, path: CompletePath) -> LaurentPoly:
    """
    Вес x(α)·y(α): нечётные внутренние дуги в числителе, пересечения в знаменателе,
    y_{i_k} для каждого γ-ориентированного α_{2k}. Граничные дуги дают 1.
    """
    n = triangulation.n
    a = [0] * n
    b = [0] * n
    for label in path.arcs[0::2]:
        if triangulation.arc(label).is_internal:
            a[triangulation.index_of(label) - 1] += 1
    for label, flag in zip(curve.crossings, path.flags):
        index = triangulation.index_of(label) - 1
        a[index] -= 1
        if flag:
            b[index] += 1
    return monomial(1, a, b)
