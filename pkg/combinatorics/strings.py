"""
Кривые, заданные последовательностью пересечений, и строковые модули.

Кривая γ задаётся начальным треугольником △_0 и упорядоченным списком пересекаемых
внутренних дуг τ_{i_1}..τ_{i_d}; вырожденная форма arc(τ_i) описывает саму дугу триангуляции.
Строка w(Γ,γ) записывает эти дуги вместе со стрелками колчана между соседними позициями.

Подмножество позиций I задаёт подмодуль тогда и только тогда, когда оно замкнуто относительно
исходящих букв: если p ∈ I и буква направлена из p в q, то q ∈ I.
"""

import logging
from collections import Counter
from dataclasses import dataclass
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

from combinatorics.quiver import Arrow, QuiverWithPotential, build_qp, gentle_relations
from combinatorics.surface import Triangulation
from utils.errors import StringError, SurfaceError

logger = logging.getLogger(__name__)

FORWARD = "forward"
BACKWARD = "backward"

Subset = Tuple[int, ...]
DimensionVector = Tuple[int, ...]


@dataclass(frozen=True)
class CurveCrossing:
    """
    Кривая относительно триангуляции.

    triangles[k] - треугольник △_k; entry_slots[k] - слот τ_{i_k} в △_k (None при k = 0);
    exit_slots[k] - слот τ_{i_{k+1}} в △_k (None при k = d). Для формы arc(τ_i) заполнено поле arc.
    """

    start: int
    crossings: Tuple[str, ...]
    triangles: Tuple[int, ...]
    entry_slots: Tuple[Optional[int], ...]
    exit_slots: Tuple[Optional[int], ...]
    arc: Optional[str] = None

    @property
    def d(self) -> int:
        return len(self.crossings)

    @property
    def is_arc(self) -> bool:
        return self.arc is not None

    @property
    def start_corner(self) -> int:
        return (self.exit_slots[0] + 2) % 3

    @property
    def end_corner(self) -> int:
        return (self.entry_slots[-1] + 2) % 3


def derive_curve(triangulation: Triangulation, start: int, crossings: Sequence[str]) -> CurveCrossing:
    """
    Восстанавливает последовательность треугольников кривой.

    Args:
        triangulation: Триангуляция
        start: Номер начального треугольника (с нуля)
        crossings: Пересекаемые внутренние дуги по порядку

    Raises:
        StringError: Пустой список, повтор подряд, граничная дуга, дуга не является стороной треугольника
    """
    crossings = tuple(crossings)
    if not crossings:
        raise StringError("empty-crossings", "a curve without crossings must be declared in arc form")
    if not 0 <= start < len(triangulation.triangles):
        raise StringError("start-triangle", f"start triangle {start + 1} does not exist")
    for first, second in zip(crossings, crossings[1:]):
        if first == second:
            raise StringError("consecutive-equal", f"consecutive equal crossings {first} {second}")

    current = start
    triangles = [start]
    entry_slots: List[Optional[int]] = [None]
    exit_slots: List[Optional[int]] = []
    for position, label in enumerate(crossings, start=1):
        if not triangulation.has_arc(label):
            raise StringError("unknown-arc", f"crossing {position} names unknown arc {label}")
        if not triangulation.arc(label).is_internal:
            raise StringError("boundary-crossing", f"crossing {position} is the boundary arc {label}")
        try:
            following, entry = triangulation.other_side(label, current)
            exit_slot = triangulation.triangles[current].slot_of(label)
        except SurfaceError as e:
            raise StringError(e.kind, f"crossing {position}: {e.message}") from e
        exit_slots.append(exit_slot)
        triangles.append(following)
        entry_slots.append(entry)
        current = following
    exit_slots.append(None)

    return CurveCrossing(start, crossings, tuple(triangles), tuple(entry_slots), tuple(exit_slots))


def arc_curve(triangulation: Triangulation, label: str) -> CurveCrossing:
    """Вырожденная кривая arc(τ_i)."""
    if not triangulation.has_arc(label):
        raise StringError("unknown-arc", f"unknown arc {label}")
    if not triangulation.arc(label).is_internal:
        raise StringError("boundary-arc", f"boundary arc {label} has no cluster variable")
    start = triangulation.occurrences[label][0][0]
    return CurveCrossing(start, (), (start,), (None,), (None,), arc=label)


def reverse_curve(triangulation: Triangulation, curve: CurveCrossing) -> CurveCrossing:
    if curve.is_arc:
        return curve
    return derive_curve(triangulation, curve.triangles[-1], tuple(reversed(curve.crossings)))


def curve_key(curve: CurveCrossing) -> tuple:
    """Ключ кривой, не зависящий от её ориентации."""
    if curve.is_arc:
        return ("arc", curve.arc)
    forward = (curve.triangles[0], curve.crossings)
    backward = (curve.triangles[-1], tuple(reversed(curve.crossings)))
    return ("curve",) + min(forward, backward)


def polygon_diagonal(triangulation: Triangulation, corners: int, i: int, j: int) -> CurveCrossing:
    """
    Диагональ v_i - v_j многоугольника относительно веерной триангуляции polygon(corners).

    Raises:
        StringError: Пара вершин задаёт граничный отрезок или выходит за пределы
    """
    i, j = sorted((i, j))
    if i < 0 or j >= corners or i == j:
        raise StringError("diagonal", f"vertices {i}, {j} outside 0..{corners - 1}")
    if j - i == 1 or (i == 0 and j == corners - 1):
        raise StringError("diagonal", f"v{i}-v{j} is a boundary segment")
    if i == 0:
        return arc_curve(triangulation, f"t{j - 1}")
    return derive_curve(triangulation, i - 1, [f"t{k}" for k in range(i, j - 1)])


def crossing_vector(triangulation: Triangulation, curve: CurveCrossing) -> DimensionVector:
    """Числа пересечений γ с внутренними дугами (для дуги триангуляции - нулевой вектор)."""
    counts = [0] * triangulation.n
    for label in curve.crossings:
        counts[triangulation.index_of(label) - 1] += 1
    return tuple(counts)


# ============================================================================
# СТРОКИ
# ============================================================================

@dataclass(frozen=True)
class Letter:
    arrow: Arrow
    direction: str

    @property
    def symbol(self) -> str:
        return "->" if self.direction == FORWARD else "<-"


@dataclass(frozen=True)
class StringWord:
    """
    Строка w(Γ,γ): позиции 1..d и буквы между соседними позициями.

    letters[k-1] соединяет позиции k и k+1; FORWARD означает стрелку τ_{i_k} -> τ_{i_{k+1}}.
    """

    vertices: Tuple[str, ...]
    indices: Tuple[int, ...]
    letters: Tuple[Letter, ...]
    n: int

    @property
    def d(self) -> int:
        return len(self.vertices)

    def __str__(self) -> str:
        if not self.vertices:
            return ""
        pieces = [self.vertices[0]]
        for letter, vertex in zip(self.letters, self.vertices[1:]):
            pieces += [letter.symbol, vertex]
        return " ".join(pieces)


def string_of_curve(
    triangulation: Triangulation,
    curve: CurveCrossing,
    qp: Optional[QuiverWithPotential] = None,
) -> StringWord:
    """
    Строка кривой.

    Буква k читается в △_k: если слот выхода следует за слотом входа против часовой
    стрелки, стрелка идёт от τ_{i_k} к τ_{i_{k+1}}, иначе обратно.

    Raises:
        StringError: Стрелки нет в колчане или две буквы подряд образуют соотношение
    """
    qp = qp or build_qp(triangulation)
    indices = tuple(triangulation.index_of(label) for label in curve.crossings)
    letters = []
    for k in range(1, curve.d):
        entry, exit_slot = curve.entry_slots[k], curve.exit_slots[k]
        here, there = curve.crossings[k - 1], curve.crossings[k]
        if exit_slot == (entry + 1) % 3:
            letter = Letter(Arrow(here, there, curve.triangles[k]), FORWARD)
        else:
            letter = Letter(Arrow(there, here, curve.triangles[k]), BACKWARD)
        if not qp.has_arrow(letter.arrow):
            raise StringError("missing-arrow", f"no arrow {letter.arrow} for letter {k}")
        letters.append(letter)

    forbidden = gentle_relations(qp)
    for position, (first, second) in enumerate(zip(letters, letters[1:]), start=1):
        if first.direction == FORWARD and second.direction == FORWARD:
            composition = (first.arrow, second.arrow)
        elif first.direction == BACKWARD and second.direction == BACKWARD:
            composition = (second.arrow, first.arrow)
        else:
            continue
        if composition in forbidden:
            raise StringError("forbidden-relation", f"letters {position} and {position + 1} compose to a relation")

    return StringWord(tuple(curve.crossings), indices, tuple(letters), triangulation.n)


def is_closed_subset(word: StringWord, subset: Sequence[int]) -> bool:
    members = set(subset)
    for k, letter in enumerate(word.letters, start=1):
        if letter.direction == FORWARD and k in members and k + 1 not in members:
            return False
        if letter.direction == BACKWARD and k + 1 in members and k not in members:
            return False
    return True


def _allowed(word: StringWord, position: int, previous_in: bool, current_in: bool) -> bool:
    """Совместимость принадлежности позиций position-1 и position по букве между ними."""
    letter = word.letters[position - 2]
    if letter.direction == FORWARD:
        return current_in or not previous_in
    return previous_in or not current_in


def _sort_subsets(subsets) -> List[Subset]:
    return sorted((tuple(sorted(subset)) for subset in subsets), key=lambda subset: (len(subset), subset))


def closed_subsets(word: StringWord) -> List[Subset]:
    """
    Семейство S_Γ(γ): все замкнутые подмножества в порядке (размер, лексикографически).

    Перебор с отсечением по соседним позициям: ограничения связывают только соседей.
    """
    found: List[Subset] = []

    def extend(position: int, chosen: List[int], previous_in: bool) -> None:
        if position > word.d:
            found.append(tuple(chosen))
            return
        for current_in in (False, True):
            if position > 1 and not _allowed(word, position, previous_in, current_in):
                continue
            if current_in:
                chosen.append(position)
            extend(position + 1, chosen, current_in)
            if current_in:
                chosen.pop()

    extend(1, [], False)
    return _sort_subsets(found)


def closed_subsets_bruteforce(word: StringWord) -> List[Subset]:
    positions = range(1, word.d + 1)
    candidates = (
        subset
        for size in range(word.d + 1)
        for subset in combinations(positions, size)
    )
    return _sort_subsets(subset for subset in candidates if is_closed_subset(word, subset))


def dimension_vector(word: StringWord, subset: Sequence[int]) -> DimensionVector:
    counts = [0] * word.n
    for position in subset:
        counts[word.indices[position - 1] - 1] += 1
    return tuple(counts)


def mu_counts(word: StringWord) -> Dict[DimensionVector, int]:
    """
    Числа μ_e: количество замкнутых I с dim M_I = e.

    Линейная динамика по позициям; состояние - принадлежит ли I предыдущая позиция.
    """
    zero = (0,) * word.n
    states: Dict[bool, Counter] = {False: Counter({zero: 1})}
    for position in range(1, word.d + 1):
        label_index = word.indices[position - 1] - 1
        following: Dict[bool, Counter] = {False: Counter(), True: Counter()}
        for previous_in, table in states.items():
            for current_in in (False, True):
                if position > 1 and not _allowed(word, position, previous_in, current_in):
                    continue
                for vector, count in table.items():
                    if current_in:
                        vector = vector[:label_index] + (vector[label_index] + 1,) + vector[label_index + 1:]
                    following[current_in][vector] += count
        states = following

    total: Counter = Counter()
    for table in states.values():
        total.update(table)
    return {vector: total[vector] for vector in sorted(total) if total[vector]}


def mu_counts_bruteforce(word: StringWord) -> Dict[DimensionVector, int]:
    total = Counter(dimension_vector(word, subset) for subset in closed_subsets_bruteforce(word))
    return {vector: total[vector] for vector in sorted(total)}


def interval_decomposition(subset: Sequence[int]) -> List[Tuple[int, int]]:
    """Разбиение I на максимальные отрезки подряд идущих позиций."""
    intervals: List[Tuple[int, int]] = []
    for position in sorted(set(subset)):
        if intervals and intervals[-1][1] == position - 1:
            intervals[-1] = (intervals[-1][0], position)
        else:
            intervals.append((position, position))
    return intervals


def socle_positions(word: StringWord) -> List[int]:
    """Позиции без исходящих букв (цоколь строкового модуля)."""
    return [p for p in range(1, word.d + 1) if not _has_letter(word, p, outgoing=True)]


def top_positions(word: StringWord) -> List[int]:
    """Позиции без входящих букв (верхушка строкового модуля)."""
    return [p for p in range(1, word.d + 1) if not _has_letter(word, p, outgoing=False)]


def _has_letter(word: StringWord, position: int, outgoing: bool) -> bool:
    right = word.letters[position - 1] if position <= len(word.letters) else None
    left = word.letters[position - 2] if position >= 2 else None
    away_right = right is not None and (right.direction == FORWARD) == outgoing
    away_left = left is not None and (left.direction == BACKWARD) == outgoing
    return away_right or away_left


def format_subset(subset: Sequence[int]) -> str:
    return "{" + ",".join(str(position) for position in subset) + "}"
