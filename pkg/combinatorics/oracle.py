"""
Оракул кластерных переменных по флипам.

Поиск в ширину по триангуляциям, достижимым флипами из T0, синхронно с мутациями сида
с главными коэффициентами. Каждая новая дуга получает ключ - свою последовательность
пересечений относительно T0 (кривая переносится назад вдоль цепочки флипов). По ключу
ведётся память дуга -> кластерная переменная; два пути флипов, приписавшие одной дуге
разные переменные, означают противоречие.
"""

import logging
from collections import deque
from dataclasses import dataclass
from typing import Deque, Dict, List, Optional, Tuple

from algebra.cluster import Seed, initial_seed, mutate_seed
from algebra.laurent import LaurentPoly, render
from combinatorics.quiver import build_qp, signed_adjacency
from combinatorics.strings import CurveCrossing, arc_curve, curve_key, derive_curve
from combinatorics.surface import Triangulation, flip, flip_geometry, rotation_key, surface_stats
from utils.errors import ClusterError, OracleNotFound, SurfaceError
from utils.text_cleaner import truncate_text

logger = logging.getLogger(__name__)

DEFAULT_MAX_STATES = 100000


def flip_sync(triangulation: Triangulation, seed: Seed, k: int) -> Tuple[Triangulation, Seed]:
    """
    Флип дуги в позиции k кластера и мутация сида в том же направлении.

    Raises:
        SurfaceError: Дугу нельзя флипнуть
    """
    if not 1 <= k <= seed.n:
        raise ClusterError("index", f"direction {k} outside 1..{seed.n}")
    label = seed.labels[k - 1]
    return flip(triangulation, label), mutate_seed(seed, k)


# ============================================================================
# ПЕРЕНОС КРИВОЙ ЧЕРЕЗ ФЛИП
# ============================================================================

def transport_curve(
    triangulation: Triangulation,
    curve: CurveCrossing,
    label: str,
) -> Tuple[Triangulation, CurveCrossing]:
    """
    Выражает кривую относительно триангуляции после флипа дуги label.

    Вне четырёхугольника флипа шаги кривой не меняются. Каждый проход через четырёхугольник
    (не более одного пересечения старой диагонали) заменяется шагом в одном новом треугольнике
    или двумя шагами с пересечением новой диагонали.

    Returns:
        Tuple: (флипнутая триангуляция, кривая относительно неё)
    """
    flipped = flip(triangulation, label)
    t1, i, t2, j = flip_geometry(triangulation, label)

    if curve.is_arc:
        if curve.arc != label:
            return flipped, arc_curve(flipped, curve.arc)
        return flipped, derive_curve(flipped, t1, (label,))

    side_of = {
        (t1, (i + 1) % 3): "a", (t1, (i + 2) % 3): "b",
        (t2, (j + 1) % 3): "c", (t2, (j + 2) % 3): "d",
    }
    corner_of = {
        (t1, i): "Y", (t1, (i + 1) % 3): "X", (t1, (i + 2) % 3): "P",
        (t2, j): "X", (t2, (j + 1) % 3): "Y", (t2, (j + 2) % 3): "R",
    }
    located = {
        "a": (t2,), "b": (t1,), "c": (t1,), "d": (t2,),
        "P": (t1, t2), "Y": (t1,), "R": (t1, t2), "X": (t2,),
    }
    quad = (t1, t2)

    d = curve.d
    new_start: Optional[int] = None
    new_crossings: List[str] = []
    k = 0
    while k <= d:
        triangle = curve.triangles[k]
        if triangle not in quad:
            if k == 0:
                new_start = triangle
            if k < d:
                new_crossings.append(curve.crossings[k])
            k += 1
            continue

        last = k + 1 if k < d and curve.crossings[k] == label else k
        entry = corner_of[(triangle, curve.start_corner)] if k == 0 else side_of[(triangle, curve.entry_slots[k])]
        exit_element = (
            corner_of[(curve.triangles[last], curve.end_corner)] if last == d
            else side_of[(curve.triangles[last], curve.exit_slots[last])]
        )
        common = set(located[entry]) & set(located[exit_element])
        if {entry, exit_element} == {"P", "R"}:
            return flipped, arc_curve(flipped, label)
        if entry == exit_element:
            raise ClusterError("transport", f"curve enters and leaves the quadrilateral of {label} at {entry}")

        if common:
            steps = [min(common)]
        else:
            (entry_triangle,) = set(located[entry]) - set(located[exit_element])
            (exit_triangle,) = set(located[exit_element]) - set(located[entry])
            steps = [entry_triangle, exit_triangle]
        if k == 0:
            new_start = steps[0]
        if len(steps) == 2:
            new_crossings.append(label)
        if last < d:
            new_crossings.append(curve.crossings[last])
        k = last + 1

    if not new_crossings:
        raise ClusterError("transport", f"curve collapsed while flipping {label}")
    return flipped, derive_curve(flipped, new_start, new_crossings)


def _reindex(curve: CurveCrossing, source: Triangulation, target: Triangulation) -> CurveCrossing:
    """Переводит кривую с триангуляции source на изоморфную target (треугольники сопоставляются по содержимому)."""
    if curve.is_arc:
        return arc_curve(target, curve.arc)
    positions = {rotation_key(triangle): index for index, triangle in enumerate(target.triangles)}
    start = positions[rotation_key(source.triangles[curve.start])]
    return derive_curve(target, start, curve.crossings)


# ============================================================================
# ПОИСК В ШИРИНУ
# ============================================================================

@dataclass(frozen=True)
class OracleState:
    triangulation: Triangulation
    seed: Seed
    depth: int
    parent: Optional[int]
    flipped: Optional[str]
    arc_keys: Tuple[tuple, ...]


class FlipOracle:
    """
    Инкрементальный детерминированный поиск в ширину по графу флипов.

    Args:
        triangulation: Начальная триангуляция T0
        max_depth: Глубина поиска; для диска по умолчанию 2n², для остальных поверхностей обязательна
        max_states: Ограничение на число посещённых триангуляций
    """

    def __init__(
        self,
        triangulation: Triangulation,
        max_depth: Optional[int] = None,
        max_states: Optional[int] = None,
    ):
        self.triangulation = triangulation
        n = triangulation.n
        if max_depth is None:
            stats = surface_stats(triangulation)
            if (stats.genus, stats.boundaries) != (0, 1):
                raise ClusterError("depth-required", "max_depth must be given explicitly for surfaces other than a disc")
            max_depth = 2 * n * n
        if max_depth < 0:
            raise ClusterError("depth", f"max_depth must be non-negative, got {max_depth}")
        self.max_depth = max_depth
        self.max_states = max_states or DEFAULT_MAX_STATES

        labels = triangulation.internal_labels
        seed = initial_seed(signed_adjacency(build_qp(triangulation)), labels)
        keys = tuple(("arc", label) for label in labels)

        self.states: List[OracleState] = [OracleState(triangulation, seed, 0, None, None, keys)]
        self._seen = {tuple(sorted(keys))}
        self._queue: Deque[int] = deque([0])
        self._memo: Dict[tuple, LaurentPoly] = {key: variable for key, variable in zip(keys, seed.cluster)}
        self._curves: Dict[tuple, CurveCrossing] = {
            key: arc_curve(triangulation, label) for key, label in zip(keys, labels)
        }
        self.mutations = 0
        self.depth_reached = 0
        self.truncated = False

        logger.info(f"FlipOracle initialized: n={n}, max_depth={self.max_depth}, max_states={self.max_states}")

    @property
    def exhausted(self) -> bool:
        return not self._queue

    @property
    def memo(self) -> Dict[tuple, LaurentPoly]:
        return dict(self._memo)

    def _pull_back(self, state_index: int, curve: CurveCrossing) -> CurveCrossing:
        """Кривая относительно триангуляции состояния -> та же кривая относительно T0."""
        while True:
            state = self.states[state_index]
            if state.parent is None:
                return curve
            parent = self.states[state.parent]
            flipped, transported = transport_curve(state.triangulation, curve, state.flipped)
            curve = _reindex(transported, flipped, parent.triangulation)
            state_index = state.parent

    def _record(self, key: tuple, variable: LaurentPoly, curve: CurveCrossing) -> None:
        known = self._memo.get(key)
        if known is None:
            self._memo[key] = variable
            self._curves[key] = curve
            logger.debug(f"New arc {key}: {truncate_text(render(variable), 120)}")
        elif known != variable:
            raise ClusterError("inconsistent", f"arc {key} received two different cluster variables")

    def _expand(self, state_index: int) -> None:
        state = self.states[state_index]
        if state.depth >= self.max_depth:
            return
        for k, label in enumerate(state.seed.labels, start=1):
            try:
                triangulation = flip(state.triangulation, label)
            except SurfaceError as e:
                logger.debug(f"Skipping unflippable arc {label}: {e.code}")
                continue
            seed = mutate_seed(state.seed, k)
            self.mutations += 1

            child = OracleState(triangulation, seed, state.depth + 1, state_index, label, state.arc_keys)
            self.states.append(child)
            child_index = len(self.states) - 1
            curve = self._pull_back(child_index, arc_curve(triangulation, label))
            key = curve_key(curve)
            self._record(key, seed.cluster[k - 1], curve)

            keys = state.arc_keys[:k - 1] + (key,) + state.arc_keys[k:]
            state_key = tuple(sorted(keys))
            if state_key in self._seen:
                self.states.pop()
                continue
            self._seen.add(state_key)
            self.states[child_index] = OracleState(
                triangulation, seed, state.depth + 1, state_index, label, keys
            )
            self.depth_reached = max(self.depth_reached, child.depth)
            if len(self.states) >= self.max_states:
                self.truncated = True
                self._queue.clear()
                logger.warning(f"State limit {self.max_states} reached; search truncated at depth {child.depth}")
                return
            self._queue.append(child_index)

    def step(self) -> bool:
        """Раскрывает одно состояние очереди. Возвращает False, если очередь пуста."""
        if not self._queue:
            return False
        self._expand(self._queue.popleft())
        return True

    def variable_for(self, curve: CurveCrossing) -> LaurentPoly:
        """
        Кластерная переменная дуги (кривая задана относительно T0).

        Raises:
            OracleNotFound: Дуга не встретилась в пределах глубины
        """
        key = curve_key(curve)
        while key not in self._memo and self.step():
            pass
        if key not in self._memo:
            raise OracleNotFound(
                self.depth_reached if self.truncated else self.max_depth,
                f"arc {key} not reached within depth {self.max_depth}"
                + (" (state limit reached)" if self.truncated else ""),
            )
        return self._memo[key]

    def explore(self) -> Dict[tuple, LaurentPoly]:
        """Обходит весь граф обменов в пределах глубины."""
        logger.info("=" * 70)
        logger.info("Exploring the flip graph")
        logger.info("=" * 70)
        while self.step():
            pass
        logger.info(
            f"Flip graph explored: {len(self.states)} triangulations, {len(self._memo)} arcs, "
            f"{self.mutations} mutations ({self.mutations} exact divisions), depth reached {self.depth_reached}"
        )
        return self.memo

    def curve_for_key(self, key: tuple) -> CurveCrossing:
        try:
            return self._curves[key]
        except KeyError:
            raise ClusterError("unknown-key", f"arc {key} has not been reached") from None


def cluster_variable_by_flips(
    triangulation: Triangulation,
    curve: CurveCrossing,
    max_depth: Optional[int] = None,
    max_states: Optional[int] = None,
) -> LaurentPoly:
    """Кластерная переменная дуги, найденная поиском в ширину по флипам."""
    return FlipOracle(triangulation, max_depth, max_states).variable_for(curve)
