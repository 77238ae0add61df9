"""
Комбинаторная модель непроколотой отмеченной поверхности с триангуляцией.

Триангуляция задаётся списком дуг (внутренних и граничных) и списком треугольников.
Стороны треугольника (слоты) перечислены против часовой стрелки: слот s идёт от угла s
к углу s+1, поэтому угол c лежит напротив слота (c+1) % 3. Знак слота говорит, обходит ли
треугольник дугу в её собственном направлении (+) или в обратном (-).

Основные операции:
    - validate: проверка инвариантов с отчётом об ошибках
    - surface_stats: (g, b, c, n) по орбитам углов и граничным циклам
    - flip: замена внутренней дуги другой диагональю её четырёхугольника
    - polygon / annulus: построители тестовых триангуляций
"""

import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, List, NamedTuple, Optional, Sequence, Tuple

import networkx as nx

from utils.errors import SurfaceError

logger = logging.getLogger(__name__)

INTERNAL = "internal"
BOUNDARY = "boundary"

Corner = Tuple[int, int]


@dataclass(frozen=True)
class Arc:
    """Дуга триангуляции. У внутренних дуг есть индекс 1..n."""

    label: str
    kind: str
    index: Optional[int] = None

    @property
    def is_internal(self) -> bool:
        return self.kind == INTERNAL


@dataclass(frozen=True)
class Slot:
    label: str
    sign: int

    def __str__(self) -> str:
        return f"{'+' if self.sign > 0 else '-'}{self.label}"


@dataclass(frozen=True)
class Triangle:
    slots: Tuple[Slot, Slot, Slot]

    @property
    def labels(self) -> Tuple[str, str, str]:
        return tuple(slot.label for slot in self.slots)

    def slot_of(self, label: str) -> int:
        """Номер слота с данной дугой (первое вхождение)."""
        for position, slot in enumerate(self.slots):
            if slot.label == label:
                return position
        raise SurfaceError("not-an-edge", f"arc {label} is not an edge of triangle ({self})")

    def endpoints(self, position: int) -> Tuple[int, int]:
        """Углы (хвост, голова) дуги слота в её собственном направлении."""
        start, end = position, (position + 1) % 3
        return (start, end) if self.slots[position].sign > 0 else (end, start)

    def __str__(self) -> str:
        return " ".join(str(slot) for slot in self.slots)


class ValidationIssue(NamedTuple):
    kind: str
    message: str


@dataclass(frozen=True)
class ValidationReport:
    """Результат validate: пустой список ошибок означает корректную триангуляцию."""

    issues: Tuple[ValidationIssue, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.issues

    def raise_for_errors(self) -> None:
        if self.issues:
            first = self.issues[0]
            details = "; ".join(issue.message for issue in self.issues)
            raise SurfaceError(first.kind, details)


class SurfaceStats(NamedTuple):
    genus: int
    boundaries: int
    marked_points: int
    n: int

    def __str__(self) -> str:
        return f"g={self.genus} b={self.boundaries} c={self.marked_points} n={self.n}"


@dataclass(frozen=True)
class Triangulation:
    """
    Триангуляция: дуги и треугольники в порядке ввода.

    Все производные перечисления идут в порядке хранения треугольников.
    """

    arcs: Tuple[Arc, ...]
    triangles: Tuple[Triangle, ...]
    _lookup: Dict[str, Arc] = field(default=None, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "_lookup", {arc.label: arc for arc in self.arcs})

    @property
    def n(self) -> int:
        return sum(1 for arc in self.arcs if arc.is_internal)

    def arc(self, label: str) -> Arc:
        try:
            return self._lookup[label]
        except KeyError:
            raise SurfaceError("unknown-arc", f"unknown arc '{label}'") from None

    def has_arc(self, label: str) -> bool:
        return label in self._lookup

    @cached_property
    def internal_labels(self) -> Tuple[str, ...]:
        """Метки внутренних дуг в порядке индексов 1..n."""
        internal = sorted((arc for arc in self.arcs if arc.is_internal), key=lambda arc: arc.index)
        return tuple(arc.label for arc in internal)

    def index_of(self, label: str) -> int:
        arc = self.arc(label)
        if not arc.is_internal:
            raise SurfaceError("boundary-arc", f"arc {label} is a boundary arc")
        return arc.index

    @cached_property
    def occurrences(self) -> Dict[str, Tuple[Tuple[int, int], ...]]:
        """Для каждой метки: пары (номер треугольника, номер слота) в порядке хранения."""
        table: Dict[str, List[Tuple[int, int]]] = {}
        for t, triangle in enumerate(self.triangles):
            for s, slot in enumerate(triangle.slots):
                table.setdefault(slot.label, []).append((t, s))
        return {label: tuple(places) for label, places in table.items()}

    def other_side(self, label: str, triangle_index: int) -> Tuple[int, int]:
        """
        Треугольник по другую сторону внутренней дуги.

        Raises:
            SurfaceError: Граничная дуга, дуга не лежит в треугольнике или обе стороны в одном треугольнике
        """
        if not self.arc(label).is_internal:
            raise SurfaceError("boundary-arc", f"boundary arc {label} cannot be crossed")
        places = self.occurrences.get(label, ())
        if len(places) == 2 and places[0][0] == places[1][0]:
            raise SurfaceError("ambiguous-side", f"both sides of {label} lie in triangle {places[0][0] + 1}")
        others = [place for place in places if place[0] != triangle_index]
        if len(others) != 1 or len(places) != 2:
            raise SurfaceError(
                "not-an-edge", f"arc {label} is not an edge of triangle {triangle_index + 1}"
            )
        return others[0]


# ============================================================================
# ПРОВЕРКА
# ============================================================================

def validate(triangulation: Triangulation) -> ValidationReport:
    """
    Проверка инвариантов триангуляции.

    Returns:
        ValidationReport: Список нарушений (пустой, если всё корректно)
    """
    issues: List[ValidationIssue] = []

    labels = [arc.label for arc in triangulation.arcs]
    duplicates = sorted({label for label in labels if labels.count(label) > 1})
    for label in duplicates:
        issues.append(ValidationIssue("duplicate-arc-declaration", f"arc {label} declared more than once"))

    indices = sorted(arc.index for arc in triangulation.arcs if arc.is_internal)
    if indices != list(range(1, len(indices) + 1)):
        issues.append(ValidationIssue("internal-indices", f"internal indices {indices} are not 1..{len(indices)}"))

    if not triangulation.triangles:
        issues.append(ValidationIssue("empty", "triangulation has no triangles"))

    for t, triangle in enumerate(triangulation.triangles, start=1):
        if len(set(triangle.labels)) != 3:
            issues.append(ValidationIssue("duplicate-arc", f"triangle {t} lists the same arc twice ({triangle})"))
        for slot in triangle.slots:
            if not triangulation.has_arc(slot.label):
                issues.append(ValidationIssue("unknown-arc", f"triangle {t} uses undeclared arc {slot.label}"))

    for arc in triangulation.arcs:
        places = triangulation.occurrences.get(arc.label, ())
        if arc.is_internal:
            if len(places) != 2:
                issues.append(ValidationIssue(
                    "internal-occurrences", f"internal arc {arc.label} occurs {len(places)} times, expected 2"
                ))
                continue
            signs = [triangulation.triangles[t].slots[s].sign for t, s in places]
            if signs[0] == signs[1]:
                issues.append(ValidationIssue(
                    "equal-signs", f"internal arc {arc.label} occurs twice with the same sign"
                ))
        elif len(places) != 1:
            issues.append(ValidationIssue(
                "boundary-occurrences", f"boundary arc {arc.label} occurs {len(places)} times, expected 1"
            ))

    if triangulation.triangles and not issues:
        adjacency = nx.Graph()
        adjacency.add_nodes_from(range(len(triangulation.triangles)))
        for arc in triangulation.arcs:
            places = triangulation.occurrences.get(arc.label, ())
            if arc.is_internal and len(places) == 2:
                adjacency.add_edge(places[0][0], places[1][0])
        if not nx.is_connected(adjacency):
            issues.append(ValidationIssue("disconnected", "the triangles do not form a connected map"))

    if issues:
        logger.debug(f"Validation found {len(issues)} issue(s): {[issue.kind for issue in issues]}")
    return ValidationReport(tuple(issues))


# ============================================================================
# ТОПОЛОГИЯ
# ============================================================================

def corner_orbits(triangulation: Triangulation) -> Dict[Corner, int]:
    """
    Отмеченные точки как классы углов треугольников.

    Углы склеиваются вдоль внутренних дуг: хвост с хвостом, голова с головой.

    Returns:
        Dict: (треугольник, угол) -> номер отмеченной точки (с нуля, по минимальному углу класса)

    Raises:
        SurfaceError: Отмеченная точка не лежит на границе (прокол)
    """
    glue = nx.Graph()
    for t, _ in enumerate(triangulation.triangles):
        glue.add_nodes_from((t, c) for c in range(3))

    for arc in triangulation.arcs:
        places = triangulation.occurrences.get(arc.label, ())
        if not arc.is_internal or len(places) != 2:
            continue
        (t1, s1), (t2, s2) = places
        tail1, head1 = triangulation.triangles[t1].endpoints(s1)
        tail2, head2 = triangulation.triangles[t2].endpoints(s2)
        glue.add_edge((t1, tail1), (t2, tail2))
        glue.add_edge((t1, head1), (t2, head2))

    components = sorted((sorted(component) for component in nx.connected_components(glue)), key=lambda c: c[0])
    orbits: Dict[Corner, int] = {}
    for point, component in enumerate(components):
        for corner in component:
            orbits[corner] = point

    boundary = _boundary_graph(triangulation, orbits, len(components))
    punctures = [point for point in boundary.nodes if boundary.degree(point) != 2]
    if punctures:
        raise SurfaceError(
            "punctured", f"marked points {[p + 1 for p in punctures]} are not on a single boundary segment pair"
        )
    return orbits


def _boundary_graph(triangulation: Triangulation, orbits: Dict[Corner, int], points: int) -> nx.MultiGraph:
    boundary = nx.MultiGraph()
    boundary.add_nodes_from(range(points))
    for arc in triangulation.arcs:
        if arc.is_internal:
            continue
        for t, s in triangulation.occurrences.get(arc.label, ()):
            tail, head = triangulation.triangles[t].endpoints(s)
            boundary.add_edge(orbits[(t, tail)], orbits[(t, head)], label=arc.label)
    return boundary


def surface_stats(triangulation: Triangulation) -> SurfaceStats:
    """
    Топологические характеристики (g, b, c, n).

    c - число орбит углов, b - число граничных циклов, g из эйлеровой характеристики
    c - #дуг + #треугольников = 2 - 2g - b.

    Raises:
        SurfaceError: Нарушена формула n = 6g + 3b + c - 6
    """
    orbits = corner_orbits(triangulation)
    marked_points = len(set(orbits.values()))
    boundary = _boundary_graph(triangulation, orbits, marked_points)
    boundaries = sum(
        1 for component in nx.connected_components(boundary)
        if boundary.subgraph(component).number_of_edges() > 0
    )
    euler = marked_points - len(triangulation.arcs) + len(triangulation.triangles)
    doubled_genus = 2 - boundaries - euler
    n = triangulation.n
    if doubled_genus < 0 or doubled_genus % 2:
        raise SurfaceError("inconsistent-map", f"Euler characteristic {euler} with b={boundaries} gives no genus")
    genus = doubled_genus // 2
    if n != 6 * genus + 3 * boundaries + marked_points - 6:
        raise SurfaceError(
            "inconsistent-map",
            f"n={n} differs from 6g+3b+c-6 with g={genus}, b={boundaries}, c={marked_points}"
        )
    return SurfaceStats(genus, boundaries, marked_points, n)


def canonical_key(triangulation: Triangulation) -> Tuple[Tuple[str, str, str], ...]:
    """Ключ изоморфизма: отсортированные тройки меток в минимальном циклическом сдвиге (знаки игнорируются)."""
    return tuple(sorted(rotation_key(triangle) for triangle in triangulation.triangles))


def rotation_key(triangle: Triangle) -> Tuple[str, str, str]:
    labels = triangle.labels
    return min(labels[k:] + labels[:k] for k in range(3))


# ============================================================================
# ФЛИП
# ============================================================================

class FlipGeometry(NamedTuple):
    """
    Четырёхугольник флипа.

    t1/t2 - треугольники со стороной e (t1 с меньшим номером), i/j - её слоты в них.
    Углы: X = угол i+1 в t1, Y = угол i в t1, P и R - углы напротив e в t1 и t2.
    """

    t1: int
    i: int
    t2: int
    j: int


def flip_geometry(triangulation: Triangulation, label: str) -> FlipGeometry:
    arc = triangulation.arc(label)
    if not arc.is_internal:
        raise SurfaceError("boundary-arc", f"cannot flip boundary arc {label}")
    (t1, i), (t2, j) = triangulation.occurrences[label]
    if t1 == t2:
        raise SurfaceError("ambiguous-side", f"both sides of {label} lie in triangle {t1 + 1}; flip is undefined")
    return FlipGeometry(t1, i, t2, j)


def flip(triangulation: Triangulation, label: str) -> Triangulation:
    """
    Флип внутренней дуги: дуга сохраняет метку и становится другой диагональю.

    Два новых треугольника занимают места старых: (b, c, +e) на месте t1 и (d, a, -e) на месте t2,
    где a, b - стороны t1 после e, а c, d - стороны t2 после e.

    Raises:
        SurfaceError: Граничная дуга, обе стороны в одном треугольнике или получается самосклеенный треугольник
    """
    geometry = flip_geometry(triangulation, label)
    first = triangulation.triangles[geometry.t1].slots
    second = triangulation.triangles[geometry.t2].slots
    a, b = first[(geometry.i + 1) % 3], first[(geometry.i + 2) % 3]
    c, d = second[(geometry.j + 1) % 3], second[(geometry.j + 2) % 3]

    new_first = Triangle((b, c, Slot(label, 1)))
    new_second = Triangle((d, a, Slot(label, -1)))
    for triangle in (new_first, new_second):
        if len(set(triangle.labels)) != 3:
            raise SurfaceError("self-folded", f"flipping {label} would create triangle ({triangle})")

    triangles = list(triangulation.triangles)
    triangles[geometry.t1] = new_first
    triangles[geometry.t2] = new_second
    logger.debug(f"Flipped {label}: triangles {geometry.t1 + 1} and {geometry.t2 + 1} replaced")
    return Triangulation(triangulation.arcs, tuple(triangles))


# ============================================================================
# ПОСТРОИТЕЛИ
# ============================================================================

def _build(arcs: Sequence[Arc], triangles: Sequence[Sequence[Tuple[int, str]]]) -> Triangulation:
    triangulation = Triangulation(
        tuple(arcs),
        tuple(Triangle(tuple(Slot(label, sign) for sign, label in slots)) for slots in triangles),
    )
    validate(triangulation).raise_for_errors()
    return triangulation


def polygon(corners: int) -> Triangulation:
    """
    Веерная триангуляция диска с corners отмеченными точками v0..v_{c-1}.

    Внутренние дуги t_k = v0-v_{k+1} (k = 1..c-3), граничные b_i = v_{i-1}-v_i и b_c = v_{c-1}-v0.
    Треугольник m (m = 1..c-2) - это (v0, v_m, v_{m+1}).
    """
    if corners < 3:
        raise SurfaceError("parameters", f"a polygon needs at least 3 marked points, got {corners}")
    arcs = [Arc(f"t{k}", INTERNAL, k) for k in range(1, corners - 2)]
    arcs += [Arc(f"b{k}", BOUNDARY) for k in range(1, corners + 1)]

    triangles = []
    for m in range(1, corners - 1):
        spoke_in = (1, "b1") if m == 1 else (1, f"t{m - 1}")
        rim = (1, f"b{m + 1}")
        spoke_out = (1, f"b{corners}") if m + 1 == corners - 1 else (-1, f"t{m}")
        triangles.append((spoke_in, rim, spoke_out))
    return _build(arcs, triangles)


def annulus(outer: int, inner: int) -> Triangulation:
    """
    Стандартная триангуляция кольца: outer точек на одной границе, inner на другой.

    Все n = outer + inner внутренних дуг - мосты между границами.
    """
    if outer < 1 or inner < 1:
        raise SurfaceError("parameters", f"an annulus needs p >= 1 and q >= 1, got p={outer}, q={inner}")
    bridges = outer + inner
    arcs = [Arc(f"t{k}", INTERNAL, k) for k in range(1, bridges + 1)]
    arcs += [Arc(f"o{k}", BOUNDARY) for k in range(1, outer + 1)]
    arcs += [Arc(f"i{k}", BOUNDARY) for k in range(1, inner + 1)]

    def bridge(m: int) -> str:
        return f"t{m % bridges + 1}"

    triangles = []
    for m in range(bridges):
        if m < outer:
            triangles.append(((1, bridge(m + 1)), (-1, f"o{m + 1}"), (-1, bridge(m))))
        else:
            triangles.append(((1, f"i{m - outer + 1}"), (1, bridge(m + 1)), (-1, bridge(m))))
    return _build(arcs, triangles)
