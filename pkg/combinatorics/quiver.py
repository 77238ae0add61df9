"""
Колчан с потенциалом (Q, W) триангуляции и его знаковая матрица смежности B.

Стрелки идут внутри каждого треугольника от слота s к слоту s+1 (обе стороны внутренние):
при обходе против часовой стрелки первая сторона - предшественник второй по часовой стрелке
в их общем углу. Каждый внутренний треугольник даёт 3-цикл потенциала.
"""

import logging
from dataclasses import dataclass
from typing import FrozenSet, List, NamedTuple, Tuple

import numpy as np

from combinatorics.surface import Triangulation
from utils.errors import QuiverError

logger = logging.getLogger(__name__)


class Arrow(NamedTuple):
    """Стрелка source -> target, засвидетельствованная треугольником triangle (с нуля)."""

    source: str
    target: str
    triangle: int

    def __str__(self) -> str:
        return f"{self.source} -> {self.target} (triangle {self.triangle + 1})"


@dataclass(frozen=True)
class QuiverWithPotential:
    vertices: Tuple[str, ...]
    arrows: Tuple[Arrow, ...]
    potential_cycles: Tuple[Tuple[Arrow, Arrow, Arrow], ...]

    def index_of(self, label: str) -> int:
        """
        Raises:
            QuiverError: label не является вершиной колчана (граничная или неизвестная дуга)
        """
        try:
            return self.vertices.index(label) + 1
        except ValueError:
            raise QuiverError("unknown-vertex", f"{label} is not a vertex of the quiver") from None

    def has_arrow(self, arrow: Arrow) -> bool:
        return arrow in self.arrows


def build_qp(triangulation: Triangulation) -> QuiverWithPotential:
    """
    Строит колчан с потенциалом по триангуляции.

    Args:
        triangulation: Корректная триангуляция

    Returns:
        QuiverWithPotential: Стрелки отсортированы по (источник, цель, треугольник)
    """
    vertices = triangulation.internal_labels
    order = {label: position for position, label in enumerate(vertices)}
    arrows: List[Arrow] = []
    cycles = []

    for t, triangle in enumerate(triangulation.triangles):
        labels = triangle.labels
        internal = [label in order for label in labels]
        local = [
            Arrow(labels[s], labels[(s + 1) % 3], t)
            for s in range(3)
            if internal[s] and internal[(s + 1) % 3]
        ]
        arrows.extend(local)
        if all(internal):
            cycles.append(tuple(local))

    arrows.sort(key=lambda arrow: (order[arrow.source], order[arrow.target], arrow.triangle))
    logger.debug(f"Quiver built: {len(vertices)} vertices, {len(arrows)} arrows, {len(cycles)} potential cycles")
    return QuiverWithPotential(tuple(vertices), tuple(arrows), tuple(cycles))


def signed_adjacency(qp: QuiverWithPotential) -> np.ndarray:
    """
    Матрица B: b_ij = #(стрелок j -> i) - #(стрелок i -> j).

    Returns:
        np.ndarray: Кососимметричная целочисленная матрица n x n
    """
    n = len(qp.vertices)
    matrix = np.zeros((n, n), dtype=np.int64)
    for arrow in qp.arrows:
        source = qp.index_of(arrow.source) - 1
        target = qp.index_of(arrow.target) - 1
        matrix[target, source] += 1
        matrix[source, target] -= 1
    return matrix


def gentle_relations(qp: QuiverWithPotential) -> FrozenSet[Tuple[Arrow, Arrow]]:
    """Запрещённые композиции длины 2: три последовательные пары каждого 3-цикла потенциала."""
    forbidden = set()
    for cycle in qp.potential_cycles:
        for position in range(3):
            forbidden.add((cycle[position], cycle[(position + 1) % 3]))
    return frozenset(forbidden)


def render_qp(qp: QuiverWithPotential) -> List[str]:
    lines = ["vertices " + " ".join(qp.vertices)]
    lines += [f"arrow {arrow}" for arrow in qp.arrows]
    for cycle in qp.potential_cycles:
        chain = " -> ".join(arrow.source for arrow in cycle)
        lines.append(f"cycle {chain} (triangle {cycle[0].triangle + 1})")
    return lines
