"""
Слой бизнес-логики: поверхности, колчаны, строки, полные пути, оракул по флипам и разложение.

Модули:
    - surface: Триангуляции, проверка, (g, b, c, n), флип, построители polygon/annulus
    - quiver: Колчан с потенциалом и матрица B
    - strings: Кривые, строки w(Γ,γ), замкнутые подмножества и μ_e
    - paths: Полные (Γ,γ)-пути, ψ и φ, веса
    - oracle: Перенос кривых через флипы и поиск в ширину по графу флипов
    - expansion: Разложение обоими способами и отчёт проверки
"""

from combinatorics.expansion import (
    ExpansionResult,
    VerificationReport,
    expansion_modules,
    expansion_paths,
    index_of_curve,
    schiffler_thomas,
    verify_curve,
)
from combinatorics.oracle import FlipOracle, cluster_variable_by_flips, flip_sync, transport_curve
from combinatorics.paths import CompletePath, enumerate_paths, phi, psi
from combinatorics.quiver import QuiverWithPotential, build_qp, gentle_relations, signed_adjacency
from combinatorics.strings import CurveCrossing, StringWord, closed_subsets, derive_curve, mu_counts, string_of_curve
from combinatorics.surface import Triangulation, annulus, flip, polygon, surface_stats, validate

__all__ = [
    "Triangulation",
    "validate",
    "surface_stats",
    "flip",
    "polygon",
    "annulus",
    "QuiverWithPotential",
    "build_qp",
    "signed_adjacency",
    "gentle_relations",
    "CurveCrossing",
    "StringWord",
    "derive_curve",
    "string_of_curve",
    "closed_subsets",
    "mu_counts",
    "CompletePath",
    "psi",
    "phi",
    "enumerate_paths",
    "FlipOracle",
    "flip_sync",
    "transport_curve",
    "cluster_variable_by_flips",
    "ExpansionResult",
    "VerificationReport",
    "expansion_paths",
    "expansion_modules",
    "index_of_curve",
    "schiffler_thomas",
    "verify_curve",
]

__version__ = "1.0.0"
