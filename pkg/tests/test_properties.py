"""
Случайные проверки законов с фиксированными зёрнами random.Random.
"""

import random
from functools import lru_cache

import numpy as np
import pytest

from algebra.cluster import initial_seed, mutate_matrix, mutate_sequence
from algebra.laurent import degree_of
from combinatorics.expansion import (
    cluster_character,
    exchange_matrix,
    expansion_modules,
    expansion_paths,
    index_of_curve,
    schiffler_thomas,
)
from combinatorics.paths import enumerate_paths, phi, psi, recognize_path
from combinatorics.strings import (
    closed_subsets,
    closed_subsets_bruteforce,
    mu_counts,
    mu_counts_bruteforce,
    reverse_curve,
    string_of_curve,
)
from combinatorics.surface import annulus, polygon
from tests.conftest import random_curve

SURFACES = [("polygon", corners, 0) for corners in range(5, 11)] + [
    ("annulus", outer, inner) for outer in (1, 2) for inner in (1, 2)
]


@lru_cache(maxsize=None)
def _surface(kind, first, second):
    return polygon(first) if kind == "polygon" else annulus(first, second)


def _case(seed):
    rng = random.Random(seed)
    triangulation = _surface(*rng.choice(SURFACES))
    return triangulation, random_curve(triangulation, rng, max_d=8)


@pytest.mark.parametrize("seed", range(200))
def test_expansion_laws(seed):
    triangulation, curve = _case(seed)
    word = string_of_curve(triangulation, curve)
    by_paths = expansion_paths(triangulation, curve)
    by_modules = expansion_modules(triangulation, curve)

    assert by_paths.polynomial == by_modules.polynomial
    assert by_paths.path_count == sum(by_modules.mu.values())
    assert degree_of(by_paths.polynomial, exchange_matrix(triangulation)) == index_of_curve(triangulation, curve)
    assert mu_counts(word) == mu_counts_bruteforce(word)
    assert closed_subsets(word) == closed_subsets_bruteforce(word)
    assert cluster_character(triangulation, curve) == schiffler_thomas(triangulation, curve)


@pytest.mark.parametrize("seed", range(200, 300))
def test_bijection_between_paths_and_subsets(seed):
    triangulation, curve = _case(seed)
    word = string_of_curve(triangulation, curve)
    for subset in closed_subsets(word):
        path = psi(triangulation, curve, subset, word)
        assert phi(path) == subset
        assert recognize_path(triangulation, curve, path.arcs) == path
    for path in enumerate_paths(triangulation, curve):
        assert psi(triangulation, curve, phi(path), word) == path


@pytest.mark.parametrize("seed", range(300, 400))
def test_reversal_keeps_the_expansion(seed):
    triangulation, curve = _case(seed)
    reverse = reverse_curve(triangulation, curve)
    assert expansion_paths(triangulation, reverse).polynomial == expansion_paths(triangulation, curve).polynomial


def _random_skew_symmetric(rng, n, rows):
    top = np.zeros((n, n), dtype=np.int64)
    for i in range(n):
        for j in range(i + 1, n):
            value = rng.randint(-3, 3)
            top[i, j] = value
            top[j, i] = -value
    bottom = np.array([[rng.randint(-3, 3) for _ in range(n)] for _ in range(rows)], dtype=np.int64).reshape(rows, n)
    return np.vstack([top, bottom])


@pytest.mark.parametrize("seed", range(100))
def test_matrix_mutation_is_an_involution(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 6)
    matrix = _random_skew_symmetric(rng, n, rng.randint(0, n))
    k = rng.randint(1, n)
    assert np.array_equal(mutate_matrix(mutate_matrix(matrix, k), k), matrix)


@pytest.mark.parametrize("seed", range(40))
def test_seed_mutation_is_an_involution(seed):
    rng = random.Random(seed)
    triangulation = polygon(6)
    start = initial_seed(exchange_matrix(triangulation), triangulation.internal_labels)
    depth = rng.randint(1, 4)
    directions = [rng.randint(1, triangulation.n) for _ in range(depth)]
    there = mutate_sequence(start, directions)
    assert mutate_sequence(there, list(reversed(directions))) == start
