"""
Алгебраический слой: точные многочлены Лорана и мутации сидов с главными коэффициентами.
"""

from algebra.cluster import (
    Seed,
    c_vectors,
    f_polynomial,
    g_vector,
    initial_seed,
    mutate_matrix,
    mutate_seed,
    mutate_sequence,
    y_hat,
)
from algebra.laurent import (
    LaurentPoly,
    degree_of,
    denominator_vector,
    divide_exact,
    monomial,
    parse,
    render,
    specialize,
)

__all__ = [
    "LaurentPoly",
    "monomial",
    "divide_exact",
    "specialize",
    "degree_of",
    "denominator_vector",
    "parse",
    "render",
    "Seed",
    "initial_seed",
    "mutate_matrix",
    "mutate_seed",
    "mutate_sequence",
    "y_hat",
    "c_vectors",
    "f_polynomial",
    "g_vector",
]

__version__ = "1.0.0"
