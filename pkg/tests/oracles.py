"""Shared independent oracles used across test modules."""

import numpy as np

from reflectra.groups import GroupElement


def monomial_matrix(x: GroupElement) -> np.ndarray:
    """The complex monomial matrix with zeta^a_i in row i, column perm^{-1}(i)."""
    zeta = np.exp(2j * np.pi / x.r)
    matrix = np.zeros((x.n, x.n), dtype=complex)
    inverse_perm = {x.perm[j]: j for j in range(x.n)}
    for i in range(x.n):
        matrix[i, inverse_perm[i]] = zeta ** x.exponents[i]
    return matrix
