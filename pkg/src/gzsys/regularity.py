"""Regularity classifiers, centralizer bases and the tangent space of the GZ orbit.

Every subspace question is answered by a numerical rank computation over
flattened matrices, with the shared ``rank_tol``.  Degenerate inputs are
classified, never rejected.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from gzsys.linalg import (
    DEFAULT_TOL,
    ToleranceConfig,
    as_matrix,
    commutator,
    d,
    embed,
    numeric_rank,
)
from gzsys.errors import DomainError


@dataclass(frozen=True)
class CentralizerBasis:
    m: int
    powers: tuple  # embedded (x_m)^j, j = 0..m-1

    def generator(self, k: int) -> np.ndarray:
        """The generator ``(x_m)^(m-k)`` for k = 1..m."""
        return self.powers[self.m - k]


def centralizer_basis(x, m: int) -> CentralizerBasis:
    x = as_matrix(x)
    n = x.shape[0]
    if not 1 <= m <= n:
        raise DomainError(f"level m={m} out of range 1..{n}")
    xm = x[:m, :m]
    powers, p = [], np.eye(m, dtype=complex)
    for _ in range(m):
        powers.append(embed(p, n))
        p = p @ xm
    return CentralizerBasis(m, tuple(powers))


def all_generators(x) -> list[np.ndarray]:
    """All d(n) embedded powers ``(x_m)^(m-k)``, levels 1..n."""
    x = as_matrix(x)
    return [z for m in range(1, x.shape[0] + 1) for z in centralizer_basis(x, m).powers]


def is_regular_cutoff(x, m: int, tol: ToleranceConfig = DEFAULT_TOL) -> bool:
    return numeric_rank(centralizer_basis(x, m).powers, tol) == m


def is_strongly_regular(x, tol: ToleranceConfig = DEFAULT_TOL) -> bool:
    x = as_matrix(x)
    return numeric_rank(all_generators(x), tol) == d(x.shape[0])


def strong_regularity_failure(x, tol: ToleranceConfig = DEFAULT_TOL):
    """First reason the pairwise criterion fails, or None.

    Returns ``("regular", m)`` when the cutoff x_m is not regular and
    ``("intersection", m)`` when the centralizers at levels m and m+1 meet.
    """
    x = as_matrix(x)
    n = x.shape[0]
    bases = [centralizer_basis(x, m).powers for m in range(1, n + 1)]
    for m in range(1, n + 1):
        if numeric_rank(bases[m - 1], tol) != m:
            return ("regular", m)
    for m in range(1, n):
        if numeric_rank(bases[m - 1] + bases[m], tol) != 2 * m + 1:
            return ("intersection", m)
    return None


def is_strongly_regular_pairwise(x, tol: ToleranceConfig = DEFAULT_TOL) -> bool:
    return strong_regularity_failure(x, tol) is None


def tangent_space_basis(x) -> list[np.ndarray]:
    """Brackets ``[(x_m)^(m-k), x]`` for levels m = 1..n-1 (level n brackets vanish)."""
    x = as_matrix(x)
    n = x.shape[0]
    return [commutator(z, x) for m in range(1, n) for z in centralizer_basis(x, m).powers]


def orbit_dim(x, tol: ToleranceConfig = DEFAULT_TOL) -> int:
    basis = tangent_space_basis(x)
    if not basis:
        return 0
    return numeric_rank(basis, tol)


def symplectic_pairing(x, y, z) -> complex:
    """``tr(x [y, z])``, the orbit symplectic form evaluated on the fields of y and z."""
    return complex(np.trace(as_matrix(x) @ commutator(as_matrix(y), as_matrix(z))))


def isotropy_defect(x) -> float:
    """Largest ``|tr(x [z_a, z_b])|`` over pairs of centralizer generators."""
    gens = all_generators(x)
    return max((abs(symplectic_pairing(x, a, b)) for a, b in combinations(gens, 2)), default=0.0)
