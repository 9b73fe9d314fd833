"""Inverting the moment map on the Hessenberg cross-section.

The section consists of matrices with ones on the subdiagonal, zeros below it and
a free upper triangle.  Each fiber of the moment map meets it in exactly one
point, found column by column without any root finding.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from gzsys.coords import GZCoord
from gzsys.errors import DomainError

_P = np.polynomial.polynomial


def _expand_in_basis(target: np.ndarray, basis: list[np.ndarray]) -> np.ndarray:
    """Coefficients of ``target`` in the monic basis ``basis[j]`` (degree j), j = 0..len-1.

    Successive division from the top degree down.
    """
    rem = np.zeros(len(basis), dtype=complex)
    rem[: len(target)] = target[: len(basis)]
    coef = np.zeros(len(basis), dtype=complex)
    for j in range(len(basis) - 1, -1, -1):
        coef[j] = rem[j]
        rem[: j + 1] -= coef[j] * basis[j]
    return coef


def invert_phi(c: GZCoord) -> np.ndarray:
    """The unique Hessenberg matrix (unit subdiagonal) with ``phi(x) == c``."""
    n = c.n
    x = np.zeros((n, n), dtype=complex)
    x[np.arange(1, n), np.arange(n - 1)] = 1.0
    g = [np.array([1.0 + 0j])]
    for m in range(1, n + 1):
        target = c.level_poly(m).full()
        # P_m - lam*g_{m-1} = -a_mm g_{m-1} - sum_{k<m} a_km g_{k-1}, from the
        # last-column expansion with +1 subdiagonal (sign fixed by the n=2,3 roundtrips).
        rest = _P.polysub(target, _P.polymulx(g[m - 1]))
        coef = _expand_in_basis(rest, g[:m])
        x[:m, m - 1] = -coef
        g.append(target)
    return x


def invert_phi_with_subdiag(c: GZCoord, z: Sequence[complex]) -> np.ndarray:
    """Section point with prescribed nonzero subdiagonal ``z``.

    Obtained from :func:`invert_phi` by conjugating with ``diag(1, z_1, z_1 z_2, ...)``.
    """
    z = np.asarray(z, dtype=complex).ravel()
    if z.size != c.n - 1:
        raise DomainError(f"subdiagonal needs {c.n - 1} entries, got {z.size}")
    if np.any(z == 0):
        raise DomainError("subdiagonal entries must be nonzero")
    scale = np.concatenate([[1.0 + 0j], np.cumprod(z)])
    x = invert_phi(c)
    return scale[:, None] * x / scale[None, :]


def in_section(x, tol: float = 1e-12) -> bool:
    """Whether ``x`` has unit subdiagonal and vanishes below it."""
    x = np.asarray(x)
    below = np.tril(x, k=-2)
    sub = np.diagonal(x, offset=-1)
    return bool(np.abs(below).max(initial=0) <= tol and np.abs(sub - 1).max(initial=0) <= tol)
