"""Geometry of generic fibers: normal form, the strict-upper chart, symmetric points.

All constructions here diagonalize a cutoff x_m and work in its eigenbasis,
where the next level looks like

    [[diag(mu), a], [b^T, d]],   p_{m+1}(mu_i) = -a_i b_i prod_{j != i} (mu_i - mu_j).

They require the fiber data to be eigenvalue-disjoint, which keeps every
``a_i b_i`` away from zero.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from gzsys.coords import GZCoord, is_disjoint, phi, same_fiber
from gzsys.errors import DomainError, NumericalError
from gzsys.flows import GroupWord
from gzsys.linalg import DEFAULT_TOL, ToleranceConfig, as_matrix, d, embed_group, lex_order, numeric_rank


@dataclass(frozen=True)
class NormalFormResult:
    canonical: np.ndarray
    word: GroupWord


@dataclass(frozen=True)
class SymmetricFiber:
    c: GZCoord
    members: tuple
    sign_index: tuple

    def __len__(self):
        return len(self.members)

    def signs(self, i: int) -> np.ndarray:
        """Sign vector of member i, grouped by level (level-1 bit first)."""
        bits = self.sign_index[i]
        return np.array([-1 if bits >> b & 1 else 1 for b in range(d(self.c.n - 1))])


def is_cyclic(x, m: int, v: Sequence[complex], tol: ToleranceConfig = DEFAULT_TOL) -> bool:
    """Whether ``v`` generates C^m under the cutoff x_m (Krylov rank m)."""
    x = as_matrix(x)
    if not 1 <= m <= x.shape[0] - 1:
        raise DomainError(f"level m={m} out of range 1..{x.shape[0] - 1}")
    v = np.asarray(v, dtype=complex).ravel()
    if v.size != m:
        raise DomainError(f"vector must have length {m}")
    if not np.any(v):
        return False
    krylov = [v]
    for _ in range(m - 1):
        krylov.append(x[:m, :m] @ krylov[-1])
    return numeric_rank(krylov, tol) == m


def _require_disjoint(c: GZCoord, tol: ToleranceConfig):
    if not is_disjoint(c, tol):
        raise DomainError("fiber data is not eigenvalue-disjoint")


def _eig(xm: np.ndarray, tol: ToleranceConfig):
    mu, v = np.linalg.eig(xm)
    idx = lex_order(mu, tol.eq_tol)
    return mu[idx], v[:, idx]


def _rescale_in_eigenbasis(y: np.ndarray, v: np.ndarray, scale: np.ndarray) -> np.ndarray:
    """Conjugate y by ``(V diag(scale) V^-1) (+) Id``."""
    n = y.shape[0]
    m = v.shape[0]
    s = np.ones(n, dtype=complex)
    s[:m] = scale
    vv = embed_group(v, n)
    yb = np.linalg.solve(vv, y @ vv)
    yb = s[:, None] * yb / s[None, :]
    return vv @ np.linalg.solve(vv.T, yb.T).T


def normal_form(x, tol: ToleranceConfig = DEFAULT_TOL) -> NormalFormResult:
    """Move x along its orbit into the lower Hessenberg space with unit superdiagonal.

    Walks down the levels m = n-1, ..., 1, using the torus of x_m to send the
    column above the diagonal at position m+1 to the unit vector e_m.
    """
    x = as_matrix(x)
    n = x.shape[0]
    _require_disjoint(phi(x), tol)
    y = x
    levels = [None] * (n - 1)
    for m in range(n - 1, 0, -1):
        mu, v = _eig(x[:m, :m], tol)
        col = np.linalg.solve(v, y[:m, m])
        target = np.linalg.solve(v, np.eye(m)[:, m - 1])
        if np.min(np.abs(col)) <= tol.eq_tol * max(1.0, np.max(np.abs(col))):
            raise NumericalError(f"column at level {m} is not cyclic (near the boundary of Omega)")
        ratio = target / col
        y = _rescale_in_eigenbasis(y, v, ratio)
        # log(ratio_i) = sum_k t_k mu_i^(m-k)
        vander = np.vander(mu, m)
        levels[m - 1] = np.linalg.solve(vander, np.log(ratio))
    return NormalFormResult(y, GroupWord(tuple(levels)))


def a_conjugate_test(x, y, tol: ToleranceConfig = DEFAULT_TOL) -> bool:
    """Whether x and y lie in one orbit of the group (both must be eigenvalue-disjoint)."""
    x, y = as_matrix(x), as_matrix(y)
    _require_disjoint(phi(x), tol)
    _require_disjoint(phi(y), tol)
    if not same_fiber(x, y, tol):
        return False
    diff = normal_form(x, tol).canonical - normal_form(y, tol).canonical
    return bool(np.max(np.abs(diff)) <= tol.eq_tol)


def beta(x) -> list[np.ndarray]:
    """Strict-upper data: for m = 1..n-1 the entries above the diagonal in column m+1."""
    x = as_matrix(x)
    return [x[:m, m].copy() for m in range(1, x.shape[0])]


def beta_matrix(u: Sequence[np.ndarray]) -> np.ndarray:
    """Pack strict-upper data into a strictly upper triangular matrix."""
    n = len(u) + 1
    out = np.zeros((n, n), dtype=complex)
    for m, col in enumerate(u, start=1):
        out[:m, m] = col
    return out


def _unpack_u(u, n: int) -> list[np.ndarray]:
    if isinstance(u, np.ndarray) and u.ndim == 2:
        return [u[:m, m] for m in range(1, n)]
    u = [np.asarray(col, dtype=complex).ravel() for col in u]
    if len(u) != n - 1 or any(col.size != m for m, col in enumerate(u, start=1)):
        raise DomainError(f"strict-upper data must have columns of length 1..{n - 1}")
    return u


def _residues(p_next, mu: np.ndarray) -> np.ndarray:
    """``p_next(mu_i) / prod_{j != i} (mu_i - mu_j)``."""
    diffs = mu[:, None] - mu[None, :]
    np.fill_diagonal(diffs, 1.0)
    return p_next(mu) / np.prod(diffs, axis=1)


def beta_inverse(c: GZCoord, u, tol: ToleranceConfig = DEFAULT_TOL) -> np.ndarray:
    """The unique point of the fiber over c with strict-upper part u."""
    _require_disjoint(c, tol)
    n = c.n
    cols = _unpack_u(u, n)
    x = np.array([[c.f(1, 1)]], dtype=complex)
    for m in range(1, n):
        mu, v = _eig(x, tol)
        a = np.linalg.solve(v, cols[m - 1])
        if np.min(np.abs(a)) <= tol.eq_tol * max(1.0, np.max(np.abs(cols[m - 1]))):
            raise DomainError(f"strict-upper column {m + 1} is not cyclic for the cutoff x_{m}")
        b = -_residues(c.level_poly(m + 1), mu) / a
        corner = c.f(m + 1, m + 1) - np.trace(x)
        row = np.linalg.solve(v.T, b)  # b^T V^-1
        x = np.block([[x, cols[m - 1][:, None]], [row[None, :], np.array([[corner]])]])
    return x


def _principal_sqrt(z: np.ndarray) -> np.ndarray:
    r = np.sqrt(np.asarray(z, dtype=complex))
    flip = (r.real < 0) | ((r.real == 0) & (r.imag < 0))
    return np.where(flip, -r, r)


def _orthogonal_eig(xm: np.ndarray, tol: ToleranceConfig):
    """Eigen-decomposition ``xm = V diag(mu) V^T`` with ``V^T V = I`` for a symmetric xm."""
    if np.isrealobj(xm):
        return np.linalg.eigh(xm)
    mu, v = _eig(xm, tol)
    norms = np.einsum("ij,ij->j", v, v)
    if np.min(np.abs(norms)) < 1e-10:
        raise NumericalError("isotropic eigenvector: complex-orthogonal normalization failed")
    return mu, v / np.sqrt(norms)[None, :]


def symmetric_fiber(c: GZCoord, tol: ToleranceConfig = DEFAULT_TOL) -> SymmetricFiber:
    """All 2^d(n-1) symmetric matrices over an eigenvalue-disjoint c.

    Each level m contributes m sign bits; bit ``d(m-1) + i - 1`` of the sign index
    chooses the sign of the square root for the i-th eigenvalue of x_m (in
    ascending lexicographic order).  Members are returned sorted by sign index.
    """
    _require_disjoint(c, tol)
    n = c.n
    f11 = c.f(1, 1)
    start = np.array([[f11.real if f11.imag == 0 else f11]])

    # breadth-first over levels, sharing prefixes
    frontier = [(0, start)]
    for m in range(1, n):
        p_next = c.level_poly(m + 1)
        grown = []
        for bits, xm in frontier:
            mu, v = _orthogonal_eig(xm, tol)
            a_sq = -_residues(p_next, mu.astype(complex))
            corner = c.f(m + 1, m + 1) - np.trace(xm)
            real = np.isrealobj(xm) and np.all(np.abs(a_sq.imag) == 0) and np.all(a_sq.real > 0) and corner.imag == 0
            root = _principal_sqrt(a_sq)
            if real:
                root, corner = root.real, corner.real
            for choice in range(2**m):
                signs = np.array([-1.0 if choice >> i & 1 else 1.0 for i in range(m)])
                col = v @ (signs * root)
                nxt = np.block([[xm, col[:, None]], [col[None, :], np.array([[corner]])]])
                grown.append((bits | choice << d(m - 1), nxt))
        frontier = grown

    frontier.sort(key=lambda item: item[0])
    scale = max(1.0, float(np.max(np.abs(c.values))))
    # f_{k,m} has degree m-k+1; evaluating it on entries of size s costs about eps * s^degree
    degree = np.concatenate([np.arange(m, 0, -1) for m in range(1, n + 1)])
    for bits, xm in frontier:
        size = max(1.0, np.linalg.norm(xm, 2))
        allowed = np.maximum(tol.eq_tol * scale, 1e3 * np.finfo(float).eps * size**degree)
        if np.any(np.abs(phi(xm) - c) > allowed):
            raise NumericalError(f"symmetric member {bits} misses the fiber (near-degenerate data)")
    return SymmetricFiber(c, tuple(x for _, x in frontier), tuple(b for b, _ in frontier))


def is_jacobi(x, tol: ToleranceConfig = DEFAULT_TOL) -> bool:
    """Tridiagonal with nonvanishing entries on both adjacent diagonals."""
    x = as_matrix(x)
    i, j = np.indices(x.shape)
    band = np.abs(i - j)
    return bool(np.all(np.abs(x[band > 1]) <= tol.eq_tol) and np.all(np.abs(x[band == 1]) > tol.eq_tol))


def jacobi_members(f: SymmetricFiber, tol: ToleranceConfig = DEFAULT_TOL) -> list[np.ndarray]:
    return [x for x in f.members if is_jacobi(x, tol)]


def diag_sign_orbit(x) -> list[np.ndarray]:
    """Conjugates ``rho x rho`` for all ``rho = diag(eps_1, ..., eps_{n-1}, 1)``.

    Little-endian: bit i of the index flips eps_{i+1}.
    """
    x = as_matrix(x)
    n = x.shape[0]
    out = []
    for bits in range(2 ** (n - 1)):
        rho = np.array([-1.0 if bits >> i & 1 else 1.0 for i in range(n - 1)] + [1.0])
        out.append(rho[:, None] * x * rho[None, :])
    return out
