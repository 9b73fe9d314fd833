"""Orthogonal polynomials of finitely supported measures and their Jacobi matrices.

Two independent routes are kept on purpose: :func:`orthonormal_polys` runs
Gram-Schmidt on the monomials, while :func:`jacobi_matrix` runs the Lanczos
(Stieltjes) iteration on the multiplication operator.  :func:`verify_monic_match`
checks that they agree.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from gzsys.coords import SpectrumTower, is_interlacing
from gzsys.errors import DomainError
from gzsys.linalg import DEFAULT_TOL, MonicPoly, ToleranceConfig, charpoly

_P = np.polynomial.polynomial
_PIVOT_TOL = 1e-12


@dataclass(frozen=True)
class DiscreteMeasure:
    nodes: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        nodes = np.asarray(self.nodes, dtype=float).ravel()
        weights = np.asarray(self.weights, dtype=float).ravel()
        if nodes.size != weights.size or nodes.size == 0:
            raise DomainError("nodes and weights must be nonempty and of equal length")
        if np.any(weights <= 0):
            raise DomainError("weights must be positive")
        if np.any(np.diff(nodes) <= 0):
            raise DomainError("nodes must be strictly increasing")
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "weights", weights)

    def __len__(self):
        return self.nodes.size

    def inner(self, f: np.ndarray, g: np.ndarray) -> float:
        """Inner product of two polynomials given by coefficients (lowest degree first)."""
        return float(np.sum(self.weights * _P.polyval(self.nodes, f) * _P.polyval(self.nodes, g)))


@dataclass(frozen=True)
class ThreeTermRecurrence:
    diag: np.ndarray
    offdiag: np.ndarray

    def matrix(self) -> np.ndarray:
        return np.diag(self.diag) + np.diag(self.offdiag, 1) + np.diag(self.offdiag, -1)


def _check_support(mu: DiscreteMeasure, n: int):
    if n < 1:
        raise DomainError("n must be positive")
    if len(mu) < n:
        raise DomainError(f"measure with {len(mu)} nodes cannot carry {n} orthonormal polynomials")


def orthonormal_polys(mu: DiscreteMeasure, n: int) -> list[np.ndarray]:
    """phi_0, ..., phi_{n-1} by Gram-Schmidt on 1, t, t^2, ... (two passes).

    Each polynomial is a coefficient vector (lowest degree first) with positive
    leading coefficient.
    """
    _check_support(mu, n)
    sw = np.sqrt(mu.weights)
    basis_vals: list[np.ndarray] = []
    basis_coef: list[np.ndarray] = []
    for k in range(n):
        coef = np.zeros(k + 1)
        coef[k] = 1.0
        vals = sw * mu.nodes**k
        for _ in range(2):
            for bv, bc in zip(basis_vals, basis_coef):
                r = bv @ vals
                vals = vals - r * bv
                coef[: bc.size] -= r * bc
        norm = np.linalg.norm(vals)
        if norm < _PIVOT_TOL * max(1.0, np.linalg.norm(sw * mu.nodes**k)):
            raise DomainError(f"Gram-Schmidt pivot vanished at degree {k}: support too small")
        basis_vals.append(vals / norm)
        basis_coef.append(coef / norm)
    return basis_coef


def _lanczos(mu: DiscreteMeasure, n: int) -> tuple[np.ndarray, np.ndarray]:
    q = np.sqrt(mu.weights / mu.weights.sum())
    Q = [q]
    alpha, beta = [], []
    for k in range(n):
        w = mu.nodes * Q[k]
        alpha.append(Q[k] @ w)
        if k == n - 1:
            break
        for _ in range(2):
            w = w - np.column_stack(Q) @ (np.column_stack(Q).T @ w)
        b = np.linalg.norm(w)
        if b < _PIVOT_TOL * max(1.0, np.abs(mu.nodes).max()):
            raise DomainError(f"Lanczos breakdown at step {k}: support too small")
        beta.append(b)
        Q.append(w / b)
    return np.array(alpha), np.array(beta)


def recurrence(mu: DiscreteMeasure, n: int) -> ThreeTermRecurrence:
    _check_support(mu, n)
    return ThreeTermRecurrence(*_lanczos(mu, n))


def jacobi_matrix(mu: DiscreteMeasure, n: int) -> np.ndarray:
    """Matrix of the truncated multiplication operator in the orthonormal basis."""
    return recurrence(mu, n).matrix()


def monic(p: np.ndarray) -> MonicPoly:
    return MonicPoly.from_full(p)


def monic_mismatch(mu: DiscreteMeasure, n: int) -> float:
    """Max coefficient gap between charpolys of Jacobi cutoffs and monic orthogonal polynomials."""
    if len(mu) < n + 1:
        raise DomainError(f"need at least {n + 1} nodes to compare degree-{n} polynomials")
    phis = orthonormal_polys(mu, n + 1)
    x = jacobi_matrix(mu, n)
    worst = 0.0
    for m in range(1, n + 1):
        gap = charpoly(x[:m, :m]).coeffs - monic(phis[m]).coeffs
        worst = max(worst, float(np.max(np.abs(gap))))
    return worst


def verify_monic_match(mu: DiscreteMeasure, n: int, tol: float = DEFAULT_TOL.eq_tol) -> bool:
    return monic_mismatch(mu, n) < tol


def recurrence_from_tower(t: SpectrumTower, tol: ToleranceConfig = DEFAULT_TOL) -> tuple[ThreeTermRecurrence, np.ndarray]:
    """Recover the Jacobi matrix with positive off-diagonal whose cutoff spectra are ``t``.

    Solves ``p_{m+1} = (lam - c_m) p_m - b_m p_{m-1}`` level by level by polynomial
    division; interlacing forces every ``b_m > 0``.
    """
    if not is_interlacing(t, tol):
        raise DomainError("tower is not interlacing")
    polys = [np.array([1.0])] + [np.real(_P.polyfromroots(np.real(lv))) for lv in t.levels]
    diag, off = [], []
    for m in range(1, t.n + 1):
        # p_m - lam p_{m-1} = -c p_{m-1} - b p_{m-2}
        rest = _P.polysub(polys[m], _P.polymulx(polys[m - 1]))
        rest = np.concatenate([rest, np.zeros(m + 1)])[:m]
        c = -rest[m - 1]
        diag.append(c)
        rem = rest + c * np.concatenate([polys[m - 1], [0]])[:m]
        if m >= 2:
            b = -rem[m - 2]
            if b <= 0:
                raise DomainError(f"non-positive recurrence coefficient b={b} at level {m}")
            off.append(np.sqrt(b))
            rem = rem + b * np.concatenate([polys[m - 2], np.zeros(2)])[:m]
        # a generic interlacing tower has d(n) degrees of freedom, a Jacobi matrix only 2n - 1
        scale = max(1.0, float(np.max(np.abs(polys[m]))))
        if np.max(np.abs(rem)) > tol.eq_tol * scale:
            raise DomainError(f"level {m} is not a three-term recurrence of the levels below: not a Jacobi tower")
    rec = ThreeTermRecurrence(np.array(diag), np.array(off))
    return rec, rec.matrix()


def interlaces(outer: Sequence[float], inner: Sequence[float]) -> bool:
    """Strict interlacing ``outer_1 < inner_1 < outer_2 < ... < inner_m < outer_{m+1}``."""
    outer, inner = np.sort(outer), np.sort(inner)
    if outer.size != inner.size + 1:
        return False
    chain = np.empty(outer.size + inner.size)
    chain[0::2], chain[1::2] = outer, inner
    return bool(np.all(np.diff(chain) > 0))
