"""Hamiltonian vector fields of the trace generators and the abelian group they integrate to.

The field of ``f_(k,m)`` at x is ``[(x_m)^(m-k), x]``; its flow is conjugation
by ``exp(t (x_m)^(m-k))``, which lies in the centralizer of the cutoff x_m.  A
group word collects one centralizer element per level m = 1..n-1, always built
from the base point x, and acts by

    x -> Ad g(1) ... Ad g(n-1) (x)        (g(n-1) innermost).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, NamedTuple, Sequence

import numpy as np

from gzsys.coords import trace_invariant
from gzsys.errors import DomainError, NumericalError
from gzsys.linalg import (
    DEFAULT_TOL,
    ToleranceConfig,
    as_matrix,
    commutator,
    embed_group,
    mat_exp,
)
from gzsys.regularity import centralizer_basis, is_strongly_regular


class FlowKey(NamedTuple):
    k: int
    m: int


def _check_key(key, n: int) -> FlowKey:
    key = FlowKey(*key)
    if not 1 <= key.k <= key.m <= n - 1:
        raise DomainError(f"flow key {tuple(key)} invalid for n={n} (need 1 <= k <= m <= n-1)")
    return key


@dataclass(frozen=True)
class GroupWord:
    """Coefficients ``t(m)_k`` of ``z(m) = sum_k t(m)_k (x_m)^(m-k)`` for m = 1..n-1."""

    levels: tuple

    def __post_init__(self):
        levels = tuple(np.asarray(t, dtype=complex).ravel() for t in self.levels)
        for m, t in enumerate(levels, start=1):
            if t.size != m:
                raise DomainError(f"word level {m} must have {m} coefficients, got {t.size}")
        object.__setattr__(self, "levels", levels)

    @property
    def n(self) -> int:
        return len(self.levels) + 1

    @classmethod
    def zeros(cls, n: int) -> "GroupWord":
        return cls(tuple(np.zeros(m, dtype=complex) for m in range(1, n)))

    @classmethod
    def single(cls, n: int, key, t: complex) -> "GroupWord":
        key = _check_key(key, n)
        w = cls.zeros(n)
        w.levels[key.m - 1][key.k - 1] = t
        return w

    @classmethod
    def from_flat(cls, n: int, flat: Sequence[complex]) -> "GroupWord":
        flat = np.asarray(flat, dtype=complex).ravel()
        if flat.size != n * (n - 1) // 2:
            raise DomainError(f"flat word for n={n} needs {n * (n - 1) // 2} entries")
        return cls(tuple(flat[m * (m - 1) // 2 : m * (m + 1) // 2] for m in range(1, n)))

    def flat(self) -> np.ndarray:
        return np.concatenate(self.levels) if self.levels else np.zeros(0, dtype=complex)

    def __add__(self, other: "GroupWord") -> "GroupWord":
        return GroupWord(tuple(a + b for a, b in zip(self.levels, other.levels)))

    def __neg__(self) -> "GroupWord":
        return GroupWord(tuple(-a for a in self.levels))

    def __mul__(self, s: complex) -> "GroupWord":
        return GroupWord(tuple(s * a for a in self.levels))

    __rmul__ = __mul__


def vector_field(x, key) -> np.ndarray:
    x = as_matrix(x)
    key = _check_key(key, x.shape[0])
    return commutator(centralizer_basis(x, key.m).generator(key.k), x)


def _level_exponent(x, m: int, t: np.ndarray) -> np.ndarray:
    """The m x m centralizer element ``sum_k t_k (x_m)^(m-k)``."""
    basis = centralizer_basis(x, m)
    return sum(t[k - 1] * basis.generator(k)[:m, :m] for k in range(1, m + 1))


def level_group_elements(x, w: GroupWord) -> list[np.ndarray]:
    """The n x n group elements g(1), ..., g(n-1) of ``w`` anchored at x."""
    x = as_matrix(x)
    n = x.shape[0]
    if w.n != n:
        raise DomainError(f"word is for n={w.n}, matrix has n={n}")
    out = []
    for m, t in enumerate(w.levels, start=1):
        if not np.any(t):
            out.append(np.eye(n, dtype=complex))
        else:
            out.append(embed_group(mat_exp(_level_exponent(x, m, t)), n))
    return out


_EIGENBASIS_COND_LIMIT = 1e8


def _conjugate_level(x, m: int, t: np.ndarray, y: np.ndarray) -> np.ndarray:
    """``Ad(g (+) Id)(y)`` for ``g = exp(z)``, z the level-m centralizer element of word coefficients t.

    Inside ``act`` the leading block of y is x_m, which commutes with g, so only
    the off-diagonal blocks move: ``y12 -> g y12`` and ``y21 -> y21 g^-1``.
    Keeping the leading block untouched avoids the ``exp(lam_i - lam_j)``
    amplification of rounding that a full conjugation would incur.  When x_m is
    diagonalizable, g is applied in its eigenbasis without being formed.
    """
    y12, y21 = y[:m, m:], y[m:, :m]
    mu, v = np.linalg.eig(x[:m, :m])
    with np.errstate(over="raise", invalid="raise"):
        try:
            if np.linalg.cond(v) >= _EIGENBASIS_COND_LIMIT:
                g = mat_exp(_level_exponent(x, m, t))
                top, left = g @ y12, np.linalg.solve(g.T, y21.T).T
            else:
                # eigenvalues of z are sum_k t_k mu^(m-k)
                lam = np.polynomial.polynomial.polyval(mu, t[::-1])
                top = v @ (np.exp(lam)[:, None] * np.linalg.solve(v, y12))
                left = np.linalg.solve(v.T, ((y21 @ v) * np.exp(-lam)[None, :]).T).T
        except FloatingPointError as exc:
            raise NumericalError(f"flow overflowed: {exc}") from exc
    out = y.copy()
    out[:m, m:], out[m:, :m] = top, left
    if not np.all(np.isfinite(out)):
        raise NumericalError("flow overflowed")
    return out


def act(x, w: GroupWord) -> np.ndarray:
    """Apply a group word: ``Ad g(1) ... Ad g(n-1) (x)`` with every g(m) built from x."""
    x = as_matrix(x)
    n = x.shape[0]
    if w.n != n:
        raise DomainError(f"word is for n={w.n}, matrix has n={n}")
    y = x
    for m in range(n - 1, 0, -1):
        t = w.levels[m - 1]
        if np.any(t):
            y = _conjugate_level(x, m, t, y)
    return y


def flow(x, key, t: complex) -> np.ndarray:
    x = as_matrix(x)
    return act(x, GroupWord.single(x.shape[0], key, t))


# A polynomial in the trace generators: {((k, m), power), ...} monomial -> coefficient.
TracePoly = Mapping[tuple, complex]


def _monomial(mono) -> dict:
    powers: dict = {}
    for key, e in mono:
        key = FlowKey(*key)
        powers[key] = powers.get(key, 0) + int(e)
    return powers


def trace_poly_gradient(p: TracePoly, x) -> dict:
    """Partial derivatives ``dp/df_(k,m)`` evaluated at the trace generators of x."""
    x = as_matrix(x)
    n = x.shape[0]
    values: dict = {}

    def val(key):
        if key not in values:
            if not 1 <= key.k <= key.m <= n:
                raise DomainError(f"trace generator {tuple(key)} invalid for n={n}")
            values[key] = trace_invariant(x, key.k, key.m)
        return values[key]

    grad: dict = {}
    for mono, coef in p.items():
        powers = _monomial(mono)
        for key, e in powers.items():
            if e == 0:
                continue
            term = coef * e * val(key) ** (e - 1)
            for other, e2 in powers.items():
                if other != key:
                    term *= val(other) ** e2
            grad[key] = grad.get(key, 0) + term
    return grad


def flow_general(x, p: TracePoly, t: complex) -> np.ndarray:
    """Flow of the field of a polynomial in the trace generators.

    The partials ``h = dp/df_(k,m)`` are constant along the orbit, so the flow is
    the group word with ``t(m)_k = t * h_(k,m)``.  Level-n partials drop out because
    those generators are Casimirs.
    """
    x = as_matrix(x)
    n = x.shape[0]
    w = GroupWord.zeros(n)
    for key, h in trace_poly_gradient(p, x).items():
        if key.m < n:
            w.levels[key.m - 1][key.k - 1] += t * h
    return act(x, w)


def general_vector_field(x, p: TracePoly) -> np.ndarray:
    x = as_matrix(x)
    n = x.shape[0]
    out = np.zeros_like(x)
    for key, h in trace_poly_gradient(p, x).items():
        if key.m < n:
            out += h * vector_field(x, key)
    return out


def diag_action(x, s: Sequence[complex]) -> np.ndarray:
    """Conjugation by ``exp(sum_m s_m embed(I_m))``, the composite of the (m, m) flows."""
    x = as_matrix(x)
    n = x.shape[0]
    s = np.asarray(s, dtype=complex).ravel()
    if s.size != n - 1:
        raise DomainError(f"diag_action needs {n - 1} parameters, got {s.size}")
    # entry i of the diagonal is exp(sum_{m >= i} s_m)
    expo = np.concatenate([np.cumsum(s[::-1])[::-1], [0.0]])
    g = np.exp(expo)
    return g[:, None] * x / g[None, :]


def sign_diag_action(x, eps: Sequence[int]) -> np.ndarray:
    """``rho x rho`` with ``rho = diag(eps_1, ..., eps_{n-1}, 1)``, eps_i = +-1."""
    x = as_matrix(x)
    eps = np.asarray(eps).ravel()
    if eps.size != x.shape[0] - 1 or not np.all(np.isin(eps, (-1, 1))):
        raise DomainError("eps must be n-1 signs in {-1, +1}")
    rho = np.append(eps, 1).astype(float)
    return rho[:, None] * x * rho[None, :]


def transpose_residual(x, w: GroupWord) -> float:
    """``max |(a.x)^T - a^{-1}.x^T|`` with the inverse word anchored at x^T."""
    x = as_matrix(x)
    return float(np.max(np.abs(act(x, w).T - act(x.T, -w))))


def transpose_equivariance_check(x, w: GroupWord, tol: ToleranceConfig = DEFAULT_TOL) -> bool:
    return transpose_residual(x, w) <= tol.eq_tol


def orbit_injectivity_check(x, w1: GroupWord, w2: GroupWord, tol: ToleranceConfig = DEFAULT_TOL) -> bool:
    """Whether ``act(x, w1) == act(x, w2)`` exactly when ``w1 == w2`` (within eq_tol).

    Meaningful for small words, away from the kernel of the exponential.
    """
    x = as_matrix(x)
    if not is_strongly_regular(x, tol):
        raise DomainError("orbit injectivity is only asserted at strongly regular points")
    same_word = np.max(np.abs(w1.flat() - w2.flat()), initial=0.0) <= tol.eq_tol
    same_point = np.max(np.abs(act(x, w1) - act(x, w2))) <= tol.eq_tol
    return bool(same_word == same_point)
