"""Dense complex matrix substrate.

Matrices are plain ``numpy`` complex arrays of shape ``(n, n)``; every function
here is pure and returns fresh arrays.  Levels ``m`` are 1-based throughout, to
match the usual way cutoffs are written.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
import scipy.linalg

from gzsys.errors import DomainError, NumericalError


@dataclass(frozen=True)
class ToleranceConfig:
    rank_tol: float = 1e-9
    eq_tol: float = 1e-8
    disjoint_tol: float = 1e-7

    def __post_init__(self):
        for name in ("rank_tol", "eq_tol", "disjoint_tol"):
            if not getattr(self, name) > 0:
                raise DomainError(f"{name} must be strictly positive")


DEFAULT_TOL = ToleranceConfig()


@dataclass(frozen=True)
class MonicPoly:
    """Monic polynomial ``lambda**degree + sum(coeffs[j] * lambda**j)``.

    ``coeffs`` holds the non-leading coefficients, lowest degree first.
    """

    coeffs: np.ndarray = field(default_factory=lambda: np.zeros(0, dtype=complex))

    def __post_init__(self):
        object.__setattr__(self, "coeffs", np.asarray(self.coeffs, dtype=complex).ravel())

    @property
    def degree(self) -> int:
        return len(self.coeffs)

    def full(self) -> np.ndarray:
        """All coefficients including the leading one, lowest degree first."""
        return np.append(self.coeffs, 1.0 + 0j)

    def __call__(self, lam):
        return np.polynomial.polynomial.polyval(lam, self.full())

    @classmethod
    def from_full(cls, full: Sequence[complex]) -> "MonicPoly":
        full = np.asarray(full, dtype=complex)
        if full.size == 0 or full[-1] == 0:
            raise DomainError("leading coefficient must be nonzero")
        return cls(full[:-1] / full[-1])

    @classmethod
    def from_roots(cls, roots: Sequence[complex]) -> "MonicPoly":
        return cls.from_full(np.polynomial.polynomial.polyfromroots(np.asarray(roots, dtype=complex)))

    def __eq__(self, other):
        if not isinstance(other, MonicPoly):
            return NotImplemented
        return self.degree == other.degree and np.array_equal(self.coeffs, other.coeffs)

    def __hash__(self):
        return hash(self.coeffs.tobytes())


def as_matrix(x) -> np.ndarray:
    """Validate and convert to a square complex array."""
    a = np.array(x, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] == 0:
        raise DomainError(f"expected a nonempty square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise DomainError("matrix entries must be finite")
    return a


def d(n: int) -> int:
    """Triangular number n(n+1)/2."""
    return n * (n + 1) // 2


def _check_level(m: int, n: int, top: int | None = None):
    top = n if top is None else top
    if not 1 <= m <= top:
        raise DomainError(f"level m={m} out of range 1..{top}")


def cutoff(x, m: int) -> np.ndarray:
    x = as_matrix(x)
    _check_level(m, x.shape[0])
    return x[:m, :m].copy()


def embed(z, n: int) -> np.ndarray:
    z = as_matrix(z)
    m = z.shape[0]
    if m > n:
        raise DomainError(f"cannot embed {m}x{m} block into size {n}")
    out = np.zeros((n, n), dtype=complex)
    out[:m, :m] = z
    return out


def embed_group(g, n: int) -> np.ndarray:
    """Embed an invertible m x m block as ``g (+) Id`` in GL(n)."""
    g = as_matrix(g)
    out = np.eye(n, dtype=complex)
    m = g.shape[0]
    out[:m, :m] = g
    return out


def hessenberg_charpolys(h: np.ndarray) -> list[np.ndarray]:
    """Char polys of all leading cutoffs of an upper Hessenberg matrix.

    Returns full coefficient arrays (lowest degree first) ``g_0 = 1, ..., g_n``,
    from the last-column expansion
    ``g_m = (lam - h_mm) g_{m-1} - sum_k h_km * prod(h_{j+1,j}, j=k..m-1) * g_{k-1}``.
    """
    h = np.asarray(h, dtype=complex)
    n = h.shape[0]
    P = np.polynomial.polynomial
    polys = [np.array([1.0 + 0j])]
    for m in range(1, n + 1):
        # 0-based column index c = m-1
        c = m - 1
        g = P.polysub(P.polymulx(polys[m - 1]), h[c, c] * polys[m - 1])
        sub = 1.0 + 0j
        for k in range(m - 1, 0, -1):
            # row k-1 (0-based); subdiagonal product h[k,k-1] * ... * h[m-1,m-2]
            sub *= h[k, k - 1]
            g = P.polysub(g, h[k - 1, c] * sub * polys[k - 1])
        polys.append(np.concatenate([g, np.zeros(m + 1 - len(g))])[: m + 1])
    return polys


def charpoly(x) -> MonicPoly:
    """``det(lam I - x)`` via Hessenberg reduction and the Hessenberg determinant recurrence."""
    x = as_matrix(x)
    h = scipy.linalg.hessenberg(x)
    return MonicPoly(hessenberg_charpolys(h)[-1][:-1])


def lex_order(values: Sequence[complex], tol: float = DEFAULT_TOL.eq_tol) -> np.ndarray:
    """Indices sorting complex numbers by real part, then imaginary part.

    Real parts within ``tol`` of each other (chained) count as tied.
    """
    vals = np.asarray(values, dtype=complex).ravel()
    if vals.size == 0:
        return np.zeros(0, dtype=int)
    idx = np.argsort(vals.real, kind="stable")
    out, group = [], [idx[0]]
    for i in idx[1:]:
        if abs(vals[i].real - vals[group[-1]].real) <= tol:
            group.append(i)
        else:
            out.extend(sorted(group, key=lambda j: vals[j].imag))
            group = [i]
    out.extend(sorted(group, key=lambda j: vals[j].imag))
    return np.array(out, dtype=int)


def lex_sort(values: Sequence[complex], tol: float = DEFAULT_TOL.eq_tol) -> np.ndarray:
    vals = np.asarray(values, dtype=complex).ravel()
    return vals[lex_order(vals, tol)]


def eigenvalues_ordered(p: MonicPoly, tol: ToleranceConfig = DEFAULT_TOL) -> np.ndarray:
    """Roots of ``p`` (with multiplicity) from its companion matrix, lexicographically sorted."""
    if p.degree == 0:
        return np.zeros(0, dtype=complex)
    comp = np.zeros((p.degree, p.degree), dtype=complex)
    comp[1:, :-1] = np.eye(p.degree - 1)
    comp[:, -1] = -p.coeffs
    try:
        roots = np.linalg.eigvals(comp)
    except np.linalg.LinAlgError as exc:
        raise NumericalError(f"companion eigensolver did not converge: {exc}") from exc
    return lex_sort(roots, tol.eq_tol)


def numeric_rank(vectors: Sequence[np.ndarray], tol: ToleranceConfig = DEFAULT_TOL) -> int:
    """Rank of a family of matrices viewed as flat vectors (relative SVD threshold)."""
    if len(vectors) == 0:
        raise DomainError("numeric_rank needs a nonempty family")
    shapes = {np.shape(v) for v in vectors}
    if len(shapes) != 1:
        raise DomainError(f"dimension mismatch in rank family: {sorted(shapes)}")
    stack = np.array([np.asarray(v, dtype=complex).ravel() for v in vectors])
    s = np.linalg.svd(stack, compute_uv=False)
    if s.size == 0 or s[0] == 0:
        return 0
    return int(np.sum(s > tol.rank_tol * s[0]))


_EIG_COND_LIMIT = 1e8


def mat_exp(z) -> np.ndarray:
    """Matrix exponential.

    Uses the eigendecomposition when the eigenvector matrix is well conditioned
    (cond < 1e8), otherwise scaling-and-squaring with a Pade kernel.
    """
    z = as_matrix(z)
    if not np.any(z):
        return np.eye(z.shape[0], dtype=complex)
    with np.errstate(over="raise", invalid="raise"):
        try:
            w, v = np.linalg.eig(z)
            if np.linalg.cond(v) < _EIG_COND_LIMIT:
                out = (v * np.exp(w)) @ np.linalg.inv(v)
            else:
                out = scipy.linalg.expm(z)
        except (FloatingPointError, np.linalg.LinAlgError) as exc:
            raise NumericalError(f"matrix exponential failed: {exc}") from exc
    if not np.all(np.isfinite(out)):
        raise NumericalError("matrix exponential overflowed")
    return out


def trace_form(x, y) -> complex:
    """The trace form ``B(x, y) = tr(x y)``."""
    x, y = as_matrix(x), as_matrix(y)
    if x.shape != y.shape:
        raise DomainError("trace_form needs matrices of equal size")
    return complex(np.sum(x * y.T))


def commutator(a, b) -> np.ndarray:
    return a @ b - b @ a


def strict_upper(x) -> np.ndarray:
    return np.triu(as_matrix(x), k=1)


def component_in_Y(x, m: int) -> np.ndarray:
    """Entries ``x[0:m, m]`` (column m+1 above the diagonal, 1-based)."""
    x = as_matrix(x)
    _check_level(m, x.shape[0], x.shape[0] - 1)
    return x[:m, m].copy()


def unit(n: int, i: int, j: int) -> np.ndarray:
    """Matrix unit e_ij (1-based indices)."""
    e = np.zeros((n, n), dtype=complex)
    e[i - 1, j - 1] = 1.0
    return e
