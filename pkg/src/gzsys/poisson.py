"""Lie-Poisson brackets on M(n), exactly and numerically.

The exact engine works with polynomials in the entry functions ``a_ij`` with
rational coefficients.  On linear functions the bracket is

    [a_ij, a_st] = delta_js a_it - delta_ti a_sj,

extended to all polynomials by the Leibniz rule.  Numerically this reads
``[f, g](x) = tr(x [grad g, grad f])`` where ``tr(grad f(x) v)`` is the
derivative of f at x along v.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations, permutations
from typing import Callable, Mapping

import numpy as np

from gzsys.errors import DomainError
from gzsys.linalg import as_matrix, commutator, embed

MAX_SYMBOLIC_N = 4


def _perm_sign(p) -> int:
    sign, seen = 1, [False] * len(p)
    for i in range(len(p)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = p[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


class SymPoly:
    """Polynomial in the n^2 entry variables with exact rational coefficients.

    Terms map exponent tuples (row-major over (i, j)) to nonzero ``Fraction``s.
    """

    __slots__ = ("n", "_terms")

    def __init__(self, n: int, terms: Mapping[tuple, Fraction] | None = None):
        self.n = n
        clean = {}
        for mono, coef in (terms or {}).items():
            coef = Fraction(coef)
            if coef != 0:
                if len(mono) != n * n:
                    raise DomainError(f"monomial {mono} has wrong arity for n={n}")
                clean[tuple(mono)] = coef
        self._terms = clean

    # -- construction -------------------------------------------------
    @classmethod
    def var(cls, n: int, i: int, j: int) -> "SymPoly":
        """The entry function a_ij (1-based)."""
        if not (1 <= i <= n and 1 <= j <= n):
            raise DomainError(f"variable a_{i}{j} out of range for n={n}")
        mono = [0] * (n * n)
        mono[(i - 1) * n + (j - 1)] = 1
        return cls(n, {tuple(mono): Fraction(1)})

    @classmethod
    def const(cls, n: int, value) -> "SymPoly":
        return cls(n, {(0,) * (n * n): Fraction(value)})

    # -- inspection ---------------------------------------------------
    @property
    def terms(self) -> list[tuple[tuple, Fraction]]:
        """Terms in graded-lexicographic order (highest first)."""
        return sorted(self._terms.items(), key=lambda t: (sum(t[0]), t[0]), reverse=True)

    def is_zero(self) -> bool:
        return not self._terms

    def degree(self) -> int:
        return max((sum(m) for m in self._terms), default=-1)

    def __len__(self):
        return len(self._terms)

    def __eq__(self, other):
        if isinstance(other, SymPoly):
            return self.n == other.n and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self == SymPoly.const(self.n, other)
        return NotImplemented

    def __hash__(self):
        return hash((self.n, frozenset(self._terms.items())))

    def __repr__(self):
        return f"SymPoly({self})"

    def __str__(self):
        if not self._terms:
            return "0"
        n = self.n
        parts = []
        for mono, coef in self.terms:
            factors = []
            for idx, e in enumerate(mono):
                if e:
                    name = f"a_{idx // n + 1}{idx % n + 1}"
                    factors.append(name if e == 1 else f"{name}^{e}")
            body = "*".join(factors)
            if not body:
                parts.append(str(coef))
            elif coef == 1:
                parts.append(body)
            elif coef == -1:
                parts.append(f"-{body}")
            else:
                parts.append(f"{coef}*{body}")
        return " + ".join(parts).replace("+ -", "- ")

    # -- arithmetic ---------------------------------------------------
    def _check(self, other: "SymPoly"):
        if self.n != other.n:
            raise DomainError("polynomials live on different matrix sizes")

    def _coerce(self, other) -> "SymPoly":
        if isinstance(other, SymPoly):
            self._check(other)
            return other
        return SymPoly.const(self.n, other)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self._terms)
        for mono, coef in other._terms.items():
            out[mono] = out.get(mono, 0) + coef
        return SymPoly(self.n, out)

    __radd__ = __add__

    def __neg__(self):
        return SymPoly(self.n, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        out: dict = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                mono = tuple(a + b for a, b in zip(m1, m2))
                out[mono] = out.get(mono, 0) + c1 * c2
        return SymPoly(self.n, out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        out = SymPoly.const(self.n, 1)
        for _ in range(e):
            out = out * self
        return out

    def diff(self, i: int, j: int) -> "SymPoly":
        """Partial derivative with respect to a_ij (1-based)."""
        idx = (i - 1) * self.n + (j - 1)
        out = {}
        for mono, coef in self._terms.items():
            e = mono[idx]
            if e:
                m = list(mono)
                m[idx] -= 1
                out[tuple(m)] = coef * e
        return SymPoly(self.n, out)

    def __call__(self, x) -> complex:
        x = np.asarray(x, dtype=complex).ravel()
        total = 0j
        for mono, coef in self._terms.items():
            term = complex(coef)
            for idx, e in enumerate(mono):
                if e:
                    term *= x[idx] ** e
            total += term
        return total

    def evaluate_exact(self, x) -> Fraction:
        """Exact value at a matrix of rationals/integers."""
        flat = [Fraction(v) for v in np.asarray(x, dtype=object).ravel()]
        total = Fraction(0)
        for mono, coef in self._terms.items():
            term = coef
            for idx, e in enumerate(mono):
                if e:
                    term *= flat[idx] ** e
            total += term
        return total


def sym_bracket(f: SymPoly, g: SymPoly) -> SymPoly:
    """Exact Lie-Poisson bracket of two entry polynomials."""
    f._check(g)
    n = f.n
    df = {(i, j): f.diff(i, j) for i in range(1, n + 1) for j in range(1, n + 1)}
    dg = {(i, j): g.diff(i, j) for i in range(1, n + 1) for j in range(1, n + 1)}
    df = {k: v for k, v in df.items() if not v.is_zero()}
    dg = {k: v for k, v in dg.items() if not v.is_zero()}
    out = SymPoly(n)
    for (i, j), fij in df.items():
        for (s, t), gst in dg.items():
            lin = SymPoly(n)
            if j == s:
                lin = lin + SymPoly.var(n, i, t)
            if t == i:
                lin = lin - SymPoly.var(n, s, j)
            if not lin.is_zero():
                out = out + fij * gst * lin
    return out


def principal_minor_sum(n: int, m: int, r: int) -> SymPoly:
    """Sum of the r x r principal minors of the m x m cutoff (elementary symmetric e_r)."""
    total = SymPoly(n)
    for rows in combinations(range(1, m + 1), r):
        for perm in permutations(range(r)):
            term = SymPoly.const(n, _perm_sign(perm))
            for a, b in enumerate(perm):
                term = term * SymPoly.var(n, rows[a], rows[b])
            total = total + term
    return total


def gz_generators_symbolic(n: int) -> dict[tuple[int, int], SymPoly]:
    """The d(n) coefficient functions ``f_{k,m}``, keyed by (k, m)."""
    if not 1 <= n <= MAX_SYMBOLIC_N:
        raise DomainError(f"symbolic generators are limited to 1 <= n <= {MAX_SYMBOLIC_N}")
    return {(k, m): principal_minor_sum(n, m, m - k + 1) for m in range(1, n + 1) for k in range(1, m + 1)}


def verify_gz_commutativity(n: int) -> dict:
    """Bracket every pair of generators exactly; report the nonzero ones."""
    gens = gz_generators_symbolic(n)
    keys = list(gens)
    nonzero = []
    pairs = list(combinations(keys, 2))
    for a, b in pairs:
        if not sym_bracket(gens[a], gens[b]).is_zero():
            nonzero.append((a, b))
    return {"n": n, "pairs": len(pairs), "all_zero": not nonzero, "nonzero": nonzero}


def symbolic_from_expr(n: int, text: str) -> SymPoly:
    """Parse an expression in the variables ``a_ij`` (e.g. ``"a_11*a_22 - a_12^2"``)."""
    import sympy

    names = {f"a_{i}{j}": (i, j) for i in range(1, n + 1) for j in range(1, n + 1)}
    symbols = {name: sympy.Symbol(name) for name in names}
    try:
        expr = sympy.sympify(text.replace("^", "**"), locals=symbols)
    except (sympy.SympifyError, SyntaxError, TypeError) as exc:
        raise DomainError(f"cannot parse polynomial {text!r}: {exc}") from exc
    unknown = {str(s) for s in expr.free_symbols} - set(names)
    if unknown:
        raise DomainError(f"unknown variables {sorted(unknown)} for n={n}")
    gens = [symbols[k] for k in names]
    poly = sympy.Poly(expr, *gens) if gens else None
    out = {}
    for mono, coef in poly.terms():
        if not coef.is_Rational:
            raise DomainError(f"coefficient {coef} is not rational")
        out[tuple(mono)] = Fraction(int(coef.p), int(coef.q))
    return SymPoly(n, out)


# -- numerical side ---------------------------------------------------------------

Gradient = Callable[[np.ndarray], np.ndarray]


def num_bracket(grad_f: Gradient, grad_g: Gradient, x) -> complex:
    """``[f, g](x) = tr(x [grad g(x), grad f(x)])``."""
    x = as_matrix(x)
    return complex(np.trace(x @ commutator(grad_g(x), grad_f(x))))


def entry_gradient(i: int, j: int) -> Gradient:
    """Gradient of a_ij: the matrix unit e_ji, since tr(e_ji v) = v_ij."""

    def grad(x):
        g = np.zeros_like(as_matrix(x))
        g[j - 1, i - 1] = 1.0
        return g

    return grad


def trace_generator_gradient(k: int, m: int) -> Gradient:
    """Gradient of ``tr(x_m^(m+1-k)) / (m+1-k)``: the embedded power ``(x_m)^(m-k)``."""

    def grad(x):
        x = as_matrix(x)
        if not 1 <= k <= m <= x.shape[0]:
            raise DomainError(f"index (k={k}, m={m}) out of range")
        return embed(np.linalg.matrix_power(x[:m, :m], m - k), x.shape[0])

    return grad


def symbolic_gradient(f: SymPoly) -> Gradient:
    n = f.n
    parts = {(i, j): f.diff(i, j) for i in range(1, n + 1) for j in range(1, n + 1)}

    def grad(x):
        g = np.zeros((n, n), dtype=complex)
        for (i, j), p in parts.items():
            g[j - 1, i - 1] = p(x)
        return g

    return grad


def fd_gradient(f: Callable[[np.ndarray], complex], x, h: float = 1e-5) -> np.ndarray:
    """Central-difference gradient in the trace pairing."""
    x = as_matrix(x)
    n = x.shape[0]
    g = np.zeros((n, n), dtype=complex)
    for i in range(n):
        for j in range(n):
            e = np.zeros((n, n), dtype=complex)
            e[i, j] = h
            g[j, i] = (f(x + e) - f(x - e)) / (2 * h)
    return g


def gradient_check(k: int, m: int, x, h: float) -> float:
    """Largest gap between central differences of f_(k,m) and ``tr((x_m)^(m-k) v)``
    over the matrix-unit directions v."""
    from gzsys.coords import trace_invariant

    if not 1e-6 <= h <= 1e-3:
        raise DomainError("step h must lie in [1e-6, 1e-3]")
    x = as_matrix(x)
    exact = trace_generator_gradient(k, m)(x)
    approx = fd_gradient(lambda y: trace_invariant(y, k, m), x, h)
    return float(np.max(np.abs(exact - approx)))


def product_gradient(terms: list[tuple[complex, list[tuple[int, int, int]]]]) -> tuple[Callable, Gradient]:
    """Value and gradient of a polynomial in trace generators.

    ``terms`` is a list of ``(coef, [(k, m, power), ...])``.
    """
    from gzsys.coords import trace_invariant

    def value(x):
        return sum(c * np.prod([trace_invariant(x, k, m) ** e for k, m, e in mono]) for c, mono in terms)

    def grad(x):
        x = as_matrix(x)
        out = np.zeros_like(x)
        for c, mono in terms:
            vals = [trace_invariant(x, k, m) for k, m, _ in mono]
            for idx, (k, m, e) in enumerate(mono):
                if e == 0:
                    continue
                factor = c * e * vals[idx] ** (e - 1)
                for jdx, (_, _, e2) in enumerate(mono):
                    if jdx != idx:
                        factor *= vals[jdx] ** e2
                out = out + factor * trace_generator_gradient(k, m)(x)
        return out

    return value, grad
