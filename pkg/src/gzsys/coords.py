"""Gelfand-Zeitlin coordinates: the moment map, spectrum towers and fiber predicates.

Coordinates are stored flat, with ``f_{k,m}`` at 0-based position ``d(m-1) + k - 1``.
The sign convention is

    det(lam I_m - x_m) = lam^m + sum_k (-1)^(m-k+1) f_{k,m}(x) lam^(k-1),

so ``f_{k,m}`` is the elementary symmetric function of degree ``m-k+1`` in the
eigenvalues of the cutoff ``x_m``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import pairwise
from typing import Sequence

import numpy as np

from gzsys.errors import DomainError
from gzsys.linalg import (
    DEFAULT_TOL,
    MonicPoly,
    ToleranceConfig,
    as_matrix,
    charpoly,
    cutoff,
    d,
    eigenvalues_ordered,
    lex_sort,
)


def _level_signs(m: int) -> np.ndarray:
    # sign (-1)^(m-k+1) for k = 1..m
    return np.array([(-1.0) ** (m - k + 1) for k in range(1, m + 1)])


@dataclass(frozen=True)
class GZCoord:
    n: int
    values: np.ndarray

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=complex).ravel()
        if vals.size != d(self.n):
            raise DomainError(f"GZCoord for n={self.n} needs {d(self.n)} values, got {vals.size}")
        object.__setattr__(self, "values", vals)

    def f(self, k: int, m: int) -> complex:
        if not 1 <= k <= m <= self.n:
            raise DomainError(f"index (k={k}, m={m}) out of range for n={self.n}")
        return complex(self.values[d(m - 1) + k - 1])

    def level(self, m: int) -> np.ndarray:
        if not 1 <= m <= self.n:
            raise DomainError(f"level {m} out of range 1..{self.n}")
        return self.values[d(m - 1) : d(m)].copy()

    def level_poly(self, m: int) -> MonicPoly:
        """The level-m polynomial whose roots are the cutoff spectrum E_c(m)."""
        return MonicPoly(_level_signs(m) * self.level(m))

    def __sub__(self, other: "GZCoord") -> np.ndarray:
        return self.values - other.values


@dataclass(frozen=True)
class SpectrumTower:
    levels: tuple

    def __post_init__(self):
        levels = tuple(np.asarray(lv, dtype=complex).ravel() for lv in self.levels)
        for m, lv in enumerate(levels, start=1):
            if lv.size != m:
                raise DomainError(f"tower level {m} must have {m} entries, got {lv.size}")
        object.__setattr__(self, "levels", levels)

    @property
    def n(self) -> int:
        return len(self.levels)

    def __getitem__(self, m: int) -> np.ndarray:
        """Level m (1-based)."""
        return self.levels[m - 1]


def coord_from_polys(polys: Sequence[MonicPoly]) -> GZCoord:
    vals = [_level_signs(p.degree) * p.coeffs for p in polys]
    return GZCoord(len(polys), np.concatenate(vals) if vals else np.zeros(0))


def phi(x) -> GZCoord:
    x = as_matrix(x)
    n = x.shape[0]
    return coord_from_polys([charpoly(cutoff(x, m)) for m in range(1, n + 1)])


def tower_from_coord(c: GZCoord, tol: ToleranceConfig = DEFAULT_TOL) -> SpectrumTower:
    return SpectrumTower(tuple(eigenvalues_ordered(c.level_poly(m), tol) for m in range(1, c.n + 1)))


def coord_from_tower(t: SpectrumTower) -> GZCoord:
    return coord_from_polys([MonicPoly.from_roots(lv) for lv in t.levels])


def tower(*levels) -> SpectrumTower:
    """Build a tower from level lists, sorting each level lexicographically."""
    return SpectrumTower(tuple(lex_sort(lv) for lv in levels))


def tower_from_matrix(x, tol: ToleranceConfig = DEFAULT_TOL) -> SpectrumTower:
    return tower_from_coord(phi(x), tol)


def trace_invariant(x, k: int, m: int) -> complex:
    """The trace generator ``tr(x_m^(m+1-k)) / (m+1-k)``."""
    x = as_matrix(x)
    if not 1 <= k <= m <= x.shape[0]:
        raise DomainError(f"index (k={k}, m={m}) out of range for n={x.shape[0]}")
    p = m + 1 - k
    return complex(np.trace(np.linalg.matrix_power(x[:m, :m], p)) / p)


def same_fiber(x, y, tol: ToleranceConfig = DEFAULT_TOL) -> bool:
    x, y = as_matrix(x), as_matrix(y)
    if x.shape != y.shape:
        raise DomainError("same_fiber needs matrices of equal size")
    return bool(np.max(np.abs(phi(x) - phi(y))) <= tol.eq_tol)


def _as_tower(c, tol: ToleranceConfig) -> SpectrumTower:
    return c if isinstance(c, SpectrumTower) else tower_from_coord(c, tol)


def is_disjoint(c, tol: ToleranceConfig = DEFAULT_TOL) -> bool:
    """Eigenvalue disjointness: simple spectra at each level, no shared values between adjacent levels.

    Accepts a ``GZCoord`` or a ``SpectrumTower``.
    """
    t = _as_tower(c, tol)
    for lv in t.levels:
        gaps = np.abs(lv[:, None] - lv[None, :])[np.triu_indices(lv.size, 1)]
        if gaps.size and gaps.min() <= tol.disjoint_tol:
            return False
    for lo, hi in pairwise(t.levels):
        if np.abs(lo[:, None] - hi[None, :]).min() <= tol.disjoint_tol:
            return False
    return True


def is_interlacing(c, tol: ToleranceConfig = DEFAULT_TOL) -> bool:
    """Real tower with the strict chain mu_{1,m+1} < mu_{1,m} < mu_{2,m+1} < ... < mu_{m+1,m+1}."""
    t = _as_tower(c, tol)
    if any(np.abs(lv.imag).max() > tol.eq_tol for lv in t.levels):
        return False
    for lo, hi in pairwise(t.levels):
        lo, hi = np.sort(lo.real), np.sort(hi.real)
        chain = np.empty(lo.size + hi.size)
        chain[0::2], chain[1::2] = hi, lo
        if np.diff(chain).min() <= tol.disjoint_tol:
            return False
    return True
