"""Seeded random inputs shared by the CLI self-test, scripts and the test-suite."""

from __future__ import annotations

import numpy as np

from gzsys.coords import GZCoord, SpectrumTower, is_disjoint, is_interlacing
from gzsys.flows import GroupWord
from gzsys.linalg import d
from gzsys.orthopoly import DiscreteMeasure


def rng_from_seed(seed: int) -> np.random.Generator:
    return np.random.default_rng(np.uint64(seed))


def complex_normal(rng: np.random.Generator, size) -> np.ndarray:
    """iid standard complex normal (E|z|^2 = 1)."""
    return (rng.standard_normal(size) + 1j * rng.standard_normal(size)) / np.sqrt(2)


def random_matrix(rng, n: int) -> np.ndarray:
    return complex_normal(rng, (n, n))


def random_coord(rng, n: int) -> GZCoord:
    return GZCoord(n, complex_normal(rng, d(n)))


def random_word(rng, n: int, scale: float = 0.5) -> GroupWord:
    return GroupWord.from_flat(n, scale * complex_normal(rng, n * (n - 1) // 2))


def random_normalized_word(rng, x, radius: float = 1.0) -> GroupWord:
    """Random word at base point x whose level-m centralizer element has spectral norm <= radius.

    Coefficients are drawn complex normal, then each level is rescaled so that
    ``||sum_k t_k (x_m)^(m-k)||_2`` is uniform on (0, radius].
    """
    from gzsys.regularity import centralizer_basis

    n = np.shape(x)[0]
    levels = []
    for m in range(1, n):
        t = complex_normal(rng, m)
        basis = centralizer_basis(x, m)
        z = sum(t[k - 1] * basis.generator(k) for k in range(1, m + 1))
        norm = np.linalg.norm(z, 2)
        target = radius * (1.0 - rng.uniform())
        levels.append(t * (target / norm) if norm > 0 else t)
    return GroupWord(tuple(levels))


def random_interlacing_tower(rng, n: int, margin: float = 0.05) -> SpectrumTower:
    """Top level iid normal; each lower level drawn uniformly inside the gaps above it."""
    while True:
        top = np.sort(rng.standard_normal(n) * 2)
        if n == 1 or np.diff(top).min() > 2 * margin:
            break
    levels = [top]
    for _ in range(n - 1):
        above = levels[-1]
        gaps = np.diff(above)
        lo = above[:-1] + margin * gaps
        levels.append(lo + rng.uniform(size=gaps.size) * gaps * (1 - 2 * margin))
    return SpectrumTower(tuple(lv.astype(complex) for lv in reversed(levels)))


def random_noninterlacing_tower(rng, n: int) -> SpectrumTower:
    """Real, eigenvalue-disjoint, but not interlacing."""
    while True:
        t = SpectrumTower(tuple(np.sort(rng.standard_normal(m) * 2).astype(complex) for m in range(1, n + 1)))
        if is_disjoint(t) and not is_interlacing(t):
            return t


def random_measure(rng, size: int) -> DiscreteMeasure:
    nodes = np.sort(rng.uniform(-2, 2, size))
    while np.diff(nodes).min() < 1e-3:
        nodes = np.sort(rng.uniform(-2, 2, size))
    return DiscreteMeasure(nodes, rng.uniform(0.1, 1.0, size))


def random_omega_matrix(rng, n: int) -> np.ndarray:
    """Standard complex normal matrix, redrawn until it is eigenvalue-disjoint."""
    from gzsys.coords import phi

    while True:
        x = random_matrix(rng, n)
        if is_disjoint(phi(x)):
            return x
