"""Seeded property sweep behind ``gz selftest``.

Every property is checked on a small batch of random inputs and reported with its
worst residual.  The report contains no timings, so a fixed seed gives a
byte-identical report.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from gzsys.coords import coord_from_tower, phi, tower, tower_from_matrix
from gzsys.errors import DomainError, GZError
from gzsys.fiber import beta, beta_inverse, is_jacobi, normal_form, symmetric_fiber
from gzsys.flows import FlowKey, act, flow, transpose_residual
from gzsys.linalg import DEFAULT_TOL, ToleranceConfig, d
from gzsys.orthopoly import interlaces, jacobi_matrix, monic_mismatch, recurrence_from_tower
from gzsys.poisson import verify_gz_commutativity
from gzsys.regularity import (
    all_generators,
    centralizer_basis,
    is_strongly_regular,
    is_strongly_regular_pairwise,
    orbit_dim,
    symplectic_pairing,
)
from gzsys.sampling import (
    random_coord,
    random_interlacing_tower,
    random_matrix,
    random_measure,
    random_noninterlacing_tower,
    random_normalized_word,
    random_omega_matrix,
    rng_from_seed,
)
from gzsys.section import invert_phi


@dataclass(frozen=True)
class PropertyResult:
    name: str
    passed: bool
    worst: float
    threshold: float
    samples: int
    note: str = ""

    def to_json(self) -> dict:
        out = {
            "name": self.name,
            "pass": bool(self.passed),
            "worst": float(self.worst),
            "threshold": float(self.threshold),
            "samples": int(self.samples),
        }
        if self.note:
            out["note"] = self.note
        return out


def _maxabs(a) -> float:
    return float(np.max(np.abs(a)))


def _sizes(rng, n_max: int, count: int, low: int = 2) -> list[int]:
    return [int(v) for v in rng.integers(low, n_max + 1, size=count)]


def _guard(name, threshold, fn):
    """Turn library exceptions into a failed property instead of a crash."""
    try:
        return fn()
    except GZError as exc:
        return PropertyResult(name, False, float("inf"), threshold, 0, f"{type(exc).__name__}: {exc}")


def check_commutativity(rng, n_max, tol):
    def run():
        sizes = [n for n in (2, 3) if n <= max(n_max, 2)]
        bad = sum(len(verify_gz_commutativity(n)["nonzero"]) for n in sizes)
        return PropertyResult("exact_commutativity", bad == 0, float(bad), 0.0, len(sizes))
    return _guard("exact_commutativity", 0.0, run)


def check_cross_section(rng, n_max, tol):
    def run():
        worst, sreg, sizes = 0.0, True, _sizes(rng, max(n_max, 2), 30)
        for n in sizes:
            c = random_coord(rng, n)
            x = invert_phi(c)
            worst = max(worst, _maxabs(phi(x) - c))
            sreg &= is_strongly_regular(x, tol)
        note = "" if sreg else "section output not strongly regular"
        return PropertyResult("cross_section_roundtrip", worst < 1e-8 and sreg, worst, 1e-8, len(sizes), note)
    return _guard("cross_section_roundtrip", 1e-8, run)


def check_flows(rng, n_max, tol):
    """Invariance and commutation of flows, time measured in units of the generator norm."""

    def key_and_time(x, n):
        m = int(rng.integers(1, n))
        k = int(rng.integers(1, m + 1))
        gen = centralizer_basis(x, m).generator(k)
        return FlowKey(k, m), rng.uniform(-2, 2) / max(1.0, np.linalg.norm(gen, 2))

    def run():
        worst, sizes = 0.0, _sizes(rng, n_max, 40)
        for n in sizes:
            x = random_matrix(rng, n)
            (k1, t1), (k2, t2) = key_and_time(x, n), key_and_time(x, n)
            worst = max(worst, _maxabs(phi(flow(x, k1, t1)) - phi(x)))
            a = flow(flow(x, k1, t1), k2, t2)
            b = flow(flow(x, k2, t2), k1, t1)
            worst = max(worst, _maxabs(a - b))
        return PropertyResult("flow_invariance_commutation", worst < 1e-8, worst, 1e-8, len(sizes))
    return _guard("flow_invariance_commutation", 1e-8, run)


def check_example_fiber(rng, n_max, tol):
    def run():
        sq2 = np.sqrt(2.0)
        fib = symmetric_fiber(coord_from_tower(tower([0], [-1, 1], [-sq2, 0, sq2])), tol)
        x = np.array([[0, 1, 0], [1, 0, 1], [0, 1, 0]], dtype=float)
        y = np.array([[0, 1, 1], [1, 0, 0], [1, 0, 0]], dtype=float)
        gap = max(min(_maxabs(m - z) for m in fib.members) for z in (x, y))
        n_jac = sum(is_jacobi(m, tol) for m in fib.members)
        ok = len(fib) == 8 and n_jac == 4 and gap < 1e-10
        return PropertyResult("example_symmetric_fiber", ok, gap, 1e-10, 1, f"{len(fib)} members, {n_jac} jacobi")
    return _guard("example_symmetric_fiber", 1e-10, run)


def check_cardinality(rng, n_max, tol):
    def run():
        worst_im = worst_phi = 0.0
        ok, count = True, 0
        for n in range(2, max(n_max, 2) + 1):
            reps = 3 if n <= 4 else 1
            for _ in range(reps):
                c = coord_from_tower(random_interlacing_tower(rng, n))
                fib = symmetric_fiber(c, tol)
                ok &= len(fib) == 2 ** d(n - 1)
                for m in fib.members:
                    worst_im = max(worst_im, _maxabs(np.imag(m)))
                    worst_phi = max(worst_phi, _maxabs(phi(m) - c))
                count += 1
        ok = ok and worst_im < 1e-8 and worst_phi < 1e-7
        note = f"max |Im| {worst_im:.3e}"
        return PropertyResult("symmetric_fiber_cardinality", ok, worst_phi, 1e-7, count, note)
    return _guard("symmetric_fiber_cardinality", 1e-7, run)


def check_noninterlacing(rng, n_max, tol):
    def run():
        smallest, count = np.inf, 0
        for n in range(2, min(n_max, 4) + 1):
            for _ in range(3):
                fib = symmetric_fiber(coord_from_tower(random_noninterlacing_tower(rng, n)), tol)
                smallest = min(smallest, max(_maxabs(np.imag(m)) for m in fib.members))
                count += 1
        return PropertyResult("noninterlacing_gives_complex", smallest > 1e-4, float(smallest), 1e-4, count)
    return _guard("noninterlacing_gives_complex", 1e-4, run)


def check_transpose(rng, n_max, tol):
    def run():
        worst, sizes = 0.0, _sizes(rng, n_max, 40)
        for n in sizes:
            x = random_matrix(rng, n)
            worst = max(worst, transpose_residual(x, random_normalized_word(rng, x)))
        return PropertyResult("transpose_anti_equivariance", worst < 1e-8, worst, 1e-8, len(sizes))
    return _guard("transpose_anti_equivariance", 1e-8, run)


def check_normal_form(rng, n_max, tol):
    def run():
        worst, sizes = 0.0, _sizes(rng, n_max, 30)
        for n in sizes:
            x = random_omega_matrix(rng, n)
            nf = normal_form(x, tol).canonical
            worst = max(worst, _maxabs(nf - invert_phi(phi(x)).T))
            worst = max(worst, _maxabs(normal_form(act(x, random_normalized_word(rng, x)), tol).canonical - nf))
        return PropertyResult("normal_form_coherence", worst < 1e-7, worst, 1e-7, len(sizes))
    return _guard("normal_form_coherence", 1e-7, run)


def check_beta(rng, n_max, tol):
    def run():
        worst, sizes = 0.0, _sizes(rng, n_max, 40)
        for n in sizes:
            x = random_omega_matrix(rng, n)
            worst = max(worst, _maxabs(beta_inverse(phi(x), beta(x), tol) - x))
        return PropertyResult("beta_roundtrip", worst < 1e-7, worst, 1e-7, len(sizes))
    return _guard("beta_roundtrip", 1e-7, run)


def check_regularity(rng, n_max, tol):
    def run():
        mismatches, sizes = 0, _sizes(rng, n_max, 40)
        for i, n in enumerate(sizes):
            x = random_matrix(rng, n)
            if i % 2:
                # decoupled first coordinate: e_11 lies in both level-1 and level-2 centralizers
                x[1:, 0] = 0
                x[0, 1:] = 0
            sreg = is_strongly_regular(x, tol)
            mismatches += sreg != is_strongly_regular_pairwise(x, tol)
            dim = orbit_dim(x, tol)
            mismatches += (dim == d(n - 1)) != sreg
            mismatches += sreg == (i % 2 == 1)
        return PropertyResult("regularity_equivalences", mismatches == 0, float(mismatches), 0.0, len(sizes))
    return _guard("regularity_equivalences", 0.0, run)


def check_orthopoly(rng, n_max, tol):
    def run():
        worst, ok, reps = 0.0, True, 5
        for _ in range(reps):
            mu = random_measure(rng, int(rng.integers(5, 10)))
            x = jacobi_matrix(mu, 4)
            worst = max(worst, monic_mismatch(mu, 4))
            spectra = [np.linalg.eigvalsh(x[:m, :m]) for m in range(1, 5)]
            ok &= all(interlaces(spectra[m], spectra[m - 1]) for m in range(1, 4))
            worst = max(worst, _maxabs(recurrence_from_tower(tower_from_matrix(x, tol), tol)[1] - x))
        return PropertyResult("orthopoly_bridge", ok and worst < 1e-8, worst, 1e-8, reps)
    return _guard("orthopoly_bridge", 1e-8, run)


def check_isotropy(rng, n_max, tol):
    def run():
        worst, sizes = 0.0, _sizes(rng, n_max, 20)
        for n in sizes:
            x = random_matrix(rng, n)
            scale = max(1.0, np.linalg.norm(x, 2)) ** 3
            pairs = combinations(all_generators(x), 2)
            worst = max(worst, max((abs(symplectic_pairing(x, a, b)) for a, b in pairs), default=0.0) / scale)
        return PropertyResult("isotropy", worst < 1e-9, worst, 1e-9, len(sizes))
    return _guard("isotropy", 1e-9, run)


CHECKS = (
    check_commutativity,
    check_cross_section,
    check_flows,
    check_example_fiber,
    check_cardinality,
    check_noninterlacing,
    check_transpose,
    check_normal_form,
    check_beta,
    check_regularity,
    check_orthopoly,
    check_isotropy,
)


def run_selftest(seed: int = 0, n_max: int = 5, tol: ToleranceConfig = DEFAULT_TOL) -> dict:
    """Run every property with one generator seeded by ``seed``; n ranges over 2..n_max."""
    if not 2 <= n_max <= 6:
        raise DomainError("n_max must lie in 2..6")
    rng = rng_from_seed(seed)
    results = [check(rng, n_max, tol) for check in CHECKS]
    return {
        "seed": int(seed),
        "n_max": int(n_max),
        "tolerances": {"rank_tol": tol.rank_tol, "eq_tol": tol.eq_tol, "disjoint_tol": tol.disjoint_tol},
        "properties": [r.to_json() for r in results],
        "all_pass": bool(all(r.passed for r in results)),
    }
