"""Exit criteria.  Each test prints one PASS/FAIL line in the terminal summary."""

import time
from itertools import combinations

import numpy as np

from conftest import ACCEPTANCE_LINES
from gzsys.coords import coord_from_tower, phi, tower, tower_from_matrix
from gzsys.fiber import beta, beta_inverse, diag_sign_orbit, is_jacobi, normal_form, symmetric_fiber
from gzsys.flows import FlowKey, act, flow, transpose_residual
from gzsys.linalg import d
from gzsys.orthopoly import interlaces, jacobi_matrix, monic_mismatch, recurrence_from_tower
from gzsys.poisson import verify_gz_commutativity
from gzsys.regularity import (
    all_generators,
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
    random_word,
    rng_from_seed,
)
from gzsys.section import invert_phi

SQ2 = np.sqrt(2.0)


def record(num: int, name: str, ok: bool, detail: str):
    line = f"[{'PASS' if ok else 'FAIL'}] {num:2d}. {name}: {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    return ok


def random_key(rng, n):
    m = int(rng.integers(1, n))
    return FlowKey(int(rng.integers(1, m + 1)), m)


def test_01_exact_commutativity():
    start = time.perf_counter()
    r2, r3 = verify_gz_commutativity(2), verify_gz_commutativity(3)
    elapsed = time.perf_counter() - start
    ok = r2["pairs"] == 3 and r3["pairs"] == 15 and r2["all_zero"] and r3["all_zero"] and elapsed < 60
    record(1, "exact commutativity n=2,3", ok, f"pairs {r2['pairs']}+{r3['pairs']}, all zero, {elapsed:.2f}s")
    assert ok


def test_02_cross_section_roundtrip():
    rng = rng_from_seed(2)
    start = time.perf_counter()
    worst, all_sreg = 0.0, True
    for n in range(2, 7):
        for _ in range(100):
            c = random_coord(rng, n)
            x = invert_phi(c)
            worst = max(worst, float(np.max(np.abs(phi(x) - c))))
            all_sreg &= is_strongly_regular(x)
    elapsed = time.perf_counter() - start
    ok = worst < 1e-8 and all_sreg and elapsed < 30
    record(2, "cross-section roundtrip", ok, f"max drift {worst:.2e}, strongly regular={all_sreg}, {elapsed:.2f}s")
    assert ok


def test_03_flow_invariance_and_commutativity():
    rng = rng_from_seed(3)
    worst_drift = worst_swap = 0.0
    for _ in range(200):
        n = int(rng.integers(2, 6))
        x = random_matrix(rng, n)
        k1, k2 = random_key(rng, n), random_key(rng, n)
        t1, t2 = rng.uniform(-2, 2, size=2)
        y = flow(x, k1, t1)
        worst_drift = max(worst_drift, float(np.max(np.abs(phi(y) - phi(x)))))
        a = flow(flow(x, k1, t1), k2, t2)
        b = flow(flow(x, k2, t2), k1, t1)
        worst_swap = max(worst_swap, float(np.max(np.abs(a - b))))
    ok = worst_drift < 1e-8 and worst_swap < 1e-8
    record(3, "flow invariance / commutativity", ok, f"max phi drift {worst_drift:.2e}, max swap gap {worst_swap:.2e}")
    assert ok


def test_04_example_fiber_n3(example_n3):
    x, y = example_n3
    c = coord_from_tower(tower([0], [-1, 1], [-SQ2, 0, SQ2]))
    fib = symmetric_fiber(c)
    members = list(fib.members)

    def contains(z):
        return any(np.max(np.abs(m - z)) < 1e-10 for m in members)

    jac = [m for m in members if is_jacobi(m)]
    sign_variants = diag_sign_orbit(x) + diag_sign_orbit(y)
    others_are_signs = all(any(np.max(np.abs(m - s)) < 1e-10 for s in sign_variants) for m in members)
    ok = len(members) == 8 and contains(x) and contains(y) and len(jac) == 4 and others_are_signs
    record(4, "example n=3 symmetric fiber", ok, f"{len(members)} members, x in={contains(x)}, y in={contains(y)}, {len(jac)} Jacobi")
    assert ok


def test_05_cardinality_law():
    rng = rng_from_seed(5)
    details, ok = [], True
    for n in (2, 3, 4, 5):
        start = time.perf_counter()
        worst_im = worst_phi = 0.0
        counts = set()
        for _ in range(10):
            t = random_interlacing_tower(rng, n)
            c = coord_from_tower(t)
            fib = symmetric_fiber(c)
            counts.add(len(fib))
            for m in fib.members:
                worst_im = max(worst_im, float(np.max(np.abs(np.imag(m)))))
                worst_phi = max(worst_phi, float(np.max(np.abs(phi(m) - c))))
        elapsed = time.perf_counter() - start
        ok &= counts == {2 ** d(n - 1)} and worst_im < 1e-8 and worst_phi < 1e-7
        if n == 5:
            ok &= elapsed < 60
        details.append(f"n={n}: {sorted(counts)} (max Im {worst_im:.1e}, phi {worst_phi:.1e}, {elapsed:.1f}s)")
    record(5, "symmetric fiber cardinality", ok, "; ".join(details))
    assert ok


def test_06_interlacing_equivalence():
    rng = rng_from_seed(6)
    results = []
    for n in (2, 3, 4):
        for _ in range(5):
            t = random_noninterlacing_tower(rng, n)
            fib = symmetric_fiber(coord_from_tower(t))
            results.append(max(float(np.max(np.abs(np.imag(m)))) for m in fib.members))
    ok = all(r > 1e-4 for r in results)
    record(6, "non-interlacing => non-real member", ok, f"{len(results)} towers, min of max|Im| = {min(results):.2e}")
    assert ok


def test_07_transpose_anti_equivariance():
    rng = rng_from_seed(7)
    worst = 0.0
    for _ in range(100):
        n = int(rng.integers(2, 6))
        x = random_matrix(rng, n)
        worst = max(worst, transpose_residual(x, random_normalized_word(rng, x)))
    ok = worst < 1e-8
    record(7, "transpose anti-equivariance", ok, f"max residual {worst:.2e}")
    assert ok


def test_08_normal_form_coherence(example_n3):
    rng = rng_from_seed(8)
    worst_section = worst_orbit = 0.0
    for _ in range(50):
        n = int(rng.integers(2, 6))
        x = random_omega_matrix(rng, n)
        nf = normal_form(x).canonical
        worst_section = max(worst_section, float(np.max(np.abs(nf - invert_phi(phi(x)).T))))
        moved = normal_form(act(x, random_word(rng, n))).canonical
        worst_orbit = max(worst_orbit, float(np.max(np.abs(moved - nf))))
    x, y = example_n3
    ex_gap = float(np.max(np.abs(normal_form(x).canonical - normal_form(y).canonical)))
    ok = worst_section < 1e-7 and worst_orbit < 1e-7 and ex_gap < 1e-7
    record(8, "normal form coherence", ok, f"section gap {worst_section:.2e}, orbit gap {worst_orbit:.2e}, example gap {ex_gap:.1e}")
    assert ok


def test_09_beta_roundtrip():
    rng = rng_from_seed(9)
    worst = 0.0
    for _ in range(100):
        n = int(rng.integers(2, 6))
        x = random_omega_matrix(rng, n)
        worst = max(worst, float(np.max(np.abs(beta_inverse(phi(x), beta(x)) - x))))
    ok = worst < 1e-7
    record(9, "beta chart roundtrip", ok, f"max error {worst:.2e}")
    assert ok


def _regularity_samples(rng):
    """Generic matrices mixed with deliberately degenerate ones."""
    out = []
    for i in range(200):
        n = int(rng.integers(2, 6))
        kind = i % 5
        if kind == 0:
            x = random_matrix(rng, n)
        elif kind == 1:
            x = np.diag(rng.standard_normal(n)).astype(complex)
        elif kind == 2:
            # scalar leading block: cutoff x_2 not regular
            x = random_matrix(rng, n)
            x[:2, :2] = 1.5 * np.eye(2)
        elif kind == 3:
            # block upper triangular: shared eigenvalue across levels
            x = random_matrix(rng, n)
            x[1:, 0] = 0
        else:
            x = invert_phi(random_coord(rng, n))
        out.append(x)
    return out


def test_10_regularity_equivalences():
    rng = rng_from_seed(10)
    agree, dims_ok, n_sreg = True, True, 0
    for x in _regularity_samples(rng):
        n = x.shape[0]
        sreg = is_strongly_regular(x)
        agree &= sreg == is_strongly_regular_pairwise(x)
        if sreg:
            n_sreg += 1
            dims_ok &= orbit_dim(x) == d(n - 1)
        else:
            dims_ok &= orbit_dim(x) < d(n - 1)
    diag_ok = all(orbit_dim(np.diag(np.arange(1.0, n + 1))) < d(n - 1) for n in range(2, 7))
    ok = agree and dims_ok and diag_ok
    record(10, "regularity equivalences", ok, f"200 samples ({n_sreg} strongly regular), tests agree={agree}, orbit dims ok={dims_ok}, diag(1..n) deficient={diag_ok}")
    assert ok


def test_11_orthopoly_bridge():
    rng = rng_from_seed(11)
    worst_monic = worst_rec = 0.0
    interlace_ok = True
    for size in rng.integers(5, 10, size=10):
        mu = random_measure(rng, int(size))
        x = jacobi_matrix(mu, 4)
        worst_monic = max(worst_monic, monic_mismatch(mu, 4))
        spectra = [np.linalg.eigvalsh(x[:m, :m]) for m in range(1, 5)]
        interlace_ok &= all(interlaces(spectra[m], spectra[m - 1]) for m in range(1, 4))
        _, rebuilt = recurrence_from_tower(tower_from_matrix(x))
        worst_rec = max(worst_rec, float(np.max(np.abs(rebuilt - x))))
    ok = worst_monic < 1e-8 and interlace_ok and worst_rec < 1e-8
    record(11, "orthogonal polynomial bridge", ok, f"monic gap {worst_monic:.2e}, interlacing={interlace_ok}, reconstruction {worst_rec:.2e}")
    assert ok


def test_12_isotropy():
    rng = rng_from_seed(12)
    worst_ratio = 0.0
    for _ in range(40):
        n = int(rng.integers(2, 6))
        x = random_matrix(rng, n)
        assert is_strongly_regular(x)
        scale = max(1.0, np.linalg.norm(x, 2)) ** 3
        gens = all_generators(x)
        defect = max((abs(symplectic_pairing(x, a, b)) for a, b in combinations(gens, 2)), default=0.0)
        worst_ratio = max(worst_ratio, defect / scale)
    ok = worst_ratio < 1e-9
    record(12, "isotropy of GZ tangent space", ok, f"max |tr(x[z_a,z_b])| / ||x||^3 = {worst_ratio:.2e}")
    assert ok
