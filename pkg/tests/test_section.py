import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gzsys.coords import GZCoord, coord_from_tower, phi, same_fiber, tower_from_matrix
from gzsys.errors import DomainError
from gzsys.linalg import charpoly
from gzsys.regularity import is_strongly_regular
from gzsys.sampling import complex_normal, random_coord, random_interlacing_tower, random_matrix, rng_from_seed
from gzsys.section import in_section, invert_phi, invert_phi_with_subdiag

seeds = st.integers(0, 2**32 - 1)


def test_n2_example():
    np.testing.assert_allclose(invert_phi(GZCoord(2, [1, -2, 5])), [[1, 6], [1, 4]], atol=1e-12)


def test_companion_matrix_fixed():
    # lam^3 - 1 as a b_e companion matrix: only the last column is free
    comp = np.array([[0, 0, 1], [1, 0, 0], [0, 1, 0]], dtype=complex)
    np.testing.assert_allclose(charpoly(comp).coeffs, [-1, 0, 0], atol=1e-14)
    np.testing.assert_allclose(invert_phi(phi(comp)), comp, atol=1e-12)


def test_zero_coordinates_give_shift():
    x = invert_phi(GZCoord(3, np.zeros(6)))
    np.testing.assert_array_equal(x, np.diag([1, 1], -1))


def test_subdiag_examples():
    c = random_coord(rng_from_seed(0), 4)
    np.testing.assert_allclose(invert_phi_with_subdiag(c, [1, 1, 1]), invert_phi(c), atol=1e-14)
    x = invert_phi_with_subdiag(c, [-1, -1, -1])
    np.testing.assert_array_equal(np.diag(x, -1), [-1, -1, -1])
    assert np.all(np.tril(x, -2) == 0)
    np.testing.assert_allclose(phi(x).values, c.values, atol=1e-9)


def test_subdiag_errors():
    c = random_coord(rng_from_seed(0), 3)
    with pytest.raises(DomainError):
        invert_phi_with_subdiag(c, [1, 0])
    with pytest.raises(DomainError):
        invert_phi_with_subdiag(c, [1])


@settings(max_examples=60, deadline=None)
@given(seeds, st.integers(1, 6))
def test_roundtrip_and_section(seed, n):
    c = random_coord(rng_from_seed(seed), n)
    x = invert_phi(c)
    assert in_section(x)
    assert is_strongly_regular(x)
    np.testing.assert_allclose(phi(x).values, c.values, atol=1e-8)


@settings(max_examples=40, deadline=None)
@given(seeds, st.integers(2, 5))
def test_random_nonzero_subdiag(seed, n):
    rng = rng_from_seed(seed)
    c = random_coord(rng, n)
    z = complex_normal(rng, n - 1) + 0.1
    x = invert_phi_with_subdiag(c, z)
    np.testing.assert_allclose(np.diag(x, -1), z, atol=1e-14)
    np.testing.assert_allclose(phi(x).values, c.values, atol=1e-8)


@settings(max_examples=40, deadline=None)
@given(seeds, st.integers(2, 6))
def test_section_point_in_same_fiber(seed, n):
    x = random_matrix(rng_from_seed(seed), n)
    y = invert_phi(phi(x))
    assert in_section(y)
    assert same_fiber(x, y)


@settings(max_examples=30, deadline=None)
@given(seeds, st.integers(2, 5))
def test_prescribed_spectra(seed, n):
    t = random_interlacing_tower(rng_from_seed(seed), n)
    got = tower_from_matrix(invert_phi(coord_from_tower(t)))
    for m in range(1, n + 1):
        np.testing.assert_allclose(got[m], t[m], atol=1e-7)


def test_in_section_rejects():
    assert not in_section(np.eye(3))
    assert in_section(np.diag([1.0, 1.0], -1) + np.triu(np.ones((3, 3))))
