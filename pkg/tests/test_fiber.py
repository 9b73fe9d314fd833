import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gzsys.coords import GZCoord, coord_from_tower, is_interlacing, phi, tower
from gzsys.errors import DomainError
from gzsys.fiber import (
    a_conjugate_test,
    beta,
    beta_inverse,
    beta_matrix,
    diag_sign_orbit,
    is_cyclic,
    is_jacobi,
    jacobi_members,
    normal_form,
    symmetric_fiber,
)
from gzsys.flows import act
from gzsys.linalg import d, unit
from gzsys.orthopoly import jacobi_matrix
from gzsys.sampling import (
    random_interlacing_tower,
    random_measure,
    random_noninterlacing_tower,
    random_normalized_word,
    random_omega_matrix,
    random_word,
    rng_from_seed,
)
from gzsys.section import invert_phi

SQ2 = np.sqrt(2.0)
C_EXAMPLE = coord_from_tower(tower([0], [-1, 1], [-SQ2, 0, SQ2]))
seeds = st.integers(0, 2**32 - 1)


# -- cyclic vectors ------------------------------------------------------------


def test_is_cyclic_examples():
    rng = rng_from_seed(0)
    x = random_omega_matrix(rng, 4)
    assert not is_cyclic(x, 2, [0, 0])
    y = np.diag([1.0, 2.0, 3.0, 4.0])
    assert is_cyclic(y, 3, [1, 1, 1])
    assert not is_cyclic(y, 3, [1, 0, 1])
    for m in range(1, 4):
        assert is_cyclic(x, m, np.eye(m)[m - 1])
    with pytest.raises(DomainError):
        is_cyclic(x, 4, np.ones(4))


# -- normal form ---------------------------------------------------------------


def test_normal_form_n2():
    res = normal_form(np.array([[1, 6], [1, 4]]))
    np.testing.assert_allclose(res.canonical, [[1, 1], [6, 4]], atol=1e-12)
    np.testing.assert_allclose(act(np.array([[1, 6], [1, 4]]), res.word), res.canonical, atol=1e-12)


def test_normal_form_fixed_point():
    rng = rng_from_seed(1)
    x = random_omega_matrix(rng, 4)
    canon = normal_form(x).canonical
    again = normal_form(canon)
    np.testing.assert_allclose(again.canonical, canon, atol=1e-9)
    np.testing.assert_allclose(again.word.flat(), 0, atol=1e-9)


def test_normal_form_example(example_n3):
    x, y = example_n3
    np.testing.assert_allclose(normal_form(x).canonical, normal_form(y).canonical, atol=1e-10)


def test_normal_form_requires_omega():
    with pytest.raises(DomainError):
        normal_form(np.diag([1.0, 2.0, 3.0]))


@settings(max_examples=40, deadline=None)
@given(seeds, st.integers(2, 5))
def test_normal_form_properties(seed, n):
    rng = rng_from_seed(seed)
    x = random_omega_matrix(rng, n)
    res = normal_form(x)
    canon = res.canonical
    np.testing.assert_allclose(np.diag(canon, 1), np.ones(n - 1), atol=1e-8)
    np.testing.assert_allclose(np.triu(canon, 2), 0, atol=1e-8)
    np.testing.assert_allclose(act(x, res.word), canon, atol=1e-7 * max(1, np.abs(canon).max()))
    np.testing.assert_allclose(canon, invert_phi(phi(x)).T, atol=1e-7)
    np.testing.assert_allclose(normal_form(act(x, random_normalized_word(rng, x))).canonical, canon, atol=1e-7)


def test_a_conjugate(example_n3):
    rng = rng_from_seed(2)
    x = random_omega_matrix(rng, 4)
    assert a_conjugate_test(x, act(x, random_word(rng, 4)))
    assert a_conjugate_test(*example_n3)
    assert not a_conjugate_test(x, x + 1e-3 * unit(4, 1, 1))


# -- beta chart ----------------------------------------------------------------


def test_beta_inverse_n2():
    np.testing.assert_allclose(beta_inverse(GZCoord(2, [1, -2, 5]), [[6]]), [[1, 6], [1, 4]], atol=1e-12)


def test_beta_forms():
    x = np.arange(9.0).reshape(3, 3)
    u = beta(x)
    np.testing.assert_array_equal(u[0], [1])
    np.testing.assert_array_equal(u[1], [2, 5])
    np.testing.assert_array_equal(beta_matrix(u), np.triu(x, 1))


@settings(max_examples=40, deadline=None)
@given(seeds, st.integers(2, 5))
def test_beta_roundtrip(seed, n):
    x = random_omega_matrix(rng_from_seed(seed), n)
    np.testing.assert_allclose(beta_inverse(phi(x), beta(x)), x, atol=1e-7)
    np.testing.assert_allclose(beta_inverse(phi(x), beta_matrix(beta(x))), x, atol=1e-7)


def test_beta_inverse_rejects_noncyclic():
    c = coord_from_tower(tower([0], [-1, 1]))
    np.testing.assert_allclose(phi(beta_inverse(c, [[1]])).values, c.values, atol=1e-12)
    with pytest.raises(DomainError):
        beta_inverse(c, [[0]])
    # level 3: x_2 = diag(-1, 1) has eigenvectors e_1, e_2; column (1, 0) misses e_2
    c3 = coord_from_tower(tower([-1], [-1.5, 1], [-2, 0, 2]))
    x2 = beta_inverse(coord_from_tower(tower([-1], [-1.5, 1])), [[1]])
    with pytest.raises(DomainError):
        beta_inverse(c3, [[1], np.linalg.eig(x2)[1][:, 0]])


def test_beta_inverse_rejects_outside_omega():
    with pytest.raises(DomainError):
        beta_inverse(coord_from_tower(tower([1], [1, 2])), [[1]])


# -- symmetric fiber -----------------------------------------------------------


def test_symmetric_fiber_n2():
    fib = symmetric_fiber(coord_from_tower(tower([0], [-1, 1])))
    got = sorted(tuple(np.real(m).ravel()) for m in fib.members)
    assert got == sorted([(0, 1, 1, 0), (0, -1, -1, 0)])


def test_symmetric_fiber_example(example_n3):
    x, y = example_n3
    fib = symmetric_fiber(C_EXAMPLE)
    assert len(fib) == 8
    assert list(fib.sign_index) == list(range(8))
    for z in (x, y):
        assert min(np.max(np.abs(m - z)) for m in fib.members) < 1e-10
    signs = diag_sign_orbit(x) + diag_sign_orbit(y)
    for m in fib.members:
        assert min(np.max(np.abs(m - s)) for s in signs) < 1e-10
    assert len(jacobi_members(fib)) == 4


def test_sign_index_layout():
    fib = symmetric_fiber(C_EXAMPLE)
    np.testing.assert_array_equal(fib.signs(0), [1, 1, 1])
    np.testing.assert_array_equal(fib.signs(1), [-1, 1, 1])
    np.testing.assert_array_equal(fib.signs(6), [1, -1, -1])
    # flipping the level-1 bit negates the (1, 2) entry
    np.testing.assert_allclose(fib.members[1][0, 1], -fib.members[0][0, 1])


@settings(max_examples=20, deadline=None)
@given(seeds, st.integers(2, 4))
def test_interlacing_fiber(seed, n):
    c = coord_from_tower(random_interlacing_tower(rng_from_seed(seed), n))
    fib = symmetric_fiber(c)
    assert len(fib) == 2 ** d(n - 1)
    members = np.array(fib.members)
    assert np.max(np.abs(members.imag)) < 1e-8
    for m in fib.members:
        np.testing.assert_allclose(m, m.T, atol=1e-12)
        np.testing.assert_allclose(phi(m).values, c.values, atol=1e-7)
    flat = members.reshape(len(fib), -1)
    gaps = np.linalg.norm(flat[:, None, :] - flat[None, :, :], axis=2) + np.eye(len(fib))
    assert gaps.min() > 1e-6


@settings(max_examples=20, deadline=None)
@given(seeds, st.integers(2, 4))
def test_jacobi_tower_has_sign_orbit_of_jacobi_members(seed, n):
    # only towers of Jacobi matrices carry Jacobi members; a generic interlacing tower has none
    rng = rng_from_seed(seed)
    j = jacobi_matrix(random_measure(rng, n + 3), n)
    fib = symmetric_fiber(phi(j))
    jac = jacobi_members(fib)
    assert len(jac) == 2 ** (n - 1)
    for z in diag_sign_orbit(j):
        assert min(np.max(np.abs(m - z)) for m in jac) < 1e-8


@settings(max_examples=15, deadline=None)
@given(seeds, st.integers(2, 4))
def test_noninterlacing_fiber_has_complex_member(seed, n):
    t = random_noninterlacing_tower(rng_from_seed(seed), n)
    assert not is_interlacing(t)
    fib = symmetric_fiber(coord_from_tower(t))
    assert len(fib) == 2 ** d(n - 1)
    assert max(np.max(np.abs(np.imag(m))) for m in fib.members) > 1e-4


def test_complex_fiber():
    c = GZCoord(3, [0.3 + 0.2j, 1 - 1j, 0.5j, -1 + 0.5j, 0.2, 2 + 1j])
    fib = symmetric_fiber(c)
    assert len(fib) == 8
    for m in fib.members:
        np.testing.assert_allclose(m, m.T, atol=1e-10)
        np.testing.assert_allclose(phi(m).values, c.values, atol=1e-7)


def test_symmetric_fiber_requires_omega():
    with pytest.raises(DomainError):
        symmetric_fiber(coord_from_tower(tower([1], [1, 2])))


# -- Jacobi detection and sign orbit -------------------------------------------


def test_is_jacobi_examples(example_n3):
    x, y = example_n3
    assert is_jacobi(x)
    assert not is_jacobi(y)
    assert not is_jacobi(np.diag([1.0, 2.0, 3.0]))


def test_diag_sign_orbit(example_n3):
    x = example_n3[0]
    orbit = diag_sign_orbit(x)
    assert len(orbit) == 4
    np.testing.assert_array_equal(orbit[0], x)
    fib = symmetric_fiber(C_EXAMPLE)
    for z in orbit:
        assert is_jacobi(z)
        np.testing.assert_allclose(phi(z).values, C_EXAMPLE.values, atol=1e-12)
        assert min(np.max(np.abs(m - z)) for m in fib.members) < 1e-10
