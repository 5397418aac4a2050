from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ciflat.gauss import GaussRat, I, null_space, rank
from ciflat.xi import (
    AltMap,
    DomainError,
    GaussianVec,
    check_xi_prime,
    check_xi_V,
    conic_point,
    contraction,
    is_isotropic,
    random_vec,
    sigma_conic,
    tangent_basis,
    witness_sweep,
    zero_map,
)

E = [GaussianVec.basis(3, i) for i in range(3)]

small = st.fractions(min_value=-6, max_value=6, max_denominator=6)
gauss = st.builds(GaussRat, small, small)


def test_gauss_arithmetic():
    assert I * I == -1
    z = GaussRat(Fraction(1, 2), 3)
    assert z / z == 1
    assert z * z.conjugate() == z.norm()
    assert str(GaussRat(2, -1)) == "2-i" and str(I) == "i" and str(GaussRat(0, 3)) == "3i"
    assert (1 + I) ** 2 == 2 * I
    with pytest.raises(ZeroDivisionError):
        z / 0
    with pytest.raises(TypeError):
        GaussRat(1) + 1.5j


@given(gauss, gauss, gauss)
def test_gauss_field_laws(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert a * b == b * a
    if b:
        assert (a / b) * b == a


def test_rank_and_null_space():
    assert rank([[1, 2], [2, 4]]) == 1
    assert rank([[1, 0, 0], [0, 1, 0], [0, 0, 1]]) == 3
    assert rank([[0, 0, 0], [0, 0, 0]]) == 0
    assert rank([[1, I, 0], [I, -1, 0]]) == 1
    ns = null_space([[1, 2, 3]])
    assert len(ns) == 2
    for x in ns:
        assert x[0] + 2 * x[1] + 3 * x[2] == 0


def test_sigma_conic_values():
    s = sigma_conic()
    assert s(E[0], E[1]) == E[2]
    assert s(E[1], E[2]) == E[0]
    assert s(E[2], E[0]) == E[1]
    assert s(E[1], E[0]) == E[2].scale(-1)
    assert s(E[0], E[0]).is_zero()
    assert s.is_antisymmetric()


def test_conic_point_examples():
    assert conic_point(1, 0) == GaussianVec.of(1, I, 0)
    assert conic_point(1, 2) == GaussianVec.of(-3, 5 * I, 4)
    assert conic_point(1, I) == GaussianVec.of(2, 0, 2 * I)
    with pytest.raises(DomainError):
        conic_point(0, GaussRat(0))


@given(gauss, gauss)
def test_conic_point_isotropic(s, t):
    if not s and not t:
        return
    u = conic_point(s, t)
    assert is_isotropic(u) and not u.is_zero()


def test_check_xi_prime_examples():
    s = sigma_conic()
    u, v = GaussianVec.of(1, I, 0), E[2]
    assert s(u, v) == GaussianVec.of(I, -1, 0) == u.scale(I)
    assert check_xi_prime(s, u, v)
    u = conic_point(1, 2)
    for v in tangent_basis(u):
        assert check_xi_prime(s, u, v)
        assert check_xi_prime(zero_map(3), u, v)


def test_check_xi_prime_errors():
    s = sigma_conic()
    with pytest.raises(DomainError):
        check_xi_prime(s, GaussianVec.of(0, 0, 0), E[0])
    with pytest.raises(ValueError, match="not tangent"):
        check_xi_prime(s, GaussianVec.of(1, I, 0), E[0])
    with pytest.raises(ValueError, match="not on the conic"):
        check_xi_prime(s, E[0], E[1])


def test_a_non_witness_fails():
    # sigma(e1, e2) = e1 only: not the cross product, and it moves conic points
    planes = [[[GaussRat(0)] * 3 for _ in range(3)] for _ in range(3)]
    planes[0][0][1], planes[0][1][0] = GaussRat(1), GaussRat(-1)
    sigma = AltMap(tuple(tuple(tuple(r) for r in p) for p in planes))
    u = conic_point(1, 2)
    assert not all(check_xi_prime(sigma, u, v) for v in tangent_basis(u))


def test_altmap_rejects_symmetric_constants():
    planes = [[[GaussRat(0)] * 2 for _ in range(2)] for _ in range(2)]
    planes[0][0][1] = planes[0][1][0] = GaussRat(1)
    with pytest.raises(ValueError, match="alternating"):
        AltMap(tuple(tuple(tuple(r) for r in p) for p in planes))


def test_contraction_examples():
    rng = random.Random(7)
    sigma = contraction(E[0])
    assert sigma.is_antisymmetric()
    for _ in range(100):
        u, v = random_vec(rng, 3), random_vec(rng, 3)
        assert sigma(u, v) == v.scale(u[0]) - u.scale(v[0])
        assert check_xi_V(sigma, u, v)
    with pytest.raises(ValueError):
        contraction([1])


def test_conic_witness_is_not_a_contraction():
    assert not check_xi_V(sigma_conic(), E[0], E[1])
    assert check_xi_V(zero_map(3), E[0], E[1])


@settings(max_examples=50)
@given(st.lists(gauss, min_size=3, max_size=3), st.lists(gauss, min_size=3, max_size=3),
       st.lists(gauss, min_size=3, max_size=3))
def test_contraction_formula(d, u, v):
    u, v = GaussianVec(tuple(u)), GaussianVec(tuple(v))
    delta = GaussianVec(tuple(d))
    assert contraction(d)(u, v) == v.scale(delta.dot(u)) - u.scale(delta.dot(v))


def test_witness_sweep_is_clean_and_seeded():
    a = witness_sweep(grid_size=6, samples=20, seed=5)
    b = witness_sweep(grid_size=6, samples=20, seed=5)
    assert a.ok and a == b
    assert a.grid_points == 35
