from __future__ import annotations

import itertools

import pytest

from ciflat.classify import (
    CURVE_LIST,
    HIGHER_LIST,
    MAIN_CURVE_EXCLUSIONS,
    MainClause,
    MultiDegree,
    h0_tz1_nonzero,
    h0_tz_nonzero,
    hom_bundle_exists,
    projnormal_surjective,
    theorem_main_verdict,
    vmrt_multidegree,
    xi0_trivial,
    xi_equals_xiv_verdict,
    xi_prime_nonzero,
)
from ciflat.lemmas import derive_named


def all_multidegrees(max_c=4, max_m=6, max_N=10):
    for N in range(2, max_N + 1):
        for c in range(1, min(max_c, N - 1) + 1):
            for degs in itertools.combinations_with_replacement(range(2, max_m + 1), c):
                yield MultiDegree(degs, N)


def test_multidegree_invariants():
    Z = MultiDegree((3, 2), 4)
    assert Z.degrees == (2, 3) and Z.m == 5 and Z.dim == 2 and Z.degree == 6
    with pytest.raises(ValueError):
        MultiDegree((2, 2), 3 - 1)
    with pytest.raises(ValueError):
        MultiDegree((1,), 3)


def test_h0_tz1_examples():
    assert h0_tz1_nonzero(MultiDegree.of(3, 2, 3))
    assert h0_tz1_nonzero(MultiDegree.of(4, 2, 2))
    assert not h0_tz1_nonzero(MultiDegree.of(4, 4))


def test_h0_tz1_matches_lists():
    for Z in all_multidegrees():
        expected = Z.degrees in (CURVE_LIST if Z.is_curve else HIGHER_LIST)
        assert h0_tz1_nonzero(Z) == expected, Z


def test_h0_tz1_monotone():
    for Z in all_multidegrees(max_c=3, max_m=5, max_N=7):
        if h0_tz1_nonzero(Z):
            continue
        for i in range(Z.c):
            raised = list(Z.degrees)
            raised[i] += 1
            assert not h0_tz1_nonzero(MultiDegree(tuple(raised), Z.N))


def test_h0_tz_examples():
    assert h0_tz_nonzero(MultiDegree.of(2, 3))
    for N in range(2, 8):
        assert h0_tz_nonzero(MultiDegree.of(N, 2))
    assert not h0_tz_nonzero(MultiDegree.of(3, 2, 3))
    assert h0_tz_nonzero(MultiDegree.of(3, 2, 2))
    assert not h0_tz_nonzero(MultiDegree.of(4, 3))


def test_xi_predicates():
    assert xi_prime_nonzero(MultiDegree.of(2, 2))
    assert not xi_prime_nonzero(MultiDegree.of(3, 2, 2))
    assert not xi_prime_nonzero(MultiDegree.of(3, 2))
    assert all(xi0_trivial(Z) for Z in all_multidegrees(max_N=5))


def test_vmrt_examples():
    Z = MultiDegree.of(9, 4)
    assert vmrt_multidegree(Z).degrees == (2, 3, 4)
    assert vmrt_multidegree(Z).N == Z.dim - 1
    assert vmrt_multidegree(MultiDegree.of(6, 2)).degrees == (2,)
    assert vmrt_multidegree(MultiDegree.of(10, 3, 3)).degrees == (2, 2, 3, 3)


def test_vmrt_properties():
    Q = MultiDegree.of(8, 2)
    once = vmrt_multidegree(Q)
    assert vmrt_multidegree(once).degrees == once.degrees == (2,)
    for Z in all_multidegrees(max_c=2, max_m=4, max_N=10):
        try:
            C = vmrt_multidegree(Z)
        except ValueError:
            continue
        assert min(C.degrees) >= 2 and max(C.degrees) == max(Z.degrees)
        assert C.c == sum(m - 1 for m in Z.degrees)


def test_vmrt_too_small():
    with pytest.raises(ValueError):
        vmrt_multidegree(MultiDegree.of(4, 4))


def test_main_verdict_examples():
    v = theorem_main_verdict(MultiDegree.of(2, 5))
    assert v.clause is MainClause.CURVE and v.locally_flat_concluded
    v = theorem_main_verdict(MultiDegree.of(3, 2, 2))
    assert v.clause is MainClause.NOT_COVERED and not v.locally_flat_concluded
    v = theorem_main_verdict(MultiDegree.of(5, 3, 5, 5), d=3)
    assert v.clause is MainClause.IN_HYPERSURFACE
    with pytest.raises(ValueError):
        theorem_main_verdict(MultiDegree.of(5, 3, 5, 5), d=4)
    with pytest.raises(ValueError):
        theorem_main_verdict(MultiDegree.of(5, 2, 5, 5), d=2)


def test_main_verdict_clause_order_and_exclusions():
    assert theorem_main_verdict(MultiDegree.of(3, 3, 5), True, 3).clause is MainClause.CURVE
    assert theorem_main_verdict(MultiDegree.of(6, 3, 5), True, 3).clause is MainClause.COVERED_BY_LINES
    assert theorem_main_verdict(MultiDegree.of(6, 3, 4), False, 3).clause is MainClause.NOT_COVERED
    for degs in MAIN_CURVE_EXCLUSIONS:
        Z = MultiDegree(degs, len(degs) + 1)
        assert not theorem_main_verdict(Z, covered_by_lines=True).locally_flat_concluded
    for degs in HIGHER_LIST:
        for N in range(len(degs) + 2, 9):
            Z = MultiDegree(degs, N)
            assert not theorem_main_verdict(Z, covered_by_lines=True).locally_flat_concluded
    # a single equation of degree d leaves nothing for the strict inequality
    assert not theorem_main_verdict(MultiDegree.of(5, 3), d=3).locally_flat_concluded


def test_xi_equals_xiv_examples():
    assert xi_equals_xiv_verdict(MultiDegree.of(2, 3))
    assert not xi_equals_xiv_verdict(MultiDegree.of(5, 2), covered_by_lines=True)
    assert xi_equals_xiv_verdict(MultiDegree.of(5, 3, 5, 5), d=3)
    assert not xi_equals_xiv_verdict(MultiDegree.of(2, 2))
    assert xi_equals_xiv_verdict(MultiDegree.of(3, 2, 2))


def test_projnormal_examples():
    assert not projnormal_surjective(MultiDegree.of(2, 2), 1)
    assert projnormal_surjective(MultiDegree.of(3, 2, 2), 1)
    assert projnormal_surjective(MultiDegree.of(2, 3), 1)
    with pytest.raises(ValueError):
        projnormal_surjective(MultiDegree.of(4, 2, 2), 1)
    for Z in all_multidegrees():
        if Z.is_curve:
            ok = all(projnormal_surjective(Z, i) for i in range(1, Z.c + 1))
            assert ok == (Z.degrees != (2,) or Z.N != 2)


def test_hom_bundle_examples():
    assert not hom_bundle_exists([5, 5], 4)
    assert hom_bundle_exists([2], 2)
    assert hom_bundle_exists([3, 7], 5)
    with pytest.raises(ValueError):
        hom_bundle_exists([], 3)


def test_vanishing_is_certified_by_the_engine():
    for Z in all_multidegrees(max_c=3, max_m=5, max_N=7):
        if Z.dim < 2 or h0_tz1_nonzero(Z):
            continue
        n = Z.dim
        d = derive_named("forms-twist", N=Z.N, degrees=Z.degrees, r=n - 1, p=Z.N + 2 - Z.m)
        assert d.is_zero
        assert any(node.rule == "bruck" for node in d.walk())


def test_engine_agrees_with_tangent_table():
    for Z in all_multidegrees(max_c=3, max_m=5, max_N=7):
        d = derive_named("tangent-twist", N=Z.N, degrees=Z.degrees)
        assert d.decisive, Z
        assert d.is_nonzero == h0_tz1_nonzero(Z), Z
        v = derive_named("vector-fields", N=Z.N, degrees=Z.degrees)
        if v.decisive:
            assert v.is_nonzero == h0_tz_nonzero(Z), Z
