from __future__ import annotations

import itertools

import pytest
from hypothesis import given, settings, strategies as st

from ciflat.bott import endo_cohomology
from ciflat.deduce import (
    Deducer,
    Derivation,
    ReplayError,
    Verdict,
    chase_iso,
    chase_vanish,
    euler_characteristic,
    replay,
)
from ciflat.lemmas import PreconditionError, derive_named
from ciflat.sheaves import (
    DirectSum,
    ExactComplex,
    Kind,
    SheafExpr,
    Source,
    Space,
    complex_euler_characteristic,
    forms,
    hilbert_ci,
    ideal_complex,
    koszul_complex,
    structure,
)


def _sweep(max_N, max_c, max_m):
    for N in range(2, max_N + 1):
        for c in range(1, min(max_c, N - 1) + 1):
            for degs in itertools.combinations_with_replacement(range(2, max_m + 1), c):
                yield N, degs


# -- vocabulary ---------------------------------------------------------------


def test_space_invariants():
    with pytest.raises(ValueError):
        Space.hypersurface(3, 1)
    with pytest.raises(ValueError):
        Space.ci(3, (2, 2, 2))
    with pytest.raises(ValueError):
        Space.ci(4, (1, 3))
    assert Space.ci(4, (3,)) == Space.hypersurface(4, 3)
    Z = Space.ci_in_hypersurface(7, 3, (5, 5, 5))
    assert Z.dim == 3 and Z.cut_degrees == (3, 5, 5, 5) and Z.canonical_twist == 10


def test_sheaf_canonicalization():
    P = Space.proj(4)
    assert forms(P, 0, 3) == structure(P, 3)
    assert SheafExpr(P, Kind.FORMS, 1, 2, Source.AMBIENT).source is Source.SELF
    Z = Space.ci_in_hypersurface(6, 3, (4,))
    assert forms(Space.proj(6), 2, 1).on(Z).space == Space.ci(6, (3, 4))
    with pytest.raises(ValueError):
        SheafExpr(P, Kind.IDEAL, 2)
    with pytest.raises(ValueError):
        SheafExpr(Space.ci(4, (2, 2)), Kind.MIXED_ENDO, 0)


def test_koszul_examples():
    P3 = Space.proj(3)
    cx = koszul_complex(Space.ci(3, (2, 2)), structure(P3), 2)
    assert [sorted(s.twist for s in t) for t in cx.terms[:-1]] == [[-2], [0, 0], [2]]
    assert cx.last.summands[0] == structure(Space.ci(3, (2, 2)), 2)

    cx = koszul_complex(Space.hypersurface(5, 4), structure(Space.proj(5)), 1)
    assert [t.summands[0].twist for t in cx.terms] == [-3, 1, 1]

    P4 = Space.proj(4)
    cx = koszul_complex(Space.ci(4, (2, 3)), forms(P4, 2), 1)
    twists = [sorted(s.twist for s in t) for t in cx.terms]
    assert twists == [[-4], [-2, -1], [1], [1]]
    assert cx.last.summands[0].source is Source.AMBIENT
    with pytest.raises(ValueError):
        koszul_complex(Space.ci(4, (2, 3)), forms(Space.proj(5), 2), 1)


def test_hilbert_examples():
    assert hilbert_ci(3, [2, 2], 0) == 0
    assert hilbert_ci(3, [2, 2], 1) == 4
    assert hilbert_ci(2, [5], 0) == -5
    assert all(hilbert_ci(4, [], t) == __import__("math").comb(t + 4, 4) for t in range(8))


@pytest.mark.parametrize("N,degs", list(_sweep(5, 3, 5)))
def test_koszul_chi_identity(N, degs):
    Z = Space.ci(N, degs)
    for t in range(-6, 7):
        cx = koszul_complex(Z, structure(Space.proj(N)), t)
        assert complex_euler_characteristic(cx) == hilbert_ci(N, degs, t)


# -- engine contract -------------------------------------------------------------


def test_chase_vanish_wedge_instance():
    D = Deducer()
    cx = koszul_complex(Space.ci(4, (2, 3)), forms(Space.proj(4), 2), 1)
    d = chase_vanish(cx, 0, D)
    assert d.is_zero and d.depth() == 3 and replay(d)
    assert [p.rule for p in d.premises] == ["bott", "direct-sum", "bott"]


def test_chase_vanish_quadric_ideal():
    d = chase_vanish(ideal_complex(Space.ci(3, (3, 3)), 2), 0, Deducer())
    assert d.is_zero and replay(d)


def test_chase_vanish_unknown_term_propagates():
    # the tableau bundle on Y has no rule beyond H^0, so the chase cannot conclude
    Y = Space.hypersurface(5, 3)
    T = SheafExpr(Y, Kind.TABLEAU, 0, 3)
    cx = ExactComplex((T, T.twisted(1), T.twisted(2)))
    d = chase_vanish(cx, 1, Deducer())
    assert d.is_unknown


def test_chase_iso_examples():
    d = chase_iso(ideal_complex(Space.ci(3, (2, 2)), 2), 0, Deducer())
    assert d.verdict is Verdict.ISO and d.dim == 2
    assert d.iso_target == DirectSum.of(structure(Space.proj(3), 0), structure(Space.proj(3), 0))
    d = chase_iso(ideal_complex(Space.hypersurface(4, 3), 2), 0, Deducer())
    assert d.verdict is Verdict.ISO and d.dim == 0
    replay(d)


def test_chase_iso_restriction_from_hypersurface():
    Y = Space.hypersurface(7, 3)
    Z = Space.ci_in_hypersurface(7, 3, (5, 5, 5))
    d = chase_iso(koszul_complex(Z, SheafExpr(Y, Kind.ENDO, 0), 1), 0, Deducer())
    assert d.verdict is Verdict.ISO and d.dim == 8
    assert d.iso_target.summands == (SheafExpr(Y, Kind.ENDO, 1),)
    assert replay(d)


def test_malformed_complex():
    with pytest.raises(ValueError):
        ExactComplex((DirectSum.of(structure(Space.proj(2))),))
    with pytest.raises(TypeError):
        chase_vanish([structure(Space.proj(2))], 0)


@pytest.mark.parametrize("N", range(2, 8))
def test_engine_matches_endo_table(N):
    D = Deducer(cross_check=True)
    P = Space.proj(N)
    for k in range(-2 * N - 3, N + 3):
        for q in range(N):
            want = endo_cohomology(N, k, q)
            got = D.query(SheafExpr(P, Kind.ENDO, k), q)
            assert got.decisive
            assert got.is_zero == want.is_zero
            if want.dim is not None and got.dim is not None:
                assert got.dim == want.dim


def test_structure_sheaf_dimensions_on_ci():
    D = Deducer()
    for N, degs in _sweep(4, 3, 4):
        Z = Space.ci(N, degs)
        for t in range(-3, 5):
            d = D.query(structure(Z, t), 0)
            assert d.decisive and d.dim is not None
            if t < 0:
                assert d.is_zero
            if Z.dim >= 1 and all(D.query(structure(Z, t), q).is_zero for q in range(1, Z.dim + 1)):
                assert d.dim == hilbert_ci(N, degs, t)


def test_euler_characteristic_of_endo_on_projective_space():
    for N in range(2, 6):
        for k in range(-N - 3, 3):
            F = SheafExpr(Space.proj(N), Kind.ENDO, k)
            D = Deducer()
            dims = [D.query(F, q).dim for q in range(N + 1)]
            if None not in dims:
                assert sum((-1) ** q * h for q, h in enumerate(dims)) == euler_characteristic(F)


def test_brueck_guard_respected():
    D = Deducer()
    for N, degs in _sweep(6, 3, 4):
        Z = Space.ci(N, degs)
        for r in range(1, Z.dim + 1):
            for p in range(-2, r + 3):
                D.query(forms(Z, r, p), 0)
    assert D.bruck_queries
    assert all(1 <= F.param <= F.space.dim - 1 and q == 0 for F, q in D.bruck_queries)


def test_top_forms_are_the_canonical_bundle():
    D = Deducer()
    # (2,3) in P^4 is a K3 surface, (3,4) in P^5 has K = O(1)
    d = D.query(forms(Space.ci(4, (2, 3)), 2, 0), 0)
    assert d.rule == "canonical" and d.dim == 1
    d = D.query(forms(Space.ci(5, (3, 4)), 3, 0), 0)
    assert d.dim == 6


def test_serre_top_on_plane_quintic():
    D = Deducer()
    C = Space.hypersurface(2, 5)
    d = D.query(structure(C, 0), 1)
    assert d.dim == 6 and replay(d)


# -- traces ------------------------------------------------------------------------


def test_trace_text_is_tree_shaped():
    d = derive_named("endo-y-sections", N=5, d=3)
    text = d.to_text()
    lines = text.splitlines()
    rule, sheaf, q, verdict = lines[0].split(" ", 3)
    assert rule == "lemma:endo-y-sections" and q == "0"
    assert verdict == "NonzeroDim 6"
    assert lines[1].startswith("  ") and not lines[0].startswith(" ")
    assert text == derive_named("endo-y-sections", N=5, d=3).to_text()
    assert d.to_dict()["premises"][0]["rule"] == "les-window"


def test_replay_rejects_tampering():
    d = chase_vanish(koszul_complex(Space.ci(4, (2, 3)), forms(Space.proj(4), 2), 1), 0)
    bott_leaf = d.premises[0]
    forged = Derivation("bott", bott_leaf.sheaf, 0, Verdict.NONZERO, 3)
    with pytest.raises(ReplayError):
        replay(forged)
    bogus = Derivation(
        "chase-vanish", d.sheaf, 0, Verdict.ZERO, premises=d.premises[:2], complex=d.complex
    )
    with pytest.raises(ReplayError):
        replay(bogus)
    loop = Derivation("adjunction", d.sheaf, 0, Verdict.ZERO, premises=(d,))
    with pytest.raises(ReplayError):
        replay(loop)


@settings(max_examples=60, deadline=None)
@given(
    st.integers(3, 7),
    st.integers(3, 5),
    st.integers(-12, 2),
    st.integers(0, 6),
)
def test_decisive_answers_replay(N, d, p, q):
    Y = Space.hypersurface(N, d)
    D = Deducer()
    for F in (SheafExpr(Y, Kind.ENDO, p), SheafExpr(Y, Kind.MIXED_ENDO, p), forms(Y, 1, p)):
        res = D.query(F, min(q, Y.dim))
        if res.decisive:
            assert replay(res)


def test_cross_check_finds_no_conflicts_on_hypersurfaces():
    D = Deducer(cross_check=True)
    for N in range(3, 7):
        for d in range(3, 5):
            Y = Space.hypersurface(N, d)
            for p in range(-2 * N, 3):
                for q in range(Y.dim + 1):
                    D.query(SheafExpr(Y, Kind.ENDO, p), q)


# -- named derivations --------------------------------------------------------


def test_named_examples():
    d = derive_named("endo-y", N=6, d=3, p=-1, q=0)
    assert d.is_zero and replay(d)
    d = derive_named("endo-y", N=6, d=3, p=-1, q=0, clause="i")
    assert d.is_zero
    d = derive_named("endo-y-sections", N=5, d=3)
    assert d.is_nonzero and d.dim == 6
    d = derive_named("endo-mixed-y", N=6, d=3, p=-1, q=1)
    assert d.is_unknown and d.premises[0].is_nonzero


def test_named_preconditions():
    with pytest.raises(PreconditionError, match="p <= -1"):
        derive_named("endo-y", N=6, d=3, p=0, q=0)
    with pytest.raises(PreconditionError, match="d >= 3"):
        derive_named("endo-y-sections", N=5, d=2)
    with pytest.raises(PreconditionError, match="m_j >= d"):
        derive_named("endo-restrict", N=7, d=4, degrees=(3, 5))
    with pytest.raises(PreconditionError, match="clause"):
        derive_named("endo-y", N=6, d=3, p=-1, q=1, clause="iii")
    with pytest.raises(PreconditionError, match=r"clause \(iv\)"):
        derive_named("endo-y", N=6, d=3, p=-1, q=3, clause="iv")
    with pytest.raises(PreconditionError, match="q <= N-3"):
        derive_named("endo-y", N=6, d=3, p=-1, q=4)
    with pytest.raises(PreconditionError, match="q <= N-3"):
        derive_named("endo-y", N=3, d=3, p=-5, q=1)
    with pytest.raises(PreconditionError, match=r"max\{1, t\}|max\(1, t\)"):
        derive_named("wedge", N=4, degrees=(2,), r=1, t=2)
    with pytest.raises(KeyError):
        derive_named("no-such-lemma")


def test_named_omega_ambient_table():
    for N in range(3, 7):
        for d in range(2, 5):
            for r in range(N + 1):
                for p in range(-4, d + 2):
                    for q in range(1, N - 1):
                        res = derive_named("omega-ambient-y", N=N, d=d, r=r, p=p, q=q)
                        want = int(q == r and p == 0) + int(q == r - 1 and p == d)
                        assert res.decisive and res.dim == want


def test_quadric_count_small():
    for N, degs in _sweep(6, 4, 5):
        d = derive_named("quadrics", N=N, degrees=degs)
        assert d.dim == degs.count(2)


def test_vector_fields_on_plane_cubic_and_quartic_surface():
    assert derive_named("vector-fields", N=2, degrees=(3,)).dim == 1
    assert derive_named("vector-fields", N=3, degrees=(4,)).is_zero
    assert derive_named("tangent-twist", N=3, degrees=(2, 2)).is_nonzero
    assert derive_named("tangent-twist", N=3, degrees=(3,)).is_nonzero
    assert derive_named("tangent-twist", N=4, degrees=(2, 3)).is_zero
