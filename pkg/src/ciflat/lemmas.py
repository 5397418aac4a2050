"""Named derivations: each entry checks its hypotheses, then asks the engine.

``derive_named(name, **params)`` returns a ``Derivation`` wrapped in a node
named ``lemma:<name>``.  At an excluded exceptional pair the answer is Unknown
and still carries whatever the engine found there.  When the engine disproves
a claimed vanishing, ``InconsistencyError`` is raised: that means a bug, not
a missing route.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Callable

from .deduce import Deducer, Derivation, InconsistencyError, Verdict, chase_iso, chase_vanish
from .sheaves import (
    Kind,
    SheafExpr,
    Space,
    forms,
    ideal_complex,
    koszul_complex,
)

__all__ = ["PreconditionError", "derive_named", "LEMMAS", "excluded_pairs"]


class PreconditionError(ValueError):
    """Raised when parameters fall outside a lemma's hypotheses."""


def _require(ok: bool, lemma: str, clause: str):
    if not ok:
        raise PreconditionError(f"{lemma}: requires {clause}")


@dataclass(frozen=True)
class _LemmaDef:
    run: Callable
    params: tuple[str, ...]
    summary: str


def _wrap(name: str, d: Derivation, detail: str = "") -> Derivation:
    return Derivation(
        f"lemma:{name}", d.sheaf, d.q, d.verdict, d.dim,
        premises=(d,), iso_target=d.iso_target, iso_q=d.iso_q, detail=detail,
    )


def _excluded(name: str, d: Derivation, pair) -> Derivation:
    return Derivation(
        f"lemma:{name}", d.sheaf, d.q, Verdict.UNKNOWN,
        premises=(d,), detail=f"excluded pair (q, p) = {pair}; engine: {d.conclusion()}",
    )


def _expect_zero(name: str, d: Derivation) -> Derivation:
    if d.is_nonzero:
        raise InconsistencyError(f"{name}: engine certifies {d.conclusion()} at H^{d.q}({d.sheaf})")
    if d.is_zero:
        return _wrap(name, d)
    return Derivation(f"lemma:{name}", d.sheaf, d.q, Verdict.UNKNOWN, premises=(d,), detail="not certified")


def _hypersurface(name, N, d):
    _require(N >= 3, name, "N >= 3")
    _require(d >= 3, name, "d >= 3")
    return Space.hypersurface(N, d)


def _ci(name, N, degrees):
    degrees = tuple(degrees)
    _require(len(degrees) >= 1, name, "at least one cutting degree")
    _require(all(m >= 2 for m in degrees), name, "every degree >= 2")
    _require(len(degrees) <= N - 1, name, "dim Z >= 1 (c <= N-1)")
    return Space.ci(N, degrees)


# ---------------------------------------------------------------------------


def _wedge(D: Deducer, N: int, degrees, r: int, t: int):
    name = "wedge"
    Z = _ci(name, N, degrees)
    _require(1 <= r <= N, name, "1 <= r <= N")
    _require(r >= max(1, t), name, "r >= max(1, t)")
    cx = koszul_complex(Z, forms(Space.proj(N), r), t)
    return _expect_zero(name, chase_vanish(cx, 0, D))


def _omega_ambient_y(D: Deducer, N: int, d: int, r: int, p: int, q: int):
    """Forms of P^N restricted to Y: H^0 vanishing and the middle-degree table."""
    name = "omega-ambient-y"
    _require(N >= 2 and d >= 2, name, "N >= 2, d >= 2")
    _require(0 <= r <= N, name, "0 <= r <= N")
    Y = Space.hypersurface(N, d)
    F = forms(Space.proj(N), r, p).on(Y)
    res = D.query(F, q)
    if q == 0:
        _require(r >= 1 and p <= r, name, "clause (i): r >= 1 and p <= r")
        return _expect_zero(name, res)
    _require(1 <= q <= N - 2, name, "clause (ii): 1 <= q <= N-2")
    expected = int(q == r and p == 0) + int(q == r - 1 and p == d)
    if expected == 0:
        return _expect_zero(name, res)
    if res.decisive and res.dim not in (None, expected):
        raise InconsistencyError(f"{name}: engine gives {res.conclusion()}, table gives {expected}")
    if res.is_nonzero and res.dim == expected:
        return _wrap(name, res)
    return Derivation(f"lemma:{name}", F, q, Verdict.UNKNOWN, premises=(res,), detail="dimension not certified")


def excluded_pairs(lemma: str, N: int, d: int) -> set[tuple[int, int]]:
    """Exceptional (q, p) pairs of the three endomorphism statements on Y."""
    if lemma == "endo-ambient-y":
        return {(1, -1), (N - 2, d - N)}
    if lemma == "endo-mixed-y":
        return {(1, -1), (N - 3, 2 * d - N - 1)}
    raise KeyError(lemma)


def _endo_ambient_y(D: Deducer, N: int, d: int, p: int, q: int):
    """(T (x) Omega of P^N)(p) restricted to Y."""
    name = "endo-ambient-y"
    Y = _hypersurface(name, N, d)
    _require(p <= -1, name, "p <= -1")
    _require(0 <= q <= N - 2, name, "0 <= q <= N-2")
    F = SheafExpr(Space.proj(N), Kind.ENDO, p).on(Y)
    res = D.query(F, q)
    if (q, p) in excluded_pairs(name, N, d):
        return _excluded(name, res, (q, p))
    return _expect_zero(name, res)


def _endo_mixed_y(D: Deducer, N: int, d: int, p: int, q: int):
    """T_P restricted to Y, tensored with Omega_Y, twisted by p."""
    name = "endo-mixed-y"
    Y = _hypersurface(name, N, d)
    _require(p <= -1, name, "p <= -1")
    _require(0 <= q <= N - 3, name, "0 <= q <= N-3")
    res = D.query(SheafExpr(Y, Kind.MIXED_ENDO, p), q)
    if (q, p) in excluded_pairs(name, N, d):
        return _excluded(name, res, (q, p))
    return _expect_zero(name, res)


ENDO_Y_CLAUSES = ("i", "ii", "iii", "iv", "v")


def endo_y_clause(N: int, q: int) -> str:
    """The first clause of the endomorphism vanishing on Y that speaks about degree q."""
    if q == 0:
        return "i"
    if q == 1:
        return "ii"
    if q == 2:
        return "iii"
    if 3 <= q <= N - 4:
        return "iv"
    if q == N - 3:
        return "v"
    raise PreconditionError(f"endo-y: no clause covers q={q} when N={N}")


def endo_y_excluded(N: int, d: int, p: int, clause: str) -> bool:
    if clause == "ii":
        return p + d > 1
    if clause == "iii":
        return p + d == 0
    if clause == "v":
        return p == 2 * d - N - 1
    return False


def _endo_y(D: Deducer, N: int, d: int, p: int, q: int, clause: str | None = None):
    name = "endo-y"
    Y = _hypersurface(name, N, d)
    _require(p <= -1, name, "p <= -1")
    # the argument runs through the mixed bundle, which is only controlled up to N-3
    _require(0 <= q <= N - 3, name, "0 <= q <= N-3")
    inferred = endo_y_clause(N, q)
    clause = inferred if clause is None else clause
    _require(clause in ENDO_Y_CLAUSES, name, f"clause in {ENDO_Y_CLAUSES}")
    _require(clause == inferred, name, f"clause ({clause}) for q={q}; degree q={q} is governed by clause ({inferred})")
    if clause == "iv":
        _require(N >= 7, name, "clause (iv): N >= 7 so that 3 <= q <= N-4 is non-empty")
    if clause == "v":
        _require(N >= 6, name, "clause (v): N >= 6 (smaller N are covered by clauses (i)-(iii))")
    res = D.query(SheafExpr(Y, Kind.ENDO, p), q)
    if endo_y_excluded(N, d, p, clause):
        return _excluded(name, res, (q, p))
    return _expect_zero(name, res)


def _endo_y_sections(D: Deducer, N: int, d: int):
    """H^0(Y, T_Y (x) Omega_Y (1)) is (N+1)-dimensional."""
    name = "endo-y-sections"
    Y = _hypersurface(name, N, d)
    res = D.query(SheafExpr(Y, Kind.ENDO, 1), 0)
    if res.is_nonzero and res.dim is not None and res.dim != N + 1:
        raise InconsistencyError(f"{name}: engine gives {res.conclusion()}, expected {N + 1}")
    if res.is_nonzero and res.dim == N + 1:
        return _wrap(name, res)
    return Derivation(f"lemma:{name}", res.sheaf, 0, Verdict.UNKNOWN, premises=(res,), detail="not certified")


def _endo_restrict(D: Deducer, N: int, d: int, degrees):
    """Sections of (T_Y (x) Omega_Y)(1) on Z inside Y agree with those on Y."""
    name = "endo-restrict"
    Y = _hypersurface(name, N, d)
    degrees = tuple(degrees)
    _require(1 <= len(degrees) <= N - 3, name, "1 <= c <= N-3 (dim Z >= 2)")
    _require(all(m >= d for m in degrees), name, "m_j >= d for every j")
    Z = Space.ci_in_hypersurface(N, d, degrees)
    cx = koszul_complex(Z, SheafExpr(Y, Kind.ENDO, 0), 1)
    iso = chase_iso(cx, 0, D)
    if iso.verdict is not Verdict.ISO:
        return Derivation(f"lemma:{name}", iso.sheaf, 0, Verdict.UNKNOWN, premises=(iso,), detail="kernel not certified")
    return _wrap(name, iso)


def _quadrics(D: Deducer, N: int, degrees):
    """h^0(I_Z(2)) through the ideal complex; equals the number of quadric equations."""
    name = "quadrics"
    Z = _ci(name, N, degrees)
    iso = chase_iso(ideal_complex(Z, 2), 0, D)
    if iso.verdict is not Verdict.ISO or iso.dim is None:
        return Derivation(f"lemma:{name}", iso.sheaf, 0, Verdict.UNKNOWN, premises=(iso,), detail="not certified")
    expected = Counter(Z.cut_degrees)[2]
    if iso.dim != expected:
        raise InconsistencyError(f"{name}: chase gives {iso.dim}, count of quadrics is {expected}")
    return _wrap(name, iso)


def _forms_twist(D: Deducer, N: int, degrees, r: int, p: int):
    """H^0(Z, Omega^r_Z(p)) for 1 <= r <= dim Z - 1."""
    name = "forms-twist"
    Z = _ci(name, N, degrees)
    _require(Z.dim >= 2, name, "dim Z >= 2")
    _require(1 <= r <= Z.dim - 1, name, "1 <= r <= dim Z - 1")
    res = D.query(forms(Z, r, p), 0)
    return _wrap(name, res) if res.decisive else Derivation(
        f"lemma:{name}", res.sheaf, 0, Verdict.UNKNOWN, premises=(res,)
    )


def _tangent_twist(D: Deducer, N: int, degrees, twist: int = 1):
    """H^0(Z, T_Z(twist)), read through adjunction."""
    name = "tangent-twist"
    Z = _ci(name, N, degrees)
    res = D.query(SheafExpr(Z, Kind.TANGENT, twist), 0)
    return _wrap(name, res) if res.decisive else Derivation(
        f"lemma:{name}", res.sheaf, 0, Verdict.UNKNOWN, premises=(res,)
    )


def _vector_fields(D: Deducer, N: int, degrees):
    return _tangent_twist(D, N, degrees, 0)


LEMMAS: dict[str, _LemmaDef] = {
    "wedge": _LemmaDef(_wedge, ("N", "degrees", "r", "t"), "H^0(Z, Omega^r_P|_Z(t)) = 0 for r >= max(1, t)"),
    "omega-ambient-y": _LemmaDef(_omega_ambient_y, ("N", "d", "r", "p", "q"), "cohomology of Omega^r_P|_Y(p)"),
    "endo-ambient-y": _LemmaDef(_endo_ambient_y, ("N", "d", "p", "q"), "H^q(Y, (T_P (x) Omega_P)(p)|_Y) = 0"),
    "endo-mixed-y": _LemmaDef(_endo_mixed_y, ("N", "d", "p", "q"), "H^q(Y, T_P|_Y (x) Omega_Y (p)) = 0"),
    "endo-y": _LemmaDef(_endo_y, ("N", "d", "p", "q"), "H^q(Y, T_Y (x) Omega_Y (p)) = 0 for p <= -1"),
    "endo-y-sections": _LemmaDef(_endo_y_sections, ("N", "d"), "h^0(Y, T_Y (x) Omega_Y (1)) = N+1"),
    "endo-restrict": _LemmaDef(_endo_restrict, ("N", "d", "degrees"), "H^0(Z, F(1)|_Z) = H^0(Y, F(1)), F = T_Y (x) Omega_Y"),
    "quadrics": _LemmaDef(_quadrics, ("N", "degrees"), "h^0(I_Z(2)) = #{m_i = 2}"),
    "forms-twist": _LemmaDef(_forms_twist, ("N", "degrees", "r", "p"), "H^0(Z, Omega^r_Z(p))"),
    "tangent-twist": _LemmaDef(_tangent_twist, ("N", "degrees"), "H^0(Z, T_Z(1))"),
    "vector-fields": _LemmaDef(_vector_fields, ("N", "degrees"), "H^0(Z, T_Z)"),
}


def derive_named(lemma: str, deducer: Deducer | None = None, **params) -> Derivation:
    """Run a named derivation for concrete parameters.

    >>> derive_named("endo-y-sections", N=5, d=3).dim
    6
    """
    if lemma not in LEMMAS:
        raise KeyError(f"unknown lemma {lemma!r}; known: {sorted(LEMMAS)}")
    spec = LEMMAS[lemma]
    missing = [k for k in spec.params if k not in params]
    if missing:
        raise PreconditionError(f"{lemma}: missing parameters {missing}")
    D = deducer if deducer is not None else Deducer()
    return spec.run(D, **params)
