"""Vanishing deduction over exact sequences, with replayable traces.

The engine answers "what is H^q(X, F)?" for sheaves in the ``SheafExpr``
vocabulary with one of Zero, Nonzero (dimension when known) or Unknown.
Facts enter from a small set of named axioms (line bundles and Bott on P^N,
the classical vanishing theorems for forms on complete intersections and
hypersurfaces), are moved around by rewrites (adjunction, canonical bundle,
top-degree Serre duality, conormal splitting) and spread through long exact
sequences.  Every decisive answer is a ``Derivation`` tree that ``replay``
can re-check node by node without asking the engine again.

Unknown is an ordinary answer.  The engine never reports Zero unless every
premise it relied on is itself decisive.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Iterator

from .bott import bott_omega, bott_tableau, euler_char_omega, line_bundle_h
from .sheaves import (
    DirectSum,
    ExactComplex,
    Kind,
    SheafExpr,
    Source,
    Space,
    SpaceKind,
    forms,
    hilbert_ci,
    ideal_complex,
    koszul_complex,
    line_bundle_chi,
    structure,
)

__all__ = [
    "Verdict",
    "Derivation",
    "Deducer",
    "InconsistencyError",
    "ReplayError",
    "chase_vanish",
    "chase_iso",
    "euler_characteristic",
    "replay",
    "restriction_parent",
]


class Verdict(Enum):
    ZERO = "Zero"
    NONZERO = "Nonzero"
    ISO = "Iso"
    UNKNOWN = "Unknown"


class InconsistencyError(RuntimeError):
    """Two routes disagree, or a window produced a negative dimension."""


class ReplayError(AssertionError):
    pass


@dataclass(frozen=True, eq=False)
class Derivation:
    """One rule application: ``rule`` concludes ``verdict`` for H^q(sheaf).

    For ISO the conclusion is H^q(sheaf) = H^{iso_q}(iso_target), with ``dim``
    the common dimension when known.  ``complex`` and ``position`` record the
    exact sequence a sequence rule worked on.
    """

    rule: str
    sheaf: SheafExpr | DirectSum
    q: int
    verdict: Verdict
    dim: int | None = None
    premises: tuple[Derivation, ...] = ()
    iso_target: DirectSum | None = None
    iso_q: int | None = None
    complex: ExactComplex | None = None
    position: int | None = None
    detail: str = ""

    def __post_init__(self):
        if self.verdict is Verdict.ZERO:
            object.__setattr__(self, "dim", 0)
        elif self.verdict is Verdict.UNKNOWN:
            object.__setattr__(self, "dim", None)
        if self.dim is not None and self.dim < 0:
            raise InconsistencyError(f"negative dimension from {self.rule} at H^{self.q}({self.sheaf})")

    @property
    def is_zero(self) -> bool:
        return self.verdict is Verdict.ZERO

    @property
    def is_nonzero(self) -> bool:
        return self.verdict is Verdict.NONZERO

    @property
    def is_unknown(self) -> bool:
        return self.verdict is Verdict.UNKNOWN

    @property
    def decisive(self) -> bool:
        return self.verdict in (Verdict.ZERO, Verdict.NONZERO)

    def conclusion(self) -> str:
        if self.verdict is Verdict.ISO:
            extra = "" if self.dim is None else f", dim {self.dim}"
            return f"Iso H^{self.iso_q}({self.iso_target}){extra}"
        if self.verdict is Verdict.NONZERO and self.dim is not None:
            return f"NonzeroDim {self.dim}"
        return self.verdict.value

    def walk(self) -> Iterator[Derivation]:
        yield self
        for p in self.premises:
            yield from p.walk()

    def size(self) -> int:
        return sum(1 for _ in self.walk())

    def depth(self) -> int:
        return 1 + max((p.depth() for p in self.premises), default=0)

    def to_text(self) -> str:
        lines: list[str] = []
        self._render(lines, 0)
        return "\n".join(lines) + "\n"

    def _render(self, lines, depth):
        note = f"  # {self.detail}" if self.detail else ""
        lines.append(f"{'  ' * depth}{self.rule} {self.sheaf} {self.q} {self.conclusion()}{note}")
        for p in self.premises:
            p._render(lines, depth + 1)

    def to_dict(self) -> dict:
        out = {
            "rule": self.rule,
            "sheaf": str(self.sheaf),
            "q": self.q,
            "verdict": self.verdict.value,
            "dim": self.dim,
        }
        if self.verdict is Verdict.ISO:
            out["iso"] = {"sheaf": str(self.iso_target), "q": self.iso_q}
        if self.detail:
            out["detail"] = self.detail
        if self.premises:
            out["premises"] = [p.to_dict() for p in self.premises]
        return out


def _unknown(rule, sheaf, q, detail="", premises=()) -> Derivation:
    return Derivation(rule, sheaf, q, Verdict.UNKNOWN, premises=tuple(premises), detail=detail)


def _from_bott(rule, sheaf, q, v, detail="") -> Derivation:
    if v.is_zero:
        return Derivation(rule, sheaf, q, Verdict.ZERO, detail=detail)
    return Derivation(rule, sheaf, q, Verdict.NONZERO, v.dim, detail=detail)


def _as_sum(x) -> DirectSum:
    return x if isinstance(x, DirectSum) else DirectSum.of(x)


def _same_target(a, b) -> bool:
    return _as_sum(a) == _as_sum(b)


# ---------------------------------------------------------------------------
# axioms


def _axiom_grothendieck(F: SheafExpr, q: int):
    if q < 0 or q > F.cohomology_dim:
        return Derivation("grothendieck", F, q, Verdict.ZERO, detail=f"q outside 0..{F.cohomology_dim}")
    return None


def _axiom_projective(F: SheafExpr, q: int):
    S = F.space
    if S.kind is not SpaceKind.PROJ:
        return None
    if F.kind is Kind.STRUCTURE:
        return _from_bott("line-bundle", F, q, line_bundle_h(S.N, F.twist, q))
    if F.kind is Kind.FORMS:
        return _from_bott("bott", F, q, bott_omega(S.N, F.param, F.twist, q))
    if F.kind is Kind.TABLEAU:
        return _from_bott("bott-tableau", F, q, bott_tableau(S.N, F.param, F.twist, q))
    return None


def _axiom_omega_y(F: SheafExpr, q: int):
    # forms on a smooth hypersurface Y in P^N
    S = F.space
    if S.kind is not SpaceKind.HYPERSURFACE or F.kind is not Kind.FORMS or F.source is not Source.SELF:
        return None
    N, r, p = S.N, F.param, F.twist
    if q == 0 and 1 <= r <= N - 2 and p <= r:
        return Derivation("omega-y", F, q, Verdict.ZERO, detail="H^0 clause")
    if 1 <= q <= N - 2 and q + r != N - 1:
        if q == r and p == 0:
            return Derivation("omega-y", F, q, Verdict.NONZERO, 1, detail="middle clause")
        return Derivation("omega-y", F, q, Verdict.ZERO, detail="middle clause")
    return None


def bruck_applies(F: SheafExpr, q: int) -> bool:
    """Guard for the H^0 vanishing of twisted forms on a complete intersection."""
    return (
        F.space.is_ci
        and F.kind is Kind.FORMS
        and F.source is Source.SELF
        and q == 0
        and 1 <= F.param <= F.space.dim - 1
        and F.twist <= F.param
    )


def _axiom_bruck(F: SheafExpr, q: int):
    if not bruck_applies(F, q):
        return None
    return Derivation("bruck", F, q, Verdict.ZERO, detail=f"r={F.param}, p={F.twist} <= r")


def _axiom_forms_nonvanishing(F: SheafExpr, q: int):
    S = F.space
    if not (S.is_ci and F.kind is Kind.FORMS and F.source is Source.SELF and q == 0):
        return None
    r = F.param
    if 1 <= r <= S.dim - 1 and F.twist >= r + 1:
        return Derivation(
            "forms-nonvanishing", F, q, Verdict.NONZERO,
            detail=f"H^0(Omega^{r}({r + 1})) != 0, twisted up by {F.twist - r - 1}",
        )
    return None


def _axiom_tableau_y(F: SheafExpr, q: int):
    S = F.space
    if not (S.kind is SpaceKind.HYPERSURFACE and F.kind is Kind.TABLEAU and q == 0):
        return None
    if S.d >= 3 and F.param == S.N - 2 and F.twist <= S.N + 2 - S.d:
        return Derivation(
            "tableau-y", F, q, Verdict.ZERO,
            detail=f"H^0 vanishes at twist {S.N + 2 - S.d} and below",
        )
    return None


AXIOMS: tuple[Callable, ...] = (
    _axiom_grothendieck,
    _axiom_projective,
    _axiom_bruck,
    _axiom_omega_y,
    _axiom_forms_nonvanishing,
    _axiom_tableau_y,
)
AXIOM_RULES = {
    "grothendieck": _axiom_grothendieck,
    "line-bundle": _axiom_projective,
    "bott": _axiom_projective,
    "bott-tableau": _axiom_projective,
    "omega-y": _axiom_omega_y,
    "bruck": _axiom_bruck,
    "forms-nonvanishing": _axiom_forms_nonvanishing,
    "tableau-y": _axiom_tableau_y,
}


# ---------------------------------------------------------------------------
# rewrites: H^q(F) = H^q'(G) for an isomorphic or dual sheaf G


def _rewrite(F: SheafExpr, q: int):
    """Return (rule, target, q') or None."""
    S = F.space
    n = S.dim
    if F.kind is Kind.TANGENT:
        if S.kind is SpaceKind.PROJ:
            return "adjunction", forms(S, S.N - 1, F.twist + S.N + 1), q
        if F.source is Source.AMBIENT:
            return "adjunction", forms(S, S.N - 1, F.twist + S.N + 1, Source.AMBIENT), q
        if F.source is Source.HYPERSURFACE:
            Y = S.parent
            return "adjunction", forms(Y, Y.dim - 1, F.twist - Y.canonical_twist).on(S), q
        return "adjunction", forms(S, n - 1, F.twist - S.canonical_twist), q
    if F.kind is Kind.FORMS and S.is_ci:
        if F.source is Source.SELF and F.param == n:
            return "canonical", structure(S, F.twist + S.canonical_twist), q
        if F.source is Source.AMBIENT and F.param == S.N:
            return "canonical", structure(S, F.twist - S.N - 1), q
        if F.source is Source.HYPERSURFACE and F.param == S.parent.dim:
            return "canonical", structure(S, F.twist + S.parent.canonical_twist), q
    if F.kind is Kind.ENDO and F.source is Source.SELF and n == 1:
        return "curve-endo", structure(S, F.twist), q
    if F.kind is Kind.CONORMAL:
        return "conormal", DirectSum(tuple(structure(S, F.twist - m) for m in S.cut_degrees)), q
    if S.is_ci and q == n and q > 0 and F.source is Source.SELF:
        if F.kind is Kind.STRUCTURE:
            return "serre-top", structure(S, S.canonical_twist - F.twist), 0
        if F.kind is Kind.FORMS:
            return "serre-top", forms(S, n - F.param, -F.twist), 0
    return None


# ---------------------------------------------------------------------------
# Euler characteristics


def restriction_parent(F: SheafExpr) -> SheafExpr | None:
    """The sheaf on the parent space whose restriction is F, at twist 0."""
    S = F.space
    if not S.is_ci:
        return None
    if F.kind is Kind.STRUCTURE:
        return structure(S.ambient)
    if F.source is Source.AMBIENT:
        return SheafExpr(S.ambient, F.kind, 0, F.param)
    if F.source is Source.HYPERSURFACE:
        return SheafExpr(S.parent, F.kind, 0, F.param)
    return None


def euler_characteristic(F: SheafExpr) -> int | None:
    """chi(F) when it follows from the Euler, Koszul and conormal sequences; else None."""
    S, t = F.space, F.twist
    if S.kind is SpaceKind.PROJ:
        N = S.N
        if F.kind is Kind.STRUCTURE:
            return line_bundle_chi(N, t)
        if F.kind is Kind.FORMS:
            return euler_char_omega(N, F.param, t)
        if F.kind is Kind.TANGENT:
            return euler_char_omega(N, N - 1, t + N + 1)
        if F.kind is Kind.ENDO:
            return (N + 1) * euler_char_omega(N, 1, t + 1) - euler_char_omega(N, 1, t)
        if F.kind is Kind.TABLEAU and F.param == N - 1 and N >= 2:
            k = t - N - 1
            return (N + 1) * euler_char_omega(N, 1, k + 1) - euler_char_omega(N, 1, k) - line_bundle_chi(N, k)
        return None
    if F.kind is Kind.IDEAL:
        return line_bundle_chi(S.N, t) - hilbert_ci(S.N, S.cut_degrees, t)
    if F.kind is Kind.CONORMAL:
        return sum(hilbert_ci(S.N, S.cut_degrees, t - m) for m in S.cut_degrees)
    parent = restriction_parent(F)
    if parent is not None:
        degrees = S.relative_degrees if F.source is Source.HYPERSURFACE else S.cut_degrees
        total = 0
        for size in range(len(degrees) + 1):
            for sub in itertools.combinations(degrees, size):
                chi = euler_characteristic(parent.twisted(t - sum(sub)))
                if chi is None:
                    return None
                total += (-1) ** size * chi
        return total
    if F.kind is Kind.FORMS:
        # graded pieces of Omega^r_P|_Z are Lambda^j(conormal) (x) Omega^{r-j}_Z
        r = F.param
        total = euler_characteristic(SheafExpr(S, Kind.FORMS, t, r, Source.AMBIENT))
        for j in range(1, r + 1):
            for sub in itertools.combinations(S.cut_degrees, j):
                total -= euler_characteristic(forms(S, r - j, t - sum(sub)))
        return total
    if F.kind is Kind.TANGENT:
        return euler_characteristic(forms(S, S.dim - 1, t - S.canonical_twist))
    if F.kind is Kind.MIXED_ENDO:
        ambient_endo = SheafExpr(S, Kind.ENDO, t, source=Source.AMBIENT)
        ambient_tangent = SheafExpr(S, Kind.TANGENT, t - S.d, source=Source.AMBIENT)
        a, b = euler_characteristic(ambient_endo), euler_characteristic(ambient_tangent)
        return None if a is None or b is None else a - b
    if F.kind is Kind.ENDO and S.kind is SpaceKind.HYPERSURFACE:
        a = euler_characteristic(SheafExpr(S, Kind.MIXED_ENDO, t))
        b = euler_characteristic(forms(S, 1, t + S.d))
        return None if a is None or b is None else a - b
    if F.kind is Kind.ENDO and S.dim == 1:
        return hilbert_ci(S.N, S.cut_degrees, t)
    return None


# ---------------------------------------------------------------------------
# long exact sequence windows


def _les_slot(position: int, q: int, k: int) -> tuple[int, int]:
    # 0 -> A -> E -> C -> 0 gives ... H^q(A) H^q(E) H^q(C) H^{q+1}(A) ...
    idx = 3 * q + position + k
    return idx % 3, idx // 3


def _window_infer(x: dict[int, Derivation]):
    """Apply the window rules to known slots x[k] = H(X_k); return (verdict, dim, used, tag)."""

    def zero(k):
        return k in x and x[k].is_zero

    def nonzero(k):
        return k in x and x[k].is_nonzero

    def dim(k):
        return x[k].dim if k in x else None

    if zero(-1) and zero(1):
        return Verdict.ZERO, 0, (-1, 1), "between vanishing neighbours"
    if zero(-1) and zero(2) and 1 in x and x[1].decisive:
        return x[1].verdict, dim(1), (-1, 2, 1), "iso to next"
    if zero(-2) and zero(1) and -1 in x and x[-1].decisive:
        return x[-1].verdict, dim(-1), (-2, 1, -1), "iso to previous"
    if zero(-2) and zero(2) and dim(-1) is not None and dim(1) is not None:
        total = dim(-1) + dim(1)
        return (Verdict.ZERO if total == 0 else Verdict.NONZERO), total, (-2, 2, -1, 1), "sum of neighbours"
    if zero(-3) and zero(1) and dim(-1) is not None and dim(-2) is not None:
        total = dim(-1) - dim(-2)
        if total < 0:
            raise InconsistencyError("window produced a negative dimension")
        return (Verdict.ZERO if total == 0 else Verdict.NONZERO), total, (-3, 1, -2, -1), "difference"
    if zero(-1) and zero(3) and dim(1) is not None and dim(2) is not None:
        total = dim(1) - dim(2)
        if total < 0:
            raise InconsistencyError("window produced a negative dimension")
        return (Verdict.ZERO if total == 0 else Verdict.NONZERO), total, (-1, 3, 1, 2), "difference"
    if zero(-2) and nonzero(-1):
        return Verdict.NONZERO, None, (-2, -1), "previous injects"
    if zero(2) and nonzero(1):
        return Verdict.NONZERO, None, (2, 1), "surjects onto next"
    return None


# ---------------------------------------------------------------------------
# chases over longer complexes


def _vanish_requirements(cx: ExactComplex, q: int, upto: int | None = None):
    """Premises of the vanishing chase for the term at index ``upto`` (default: last)."""
    m = cx.length if upto is None else upto
    return [(cx.terms[m - j], q + j - 1) for j in range(1, m + 1)]


def _iso_requirements(cx: ExactComplex, q: int):
    m = cx.length
    if m == 1:
        return []
    # kernel K of F_{m-1} -> F_m is resolved by F_0..F_{m-2}
    reqs = []
    for qq in (q, q + 1):
        reqs.extend((cx.terms[m - 1 - j], qq + j - 1) for j in range(1, m))
    return reqs


class Deducer:
    """Answers H^q queries; caches decisive answers.

    A deducer holds a private cache and is not meant to be shared between
    threads.  With ``cross_check`` every route is evaluated and conflicting
    decisive answers raise ``InconsistencyError``.
    """

    def __init__(self, *, cross_check: bool = False, pin: bool = True):
        self.cross_check = cross_check
        self.pin = pin
        self._memo: dict[tuple, Derivation] = {}
        self._active: set[tuple] = set()
        self._cuts = 0
        self.bruck_queries: list[tuple[SheafExpr, int]] = []

    # -- public entry points -------------------------------------------------

    def query(self, target, q: int, *, pin: bool | None = None) -> Derivation:
        if isinstance(target, DirectSum):
            return self._query_sum(target, q)
        pin = self.pin if pin is None else pin
        key = (target, q, pin)
        if key in self._memo:
            return self._memo[key]
        active_key = (target, q)
        if active_key in self._active:
            self._cuts += 1
            return _unknown("cycle-cut", target, q)
        self._active.add(active_key)
        cuts_before = self._cuts
        try:
            result = self._solve(target, q, pin)
        finally:
            self._active.discard(active_key)
        if result.decisive or self._cuts == cuts_before:
            self._memo[key] = result
        return result

    def chase_vanish(self, cx: ExactComplex, q: int) -> Derivation:
        return chase_vanish(cx, q, self)

    def chase_iso(self, cx: ExactComplex, q: int) -> Derivation:
        return chase_iso(cx, q, self)

    # -- internals -----------------------------------------------------------

    def _query_sum(self, ds: DirectSum, q: int) -> Derivation:
        if len(ds) == 1:
            return self.query(ds.summands[0], q)
        distinct = sorted(set(ds.summands))
        parts = [self.query(s, q) for s in distinct]
        if all(p.is_zero for p in parts):
            return Derivation("direct-sum", ds, q, Verdict.ZERO, premises=tuple(parts))
        nz = [p for p in parts if p.is_nonzero]
        if nz:
            if all(p.decisive for p in parts) and all(p.dim is not None for p in parts):
                total = sum(p.dim * ds.summands.count(s) for s, p in zip(distinct, parts))
                return Derivation("direct-sum", ds, q, Verdict.NONZERO, total, premises=tuple(parts))
            return Derivation("direct-sum", ds, q, Verdict.NONZERO, premises=(nz[0],))
        bad = next(p for p in parts if p.is_unknown)
        return _unknown("direct-sum", ds, q, "a summand is unknown", (bad,))

    def _solve(self, F: SheafExpr, q: int, pin: bool) -> Derivation:
        outside = _axiom_grothendieck(F, q)
        if outside is not None:
            return outside
        best: Derivation | None = None
        seen: list[Derivation] = []
        for route in self._routes(F, q):
            d = route()
            if d is None or not d.decisive:
                continue
            if self.cross_check:
                for other in seen:
                    _check_agree(other, d)
                seen.append(d)
            if d.is_zero or d.dim is not None:
                if not self.cross_check:
                    return d
                best = best if best is not None and (best.is_zero or best.dim is not None) else d
            elif best is None:
                best = d
        if best is not None and (best.is_zero or best.dim is not None):
            return best
        if pin:
            pinned = self._pin(F, q)
            if pinned is not None:
                if best is not None and pinned.is_zero:
                    raise InconsistencyError(f"Euler pin contradicts {best.rule} at H^{q}({F})")
                return pinned
        return best if best is not None else _unknown("no-route", F, q)

    def _routes(self, F: SheafExpr, q: int):
        for ax in AXIOMS:
            yield lambda ax=ax: self._axiom(ax, F, q)
        rw = _rewrite(F, q)
        if rw is not None:
            yield lambda: self._via_rewrite(F, q, rw)
        for make in self._sequences(F):
            yield lambda make=make: self._via_sequence(F, q, *make())

    def _axiom(self, ax, F, q):
        if ax is _axiom_bruck and bruck_applies(F, q):
            self.bruck_queries.append((F, q))
        return ax(F, q)

    def _via_rewrite(self, F, q, rw):
        rule, G, qq = rw
        d = self.query(G, qq)
        if not d.decisive:
            return None
        return Derivation(rule, F, q, d.verdict, d.dim, premises=(d,), detail=f"-> H^{qq}({G})")

    def _sequences(self, F: SheafExpr):
        """Yield thunks returning (complex, position-of-F, mode)."""
        S = F.space
        if S.kind is SpaceKind.PROJ and F.kind is Kind.ENDO and S.N >= 2:
            N, k = S.N, F.twist
            yield lambda: (
                ExactComplex(
                    (structure(S, k), F, SheafExpr(S, Kind.TABLEAU, N + 1 + k, N - 1)),
                    provenance="trace-splitting",
                ),
                1,
                "window",
            )
            return
        if F.kind is Kind.IDEAL:
            yield lambda: (ideal_complex(S, F.twist), None, "chase")
            return
        if F.kind is Kind.STRUCTURE and S.is_ci and S.codim >= 2:
            yield lambda: (
                ExactComplex(
                    (SheafExpr(S, Kind.IDEAL, F.twist), structure(S.ambient, F.twist), F),
                    provenance="ideal-sequence",
                ),
                2,
                "window",
            )
        parent = restriction_parent(F)
        if parent is not None:
            def koszul():
                cx = koszul_complex(S, parent, F.twist)
                return (cx, 2, "window") if cx.length == 2 else (cx, None, "chase")
            yield koszul
        if S.kind is SpaceKind.HYPERSURFACE and F.kind is Kind.ENDO and F.source is Source.SELF and S.N >= 3:
            N, d, p = S.N, S.d, F.twist
            yield lambda: (
                ExactComplex(
                    (F, SheafExpr(S, Kind.MIXED_ENDO, p), forms(S, 1, p + d)),
                    provenance="normal-sequence",
                ),
                0,
                "window",
            )
            yield lambda: (
                ExactComplex(
                    (structure(S, p), F, SheafExpr(S, Kind.TABLEAU, N + 1 + p - d, N - 2)),
                    provenance="trace-splitting",
                ),
                1,
                "window",
            )
        if S.kind is SpaceKind.HYPERSURFACE and F.kind is Kind.MIXED_ENDO:
            p, d = F.twist, S.d
            yield lambda: (
                ExactComplex(
                    (
                        SheafExpr(S, Kind.TANGENT, p - d, source=Source.AMBIENT),
                        SheafExpr(S, Kind.ENDO, p, source=Source.AMBIENT),
                        F,
                    ),
                    provenance="conormal-sequence",
                ),
                2,
                "window",
            )

    def _via_sequence(self, F, q, cx, position, mode):
        if mode == "window":
            return self._window(F, q, cx, position)
        d = chase_vanish(cx, q, self)
        if d.is_zero:
            return d
        iso = chase_iso(cx, q, self)
        if iso.verdict is not Verdict.ISO:
            return None
        target = self.query(iso.iso_target, iso.iso_q)
        if not target.decisive:
            return None
        return Derivation(
            "via-iso", F, q, target.verdict, target.dim, premises=(iso, target),
            detail=f"-> H^{iso.iso_q}({iso.iso_target})",
        )

    def _window(self, F, q, cx: ExactComplex, position: int):
        slots: dict[int, Derivation] = {}

        def fetch(k):
            if k not in slots:
                term, deg = _les_slot(position, q, k)
                slots[k] = self.query(cx.terms[term], deg)
            return slots[k]

        # fetch lazily, nearest slots first
        for ks in ((-1, 1), (2,), (-2,), (3,), (-3,)):
            for k in ks:
                fetch(k)
            res = _window_infer(slots)
            if res is not None:
                verdict, dim, used, tag = res
                return Derivation(
                    "les-window", F, q, verdict, dim,
                    premises=tuple(slots[k] for k in used),
                    complex=cx, position=position,
                    detail=f"{cx.provenance}: {tag}",
                )
        return None

    def _pin(self, F: SheafExpr, q: int):
        chi = euler_characteristic(F)
        if chi is None:
            return None
        others = []
        rest = 0
        for qq in range(F.cohomology_dim + 1):
            if qq == q:
                continue
            d = self.query(F, qq, pin=False)
            if not d.decisive or d.dim is None:
                return None
            others.append(d)
            rest += (-1) ** qq * d.dim
        value = (-1) ** q * (chi - rest)
        if value < 0:
            raise InconsistencyError(f"Euler pin gives negative h^{q}({F})")
        verdict = Verdict.ZERO if value == 0 else Verdict.NONZERO
        return Derivation("euler-pin", F, q, verdict, value, premises=tuple(others), detail=f"chi={chi}")


def _check_agree(a: Derivation, b: Derivation):
    if a.verdict is not b.verdict:
        raise InconsistencyError(f"{a.rule} says {a.conclusion()} but {b.rule} says {b.conclusion()} at H^{a.q}({a.sheaf})")
    if a.dim is not None and b.dim is not None and a.dim != b.dim:
        raise InconsistencyError(f"{a.rule} and {b.rule} disagree on dim H^{a.q}({a.sheaf})")


def chase_vanish(cx: ExactComplex, q: int, rules: Deducer | None = None) -> Derivation:
    """H^q(last term) = 0 when H^{q+j-1}(F_{m-j}) = 0 for j = 1..m; otherwise Unknown."""
    if not isinstance(cx, ExactComplex):
        raise TypeError("chase_vanish needs an ExactComplex")
    rules = rules if rules is not None else Deducer()
    premises = []
    for term, deg in _vanish_requirements(cx, q):
        d = rules.query(term, deg)
        if not d.is_zero:
            return _unknown("chase-vanish", cx.last, q, f"H^{deg}({term}) not certified zero", (d,))
        premises.append(d)
    return Derivation(
        "chase-vanish", _target_of(cx), q, Verdict.ZERO, premises=tuple(premises),
        complex=cx, detail=cx.provenance,
    )


def chase_iso(cx: ExactComplex, q: int, rules: Deducer | None = None) -> Derivation:
    """H^q(last) = H^q(penultimate) when the kernel between them has H^q = H^{q+1} = 0."""
    if not isinstance(cx, ExactComplex):
        raise TypeError("chase_iso needs an ExactComplex")
    rules = rules if rules is not None else Deducer()
    premises = []
    for term, deg in _iso_requirements(cx, q):
        d = rules.query(term, deg)
        if not d.is_zero:
            return _unknown("chase-iso", cx.last, q, f"H^{deg}({term}) not certified zero", (d,))
        premises.append(d)
    penult = cx.terms[cx.length - 1]
    target = rules.query(penult, q)
    dim = target.dim if target.decisive else None
    return Derivation(
        "chase-iso", _target_of(cx), q, Verdict.ISO, dim,
        premises=tuple(premises) + ((target,) if target.decisive else ()),
        iso_target=penult, iso_q=q, complex=cx, detail=cx.provenance,
    )


def _target_of(cx: ExactComplex):
    last = cx.last
    return last.summands[0] if len(last) == 1 else last


# ---------------------------------------------------------------------------
# replay


def replay(d: Derivation) -> bool:
    """Re-check every node of a derivation from its premises; raise ReplayError on failure.

    Each node is checked locally: axioms are re-evaluated, rewrites and
    sequence rules are re-derived from the premises' stated conclusions.
    No node may depend on its own group H^q(F) further down the tree.
    """
    _replay(d, frozenset(), set())
    return True


def _fail(d: Derivation, why: str):
    raise ReplayError(f"{d.rule} at H^{d.q}({d.sheaf}): {why}")


def _is_wrapper(d: Derivation) -> bool:
    return d.rule == "via-iso" or d.rule.startswith("lemma:")


def _replay(d: Derivation, path: frozenset, done: set):
    key = (_as_sum(d.sheaf), d.q)
    if key in path:
        _fail(d, "circular premise")
    if id(d) in done:
        return
    _check_node(d)
    for p in d.premises:
        same = (_as_sum(p.sheaf), p.q) == key
        _replay(p, path if same and _is_wrapper(d) else path | {key}, done)
    done.add(id(d))


def _check_node(d: Derivation):
    rule = d.rule
    if d.verdict is Verdict.UNKNOWN:
        return
    if rule in AXIOM_RULES:
        if isinstance(d.sheaf, DirectSum):
            _fail(d, "axiom applied to a sum")
        again = AXIOM_RULES[rule](d.sheaf, d.q)
        if again is None or again.rule != rule or again.verdict is not d.verdict or again.dim != d.dim:
            _fail(d, "axiom does not reproduce")
        return
    if rule in ("adjunction", "canonical", "curve-endo", "conormal", "serre-top"):
        rw = _rewrite(d.sheaf, d.q)
        (p,) = d.premises
        if rw is None or rw[0] != rule or not _same_target(rw[1], p.sheaf) or rw[2] != p.q:
            _fail(d, "rewrite target mismatch")
        if p.verdict is not d.verdict or p.dim != d.dim:
            _fail(d, "rewrite changed the verdict")
        return
    if rule == "direct-sum":
        ds = _as_sum(d.sheaf)
        by = {p.sheaf: p for p in d.premises}
        if any(p.q != d.q for p in d.premises):
            _fail(d, "summand at wrong degree")
        if d.is_zero:
            if set(by) != set(ds.summands) or not all(p.is_zero for p in d.premises):
                _fail(d, "not every summand vanishes")
        elif d.is_nonzero:
            if not any(p.is_nonzero and p.sheaf in ds.summands for p in d.premises):
                _fail(d, "no nonzero summand")
            if d.dim is not None:
                if set(by) != set(ds.summands):
                    _fail(d, "dimension needs every summand")
                total = sum(by[s].dim for s in ds.summands)
                if total != d.dim:
                    _fail(d, "dimensions do not add up")
        return
    if rule == "chase-vanish":
        reqs = _vanish_requirements(d.complex, d.q)
        if not _same_target(d.sheaf, d.complex.last):
            _fail(d, "conclusion is not the last term")
        _match(d, reqs, d.premises)
        return
    if rule == "chase-iso":
        reqs = _iso_requirements(d.complex, d.q)
        _match(d, reqs, d.premises[: len(reqs)])
        if d.iso_target != d.complex.terms[d.complex.length - 1] or d.iso_q != d.q:
            _fail(d, "iso target is not the penultimate term")
        rest = d.premises[len(reqs):]
        if d.dim is not None:
            if len(rest) != 1 or not _same_target(rest[0].sheaf, d.iso_target) or rest[0].dim != d.dim:
                _fail(d, "transported dimension is not backed")
        return
    if rule == "via-iso":
        iso, target = d.premises
        if iso.verdict is not Verdict.ISO or not _same_target(iso.sheaf, d.sheaf) or iso.q != d.q:
            _fail(d, "first premise is not an iso for this group")
        if not _same_target(target.sheaf, iso.iso_target) or target.q != iso.iso_q:
            _fail(d, "second premise is not the iso target")
        if target.verdict is not d.verdict or target.dim != d.dim:
            _fail(d, "verdict not transported")
        return
    if rule == "les-window":
        cx, pos = d.complex, d.position
        if len(cx.terms) != 3 or not _same_target(cx.terms[pos], d.sheaf):
            _fail(d, "window does not sit on a short exact sequence")
        slots = {}
        for k in (-3, -2, -1, 1, 2, 3):
            term, deg = _les_slot(pos, d.q, k)
            for p in d.premises:
                if p.q == deg and _same_target(p.sheaf, cx.terms[term]):
                    slots[k] = p
        res = _window_infer(slots)
        if res is None or res[0] is not d.verdict or res[1] != d.dim:
            _fail(d, "window rules do not reproduce the conclusion")
        return
    if rule.startswith("lemma:"):
        (p,) = d.premises
        if p.verdict is not d.verdict or p.dim != d.dim or p.iso_target != d.iso_target:
            _fail(d, "lemma wrapper does not match its derivation")
        return
    if rule == "euler-pin":
        chi = euler_characteristic(d.sheaf)
        known = {p.q: p.dim for p in d.premises if p.decisive and p.dim is not None and p.sheaf == d.sheaf}
        if set(known) != set(range(d.sheaf.cohomology_dim + 1)) - {d.q} or len(known) != len(d.premises):
            _fail(d, "other degrees are not all known")
        rest = sum((-1) ** qq * h for qq, h in known.items())
        if chi is None or (-1) ** d.q * (chi - rest) != d.dim:
            _fail(d, "Euler characteristic does not match")
        return
    _fail(d, "unknown rule")


def _match(d: Derivation, reqs, premises):
    if len(reqs) != len(premises):
        _fail(d, "premise count mismatch")
    for (term, deg), p in zip(reqs, premises):
        if p.q != deg or not _same_target(p.sheaf, term) or not p.is_zero:
            _fail(d, f"premise H^{deg}({term}) not certified zero")
