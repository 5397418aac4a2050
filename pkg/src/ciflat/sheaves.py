"""Formal sheaf symbols on P^N, on a hypersurface Y and on complete intersections.

A ``SheafExpr`` names a twisted sheaf; nothing here computes cohomology.
Expressions are canonicalized on construction so that equal sheaves compare
equal: Omega^0 is O, on P^N there is no difference between "restricted from
P^N" and "intrinsic", and a complete intersection cut out by one equation is
a hypersurface.
"""
from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field
from enum import Enum

from .bott import poly_binomial

__all__ = [
    "SpaceKind",
    "Space",
    "Kind",
    "Source",
    "SheafExpr",
    "DirectSum",
    "ExactComplex",
    "structure",
    "forms",
    "koszul_complex",
    "ideal_complex",
    "restriction_sequence",
    "hilbert_ci",
    "line_bundle_chi",
    "complex_euler_characteristic",
]


class SpaceKind(Enum):
    PROJ = "Proj"
    HYPERSURFACE = "Hypersurface"
    COMPLETE_INTERSECTION = "CompleteIntersection"
    CI_IN_HYPERSURFACE = "CIinHypersurface"


@dataclass(frozen=True, order=True)
class Space:
    """P^N, a hypersurface Y of degree d, a complete intersection Z, or Z inside Y.

    ``degrees`` are the cutting degrees relative to the immediate parent:
    P^N for a complete intersection, Y for ``CI_IN_HYPERSURFACE``.
    """

    kind: SpaceKind
    N: int
    d: int = 0
    degrees: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "degrees", tuple(sorted(self.degrees)))
        if self.N < 1:
            raise ValueError(f"ambient dimension must be >= 1, got {self.N}")
        if self.kind in (SpaceKind.HYPERSURFACE, SpaceKind.CI_IN_HYPERSURFACE) and self.d < 2:
            raise ValueError(f"hypersurface degree must be >= 2, got {self.d}")
        if any(m < 2 for m in self.degrees):
            raise ValueError(f"cutting degrees must be >= 2, got {list(self.degrees)}")
        if self.kind is SpaceKind.PROJ and (self.d or self.degrees):
            raise ValueError("projective space carries no degrees")
        if self.kind is SpaceKind.HYPERSURFACE and self.degrees:
            raise ValueError("a hypersurface has a single degree d")
        if self.kind in (SpaceKind.COMPLETE_INTERSECTION, SpaceKind.CI_IN_HYPERSURFACE):
            if not self.degrees:
                raise ValueError("a complete intersection needs at least one degree")
        if self.kind is SpaceKind.COMPLETE_INTERSECTION and self.d:
            raise ValueError("use CI_IN_HYPERSURFACE to record a containing hypersurface")
        if self.dim < 1:
            raise ValueError(f"{self} has dimension {self.dim} < 1")

    @classmethod
    def proj(cls, N: int) -> Space:
        return cls(SpaceKind.PROJ, N)

    @classmethod
    def hypersurface(cls, N: int, d: int) -> Space:
        return cls(SpaceKind.HYPERSURFACE, N, d)

    @classmethod
    def ci(cls, N: int, degrees) -> Space:
        degrees = tuple(degrees)
        if len(degrees) == 1:
            return cls.hypersurface(N, degrees[0])
        return cls(SpaceKind.COMPLETE_INTERSECTION, N, 0, degrees)

    @classmethod
    def ci_in_hypersurface(cls, N: int, d: int, degrees) -> Space:
        return cls(SpaceKind.CI_IN_HYPERSURFACE, N, d, tuple(degrees))

    @property
    def cut_degrees(self) -> tuple[int, ...]:
        """Degrees of the equations cutting the space out of P^N."""
        if self.kind is SpaceKind.PROJ:
            return ()
        if self.kind is SpaceKind.HYPERSURFACE:
            return (self.d,)
        if self.kind is SpaceKind.CI_IN_HYPERSURFACE:
            return tuple(sorted((self.d,) + self.degrees))
        return self.degrees

    @property
    def codim(self) -> int:
        return len(self.cut_degrees)

    @property
    def dim(self) -> int:
        return self.N - self.codim

    @property
    def total_degree(self) -> int:
        return sum(self.cut_degrees)

    @property
    def canonical_twist(self) -> int:
        """K = O(m - N - 1) by adjunction."""
        return self.total_degree - self.N - 1

    @property
    def is_ci(self) -> bool:
        return self.kind is not SpaceKind.PROJ

    @property
    def ambient(self) -> Space:
        return Space.proj(self.N)

    @property
    def parent(self) -> Space:
        """The space the Koszul complex of ``self`` lives on."""
        if self.kind is SpaceKind.CI_IN_HYPERSURFACE:
            return Space.hypersurface(self.N, self.d)
        return self.ambient

    @property
    def relative_degrees(self) -> tuple[int, ...]:
        """Cutting degrees relative to ``parent``."""
        if self.kind is SpaceKind.CI_IN_HYPERSURFACE:
            return self.degrees
        return self.cut_degrees

    def as_ci(self) -> Space:
        """Forget a containing hypersurface."""
        if self.kind is SpaceKind.CI_IN_HYPERSURFACE:
            return Space.ci(self.N, self.cut_degrees)
        return self

    def __str__(self) -> str:
        if self.kind is SpaceKind.PROJ:
            return f"P{self.N}"
        if self.kind is SpaceKind.HYPERSURFACE:
            return f"Y{self.d}/P{self.N}"
        degs = ",".join(map(str, self.degrees))
        if self.kind is SpaceKind.CI_IN_HYPERSURFACE:
            return f"Z[{degs}]/Y{self.d}/P{self.N}"
        return f"Z[{degs}]/P{self.N}"


class Kind(Enum):
    STRUCTURE = "O"
    FORMS = "Omega"
    TANGENT = "T"
    ENDO = "TxOmega"
    MIXED_ENDO = "TP|xOmega"
    TABLEAU = "OmegaT"
    IDEAL = "I"
    CONORMAL = "Nv"


class Source(Enum):
    """Where the underlying bundle is defined before restriction."""

    SELF = "self"
    AMBIENT = "ambient"
    HYPERSURFACE = "hypersurface"


@dataclass(frozen=True, order=True)
class SheafExpr:
    """A twisted sheaf ``base(twist)`` on ``space``.

    ``param`` is the form degree for FORMS and the tableau index for TABLEAU.
    IDEAL denotes the ideal sheaf of ``space`` on its ambient P^N.
    """

    space: Space
    kind: Kind
    twist: int = 0
    param: int = 0
    source: Source = Source.SELF

    def __post_init__(self):
        space, kind, param, source = self.space, self.kind, self.param, self.source
        if kind not in (Kind.FORMS, Kind.TABLEAU):
            param = 0
        if kind in (Kind.STRUCTURE, Kind.IDEAL, Kind.CONORMAL, Kind.TABLEAU, Kind.MIXED_ENDO):
            if source is not Source.SELF:
                raise ValueError(f"{kind.value} has no restricted variant")
        if space.kind is SpaceKind.PROJ and source is Source.AMBIENT:
            source = Source.SELF
        if source is Source.HYPERSURFACE and space.kind is not SpaceKind.CI_IN_HYPERSURFACE:
            raise ValueError("restriction from Y needs a space inside a hypersurface")
        if space.kind is SpaceKind.CI_IN_HYPERSURFACE and source is not Source.HYPERSURFACE:
            space = space.as_ci()
        if kind is Kind.FORMS:
            top = space.N if source is Source.AMBIENT else space.dim
            if not 0 <= param <= top:
                raise ValueError(f"form degree {param} outside 0..{top}")
            if param == 0:
                kind, source = Kind.STRUCTURE, Source.SELF
        if kind is Kind.TABLEAU and not 1 <= param <= space.dim:
            raise ValueError(f"tableau index {param} outside 1..{space.dim}")
        if kind in (Kind.IDEAL, Kind.CONORMAL) and not space.is_ci:
            raise ValueError(f"{kind.value} needs a complete intersection")
        if kind is Kind.MIXED_ENDO and space.kind is not SpaceKind.HYPERSURFACE:
            raise ValueError("T_P|Y (x) Omega_Y lives on a hypersurface")
        if kind is Kind.ENDO and space.dim < 1:
            raise ValueError("T (x) Omega needs positive dimension")
        object.__setattr__(self, "space", space)
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "param", param)
        object.__setattr__(self, "source", source)

    @property
    def cohomology_dim(self) -> int:
        """Top degree in which cohomology can be nonzero."""
        return self.space.N if self.kind is Kind.IDEAL else self.space.dim

    def twisted(self, by: int) -> SheafExpr:
        return SheafExpr(self.space, self.kind, self.twist + by, self.param, self.source)

    def on(self, space: Space) -> SheafExpr:
        """Restriction of a sheaf on P^N (or on Y) to a subvariety ``space``."""
        here = self.space
        if here.kind is SpaceKind.PROJ:
            if space.N != here.N:
                raise ValueError(f"{space} is not inside {here}")
            source = Source.AMBIENT
        elif here.kind is SpaceKind.HYPERSURFACE and self.source is Source.SELF:
            if space.kind is not SpaceKind.CI_IN_HYPERSURFACE or space.parent != here:
                raise ValueError(f"{space} is not inside {here}")
            source = Source.HYPERSURFACE
        elif (
            here.kind is SpaceKind.HYPERSURFACE
            and self.source is Source.AMBIENT
            and space.kind is SpaceKind.CI_IN_HYPERSURFACE
            and space.parent == here
        ):
            source = Source.AMBIENT
        else:
            raise ValueError(f"cannot restrict {self} to {space}")
        if self.kind in (Kind.IDEAL, Kind.CONORMAL, Kind.TABLEAU, Kind.MIXED_ENDO):
            raise ValueError(f"restriction of {self.kind.value} is not in the vocabulary")
        if self.kind is Kind.STRUCTURE:
            source = Source.SELF
        return SheafExpr(space, self.kind, self.twist, self.param, source)

    def label(self) -> str:
        base = {
            Kind.STRUCTURE: "O",
            Kind.FORMS: f"Omega^{self.param}",
            Kind.TANGENT: "T",
            Kind.ENDO: "TxOmega",
            Kind.MIXED_ENDO: "T_P|xOmega",
            Kind.TABLEAU: f"Omega^T{self.param}",
            Kind.IDEAL: "I",
            Kind.CONORMAL: "Nv",
        }[self.kind]
        if self.source is Source.AMBIENT:
            base += "_P|"
        elif self.source is Source.HYPERSURFACE:
            base += "_Y|"
        return f"{base}({self.twist})"

    def __str__(self) -> str:
        return f"{self.label()}@{self.space}"


def structure(space: Space, twist: int = 0) -> SheafExpr:
    return SheafExpr(space, Kind.STRUCTURE, twist)


def forms(space: Space, r: int, twist: int = 0, source: Source = Source.SELF) -> SheafExpr:
    return SheafExpr(space, Kind.FORMS, twist, r, source)


@dataclass(frozen=True, order=True)
class DirectSum:
    """A formal direct sum, kept as a sorted multiset of summands."""

    summands: tuple[SheafExpr, ...]

    def __post_init__(self):
        object.__setattr__(self, "summands", tuple(sorted(self.summands)))

    @classmethod
    def of(cls, *summands: SheafExpr) -> DirectSum:
        return cls(tuple(summands))

    def __iter__(self):
        return iter(self.summands)

    def __len__(self) -> int:
        return len(self.summands)

    def __str__(self) -> str:
        counts = Counter(self.summands)
        parts = []
        for s in sorted(counts):
            parts.append(str(s) if counts[s] == 1 else f"{s}^{counts[s]}")
        return "+".join(parts)


@dataclass(frozen=True)
class ExactComplex:
    """0 -> F_0 -> F_1 -> ... -> F_m -> 0, declared exact end to end."""

    terms: tuple[DirectSum, ...]
    provenance: str = ""
    sequence: str = field(default="", compare=False)

    def __post_init__(self):
        terms = tuple(t if isinstance(t, DirectSum) else DirectSum.of(t) for t in self.terms)
        if len(terms) < 2:
            raise ValueError("an exact complex needs at least two terms")
        if any(len(t) == 0 for t in terms):
            raise ValueError("empty term in complex")
        object.__setattr__(self, "terms", terms)

    @property
    def length(self) -> int:
        """Index m of the last term."""
        return len(self.terms) - 1

    @property
    def last(self) -> DirectSum:
        return self.terms[-1]

    def __str__(self) -> str:
        return "0 -> " + " -> ".join(f"[{t}]" for t in self.terms) + " -> 0"


def _koszul_terms(home_sheaf: SheafExpr, degrees: tuple[int, ...], t: int) -> list[DirectSum]:
    c = len(degrees)
    terms = []
    for size in range(c, -1, -1):
        summands = [
            home_sheaf.twisted(t - home_sheaf.twist - sum(S))
            for S in itertools.combinations(degrees, size)
        ]
        terms.append(DirectSum(tuple(summands)))
    return terms


def koszul_complex(space: Space, F: SheafExpr, t: int) -> ExactComplex:
    """Koszul resolution of F|_Z(t) by twists of F on the parent of Z.

    0 -> F(t-m) -> ... -> (+)_i F(t-m_i) -> F(t) -> F|_Z(t) -> 0, where the
    term in homological degree j is the sum over j-subsets, so it has
    C(c, j) summands.  F must live on ``space.parent`` (P^N, or Y when Z sits
    inside Y); its own twist is ignored in favour of ``t``.
    """
    if not space.is_ci:
        raise ValueError("the Koszul complex needs a complete intersection")
    parent = space.parent
    if F.space != parent:
        raise ValueError(f"{F} does not live on {parent}")
    base = SheafExpr(parent, F.kind, 0, F.param, F.source)
    terms = _koszul_terms(base, space.relative_degrees, t)
    terms.append(DirectSum.of(base.twisted(t).on(space)))
    return ExactComplex(tuple(terms), provenance="koszul", sequence=f"koszul:{base.label()}:{t}")


def ideal_complex(space: Space, t: int) -> ExactComplex:
    """0 -> O(t-m) -> ... -> (+)_i O(t-m_i) -> I_Z(t) -> 0 on P^N."""
    space = space.as_ci()
    base = structure(space.ambient)
    terms = _koszul_terms(base, space.cut_degrees, t)[:-1]
    terms.append(DirectSum.of(SheafExpr(space, Kind.IDEAL, t)))
    return ExactComplex(tuple(terms), provenance="koszul-ideal", sequence=f"ideal:{t}")


def restriction_sequence(F: SheafExpr, d: int, space: Space) -> ExactComplex:
    """0 -> F(-d) -> F -> F|_Y -> 0 for a hypersurface Y of degree d."""
    return ExactComplex(
        (DirectSum.of(F.twisted(-d)), DirectSum.of(F), DirectSum.of(F.on(space))),
        provenance="restriction",
    )


def line_bundle_chi(N: int, a: int) -> int:
    """chi(P^N, O(a)) = C(a+N, N) as a polynomial in a."""
    return poly_binomial(a + N, N)


def hilbert_ci(N: int, degrees, t: int) -> int:
    """chi(O_Z(t)) for the complete intersection of the given degrees in P^N (c = 0 allowed)."""
    degrees = list(degrees)
    if any(m < 1 for m in degrees):
        raise ValueError("degrees must be positive")
    total = 0
    for size in range(len(degrees) + 1):
        for S in itertools.combinations(degrees, size):
            total += (-1) ** size * line_bundle_chi(N, t - sum(S))
    return total


def complex_euler_characteristic(cx: ExactComplex) -> int:
    """chi of the last term computed from the alternating sum over the earlier terms.

    Every earlier summand must be a line bundle on P^N.
    """
    m = cx.length
    total = 0
    for i, term in enumerate(cx.terms[:-1]):
        sign = (-1) ** (m - 1 - i)
        for s in term:
            if s.kind is not Kind.STRUCTURE or s.space.kind is not SpaceKind.PROJ:
                raise ValueError(f"{s} is not a line bundle on projective space")
            total += sign * line_bundle_chi(s.space.N, s.twist)
    return total
