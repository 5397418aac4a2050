"""Closed-form verdicts for smooth complete intersections, read off the multi-degree."""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from math import prod

__all__ = [
    "MultiDegree",
    "MainClause",
    "MainVerdict",
    "CURVE_LIST",
    "HIGHER_LIST",
    "MAIN_CURVE_EXCLUSIONS",
    "h0_tz1_nonzero",
    "h0_tz_nonzero",
    "xi_prime_nonzero",
    "xi0_trivial",
    "vmrt_multidegree",
    "theorem_main_verdict",
    "xi_equals_xiv_verdict",
    "projnormal_surjective",
    "hom_bundle_exists",
]

# multi-degrees with H^0(Z, T_Z(1)) != 0, used only as a test oracle
CURVE_LIST = frozenset({(2,), (3,), (4,), (2, 2), (2, 3), (2, 2, 2)})
HIGHER_LIST = frozenset({(2,), (3,), (2, 2)})
MAIN_CURVE_EXCLUSIONS = frozenset({(3,), (4,), (2, 2), (2, 3), (2, 2, 2)})
MAIN_LINES_EXCLUSIONS = HIGHER_LIST


@dataclass(frozen=True, order=True)
class MultiDegree:
    """Degrees [m_1 <= ... <= m_c] of a complete intersection in P^N."""

    degrees: tuple[int, ...]
    N: int

    def __post_init__(self):
        degs = tuple(sorted(int(m) for m in self.degrees))
        object.__setattr__(self, "degrees", degs)
        if any(m < 2 for m in degs):
            raise ValueError(f"degrees must be >= 2, got {list(degs)}")
        if not 1 <= len(degs) <= self.N - 1:
            raise ValueError(f"need 1 <= c <= N-1, got c={len(degs)}, N={self.N}")

    @classmethod
    def of(cls, N: int, *degrees: int) -> MultiDegree:
        return cls(tuple(degrees), N)

    @property
    def c(self) -> int:
        return len(self.degrees)

    @property
    def m(self) -> int:
        return sum(self.degrees)

    @property
    def dim(self) -> int:
        return self.N - self.c

    @property
    def degree(self) -> int:
        """Projective degree, the product of the m_i."""
        return prod(self.degrees)

    @property
    def is_curve(self) -> bool:
        return self.dim == 1

    def __str__(self) -> str:
        return f"[{','.join(map(str, self.degrees))}] in P{self.N}"


def h0_tz1_nonzero(Z: MultiDegree) -> bool:
    """Is H^0(Z, T_Z(1)) nonzero?

    For a curve T_Z(1) = O_Z(N+2-m).  In dimension >= 2 it is
    Omega^{n-1}_Z(N+2-m), which has no sections once N+2-m <= n-1.
    """
    if Z.is_curve:
        return Z.N + 2 >= Z.m
    return sum(m - 1 for m in Z.degrees) <= 2


def h0_tz_nonzero(Z: MultiDegree) -> bool:
    """Does Z carry a nonzero vector field?"""
    if Z.is_curve:
        return Z.N + 1 >= Z.m
    return Z.degrees == (2,)


def xi_prime_nonzero(Z: MultiDegree) -> bool:
    return Z.degrees == (2,) and Z.N == 2


def xi0_trivial(Z: MultiDegree) -> bool:
    # every smooth complete intersection is tangentially nondegenerate
    return True


def vmrt_multidegree(Z: MultiDegree) -> MultiDegree:
    """Multi-degree of the variety of minimal rational tangents at a general point.

    Lives in P(T_x Z) = P^{n-1}; the caller vouches that Z is covered by lines.
    Raises ValueError when the result would not be a positive-dimensional
    complete intersection.
    """
    degs = sorted(k for m in Z.degrees for k in range(2, m + 1))
    return MultiDegree(tuple(degs), Z.dim - 1)


class MainClause(Enum):
    CURVE = "Curve-i"
    COVERED_BY_LINES = "CoveredByLines-ii"
    IN_HYPERSURFACE = "InHypersurface-iii"
    NOT_COVERED = "NotCovered"


@dataclass(frozen=True)
class MainVerdict:
    clause: MainClause

    @property
    def locally_flat_concluded(self) -> bool:
        return self.clause is not MainClause.NOT_COVERED

    def __str__(self) -> str:
        tail = "locally flat" if self.locally_flat_concluded else "no conclusion"
        return f"{self.clause.value} ({tail})"


def _check_hypersurface_degree(Z: MultiDegree, d: int | None):
    if d is None:
        return
    if d < 3:
        raise ValueError(f"hypersurface degree must be >= 3, got {d}")
    if d != Z.degrees[0]:
        raise ValueError(f"hypersurface degree d={d} must equal m_1={Z.degrees[0]}")


def _in_hypersurface(Z: MultiDegree, d: int | None) -> bool:
    # d = m_1 < d+2 <= m_2 <= ... <= m_c; the chain needs a second degree
    return d is not None and Z.c >= 2 and all(m >= d + 2 for m in Z.degrees[1:])


def theorem_main_verdict(Z: MultiDegree, covered_by_lines: bool = False, d: int | None = None) -> MainVerdict:
    """Which hypothesis, if any, makes isotrivial structures of type Z locally flat.

    Clauses are tried in order; a curve is never covered by lines, so the
    second clause is only consulted in dimension >= 2.
    """
    _check_hypersurface_degree(Z, d)
    if Z.is_curve and Z.degrees not in MAIN_CURVE_EXCLUSIONS:
        return MainVerdict(MainClause.CURVE)
    if covered_by_lines and not Z.is_curve and Z.degrees not in MAIN_LINES_EXCLUSIONS:
        return MainVerdict(MainClause.COVERED_BY_LINES)
    if _in_hypersurface(Z, d):
        return MainVerdict(MainClause.IN_HYPERSURFACE)
    return MainVerdict(MainClause.NOT_COVERED)


def xi_equals_xiv_verdict(Z: MultiDegree, covered_by_lines: bool = False, d: int | None = None) -> bool:
    """True when one of the three sufficient conditions for Xi_Z = Xi_V holds."""
    _check_hypersurface_degree(Z, d)
    if Z.is_curve and Z.degree >= 3:
        return True
    if covered_by_lines and not Z.is_curve and Z.degrees != (2,):
        return True
    return _in_hypersurface(Z, d)


def projnormal_surjective(Z: MultiDegree, i: int) -> bool:
    """Surjectivity of multiplication H^0(K(m_i-2)) (x) H^0(O(1)) -> H^0(K(m_i-1)) on a curve.

    ``i`` is 1-based.  Holds as soon as deg K(m_i-2) >= 0, i.e. m + m_i - N - 3 >= 0.
    """
    if not Z.is_curve:
        raise ValueError(f"{Z} is not a curve")
    if not 1 <= i <= Z.c:
        raise ValueError(f"index i={i} outside 1..{Z.c}")
    return Z.m + Z.degrees[i - 1] - Z.N - 3 >= 0


def hom_bundle_exists(source_degrees, target_degree: int) -> bool:
    """Is there a nonzero map O(a_1) + ... + O(a_k) -> O(b) on a positive-dimensional base?"""
    source = list(source_degrees)
    if not source:
        raise ValueError("empty source")
    return min(source) <= target_degree
