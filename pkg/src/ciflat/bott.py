"""Cohomology of twisted forms, tableau bundles and endomorphism bundles on P^N.

All predicates are closed-form and exact.  ``euler_char_omega`` is an
independent oracle built from the Euler sequence; it never consults the
Bott predicates.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from math import comb, factorial

__all__ = [
    "Status",
    "CohomVerdict",
    "ZERO",
    "ProjBundle",
    "BundleKind",
    "poly_binomial",
    "line_bundle_h",
    "bott_omega",
    "bott_tableau",
    "endo_cohomology",
    "euler_char_omega",
    "cohomology",
]


class Status(Enum):
    ZERO = "Zero"
    NONZERO = "Nonzero"


@dataclass(frozen=True)
class CohomVerdict:
    """Outcome of a cohomology predicate; ``dim`` is set only when known."""

    status: Status
    dim: int | None = None

    def __post_init__(self):
        if self.status is Status.ZERO:
            if self.dim not in (None, 0):
                raise ValueError("a Zero verdict has dimension 0")
            object.__setattr__(self, "dim", 0)
        elif self.dim is not None and self.dim < 1:
            raise ValueError("NonzeroDim requires d >= 1")

    @property
    def is_zero(self) -> bool:
        return self.status is Status.ZERO

    @property
    def is_nonzero(self) -> bool:
        return self.status is Status.NONZERO

    @classmethod
    def nonzero(cls, dim: int | None = None) -> CohomVerdict:
        return cls(Status.NONZERO, dim)

    def __str__(self) -> str:
        if self.status is Status.ZERO:
            return "Zero"
        if self.dim is None:
            return "Nonzero"
        return f"NonzeroDim {self.dim}"


ZERO = CohomVerdict(Status.ZERO)


class BundleKind(Enum):
    LINE_BUNDLE = "LineBundle"
    FORM_POWER = "FormPower"
    TABLEAU = "Tableau"
    TANGENT_TENSOR_FORM = "TangentTensorForm"


@dataclass(frozen=True)
class ProjBundle:
    """A twisted bundle on P^N: O(p), Omega^r(p), Omega^{T_k}(p) or (T (x) Omega)(p)."""

    N: int
    kind: BundleKind
    twist: int
    form_degree: int = 0
    tableau_index: int = 0

    def __post_init__(self):
        if self.N < 1:
            raise ValueError(f"ambient dimension must be >= 1, got {self.N}")
        if self.kind is BundleKind.FORM_POWER:
            if not 0 <= self.form_degree <= self.N:
                raise ValueError(f"form degree {self.form_degree} outside 0..{self.N}")
            if self.form_degree == 0:
                object.__setattr__(self, "kind", BundleKind.LINE_BUNDLE)
        elif self.kind is BundleKind.TABLEAU:
            if not 1 <= self.tableau_index <= self.N:
                raise ValueError(f"tableau index {self.tableau_index} outside 1..{self.N}")
        elif self.kind is BundleKind.TANGENT_TENSOR_FORM and self.N < 2:
            raise ValueError("T (x) Omega needs N >= 2")
        if self.kind is not BundleKind.FORM_POWER:
            object.__setattr__(self, "form_degree", 0)
        if self.kind is not BundleKind.TABLEAU:
            object.__setattr__(self, "tableau_index", 0)


def poly_binomial(a: int, n: int) -> int:
    """a(a-1)...(a-n+1)/n!, the binomial polynomial evaluated at any integer a."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if a >= 0:
        return comb(a, n)
    num = 1
    for i in range(n):
        num *= a - i
    return num // factorial(n)


def _check_degree(N: int, q: int) -> None:
    if N < 1:
        raise ValueError(f"ambient dimension must be >= 1, got {N}")
    if not 0 <= q <= N:
        raise ValueError(f"cohomological degree q={q} outside 0..{N}")


def line_bundle_h(N: int, p: int, q: int) -> CohomVerdict:
    """h^q(P^N, O(p)) with its exact dimension."""
    _check_degree(N, q)
    if q == 0 and p >= 0:
        return CohomVerdict.nonzero(comb(p + N, N))
    if q == N and p <= -N - 1:
        return CohomVerdict.nonzero(comb(-p - 1, N))
    return ZERO


def bott_omega(N: int, r: int, p: int, q: int) -> CohomVerdict:
    """Vanishing pattern of H^q(P^N, Omega^r(p)).

    Nonzero exactly for (q=0, p >= r+1), (q=r, p=0) and (q=N, p <= r-1-N).
    Only the dimensions of H^r(Omega^r) and of H^0(O(p)) are attached.
    """
    if not 0 <= r <= N:
        raise ValueError(f"form degree r={r} outside 0..{N}")
    _check_degree(N, q)
    if q == r and p == 0:
        return CohomVerdict.nonzero(1)
    if q == 0 and p >= r + 1:
        return CohomVerdict.nonzero(comb(p + N, N) if r == 0 else None)
    if q == N and p <= r - 1 - N:
        return CohomVerdict.nonzero()
    return ZERO


def bott_tableau(N: int, k: int, p: int, q: int) -> CohomVerdict:
    """Vanishing pattern of H^q(P^N, Omega^{T_k}(p)) for the two-column tableau T_k."""
    if not 1 <= k <= N:
        raise ValueError(f"tableau index k={k} outside 1..{N}")
    _check_degree(N, q)
    if k == N - 1 and p == N and q == 1:
        return CohomVerdict.nonzero(N + 1)
    if (
        (q == 0 and p >= k + 3)
        or (q == 1 and p == k + 1)
        or (q == k and p == 1)
        or (q == N and p <= k - N)
    ):
        return CohomVerdict.nonzero()
    return ZERO


def _middle_of_ses(sub, quot, q: int, top: int) -> CohomVerdict | None:
    # Long exact sequence window  H^{q-1}(C) -> H^q(A) -> H^q(E) -> H^q(C) -> H^{q+1}(A)
    # for 0 -> A -> E -> C -> 0; ``sub``/``quot`` map a degree to a verdict.
    def h(f, j):
        return ZERO if j < 0 or j > top else f(j)

    c_prev, a_here, c_here, a_next = h(quot, q - 1), h(sub, q), h(quot, q), h(sub, q + 1)
    if a_here.is_zero and c_here.is_zero:
        return ZERO
    if a_here.is_zero and a_next.is_zero:
        return c_here
    if c_prev.is_zero and c_here.is_zero:
        return a_here
    if c_prev.is_zero and a_next.is_zero:
        if a_here.dim is not None and c_here.dim is not None:
            return CohomVerdict.nonzero(a_here.dim + c_here.dim)
        return CohomVerdict.nonzero()
    if (c_prev.is_zero and a_here.is_nonzero) or (a_next.is_zero and c_here.is_nonzero):
        return CohomVerdict.nonzero()
    return None


def endo_cohomology(N: int, k: int, q: int) -> CohomVerdict:
    """H^q(P^N, T (x) Omega (k)) for 0 <= q <= N-1.

    Read off the sequence 0 -> O(k) -> T (x) Omega (k) -> Omega^{T_{N-1}}(N+1+k) -> 0.
    At N = 2 the degree q = 1 = N-1 also carries the (1, -1) class, of
    dimension 3.
    """
    if N < 2:
        raise ValueError("T (x) Omega needs N >= 2")
    if not 0 <= q <= N - 1:
        raise ValueError(f"cohomological degree q={q} outside 0..{N - 1}")
    verdict = _middle_of_ses(
        lambda j: line_bundle_h(N, k, j),
        lambda j: bott_tableau(N, N - 1, N + 1 + k, j),
        q,
        N,
    )
    if verdict is None:  # pragma: no cover - every degree in range resolves
        raise AssertionError(f"unresolved window for N={N}, k={k}, q={q}")
    return verdict


def euler_char_omega(N: int, r: int, p: int) -> int:
    """chi(P^N, Omega^r(p)) by inclusion-exclusion over exterior powers of the Euler sequence."""
    if N < 1:
        raise ValueError(f"ambient dimension must be >= 1, got {N}")
    if not 0 <= r <= N:
        raise ValueError(f"form degree r={r} outside 0..{N}")
    return sum(
        (-1) ** j * comb(N + 1, r - j) * poly_binomial(p - r + j + N, N)
        for j in range(r + 1)
    )


def cohomology(bundle: ProjBundle, q: int) -> CohomVerdict:
    """Dispatch a ``ProjBundle`` to the matching predicate."""
    if bundle.kind is BundleKind.LINE_BUNDLE:
        return line_bundle_h(bundle.N, bundle.twist, q)
    if bundle.kind is BundleKind.FORM_POWER:
        return bott_omega(bundle.N, bundle.form_degree, bundle.twist, q)
    if bundle.kind is BundleKind.TABLEAU:
        return bott_tableau(bundle.N, bundle.tableau_index, bundle.twist, q)
    return endo_cohomology(bundle.N, bundle.twist, q)
