"""Root systems of the simple types and the weight arithmetic behind the Hermitian symmetric examples.

Simple roots follow Bourbaki's numbering and are given in the usual
Euclidean coordinates; E6 and E7 sit inside the E8 lattice.  Weights are
stored as coefficient vectors over the fundamental weights and only turned
into coordinates when an inner product is taken.
"""
from __future__ import annotations

import json
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from math import comb

__all__ = [
    "RootSystem",
    "WeightVec",
    "DomainError",
    "PreconditionError",
    "root_system",
    "weyl_dim",
    "is_singular",
    "ihss_list",
    "lemma81_check",
    "hyperplane_h1",
    "classical_dim",
    "closed_form_dims",
    "rigid_entries",
    "generic_stabilizer_trivial",
    "theorem85_check",
    "rigid_list",
    "ihss_table",
    "longest_root_table",
    "format_table",
    "TYPES",
]

TYPES = ("A", "B", "C", "D", "E6", "E7", "E8", "F4", "G2")
MIN_RANK = {"A": 1, "B": 2, "C": 2, "D": 4}
EXCEPTIONAL_RANK = {"E6": 6, "E7": 7, "E8": 8, "F4": 4, "G2": 2}

Vec = tuple[Fraction, ...]
H = Fraction(1, 2)


class DomainError(ValueError):
    pass


class PreconditionError(ValueError):
    pass


def _e(n: int, *pairs) -> Vec:
    v = [Fraction(0)] * n
    for i, c in pairs:
        v[i] += Fraction(c)
    return tuple(v)


def _dot(a: Vec, b: Vec) -> Fraction:
    return sum((x * y for x, y in zip(a, b)), Fraction(0))


def _simple_roots(kind: str, l: int) -> list[Vec]:
    if kind == "A":
        return [_e(l + 1, (i, 1), (i + 1, -1)) for i in range(l)]
    if kind in "BCD":
        chain = [_e(l, (i, 1), (i + 1, -1)) for i in range(l - 1)]
        last = {"B": _e(l, (l - 1, 1)), "C": _e(l, (l - 1, 2)), "D": _e(l, (l - 2, 1), (l - 1, 1))}[kind]
        return chain + [last]
    if kind == "G2":
        return [_e(3, (0, 1), (1, -1)), _e(3, (0, -2), (1, 1), (2, 1))]
    if kind == "F4":
        return [_e(4, (1, 1), (2, -1)), _e(4, (2, 1), (3, -1)), _e(4, (3, 1)), tuple([H, -H, -H, -H])]
    # E8 in Bourbaki's coordinates; E6, E7 take the first l simple roots
    e8 = [tuple([H, -H, -H, -H, -H, -H, -H, H]), _e(8, (0, 1), (1, 1))]
    e8 += [_e(8, (i, 1), (i - 1, -1)) for i in range(1, 7)]
    return e8[:l]


def _solve(A: list[list[Fraction]], b: list[Fraction]) -> list[Fraction]:
    n = len(A)
    m = [row[:] + [b[i]] for i, row in enumerate(A)]
    for c in range(n):
        p = next(r for r in range(c, n) if m[r][c])
        m[c], m[p] = m[p], m[c]
        inv = 1 / m[c][c]
        m[c] = [x * inv for x in m[c]]
        for r in range(n):
            if r != c and m[r][c]:
                f = m[r][c]
                m[r] = [x - f * y for x, y in zip(m[r], m[c])]
    return [m[r][n] for r in range(n)]


@dataclass(frozen=True)
class WeightVec:
    """sum_i c_i lambda_i."""

    coeffs: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(int(c) for c in self.coeffs))

    @classmethod
    def fundamental(cls, l: int, k: int) -> WeightVec:
        if not 1 <= k <= l:
            raise DomainError(f"k={k} outside 1..{l}")
        return cls(tuple(int(i == k - 1) for i in range(l)))

    @classmethod
    def zero(cls, l: int) -> WeightVec:
        return cls((0,) * l)

    def __add__(self, other: WeightVec) -> WeightVec:
        return WeightVec(tuple(a + b for a, b in zip(self.coeffs, other.coeffs, strict=True)))

    def __sub__(self, other: WeightVec) -> WeightVec:
        return WeightVec(tuple(a - b for a, b in zip(self.coeffs, other.coeffs, strict=True)))

    def __len__(self):
        return len(self.coeffs)

    @property
    def is_dominant(self) -> bool:
        return all(c >= 0 for c in self.coeffs)

    def __str__(self) -> str:
        terms = []
        for i, c in enumerate(self.coeffs, 1):
            if c:
                coef = "" if c == 1 else "-" if c == -1 else str(c)
                terms.append(f"{coef}l{i}")
        return " + ".join(terms).replace("+ -", "- ") if terms else "0"


@dataclass(frozen=True)
class RootSystem:
    kind: str
    rank: int
    simple: tuple[Vec, ...] = field(repr=False)
    cartan: tuple[tuple[int, ...], ...] = field(repr=False)
    positive: tuple[tuple[int, ...], ...] = field(repr=False)  # in simple-root coordinates
    fundamental: tuple[Vec, ...] = field(repr=False)

    @property
    def name(self) -> str:
        return self.kind if self.kind in EXCEPTIONAL_RANK else f"{self.kind}{self.rank}"

    @property
    def n_positive(self) -> int:
        return len(self.positive)

    @property
    def dim_g(self) -> int:
        return self.rank + 2 * self.n_positive

    @property
    def rho(self) -> WeightVec:
        return WeightVec((1,) * self.rank)

    def root_vector(self, root: tuple[int, ...]) -> Vec:
        n = len(self.simple[0])
        return tuple(sum((c * a[j] for c, a in zip(root, self.simple)), Fraction(0)) for j in range(n))

    def weight_vector(self, w: WeightVec) -> Vec:
        if len(w) != self.rank:
            raise DomainError(f"weight has {len(w)} coefficients, rank is {self.rank}")
        n = len(self.simple[0])
        return tuple(sum((c * f[j] for c, f in zip(w.coeffs, self.fundamental)), Fraction(0)) for j in range(n))

    @cached_property
    def _positive_vectors(self) -> dict[tuple[int, ...], Vec]:
        return {a: self.root_vector(a) for a in self.positive}

    def inner(self, w: WeightVec, root: tuple[int, ...]) -> Fraction:
        vec = self._positive_vectors.get(root) or self.root_vector(root)
        return _dot(self.weight_vector(w), vec)

    def inner_all(self, w: WeightVec) -> list[Fraction]:
        """(w, alpha) for every positive root, in enumeration order."""
        wv = self.weight_vector(w)
        return [_dot(wv, self._positive_vectors[a]) for a in self.positive]

    def coroot_pairing(self, w: WeightVec, i: int) -> Fraction:
        """(w, alpha_i^vee), 1-based i."""
        a = self.simple[i - 1]
        return 2 * _dot(self.weight_vector(w), a) / _dot(a, a)

    @property
    def highest_root(self) -> tuple[int, ...]:
        return max(self.positive, key=sum)

    @property
    def longest_root(self) -> WeightVec:
        """The highest root written in the fundamental-weight basis."""
        beta = self.highest_root
        return WeightVec(tuple(sum(b * self.cartan[j][i] for j, b in enumerate(beta)) for i in range(self.rank)))


def _positive_roots(cartan) -> tuple[tuple[int, ...], ...]:
    # grow by height using root strings: beta + alpha_i is a root iff p - <beta, alpha_i^vee> > 0
    l = len(cartan)
    simple = [tuple(int(i == j) for j in range(l)) for i in range(l)]
    roots = set(simple)
    layer = list(simple)
    while layer:
        nxt = []
        for beta in layer:
            for i in range(l):
                pairing = sum(beta[j] * cartan[j][i] for j in range(l))
                p, down = 0, list(beta)
                while True:
                    down[i] -= 1
                    if tuple(down) not in roots:
                        break
                    p += 1
                if p - pairing > 0:
                    up = list(beta)
                    up[i] += 1
                    up = tuple(up)
                    if up not in roots:
                        roots.add(up)
                        nxt.append(up)
        layer = nxt
    return tuple(sorted(roots, key=lambda r: (sum(r), r)))


@lru_cache(maxsize=None)
def root_system(kind: str, rank: int | None = None) -> RootSystem:
    """Build a simple root system, e.g. root_system("D", 9) or root_system("E7")."""
    kind = kind.upper()
    if kind not in EXCEPTIONAL_RANK and kind[:1] in ("A", "B", "C", "D") and kind[1:].isdigit():
        kind, rank = kind[0], int(kind[1:])
    if kind in EXCEPTIONAL_RANK:
        if rank is not None and rank != EXCEPTIONAL_RANK[kind]:
            raise DomainError(f"{kind} has rank {EXCEPTIONAL_RANK[kind]}, not {rank}")
        rank = EXCEPTIONAL_RANK[kind]
    elif kind in MIN_RANK:
        if rank is None or rank < MIN_RANK[kind]:
            raise DomainError(f"type {kind} needs rank >= {MIN_RANK[kind]}, got {rank}")
    else:
        raise DomainError(f"unknown type {kind!r}")
    simple = _simple_roots(kind, rank)
    cartan = tuple(
        tuple(int(2 * _dot(a, b) / _dot(b, b)) for b in simple) for a in simple
    )
    # lambda_i as a rational combination of simple roots: (lambda_i, alpha_j^vee) = delta_ij
    n = len(simple[0])
    fundamental = []
    for i in range(rank):
        coords = _solve([[Fraction(cartan[r][c]) for r in range(rank)] for c in range(rank)],
                        [Fraction(int(j == i)) for j in range(rank)])
        fundamental.append(tuple(sum((x * a[j] for x, a in zip(coords, simple)), Fraction(0)) for j in range(n)))
    return RootSystem(kind, rank, tuple(simple), cartan, _positive_roots(cartan), tuple(fundamental))


def _as_weight(g: RootSystem, w) -> WeightVec:
    return w if isinstance(w, WeightVec) else WeightVec(tuple(w))


def weyl_dim(g: RootSystem, lam) -> int:
    """Dimension of the irreducible module with highest weight lam."""
    lam = _as_weight(g, lam)
    if len(lam) != g.rank:
        raise DomainError(f"weight has {len(lam)} coefficients, rank is {g.rank}")
    if not lam.is_dominant:
        raise DomainError(f"{lam} is not dominant")
    shifted = lam + g.rho
    num, den = Fraction(1), Fraction(1)
    for x, y in zip(g.inner_all(shifted), g.inner_all(g.rho)):
        num *= x
        den *= y
    out = num / den
    if out.denominator != 1:  # pragma: no cover - the formula is integral
        raise ArithmeticError(f"Weyl formula gave {out}")
    return int(out)


def is_singular(g: RootSystem, w) -> bool:
    w = _as_weight(g, w)
    return any(x == 0 for x in g.inner_all(w))


def ihss_list(g: RootSystem) -> list[int]:
    """The k for which G/P_k is an irreducible Hermitian symmetric space."""
    l = g.rank
    return {
        "A": list(range(1, l + 1)),
        "B": [1],
        "C": [l],
        "D": [1, l - 1, l],
        "E6": [1, 6],
        "E7": [7],
    }.get(g.kind, [])


def is_projective_space(g: RootSystem, k: int) -> bool:
    return g.kind == "A" and k in (1, g.rank)


def tangent_twist_weight(g: RootSystem, k: int) -> WeightVec:
    """mu = beta - lambda_k, the top weight of T(-1) on G/P_k."""
    return g.longest_root - WeightVec.fundamental(g.rank, k)


def lemma81_check(g: RootSystem, k: int) -> bool:
    """Is mu + rho singular, so that every H^q(G/P_k, T(-1)) vanishes?

    Projective spaces are not excluded up front; for them the weight is
    regular and the answer is simply False.
    """
    if k not in ihss_list(g):
        raise DomainError(f"{g.name}/P{k} is not Hermitian symmetric")
    return is_singular(g, tangent_twist_weight(g, k) + g.rho)


def hyperplane_h1(dimV: int, h0: int, dim_g: int) -> int:
    """h^1(X, T_X) = dim V - 1 + h^0(X, T_X) - dim g for a smooth hyperplane section X."""
    if min(dimV, h0, dim_g) < 0:
        raise DomainError("inputs must be non-negative")
    out = dimV - 1 + h0 - dim_g
    if out < 0:
        warnings.warn(f"negative h^1 = {out}: inputs are inconsistent", RuntimeWarning, stacklevel=2)
    return out


def generic_stabilizer_trivial(g: RootSystem, k: int) -> bool:
    """dim V^{lambda_k} > dim g, so a general hyperplane section has no vector fields."""
    return weyl_dim(g, WeightVec.fundamental(g.rank, k)) > g.dim_g


# lowest n at which each family is asserted to lose its automorphisms
FAMILY_START = {"Spinor": 9, "Lagrangian": 5}


def theorem85_check(family: str, n: int) -> bool:
    fam = family.capitalize()
    if fam not in FAMILY_START:
        raise DomainError(f"unknown family {family!r}; use Spinor or Lagrangian")
    if n < FAMILY_START[fam]:
        raise PreconditionError(f"{fam} family is only asserted for n >= {FAMILY_START[fam]}, got {n}")
    g = root_system("D" if fam == "Spinor" else "C", n)
    return generic_stabilizer_trivial(g, n)


# Hermitian symmetric spaces whose general hyperplane section is rigid.
# Shipped as data: the proof relies on published stabilizer tables.
RIGID_SPORADIC = (
    ("Gr(3,6)", "A", 5, 3),
    ("Gr(3,7)", "A", 6, 3),
    ("Gr(3,7)", "A", 6, 4),
    ("S5", "D", 5, 5),
    ("S5", "D", 5, 4),
    ("S6", "D", 6, 6),
    ("S6", "D", 6, 5),
    ("S7", "D", 7, 7),
    ("S7", "D", 7, 6),
    ("Lag(3,6)", "C", 3, 3),
    ("E6/P1", "E6", 6, 1),
    ("E6/P1", "E6", 6, 6),
    ("E7/P7", "E7", 7, 7),
)


def rigid_entries(max_rank: int = 8) -> list[tuple[str, str, int, int]]:
    """(name, type, rank, k), with the infinite families cut off at max_rank."""
    out = []
    for l in range(1, max_rank + 1):
        out.append((f"P{l}", "A", l, 1))
        if l > 1:
            out.append((f"P{l}", "A", l, l))
    for l in range(2, max_rank + 1):
        out.append((f"Q{2 * l - 1}", "B", l, 1))
    for l in range(4, max_rank + 1):
        out.append((f"Q{2 * l - 2}", "D", l, 1))
    for l in range(3, max_rank + 1):
        out.append((f"Gr(2,{l + 1})", "A", l, 2))
        out.append((f"Gr(2,{l + 1})", "A", l, l - 1))
    out.extend(e for e in RIGID_SPORADIC if e[2] <= max_rank)
    return sorted(set(out), key=lambda e: (TYPES.index(e[1]), e[2], e[3]))


def rigid_list(max_rank: int = 8) -> list[tuple[str, int, int]]:
    seen, out = set(), []
    for _, kind, l, k in rigid_entries(max_rank):
        if (kind, l, k) not in seen:
            seen.add((kind, l, k))
            out.append((kind, l, k))
    return out


IHSS_NAMES = {
    "A": "Gr(k,l+1)",
    "B": "Q^(2l-1)",
    "C": "Lag(l,2l)",
    "D": "Q^(2l-2), S_l",
    "E6": "OP^2",
    "E7": "E7/P7",
}
IHSS_K = {"A": "1..l", "B": "1", "C": "l", "D": "1, l-1, l", "E6": "1, 6", "E7": "7"}


def _symbolic_longest_root(kind: str) -> str:
    # read off a generic-rank representative, then write it with l for the last index
    g = root_system(kind, {"A": 5, "B": 5, "C": 5, "D": 6}.get(kind))
    terms = []
    for i, c in enumerate(g.longest_root.coeffs, 1):
        if not c:
            continue
        idx = "l" if kind in MIN_RANK and i == g.rank else str(i)
        terms.append(f"{'' if c == 1 else c}lambda_{idx}")
    return " + ".join(terms)


def ihss_table() -> list[dict]:
    """One row per type that has a Hermitian symmetric quotient."""
    return [{"g": kind, "k": IHSS_K[kind], "G/P_k": IHSS_NAMES[kind]} for kind in IHSS_NAMES]


def longest_root_table() -> list[dict]:
    rows = []
    for kind, note in (("A", ""), ("C", "l >= 2"), ("F4", ""), ("E7", ""), ("B", "l >= 3"),
                       ("D", "l >= 4"), ("G2", ""), ("E6", ""), ("E8", "")):
        rows.append({"g": kind + (f" ({note})" if note else ""), "beta": _symbolic_longest_root(kind)})
    return rows


def format_table(rows: list[dict], fmt: str = "text") -> str:
    if fmt == "json":
        return json.dumps(rows, indent=2, sort_keys=False) + "\n"
    if not rows:
        return ""
    cols = list(rows[0])
    width = {c: max(len(c), *(len(str(r[c])) for r in rows)) for c in cols}
    lines = ["  ".join(c.ljust(width[c]) for c in cols).rstrip()]
    lines.append("  ".join("-" * width[c] for c in cols))
    for r in rows:
        lines.append("  ".join(str(r[c]).ljust(width[c]) for c in cols).rstrip())
    return "\n".join(lines) + "\n"


def classical_dim(kind: str, l: int) -> int:
    # closed forms used as an independent check on dim_g
    return {
        "A": l * l + 2 * l,
        "B": 2 * l * l + l,
        "C": 2 * l * l + l,
        "D": 2 * l * l - l,
        "G2": 14,
        "F4": 52,
        "E6": 78,
        "E7": 133,
        "E8": 248,
    }[kind]


def closed_form_dims(kind: str, l: int, k: int) -> int | None:
    """Known closed forms for a few fundamental modules, or None."""
    if kind == "A":
        return comb(l + 1, k)
    if kind == "D" and k in (l - 1, l):
        return 2 ** (l - 1)
    if kind == "C" and k == l:
        return comb(2 * l, l) - comb(2 * l, l - 2)
    return None
