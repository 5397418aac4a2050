"""Alternating maps V x V -> V over Q(i), and the conic witness.

On the Fermat conic x_1^2 + x_2^2 + x_3^2 = 0 the cross product sends every
isotropic u and tangent v back into the line through u, although it is not
of the form delta(u) v - delta(v) u.
"""
from __future__ import annotations

import random
from dataclasses import dataclass

from .gauss import GaussRat, I, as_gauss, null_space, random_gauss, rank

__all__ = [
    "GaussianVec",
    "AltMap",
    "DomainError",
    "sigma_conic",
    "zero_map",
    "conic_point",
    "is_isotropic",
    "tangent_basis",
    "check_xi_prime",
    "contraction",
    "check_xi_V",
    "random_vec",
    "witness_sweep",
]


class DomainError(ValueError):
    pass


@dataclass(frozen=True)
class GaussianVec:
    coords: tuple[GaussRat, ...]

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(as_gauss(x) for x in self.coords))

    @classmethod
    def of(cls, *xs) -> GaussianVec:
        return cls(tuple(xs))

    @classmethod
    def basis(cls, n: int, i: int) -> GaussianVec:
        return cls(tuple(1 if j == i else 0 for j in range(n)))

    def __len__(self):
        return len(self.coords)

    def __iter__(self):
        return iter(self.coords)

    def __getitem__(self, i):
        return self.coords[i]

    def __add__(self, other: GaussianVec) -> GaussianVec:
        return GaussianVec(tuple(a + b for a, b in zip(self, other, strict=True)))

    def __sub__(self, other: GaussianVec) -> GaussianVec:
        return GaussianVec(tuple(a - b for a, b in zip(self, other, strict=True)))

    def scale(self, c) -> GaussianVec:
        return GaussianVec(tuple(as_gauss(c) * a for a in self))

    def dot(self, other: GaussianVec) -> GaussRat:
        # bilinear, no conjugation: this is the quadric's form
        return sum((a * b for a, b in zip(self, other, strict=True)), GaussRat(0))

    def is_zero(self) -> bool:
        return not any(self.coords)

    def __str__(self) -> str:
        return "(" + ", ".join(map(str, self.coords)) + ")"


@dataclass(frozen=True)
class AltMap:
    """sigma(e_j, e_k) = sum_i c[i][j][k] e_i, antisymmetric in (j, k)."""

    consts: tuple[tuple[tuple[GaussRat, ...], ...], ...]

    def __post_init__(self):
        c = tuple(tuple(tuple(as_gauss(x) for x in row) for row in plane) for plane in self.consts)
        n = len(c)
        if any(len(plane) != n or any(len(row) != n for row in plane) for plane in c):
            raise ValueError("structure constants must form an n x n x n array")
        for i in range(n):
            for j in range(n):
                for k in range(j, n):
                    if c[i][j][k] != -c[i][k][j]:
                        raise ValueError(f"not alternating at i={i}, j={j}, k={k}")
        object.__setattr__(self, "consts", c)

    @property
    def n(self) -> int:
        return len(self.consts)

    @classmethod
    def from_function(cls, n: int, f) -> AltMap:
        """Tabulate a bilinear f on basis vectors."""
        planes = [[[GaussRat(0)] * n for _ in range(n)] for _ in range(n)]
        for j in range(n):
            for k in range(n):
                w = f(GaussianVec.basis(n, j), GaussianVec.basis(n, k))
                for i in range(n):
                    planes[i][j][k] = w[i]
        return cls(tuple(tuple(tuple(r) for r in p) for p in planes))

    def __call__(self, u: GaussianVec, v: GaussianVec) -> GaussianVec:
        n = self.n
        if len(u) != n or len(v) != n:
            raise ValueError(f"vectors must have length {n}")
        out = []
        for i in range(n):
            acc = GaussRat(0)
            plane = self.consts[i]
            for j in range(n):
                if not u[j]:
                    continue
                for k in range(n):
                    if plane[j][k] and v[k]:
                        acc = acc + plane[j][k] * u[j] * v[k]
            out.append(acc)
        return GaussianVec(tuple(out))

    def is_antisymmetric(self) -> bool:
        c = self.consts
        n = self.n
        return all(c[i][j][k] == -c[i][k][j] for i in range(n) for j in range(n) for k in range(n))


def sigma_conic() -> AltMap:
    """The cross product on C^3: e1 ^ e2 -> e3, e2 ^ e3 -> e1, e3 ^ e1 -> e2."""

    def cross(u, v):
        return GaussianVec.of(
            u[1] * v[2] - u[2] * v[1],
            u[2] * v[0] - u[0] * v[2],
            u[0] * v[1] - u[1] * v[0],
        )

    return AltMap.from_function(3, cross)


def zero_map(n: int) -> AltMap:
    z = GaussRat(0)
    return AltMap(tuple(tuple(tuple(z for _ in range(n)) for _ in range(n)) for _ in range(n)))


def is_isotropic(u: GaussianVec) -> bool:
    return not u.dot(u)


def conic_point(s, t) -> GaussianVec:
    """(s^2 - t^2, i(s^2 + t^2), 2st), a point on the Fermat conic."""
    s, t = as_gauss(s), as_gauss(t)
    if not s and not t:
        raise DomainError("(s, t) = (0, 0) does not give a point")
    u = GaussianVec.of(s * s - t * t, I * (s * s + t * t), 2 * s * t)
    if not is_isotropic(u):  # pragma: no cover - identity in s, t
        raise ArithmeticError(f"{u} is not isotropic")
    return u


def tangent_basis(u: GaussianVec) -> list[GaussianVec]:
    """Basis of {v : sum u_i v_i = 0}, the affine tangent space of the cone at u."""
    if u.is_zero():
        raise DomainError("u = 0 is not a point of the cone")
    return [GaussianVec(tuple(x)) for x in null_space([list(u.coords)])]


def check_xi_prime(sigma: AltMap, u: GaussianVec, v: GaussianVec) -> bool:
    """Does sigma(u, v) lie on the line through u?

    u must be a nonzero isotropic vector and v tangent to the cone at u.
    """
    if u.is_zero():
        raise DomainError("u = 0 is not a point of the cone")
    if not is_isotropic(u):
        raise ValueError(f"u = {u} is not on the conic")
    if u.dot(v):
        raise ValueError(f"v = {v} is not tangent at u = {u}")
    return rank([list(u.coords), list(sigma(u, v).coords)]) <= 1


def contraction(delta) -> AltMap:
    """sigma_delta(u, v) = delta(u) v - delta(v) u."""
    d = GaussianVec(tuple(delta))
    if len(d) < 2:
        raise ValueError("contraction needs dim V >= 2")
    n, z = len(d), GaussRat(0)
    # c^i_{jk} = delta_j [i = k] - delta_k [i = j]
    return AltMap(tuple(
        tuple(tuple((d[j] if i == k else z) - (d[k] if i == j else z) for k in range(n)) for j in range(n))
        for i in range(n)
    ))


def check_xi_V(sigma: AltMap, u: GaussianVec, v: GaussianVec) -> bool:
    """Is sigma(u, v) in span{u, v}?"""
    return rank([list(u.coords), list(v.coords), list(sigma(u, v).coords)]) <= 2


def random_vec(rng: random.Random, n: int, height: int = 5) -> GaussianVec:
    return GaussianVec(tuple(random_gauss(rng, height) for _ in range(n)))


@dataclass
class SweepReport:
    grid_points: int = 0
    grid_checks: int = 0
    random_tangent_checks: int = 0
    contraction_checks: int = 0
    failures: int = 0

    @property
    def ok(self) -> bool:
        return self.failures == 0


def default_grid(size: int = 20) -> list[GaussRat]:
    # small Gaussian rationals, zero included
    vals = []
    a = 0
    while len(vals) < size:
        for b in (0, 1, -1, 2):
            if len(vals) < size:
                vals.append(GaussRat(a, b) / (1 + abs(a) % 3))
        a = -a if a > 0 else -a + 1
    return vals


def witness_sweep(grid_size: int = 20, samples: int = 200, seed: int = 0) -> SweepReport:
    """Certify the conic witness on a grid and on seeded random data."""
    rng = random.Random(seed)
    sigma = sigma_conic()
    rep = SweepReport()
    grid = default_grid(grid_size)
    for s in grid:
        for t in grid:
            if not s and not t:
                continue
            u = conic_point(s, t)
            rep.grid_points += 1
            for v in tangent_basis(u):
                rep.grid_checks += 1
                rep.failures += not check_xi_prime(sigma, u, v)
    for _ in range(samples):
        s, t = random_gauss(rng), random_gauss(rng)
        if not s and not t:
            s = GaussRat(1)
        u = conic_point(s, t)
        a, b = tangent_basis(u)
        v = a.scale(random_gauss(rng)) + b.scale(random_gauss(rng))
        rep.random_tangent_checks += 1
        rep.failures += not check_xi_prime(sigma, u, v)
    for _ in range(samples):
        n = rng.randint(2, 5)
        delta = random_vec(rng, n)
        u, v = random_vec(rng, n), random_vec(rng, n)
        rep.contraction_checks += 1
        rep.failures += not check_xi_V(contraction(delta), u, v)
    return rep
