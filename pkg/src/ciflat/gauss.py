"""Exact arithmetic in Q(i) and small dense linear algebra over it."""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

__all__ = ["GaussRat", "I", "as_gauss", "rank", "null_space", "random_gauss"]


@dataclass(frozen=True)
class GaussRat:
    """a + b i with a, b rational."""

    real: Fraction = Fraction(0)
    imag: Fraction = Fraction(0)

    def __post_init__(self):
        if type(self.real) is not Fraction:
            object.__setattr__(self, "real", Fraction(self.real))
        if type(self.imag) is not Fraction:
            object.__setattr__(self, "imag", Fraction(self.imag))

    def __add__(self, other):
        o = as_gauss(other)
        return GaussRat(self.real + o.real, self.imag + o.imag)

    __radd__ = __add__

    def __neg__(self):
        return GaussRat(-self.real, -self.imag)

    def __sub__(self, other):
        return self + (-as_gauss(other))

    def __rsub__(self, other):
        return as_gauss(other) - self

    def __mul__(self, other):
        o = as_gauss(other)
        return GaussRat(self.real * o.real - self.imag * o.imag, self.real * o.imag + self.imag * o.real)

    __rmul__ = __mul__

    def conjugate(self) -> GaussRat:
        return GaussRat(self.real, -self.imag)

    def norm(self) -> Fraction:
        return self.real * self.real + self.imag * self.imag

    def __truediv__(self, other):
        o = as_gauss(other)
        n = o.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(i)")
        p = self * o.conjugate()
        return GaussRat(p.real / n, p.imag / n)

    def __rtruediv__(self, other):
        return as_gauss(other) / self

    def __pow__(self, k: int):
        if k < 0:
            return GaussRat(1) / self ** (-k)
        out = GaussRat(1)
        for _ in range(k):
            out = out * self
        return out

    def __bool__(self):
        return bool(self.real) or bool(self.imag)

    def __eq__(self, other):
        try:
            o = as_gauss(other)
        except TypeError:
            return NotImplemented
        return self.real == o.real and self.imag == o.imag

    def __hash__(self):
        return hash((self.real, self.imag))

    def __repr__(self) -> str:
        return f"GaussRat({self})"

    def __str__(self) -> str:
        if not self.imag:
            return str(self.real)
        if not self.real:
            return "i" if self.imag == 1 else "-i" if self.imag == -1 else f"{self.imag}i"
        sign = "+" if self.imag > 0 else "-"
        mag = abs(self.imag)
        return f"{self.real}{sign}{'' if mag == 1 else mag}i"


I = GaussRat(0, 1)


def as_gauss(x) -> GaussRat:
    if isinstance(x, GaussRat):
        return x
    if isinstance(x, (int, Rational)):
        return GaussRat(Fraction(x))
    if isinstance(x, complex):
        raise TypeError("floating complex numbers are not exact; build a GaussRat instead")
    raise TypeError(f"cannot use {type(x).__name__} as a Gaussian rational")


def _echelon(rows):
    m = [[as_gauss(x) for x in row] for row in rows]
    pivots = []
    r = 0
    ncols = len(m[0]) if m else 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = GaussRat(1) / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def _rank_two_rows(a, b) -> int:
    if not any(a):
        return 1 if any(b) else 0
    n = len(a)
    for j in range(n):
        for k in range(j + 1, n):
            if a[j] * b[k] - a[k] * b[j]:
                return 2
    return 1 if any(a) or any(b) else 0


def rank(rows) -> int:
    """Exact rank of a matrix given as a list of rows."""
    if not rows:
        return 0
    if len(rows) == 2:
        return _rank_two_rows([as_gauss(x) for x in rows[0]], [as_gauss(x) for x in rows[1]])
    return len(_echelon(rows)[1])


def null_space(rows, n: int | None = None) -> list[list[GaussRat]]:
    """Basis of {x : A x = 0}, from reduced row echelon form."""
    n = len(rows[0]) if rows else n
    reduced, pivots = _echelon(rows) if rows else ([], [])
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        x = [GaussRat(0)] * n
        x[f] = GaussRat(1)
        for row, pc in zip(reduced, pivots):
            x[pc] = -row[f]
        basis.append(x)
    return basis


def random_gauss(rng: random.Random, height: int = 5) -> GaussRat:
    """A Gaussian rational with numerators in [-height, height] and denominators in [1, height]."""
    return GaussRat(
        Fraction(rng.randint(-height, height), rng.randint(1, height)),
        Fraction(rng.randint(-height, height), rng.randint(1, height)),
    )
