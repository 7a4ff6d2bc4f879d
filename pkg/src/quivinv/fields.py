"""Exact scalar fields.

Three fields are provided, each as an immutable object that owns the
arithmetic for its elements:

* :data:`QQ` -- rationals, elements are :class:`fractions.Fraction`.
* :class:`PrimeField` -- residues mod ``p``, elements are ints in ``[0, p)``.
* :class:`DualField` -- ``a + b*eps`` with ``eps**2 == 0`` over either base,
  elements are :class:`Dual` pairs. Evaluating a polynomial expression with
  one variable set to ``x + eps`` leaves the partial derivative in the
  ``eps`` slot.

Fields compare by value, so two ``PrimeField(7)`` objects are the same field.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from quivinv import kernels

DEFAULT_PRIME = 2147483647


class Dual(NamedTuple):
    re: object
    eps: object

    def __repr__(self):
        return f"Dual({self.re}, {self.eps})"


def _det_by_elimination(field, rows):
    """Gaussian elimination with exact division; used by rational fields."""
    n = len(rows)
    a = [list(r) for r in rows]
    det = field.one
    for c in range(n):
        piv = next((r for r in range(c, n) if not field.is_zero(a[r][c])), None)
        if piv is None:
            return field.zero
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            det = field.neg(det)
        pv = a[c][c]
        det = field.mul(det, pv)
        inv = field.inv(pv)
        for r in range(c + 1, n):
            f = a[r][c]
            if field.is_zero(f):
                continue
            f = field.mul(f, inv)
            row, prow = a[r], a[c]
            for j in range(c + 1, n):
                row[j] = field.sub(row[j], field.mul(f, prow[j]))
    return det


def _rank_by_elimination(field, rows):
    a = [list(r) for r in rows]
    if not a:
        return 0
    m, ncols = len(a), len(a[0])
    rank = 0
    for c in range(ncols):
        piv = next((r for r in range(rank, m) if not field.is_zero(a[r][c])), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        inv = field.inv(a[rank][c])
        for r in range(rank + 1, m):
            f = a[r][c]
            if field.is_zero(f):
                continue
            f = field.mul(f, inv)
            for j in range(c, ncols):
                a[r][j] = field.sub(a[r][j], field.mul(f, a[rank][j]))
        rank += 1
        if rank == m:
            break
    return rank


@dataclass(frozen=True)
class RationalField:
    """The field of rationals with Fraction elements."""

    name = "QQ"
    characteristic = 0

    @property
    def zero(self):
        return Fraction(0)

    @property
    def one(self):
        return Fraction(1)

    def __call__(self, x):
        if isinstance(x, str):
            return Fraction(x.strip())
        return Fraction(x)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / a

    def is_zero(self, a):
        return a == 0

    def det(self, rows):
        return _det_by_elimination(self, rows)

    def rank(self, rows):
        return _rank_by_elimination(self, rows)

    def matmul(self, a, b):
        bt = list(zip(*b))
        return [[sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in bt] for row in a]

    def random(self, rng):
        return Fraction(rng.randint(-10, 10))

    def format(self, a):
        a = Fraction(a)
        return str(a.numerator) if a.denominator == 1 else f"{a.numerator}/{a.denominator}"

    def __repr__(self):
        return "QQ"


QQ = RationalField()


@dataclass(frozen=True)
class PrimeField:
    """Residues modulo a prime ``p``, stored as ints in ``[0, p)``.

    Primality is the caller's responsibility; it is not checked.
    """

    p: int = DEFAULT_PRIME

    def __post_init__(self):
        if self.p < 2:
            raise ValueError(f"modulus must be at least 2, got {self.p}")

    @property
    def name(self):
        return f"GF({self.p})"

    @property
    def characteristic(self):
        return self.p

    @property
    def zero(self):
        return 0

    @property
    def one(self):
        return 1 % self.p

    def __call__(self, x):
        if isinstance(x, str):
            x = Fraction(x.strip())
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise ZeroDivisionError(f"{x} has no image mod {self.p}")
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        return int(x) % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return a * b % self.p

    def neg(self, a):
        return -a % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, -1, self.p)

    def is_zero(self, a):
        return a == 0

    def det(self, rows):
        return kernels.det_mod(rows, self.p)

    def rank(self, rows):
        return kernels.rank_mod(rows, self.p)

    def matmul(self, a, b):
        return kernels.matmul_mod(a, b, self.p)

    def random(self, rng):
        return rng.randrange(self.p)

    def format(self, a):
        return str(a)

    def __repr__(self):
        return self.name


def GF(p=DEFAULT_PRIME):
    return PrimeField(p)


@dataclass(frozen=True)
class DualField:
    """First-order dual numbers over ``base``."""

    base: object

    @property
    def name(self):
        return f"Dual[{self.base.name}]"

    @property
    def characteristic(self):
        return self.base.characteristic

    @property
    def zero(self):
        return Dual(self.base.zero, self.base.zero)

    @property
    def one(self):
        return Dual(self.base.one, self.base.zero)

    def __call__(self, x):
        if isinstance(x, Dual):
            return Dual(self.base(x.re), self.base(x.eps))
        return Dual(self.base(x), self.base.zero)

    def lift(self, x):
        return Dual(x, self.base.zero)

    def variable(self, x):
        return Dual(x, self.base.one)

    def add(self, a, b):
        f = self.base
        return Dual(f.add(a.re, b.re), f.add(a.eps, b.eps))

    def sub(self, a, b):
        f = self.base
        return Dual(f.sub(a.re, b.re), f.sub(a.eps, b.eps))

    def mul(self, a, b):
        f = self.base
        return Dual(f.mul(a.re, b.re), f.add(f.mul(a.re, b.eps), f.mul(a.eps, b.re)))

    def neg(self, a):
        return Dual(self.base.neg(a.re), self.base.neg(a.eps))

    def inv(self, a):
        f = self.base
        ia = f.inv(a.re)  # raises when the real part is zero: eps is not invertible
        return Dual(ia, f.neg(f.mul(a.eps, f.mul(ia, ia))))

    def is_zero(self, a):
        return self.base.is_zero(a.re) and self.base.is_zero(a.eps)

    def det(self, rows):
        f = self.base
        re = [[x.re for x in r] for r in rows]
        eps = [[x.eps for x in r] for r in rows]
        if isinstance(f, PrimeField):
            return Dual(*kernels.det_dual_mod(re, eps, f.p))
        return Dual(f.det(re), det_derivative(f, re, eps))

    def rank(self, rows):
        raise NotImplementedError("rank is not defined over a ring with zero divisors")

    def matmul(self, a, b):
        bt = list(zip(*b))
        out = []
        for row in a:
            out_row = []
            for col in bt:
                s = self.zero
                for x, y in zip(row, col):
                    s = self.add(s, self.mul(x, y))
                out_row.append(s)
            out.append(out_row)
        return out

    def random(self, rng):
        return Dual(self.base.random(rng), self.base.random(rng))

    def format(self, a):
        return f"{self.base.format(a.re)}+{self.base.format(a.eps)}e"

    def __repr__(self):
        return self.name


def det_derivative(field, re_rows, eps_rows):
    """Directional derivative of det at ``re_rows`` along ``eps_rows``.

    Uses multilinearity: the sum over columns of det with that column
    replaced by its direction. Costs ``n`` base determinants, independent of
    the elimination in the dual kernels, which makes it a useful oracle.
    """
    n = len(re_rows)
    total = field.zero
    for c in range(n):
        rows = [[eps_rows[r][j] if j == c else re_rows[r][j] for j in range(n)] for r in range(n)]
        total = field.add(total, field.det(rows))
    return total


def make_rng(seed):
    """Accept a seed or an existing ``random.Random`` and return a generator."""
    if isinstance(seed, random.Random):
        return seed
    return random.Random(seed)
