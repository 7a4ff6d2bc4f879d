"""Dense square matrices over an exact field, and the minors built on them.

Indices on the public surface are 1-based. For an ``n x n`` matrix the
mirror index of ``i`` is ``i' = n - i + 1`` (:func:`mirror`). Position
``(i, j)`` lies *on* the anti-diagonal when ``j == i'``, *above* it when
``j < i'`` and *below* it when ``j > i'``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import NamedTuple, Sequence

from quivinv.fields import QQ


class IndexPair(NamedTuple):
    i: int
    k: int


def mirror(i, n):
    """``i' = n - i + 1``."""
    return n - i + 1


def prec(a, b):
    """Strict order on index pairs: ``(a1, a2) < (b1, b2)`` iff ``a2 < b2``, or
    ``a2 == b2`` and ``a1 > b1``. The minimum is ``(n, 1)``, the maximum ``(1, n)``."""
    return a[1] < b[1] or (a[1] == b[1] and a[0] > b[0])


def prec_key(pair):
    """Sort key realising :func:`prec`."""
    return (pair[1], -pair[0])


class Shape(enum.Enum):
    FULL = "Full"
    LOWER_ANTI = "LowerAnti"
    UPPER_ANTI = "UpperAnti"
    ANTI_DIAG = "AntiDiag"

    def allows(self, i, j, n):
        """Whether position ``(i, j)`` may be nonzero in this subspace."""
        ip = n - i + 1
        if self is Shape.FULL:
            return True
        if self is Shape.LOWER_ANTI:
            return j >= ip
        if self is Shape.UPPER_ANTI:
            return j <= ip
        return j == ip

    def dim(self, n):
        if self is Shape.FULL:
            return n * n
        if self is Shape.ANTI_DIAG:
            return n
        return n * (n + 1) // 2

    @classmethod
    def parse(cls, text):
        for s in cls:
            if s.value.lower() == text.lower():
                return s
        raise ValueError(f"unknown shape {text!r}")


@dataclass(frozen=True)
class Matrix:
    """Immutable ``n x n`` matrix. ``rows`` holds field elements, row-major."""

    field: object
    rows: tuple

    def __post_init__(self):
        n = len(self.rows)
        if n == 0:
            raise ValueError("matrix must have at least one row")
        if any(len(r) != n for r in self.rows):
            raise ValueError("matrix must be square")

    @classmethod
    def from_rows(cls, rows, field=QQ):
        return cls(field, tuple(tuple(field(x) for x in r) for r in rows))

    @classmethod
    def identity(cls, n, field=QQ):
        one, zero = field.one, field.zero
        return cls(field, tuple(tuple(one if i == j else zero for j in range(n)) for i in range(n)))

    @classmethod
    def anti_identity(cls, n, field=QQ):
        one, zero = field.one, field.zero
        return cls(field, tuple(tuple(one if i + j == n - 1 else zero for j in range(n)) for i in range(n)))

    @property
    def n(self):
        return len(self.rows)

    def __getitem__(self, ij):
        i, j = ij
        if not (1 <= i <= self.n and 1 <= j <= self.n):
            raise IndexError(f"index ({i}, {j}) out of range for n={self.n}")
        return self.rows[i - 1][j - 1]

    def with_entry(self, i, j, value):
        rows = [list(r) for r in self.rows]
        rows[i - 1][j - 1] = value
        return Matrix(self.field, tuple(tuple(r) for r in rows))

    def map(self, fn, field):
        return Matrix(field, tuple(tuple(fn(x) for x in r) for r in self.rows))

    def __matmul__(self, other):
        _same_field(self, other)
        if self.n != other.n:
            raise ValueError(f"size mismatch: {self.n} vs {other.n}")
        prod = self.field.matmul(self.rows, other.rows)
        return Matrix(self.field, tuple(tuple(r) for r in prod))

    def det(self):
        return det(self)

    def is_upper_unitriangular(self):
        f = self.field
        for i, row in enumerate(self.rows):
            for j, x in enumerate(row):
                if j < i and not f.is_zero(x):
                    return False
                if j == i and x != f.one:
                    return False
        return True

    def inverse(self):
        """Inverse by back-substitution when unitriangular, else Gauss-Jordan."""
        if self.is_upper_unitriangular():
            return _unitriangular_inverse(self)
        return _gauss_jordan_inverse(self)

    def __str__(self):
        return "\n".join(" ".join(self.field.format(x) for x in r) for r in self.rows)


def _same_field(a, b):
    if a.field != b.field:
        raise ValueError(f"field mismatch: {a.field!r} vs {b.field!r}")


def _unitriangular_inverse(m):
    f, n = m.field, m.n
    inv = [[f.one if i == j else f.zero for j in range(n)] for i in range(n)]
    # Solve column by column, bottom row upward: inv[i][j] = -sum_{i<t<=j} m[i][t] inv[t][j].
    for j in range(n):
        for i in range(j - 1, -1, -1):
            s = f.zero
            for t in range(i + 1, j + 1):
                s = f.add(s, f.mul(m.rows[i][t], inv[t][j]))
            inv[i][j] = f.neg(s)
    return Matrix(f, tuple(tuple(r) for r in inv))


def _gauss_jordan_inverse(m):
    f, n = m.field, m.n
    a = [list(r) + [f.one if i == j else f.zero for j in range(n)] for i, r in enumerate(m.rows)]
    for c in range(n):
        piv = next((r for r in range(c, n) if not f.is_zero(a[r][c])), None)
        if piv is None:
            raise ZeroDivisionError("matrix is singular")
        a[c], a[piv] = a[piv], a[c]
        inv = f.inv(a[c][c])
        a[c] = [f.mul(x, inv) for x in a[c]]
        for r in range(n):
            if r != c and not f.is_zero(a[r][c]):
                g = a[r][c]
                a[r] = [f.sub(x, f.mul(g, y)) for x, y in zip(a[r], a[c])]
    return Matrix(f, tuple(tuple(r[n:]) for r in a))


def det(m):
    """Exact determinant."""
    return m.field.det(m.rows)


def minor(m, rows: Sequence[int], cols: Sequence[int]):
    """Determinant of the submatrix on ``rows`` x ``cols`` (1-based, in the given order).

    The empty minor is 1.
    """
    if len(rows) != len(cols):
        raise ValueError(f"minor needs as many rows as columns, got {len(rows)} and {len(cols)}")
    n = m.n
    for x in list(rows) + list(cols):
        if not 1 <= x <= n:
            raise IndexError(f"index {x} out of range [1, {n}]")
    if not rows:
        return m.field.one
    sub = [[m.rows[r - 1][c - 1] for c in cols] for r in rows]
    return m.field.det(sub)


def _check_level(k, n, name="k"):
    if not 1 <= k <= n:
        raise IndexError(f"{name}={k} out of range [1, {n}]")


def corner_minor_D(m, k):
    """Lower-left corner minor of order ``k'``: rows ``[k, n]``, columns ``[1, k']``."""
    n = m.n
    _check_level(k, n)
    return minor(m, range(k, n + 1), range(1, n - k + 2))


def minor_M(m, i, j):
    """Order-``i'`` minor on rows ``[i, n]`` and columns ``[1, i'-1] + {j}``; needs ``i' <= j``."""
    n = m.n
    _check_level(i, n, "i")
    _check_level(j, n, "j")
    ip = n - i + 1
    if ip > j:
        raise ValueError(f"minor_M needs i' <= j, got i'={ip}, j={j}")
    return minor(m, list(range(i, n + 1)), list(range(1, ip)) + [j])


def minor_N(m, j, k):
    """Order-``k'`` minor on rows ``{j} + [k+1, n]`` and columns ``[1, k']``; needs ``j <= k``."""
    n = m.n
    _check_level(j, n, "j")
    _check_level(k, n)
    if j > k:
        raise ValueError(f"minor_N needs j <= k, got j={j}, k={k}")
    return minor(m, [j] + list(range(k + 1, n + 1)), list(range(1, n - k + 2)))


def shape_member(m, shape):
    f, n = m.field, m.n
    return all(
        shape.allows(i + 1, j + 1, n) or f.is_zero(x)
        for i, row in enumerate(m.rows)
        for j, x in enumerate(row)
    )
