"""Quivers, vertex-to-arrow choices, representation points and the group action.

A representation point assigns an ``n x n`` matrix to every arrow, a group
element an upper unitriangular ``n x n`` matrix to every vertex. The action is
``(g.h)[a] = g[t(a)] @ h[a] @ g[s(a)]^-1``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field as dc_field
from typing import Mapping

from quivinv.fields import QQ, make_rng
from quivinv.linalg import Matrix, corner_minor_D

IDENT = re.compile(r"[A-Za-z0-9_]+\Z")


@dataclass(frozen=True)
class Arrow:
    name: str
    source: str
    target: str

    @property
    def is_loop(self):
        return self.source == self.target

    def touches(self, v):
        return v == self.source or v == self.target


@dataclass(frozen=True)
class Quiver:
    """Directed multigraph; loops and parallel arrows are allowed."""

    vertices: tuple
    arrows: tuple

    @classmethod
    def build(cls, vertices, arrows):
        """``arrows`` is an iterable of ``(name, source, target)`` triples."""
        return cls(tuple(vertices), tuple(Arrow(*a) for a in arrows))

    def arrow(self, name):
        for a in self.arrows:
            if a.name == name:
                return a
        raise KeyError(f"unknown arrow {name!r}")

    @property
    def arrow_names(self):
        return tuple(a.name for a in self.arrows)

    def incident(self, v):
        return [a for a in self.arrows if a.touches(v)]


@dataclass(frozen=True)
class Diagnostic:
    code: str
    message: str
    line: int | None = None

    def __str__(self):
        where = f"line {self.line}: " if self.line is not None else ""
        return f"{self.code} {where}{self.message}"


class ValidationError(ValueError):
    def __init__(self, diagnostics):
        self.diagnostics = list(diagnostics)
        super().__init__("; ".join(str(d) for d in self.diagnostics))


def validate(quiver, psi: Mapping[str, str], n):
    """Return the list of problems with ``(quiver, psi, n)``; empty means valid."""
    out = []
    if not isinstance(n, int) or n < 1:
        out.append(Diagnostic("E005", f"n must be a positive integer, got {n!r}"))
    seen = set()
    for v in quiver.vertices:
        if v in seen:
            out.append(Diagnostic("E007", f"duplicate vertex {v}"))
        seen.add(v)
    names = set()
    for a in quiver.arrows:
        if a.name in names:
            out.append(Diagnostic("E007", f"duplicate arrow {a.name}"))
        names.add(a.name)
        for end in (a.source, a.target):
            if end not in seen:
                out.append(Diagnostic("E001", f"unknown vertex {end} in arrow {a.name}"))
    for v in psi:
        if v not in seen:
            out.append(Diagnostic("E001", f"unknown vertex {v} in psi"))
    for v in quiver.vertices:
        if not quiver.incident(v):
            out.append(Diagnostic("E004", f"vertex {v} has no incident arrow"))
        if v not in psi:
            out.append(Diagnostic("E003", f"missing psi for vertex {v}"))
            continue
        name = psi[v]
        if name not in names:
            out.append(Diagnostic("E006", f"unknown arrow {name} in psi for vertex {v}"))
        elif not quiver.arrow(name).touches(v):
            out.append(Diagnostic("E002", f"psi not incident: arrow {name} does not touch vertex {v}"))
    return out


def check(quiver, psi, n):
    problems = validate(quiver, psi, n)
    if problems:
        raise ValidationError(problems)


@dataclass(frozen=True)
class RepPoint:
    """One ``n x n`` matrix per arrow."""

    matrices: Mapping[str, Matrix]
    n: int
    field: object = QQ

    def __post_init__(self):
        for name, m in self.matrices.items():
            if m.n != self.n:
                raise ValueError(f"arrow {name}: expected {self.n}x{self.n}, got {m.n}x{m.n}")
            if m.field != self.field:
                raise ValueError(f"arrow {name}: field {m.field!r}, expected {self.field!r}")

    def __getitem__(self, arrow):
        return self.matrices[arrow]

    def replace(self, **updates):
        return RepPoint({**self.matrices, **updates}, self.n, self.field)

    def lift(self, field, fn):
        return RepPoint({a: m.map(fn, field) for a, m in self.matrices.items()}, self.n, field)


@dataclass(frozen=True)
class GroupElement:
    """One ``n x n`` matrix per vertex; unitriangularity is checked by :func:`act`."""

    matrices: Mapping[str, Matrix]
    n: int
    field: object = QQ
    _inverses: dict = dc_field(default_factory=dict, compare=False, repr=False)

    def __getitem__(self, v):
        return self.matrices[v]

    def is_unitriangular(self):
        return all(m.is_upper_unitriangular() for m in self.matrices.values())

    def inverse_at(self, v):
        if v not in self._inverses:
            self._inverses[v] = self.matrices[v].inverse()
        return self._inverses[v]

    def inverse(self):
        return GroupElement({v: self.inverse_at(v) for v in self.matrices}, self.n, self.field)

    def __mul__(self, other):
        return GroupElement(
            {v: self.matrices[v] @ other.matrices[v] for v in self.matrices}, self.n, self.field
        )

    @classmethod
    def identity(cls, quiver, n, field=QQ):
        return cls({v: Matrix.identity(n, field) for v in quiver.vertices}, n, field)


def act(g, h, quiver, strict=True):
    """``g.h``. With ``strict`` (the default) ``g`` must be unitriangular."""
    if g.n != h.n or g.field != h.field:
        raise ValueError("group element and point differ in size or field")
    if strict and not g.is_unitriangular():
        raise ValueError("group element is not upper unitriangular")
    out = {}
    for a in quiver.arrows:
        out[a.name] = g[a.target] @ h[a.name] @ g.inverse_at(a.source)
    return RepPoint(out, h.n, h.field)


def random_matrix(n, field, rng, allowed=None):
    """Random matrix; positions where ``allowed(i, j)`` is false are zero."""
    rows = []
    for i in range(1, n + 1):
        rows.append(tuple(
            field.random(rng) if allowed is None or allowed(i, j) else field.zero
            for j in range(1, n + 1)
        ))
    return Matrix(field, tuple(rows))


def random_unitriangular(n, field, rng):
    rows = []
    for i in range(n):
        rows.append(tuple(
            field.one if j == i else (field.random(rng) if j > i else field.zero) for j in range(n)
        ))
    return Matrix(field, tuple(rows))


def sample_group(quiver, n, field=QQ, seed=0):
    rng = make_rng(seed)
    return GroupElement({v: random_unitriangular(n, field, rng) for v in quiver.vertices}, n, field)


def sample_point(quiver, n, field=QQ, seed=0):
    rng = make_rng(seed)
    return RepPoint({a.name: random_matrix(n, field, rng) for a in quiver.arrows}, n, field)


class OmegaSamplingError(RuntimeError):
    pass


def in_omega(m):
    """First ``k`` with ``D_k(m) == 0``, or ``None`` when all corner minors are nonzero."""
    for k in range(1, m.n + 1):
        if m.field.is_zero(corner_minor_D(m, k)):
            return k
    return None


def sample_omega_point(quiver, n, field=QQ, seed=0, max_tries=100):
    """Sample until every arrow matrix has all corner minors nonzero.

    Each arrow is resampled independently; the budget of ``max_tries``
    rejections is shared across arrows.
    """
    rng = make_rng(seed)
    rejections = 0
    mats = {}
    for a in quiver.arrows:
        while True:
            m = random_matrix(n, field, rng)
            if in_omega(m) is None:
                mats[a.name] = m
                break
            rejections += 1
            if rejections >= max_tries:
                raise OmegaSamplingError(f"omega sampling failed after {rejections} rejections")
    return RepPoint(mats, n, field)


def is_identifier(text):
    return bool(IDENT.match(text))
