"""Assembling the generator system from a quiver and psi.

Every arrow ``a`` contributes its ``n`` corner minors plus up to two
``n(n-1)/2`` families:

* source side, partner ``b = psi(s(a))``: ``P(X_a, X_b)`` when ``b`` ends at
  ``s(a)`` (Case 1, loops included), ``R-(X_a, X_b)`` when ``b`` is a non-loop
  leaving ``s(a)`` (Case 2). Empty when ``a`` is a non-loop with
  ``a == psi(s(a))``.
* target side, partner ``c = psi(t(a))``: ``P(X_c, X_a)`` when ``c`` is a
  non-loop leaving ``t(a)`` (Case 3), ``R+(X_c, X_a)`` when ``c`` ends at
  ``t(a)`` (Case 4, loops included). Empty when ``a == psi(t(a))``.

Loops only get a target family in ``extended`` mode, and only when they are
not ``psi(q)``; ``paper`` mode leaves them without one.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from quivinv.invariants import D, P, RMINUS, RPLUS, Coordinate, GeneratorDescriptor
from quivinv.linalg import prec_key
from quivinv.section import section_spec


class LoopMode(enum.Enum):
    PAPER = "paper"
    EXTENDED = "extended"


CASE1, CASE2, CASE3, CASE4 = "Case1", "Case2", "Case3", "Case4"


@dataclass(frozen=True)
class CaseTag:
    source_case: str | None
    target_case: str | None
    beta: str | None
    gamma: str | None


def classify(arrow, quiver, psi):
    """Case tag for ``arrow``.

    For a loop that is not ``psi(q)`` the target case reported is the one
    extended mode would use; :func:`build_target_system` ignores it in paper
    mode.
    """
    a = quiver.arrow(arrow) if isinstance(arrow, str) else arrow

    source_case = beta = None
    if a.is_loop or psi[a.source] != a.name:
        beta = psi[a.source]
        b = quiver.arrow(beta)
        if b.target == a.source:
            source_case = CASE1
        elif b.source == a.source and not b.is_loop:
            source_case = CASE2

    target_case = gamma = None
    if psi[a.target] != a.name:
        gamma = psi[a.target]
        c = quiver.arrow(gamma)
        if c.target == a.target:
            target_case = CASE4
        elif c.source == a.target and not c.is_loop:
            target_case = CASE3
    return CaseTag(source_case, target_case, beta, gamma)


def _below_pairs(n):
    return [(i, k) for i in range(1, n + 1) for k in range(1, n + 1) if n - i + 1 < k]


def _above_pairs(n):
    return [(i, k) for i in range(1, n + 1) for k in range(1, n + 1) if n - i + 1 > k]


def _by_leading(descs):
    return sorted(descs, key=lambda d: prec_key((d.leading.row, d.leading.col)))


def build_diagonal_system(arrow, n):
    return [
        GeneratorDescriptor(D, (arrow,), None, k, Coordinate(arrow, k, n - k + 1), "diagonal")
        for k in range(1, n + 1)
    ]


def build_source_system(arrow, tag, n):
    if tag.source_case is None:
        return []
    kind = P if tag.source_case == CASE1 else RMINUS
    return _by_leading(
        GeneratorDescriptor(kind, (arrow, tag.beta), i, k, Coordinate(arrow, i, k), "source")
        for i, k in _below_pairs(n)
    )


def build_target_system(arrow, tag, n, mode=LoopMode.EXTENDED, is_loop=False):
    mode = LoopMode(mode)
    if tag.target_case is None or (is_loop and mode is LoopMode.PAPER):
        return []
    if tag.target_case == CASE3:
        # P_ik(X_c, X_a) is triangular in x_{i', k'} of X_a
        descs = (
            GeneratorDescriptor(
                P, (tag.gamma, arrow), i, k, Coordinate(arrow, n - i + 1, n - k + 1), "target"
            )
            for i, k in _below_pairs(n)
        )
    else:
        descs = (
            GeneratorDescriptor(RPLUS, (tag.gamma, arrow), i, k, Coordinate(arrow, i, k), "target")
            for i, k in _above_pairs(n)
        )
    return _by_leading(descs)


@dataclass(frozen=True)
class GeneratorSystem:
    descriptors: tuple
    n: int
    mode: LoopMode

    @property
    def leading_map(self):
        return {d.leading: d for d in self.descriptors}

    def per_arrow(self):
        out = {}
        for d in self.descriptors:
            out.setdefault(d.leading.arrow, []).append(d)
        return out

    def __len__(self):
        return len(self.descriptors)

    def __iter__(self):
        return iter(self.descriptors)


def build_system(quiver, psi, n, mode=LoopMode.EXTENDED):
    mode = LoopMode(mode)
    descs = []
    for a in quiver.arrows:
        tag = classify(a, quiver, psi)
        descs += build_diagonal_system(a.name, n)
        descs += build_source_system(a.name, tag, n)
        descs += build_target_system(a.name, tag, n, mode, a.is_loop)
    leads = [d.leading for d in descs]
    if len(set(leads)) != len(leads):
        raise AssertionError("leading coordinates collide")
    return GeneratorSystem(tuple(descs), n, mode)


def expected_count(quiver, psi, n):
    """Dimension of the section, i.e. the transcendence degree the system must reach."""
    return section_spec(quiver, psi, n).dim()
