"""The section: one shape per arrow, chosen from the vertex-to-arrow map psi.

For an arrow ``a`` between distinct vertices:

* ``a`` not chosen by either endpoint -> Full
* chosen only by its target          -> LowerAnti
* chosen only by its source          -> UpperAnti
* chosen by both                     -> AntiDiag

A loop at ``q`` is LowerAnti when ``psi(q)`` is the loop, else Full.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from quivinv.linalg import IndexPair, Matrix, Shape, prec_key, shape_member
from quivinv.quiver import RepPoint, random_matrix


def shape_of(arrow, quiver, psi):
    a = quiver.arrow(arrow) if isinstance(arrow, str) else arrow
    if a.is_loop:
        return Shape.LOWER_ANTI if psi[a.source] == a.name else Shape.FULL
    by_target = psi[a.target] == a.name
    by_source = psi[a.source] == a.name
    if by_target and by_source:
        return Shape.ANTI_DIAG
    if by_target:
        return Shape.LOWER_ANTI
    if by_source:
        return Shape.UPPER_ANTI
    return Shape.FULL


@dataclass(frozen=True)
class SectionSpec:
    shapes: Mapping[str, Shape]
    n: int

    def dim(self, arrow=None):
        if arrow is not None:
            return self.shapes[arrow].dim(self.n)
        return sum(s.dim(self.n) for s in self.shapes.values())


def section_spec(quiver, psi, n):
    return SectionSpec({a.name: shape_of(a, quiver, psi) for a in quiver.arrows}, n)


def free_coordinates(spec, arrow):
    """Positions that may be nonzero in the arrow's subspace, in increasing order."""
    n, shape = spec.n, spec.shapes[arrow]
    coords = [IndexPair(i, j) for i in range(1, n + 1) for j in range(1, n + 1) if shape.allows(i, j, n)]
    return sorted(coords, key=prec_key)


def project_membership(h, spec):
    """Whether the point lies in the section."""
    return all(shape_member(h[a], s) for a, s in spec.shapes.items())


def sample_section_point(spec, field, rng):
    """Random point of the section: free coordinates random, the rest zero."""
    n = spec.n
    mats = {}
    for a, shape in spec.shapes.items():
        mats[a] = random_matrix(n, field, rng, lambda i, j, s=shape: s.allows(i, j, n))
    return RepPoint(mats, n, field)


def anti_identity_point(quiver, n, field):
    return RepPoint({a.name: Matrix.anti_identity(n, field) for a in quiver.arrows}, n, field)
