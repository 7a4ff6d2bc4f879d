"""The four invariant families and their evaluation.

``D_k(X)``
    lower-left corner minor of order ``k'``.
``P_ik(X, Y)``, ``i' < k``
    ``sum_{j=i'}^{k} M_ij(X) N_jk(Y)``; invariant when the columns of ``X``
    and the rows of ``Y`` are acted on by the same vertex.
``R-_ik(X, Y)``, ``i' < k``
    determinant of the bottom ``i'`` rows of ``X`` stacked over the bottom
    ``k - i'`` rows of ``Y``, first ``k`` columns; ``X`` and ``Y`` share the
    column vertex.
``R+_ik(Z, X)``, ``i' > k``
    determinant of rows ``[i, n]`` of ``[Z[:, 1..i'-k] | X[:, 1..k]]``;
    ``Z`` and ``X`` share the row vertex.

Descriptors name a generator by kind, arrows, indices and the coordinate it
is triangular in ("leading coordinate"). Arrow order in a descriptor is the
argument order of the evaluator.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from quivinv.fields import DualField
from quivinv.linalg import Matrix, corner_minor_D, minor_M, minor_N

D, P, RMINUS, RPLUS = "D", "P", "Rminus", "Rplus"
KINDS = (D, P, RMINUS, RPLUS)
SIDES = ("diagonal", "source", "target")


class Coordinate(NamedTuple):
    arrow: str
    row: int
    col: int


@dataclass(frozen=True)
class GeneratorDescriptor:
    kind: str
    arrows: tuple
    i: int | None
    k: int
    leading: Coordinate
    side: str

    @property
    def id(self):
        if self.kind == D:
            return f"D({self.arrows[0]};k={self.k})"
        return f"{self.kind}({','.join(self.arrows)};i={self.i},k={self.k})"

    def to_json(self):
        return {
            "id": self.id,
            "kind": self.kind,
            "arrows": list(self.arrows),
            "i": self.i,
            "k": self.k,
            "leading": {"arrow": self.leading.arrow, "row": self.leading.row, "col": self.leading.col},
            "side": self.side,
        }

    @classmethod
    def from_json(cls, obj):
        lead = obj["leading"]
        desc = cls(
            kind=obj["kind"],
            arrows=tuple(obj["arrows"]),
            i=obj["i"],
            k=obj["k"],
            leading=Coordinate(lead["arrow"], lead["row"], lead["col"]),
            side=obj["side"],
        )
        if obj.get("id", desc.id) != desc.id:
            raise ValueError(f"descriptor id {obj['id']!r} does not match its fields ({desc.id!r})")
        return desc

    def check(self, n):
        """Raise ``ValueError`` if the indices are inadmissible for size ``n``."""
        if self.kind not in KINDS:
            raise ValueError(f"unknown kind {self.kind!r}")
        if not 1 <= self.k <= n:
            raise ValueError(f"k={self.k} out of range for n={n}")
        if self.kind == D:
            if len(self.arrows) != 1:
                raise ValueError("D takes one arrow")
            return
        if len(self.arrows) != 2 or self.i is None or not 1 <= self.i <= n:
            raise ValueError(f"{self.kind} takes two arrows and i in [1, {n}]")
        ip = n - self.i + 1
        if self.kind in (P, RMINUS) and not ip < self.k:
            raise ValueError(f"{self.kind} needs i' < k, got i'={ip}, k={self.k}")
        if self.kind == RPLUS and not ip > self.k:
            raise ValueError(f"Rplus needs i' > k, got i'={ip}, k={self.k}")


def _pair_check(x, y):
    if x.n != y.n or x.field != y.field:
        raise ValueError("matrices differ in size or field")


def eval_P(x, y, i, k):
    _pair_check(x, y)
    n, f = x.n, x.field
    ip = n - i + 1
    if not ip < k:
        raise ValueError(f"P needs i' < k, got i'={ip}, k={k}")
    total = f.zero
    for j in range(ip, k + 1):
        total = f.add(total, f.mul(minor_M(x, i, j), minor_N(y, j, k)))
    return total


def rminus_block(x, y, i, k):
    n = x.n
    ip = n - i + 1
    top = [x.rows[r][:k] for r in range(i - 1, n)]
    bottom = [y.rows[r][:k] for r in range(n - (k - ip), n)]
    return top + bottom


def eval_Rminus(x, y, i, k):
    _pair_check(x, y)
    ip = x.n - i + 1
    if not ip < k:
        raise ValueError(f"Rminus needs i' < k, got i'={ip}, k={k}")
    return x.field.det(rminus_block(x, y, i, k))


def rplus_block(z, x, i, k):
    n = x.n
    ip = n - i + 1
    return [z.rows[r][: ip - k] + x.rows[r][:k] for r in range(i - 1, n)]


def eval_Rplus(z, x, i, k):
    _pair_check(z, x)
    ip = x.n - i + 1
    if not ip > k:
        raise ValueError(f"Rplus needs i' > k, got i'={ip}, k={k}")
    return x.field.det(rplus_block(z, x, i, k))


_EVAL = {P: eval_P, RMINUS: eval_Rminus, RPLUS: eval_Rplus}


def eval_on(desc, mats):
    """Evaluate with ``mats`` mapping arrow names to matrices."""
    if desc.kind == D:
        return corner_minor_D(mats[desc.arrows[0]], desc.k)
    a, b = desc.arrows
    return _EVAL[desc.kind](mats[a], mats[b], desc.i, desc.k)


def eval_generator(desc, h):
    for a in desc.arrows:
        if a not in h.matrices:
            raise KeyError(f"arrow {a!r} of {desc.id} is missing from the point")
    return eval_on(desc, h.matrices)


def _dual_mats(desc, h, coord, dual):
    mats = {}
    for a in set(desc.arrows):
        m = h[a]
        rows = [[dual.lift(x) for x in r] for r in m.rows]
        if coord is not None and a == coord[0]:
            r, c = coord[1] - 1, coord[2] - 1
            rows[r][c] = dual.variable(m.rows[r][c])
        mats[a] = Matrix(dual, tuple(tuple(r) for r in rows))
    return mats


def value_and_partial(desc, h, coord):
    """``(value, d value / d x_coord)`` at ``h`` from one dual evaluation."""
    dual = DualField(h.field)
    v = eval_on(desc, _dual_mats(desc, h, coord, dual))
    return v.re, v.eps


def partials(desc, h, coords):
    """Exact partial derivatives at ``h``; ``coords`` are ``(arrow, row, col)`` triples."""
    out = []
    for c in coords:
        if c[0] not in desc.arrows:
            if c[0] not in h.matrices:
                raise KeyError(f"arrow {c[0]!r} is missing from the point")
            out.append(h.field.zero)
            continue
        out.append(value_and_partial(desc, h, c)[1])
    return out


def rminus_factor_sign(n, i, k):
    """Sign in ``R-_ik(X, S+) = sign * M(X; [i,n], [k-i'+1, k]) * D_{k'+i'}(S+)``.

    The stacked block is ``[[A, B], [C, 0]]`` with ``C`` of order ``k - i'``,
    so the sign is ``(-1)^(i' (k - i'))``.
    """
    ip = n - i + 1
    return -1 if (ip * (k - ip)) % 2 else 1


def rplus_factor_sign(n, i, k):
    """Sign in ``R+_ik(S-, X) = sign * D_{i+k}(S-) * N(X; [i, i+k-1], [1, k])``.

    The block is ``[[0, B], [C, E]]`` with ``B`` of order ``k`` and ``C`` of
    order ``i' - k``, so the sign is ``(-1)^(k (i' - k))``.
    """
    ip = n - i + 1
    return -1 if (k * (ip - k)) % 2 else 1
