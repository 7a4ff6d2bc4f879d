"""Unitriangular reduction of matrices and representation points into the section.

Every matrix with all corner minors nonzero can be brought to anti-diagonal
form by ``u1 @ X @ u2^-1`` with upper unitriangular ``u1``, ``u2``. The left
factor alone gives a lower anti-triangular matrix, the right factor alone an
upper anti-triangular one. The pivots are the anti-diagonal positions
``(n, 1), (n-1, 2), ..., (1, n)`` in that order.
"""

from __future__ import annotations

from quivinv.linalg import Matrix
from quivinv.quiver import GroupElement, act, in_omega
from quivinv.section import section_spec


class NotInOmega(ValueError):
    def __init__(self, k, arrow=None):
        self.k = k
        self.arrow = arrow
        where = f"arrow {arrow}, " if arrow is not None else ""
        super().__init__(f"not in Omega: {where}k={k}")


def _require_omega(x, arrow=None):
    k = in_omega(x)
    if k is not None:
        raise NotInOmega(k, arrow)


def _as_matrix(field, a):
    return Matrix(field, tuple(tuple(r) for r in a))


def _left_clear(x):
    """Row operations that zero everything above each anti-diagonal pivot.

    Returns ``(u, u @ x)`` as lists of rows.
    """
    f, n = x.field, x.n
    a = [list(r) for r in x.rows]
    u = [[f.one if i == j else f.zero for j in range(n)] for i in range(n)]
    for step in range(n):
        pr, pc = n - 1 - step, step  # 0-based pivot (n-step, step+1)
        pv = a[pr][pc]
        if f.is_zero(pv):
            raise NotInOmega(n - step)
        inv = f.inv(pv)
        for r in range(pr):
            c = a[r][pc]
            if f.is_zero(c):
                continue
            m = f.mul(c, inv)
            a[r] = [f.sub(s, f.mul(m, t)) for s, t in zip(a[r], a[pr])]
            u[r] = [f.sub(s, f.mul(m, t)) for s, t in zip(u[r], u[pr])]
    return u, a


def reduce_left(x):
    """Upper unitriangular ``u`` with ``u @ x`` lower anti-triangular."""
    _require_omega(x)
    u, _ = _left_clear(x)
    return _as_matrix(x.field, u)


def _right_clear(a, field):
    """Column operations zeroing entries right of each anti-diagonal pivot.

    ``a`` is modified in place; returns ``w`` with ``a_in @ w == a_out``.
    ``w`` is upper unitriangular.
    """
    f, n = field, len(a)
    w = [[f.one if i == j else f.zero for j in range(n)] for i in range(n)]
    for step in range(n):
        pr, pc = n - 1 - step, step
        pv = a[pr][pc]
        if f.is_zero(pv):
            raise NotInOmega(n - step)
        inv = f.inv(pv)
        for c in range(pc + 1, n):
            e = a[pr][c]
            if f.is_zero(e):
                continue
            m = f.mul(e, inv)
            for r in range(n):
                a[r][c] = f.sub(a[r][c], f.mul(m, a[r][pc]))
                w[r][c] = f.sub(w[r][c], f.mul(m, w[r][pc]))
    return w


def reduce_right(x):
    """Upper unitriangular ``u`` with ``x @ u^-1`` upper anti-triangular."""
    _require_omega(x)
    a = [list(r) for r in x.rows]
    w = _right_clear(a, x.field)
    return _as_matrix(x.field, w).inverse()


def reduce_joint(x):
    """``(u1, u2)`` with ``u1 @ x @ u2^-1`` anti-diagonal; left reduction first."""
    _require_omega(x)
    u1, a = _left_clear(x)
    w = _right_clear(a, x.field)
    return _as_matrix(x.field, u1), _as_matrix(x.field, w).inverse()


def reduce_to_section(h, quiver, psi):
    """Group element ``g`` with ``act(g, h)`` in the section.

    Each vertex is fixed by its chosen arrow: as the target (or the vertex of
    a loop) it takes the left reduction of that arrow, as the source the
    right reduction. Vertices are independent because right-multiplying a
    lower anti-triangular matrix, or left-multiplying an upper one, by a
    unitriangular matrix keeps its shape.
    """
    for a in quiver.arrows:
        k = in_omega(h[a.name])
        if k is not None:
            raise NotInOmega(k, a.name)
    mats = {}
    for v in quiver.vertices:
        a = quiver.arrow(psi[v])
        x = h[a.name]
        mats[v] = reduce_left(x) if a.is_loop or a.target == v else reduce_right(x)
    return GroupElement(mats, h.n, h.field)


def reduce_point(h, quiver, psi):
    """``(g, act(g, h))`` together with the section it lands in."""
    g = reduce_to_section(h, quiver, psi)
    return g, act(g, h, quiver), section_spec(quiver, psi, h.n)
