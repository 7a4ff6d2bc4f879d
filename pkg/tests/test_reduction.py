import random

import pytest
from hypothesis import given, strategies as st

from quivers import random_quiver
from quivinv.assembly import build_system
from quivinv.fields import QQ
from quivinv.invariants import eval_generator
from quivinv.linalg import Matrix, Shape, corner_minor_D, shape_member
from quivinv.quiver import RepPoint, act, random_matrix, sample_omega_point
from quivinv.reduction import (
    NotInOmega,
    reduce_joint,
    reduce_left,
    reduce_point,
    reduce_right,
    reduce_to_section,
)
from quivinv.section import project_membership, section_spec

M = Matrix.from_rows
I2 = Matrix.identity(2)


def omega_matrix(n, seed):
    rng = random.Random(seed)
    while True:
        x = random_matrix(n, QQ, rng)
        if all(corner_minor_D(x, k) != 0 for k in range(1, n + 1)):
            return x


def test_left_examples():
    u = reduce_left(M([[1, 1], [1, 0]]))
    assert u == M([[1, -1], [0, 1]])
    assert u @ M([[1, 1], [1, 0]]) == M([[0, 1], [1, 0]])
    assert reduce_left(Matrix.anti_identity(3)) == Matrix.identity(3)
    assert reduce_left(M([[0, 2], [3, 4]])) == I2


def test_right_examples():
    x = M([[0, 1], [1, 1]])
    u = reduce_right(x)
    assert u == M([[1, 1], [0, 1]])
    assert x @ u.inverse() == M([[0, 1], [1, 0]])
    assert reduce_right(Matrix.anti_identity(3)) == Matrix.identity(3)
    assert reduce_right(M([[5, 2], [3, 0]])) == I2


def test_joint_examples():
    assert reduce_joint(Matrix.anti_identity(3)) == (Matrix.identity(3), Matrix.identity(3))
    u1, u2 = reduce_joint(M([[1, 1], [1, 0]]))
    assert u1 == M([[1, -1], [0, 1]]) and u2 == I2


@given(n=st.integers(1, 5), seed=st.integers(0, 10**6))
def test_single_matrix_reductions(n, seed):
    x = omega_matrix(n, seed)
    u = reduce_left(x)
    assert u.is_upper_unitriangular() and shape_member(u @ x, Shape.LOWER_ANTI)
    w = reduce_right(x)
    assert w.is_upper_unitriangular() and shape_member(x @ w.inverse(), Shape.UPPER_ANTI)
    u1, u2 = reduce_joint(x)
    y = u1 @ x @ u2.inverse()
    assert shape_member(y, Shape.ANTI_DIAG)
    # the right factor is unique, so the joint one is the plain right reduction
    assert u2 == w
    for k in range(1, n + 1):
        assert corner_minor_D(y, k) == corner_minor_D(x, k)
        lam = 1
        for a in range(k, n + 1):
            lam *= y[a, n - a + 1]
        assert corner_minor_D(y, k) in (lam, -lam)


def test_not_in_omega_reports_k():
    with pytest.raises(NotInOmega) as exc:
        reduce_left(M([[1, 2], [2, 4]]))
    assert exc.value.k == 1
    with pytest.raises(NotInOmega) as exc:
        reduce_right(M([[1, 2], [0, 4]]))
    assert exc.value.k == 2


def test_reduce_to_section_names_arrow(four_vertex):
    q, psi = four_vertex
    h = sample_omega_point(q, 2, QQ, 0)
    bad = h.replace(a3=M([[1, 1], [1, 1]]))
    with pytest.raises(NotInOmega, match="arrow a3, k=1"):
        reduce_to_section(bad, q, psi)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_four_vertex_round_trip(four_vertex, n):
    q, psi = four_vertex
    system = build_system(q, psi, n)
    for seed in range(5):
        h = sample_omega_point(q, n, QQ, seed)
        g, gh, spec = reduce_point(h, q, psi)
        assert g.is_unitriangular()
        assert [spec.shapes[a] for a in q.arrow_names] == [
            Shape.LOWER_ANTI, Shape.FULL, Shape.UPPER_ANTI, Shape.ANTI_DIAG]
        assert project_membership(gh, spec)
        assert all(eval_generator(d, h) == eval_generator(d, gh) for d in system)
        # reducing again stays inside the section
        g2 = reduce_to_section(gh, q, psi)
        assert project_membership(act(g2, gh, q), spec)


def test_one_loop_conjugation(one_loop):
    q, psi = one_loop
    h = sample_omega_point(q, 3, QQ, 4)
    g = reduce_to_section(h, q, psi)
    assert shape_member(g["q"] @ h["a"] @ g["q"].inverse(), Shape.LOWER_ANTI)


def test_identity_on_anti_identity_point(four_vertex):
    q, psi = four_vertex
    h = RepPoint({a: Matrix.anti_identity(3) for a in q.arrow_names}, 3, QQ)
    g = reduce_to_section(h, q, psi)
    assert all(m == Matrix.identity(3) for m in g.matrices.values())


@given(seed=st.integers(0, 10**6), n=st.integers(1, 3))
def test_random_quiver_reduction(seed, n):
    rng = random.Random(seed)
    q, psi = random_quiver(rng)
    h = sample_omega_point(q, n, QQ, rng, max_tries=10**4)
    g = reduce_to_section(h, q, psi)
    gh = act(g, h, q)
    assert project_membership(gh, section_spec(q, psi, n))
    for a in q.arrow_names:
        assert [corner_minor_D(h[a], k) for k in range(1, n + 1)] == \
            [corner_minor_D(gh[a], k) for k in range(1, n + 1)]
