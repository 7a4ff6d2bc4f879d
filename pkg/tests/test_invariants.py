import json
import random
from pathlib import Path

import pytest
import sympy
from hypothesis import given, strategies as st

from oracles import (
    accessor,
    library_matrix,
    lower_anti,
    sym_D,
    sym_P,
    sym_Rminus,
    sym_Rplus,
    symbolic,
    upper_anti,
)
from worked_examples import GENERAL, SPECIALIZED
from quivers import FOUR_VERTEX, build, random_quiver
from quivinv.assembly import build_system
from quivinv.fields import GF, QQ
from quivinv.invariants import (
    D,
    P,
    RMINUS,
    RPLUS,
    Coordinate,
    GeneratorDescriptor,
    eval_generator,
    eval_P,
    eval_Rminus,
    eval_Rplus,
    partials,
    rminus_factor_sign,
    rplus_factor_sign,
    value_and_partial,
)
from quivinv.linalg import Matrix, Shape, corner_minor_D, mirror
from quivinv.quiver import act, random_matrix, sample_group, sample_point
from quivinv.section import sample_section_point, section_spec

F = GF()
EVAL = {P: eval_P, RMINUS: eval_Rminus, RPLUS: eval_Rplus}
SIGNS = json.loads((Path(__file__).parent / "data" / "sign_tables.json").read_text())


def expand_zero(e):
    return sympy.expand(e) == 0


# ---- symbolic reproduction of the worked n=3 identities --------------------

@pytest.mark.parametrize("label,kind,i,k,rhs", GENERAL, ids=[g[0] for g in GENERAL])
def test_general_forms_symbolic(label, kind, i, k, rhs):
    a, b = symbolic("a", 3), symbolic("b", 3)
    got = EVAL[kind](library_matrix(a), library_matrix(b), i, k)
    assert expand_zero(got - rhs(accessor(a), accessor(b)))


@pytest.mark.parametrize("row", SPECIALIZED, ids=[s[0] for s in SPECIALIZED])
def test_specialized_forms_symbolic(row):
    label, kind, (first, second), i, k, rhs = row
    x = symbolic("x", 3)
    s = symbolic("s", 3, lower_anti(3) if "lower" in (first, second) else upper_anti(3))
    args = [x if w == "X" else s for w in (first, second)]
    got = EVAL[kind](library_matrix(args[0]), library_matrix(args[1]), i, k)
    assert expand_zero(got - rhs(accessor(x), accessor(s)))


def test_P_self_pair_n2():
    x = symbolic("x", 2)
    got = eval_P(library_matrix(x), library_matrix(x), 2, 2)
    assert expand_zero(got - x[1, 0] * (x[0, 0] + x[1, 1]))


def test_n2_block_oracles():
    x, y = symbolic("x", 2), symbolic("y", 2)
    X, Y = library_matrix(x), library_matrix(y)
    assert expand_zero(eval_Rminus(X, Y, 2, 2) - sympy.Matrix([[x[1, 0], x[1, 1]], [y[1, 0], y[1, 1]]]).det())
    assert expand_zero(eval_Rplus(Y, X, 1, 1) - sympy.Matrix([[y[0, 0], x[0, 0]], [y[1, 0], x[1, 0]]]).det())


@pytest.mark.parametrize("n", [2, 3, 4])
def test_library_matches_symbolic_definitions(n):
    # the test-side definitions are written independently from the library
    rng = random.Random(n)
    a, b = symbolic("a", n), symbolic("b", n)
    for _ in range(3):
        subs = {s: rng.randint(-9, 9) for s in a.free_symbols | b.free_symbols}
        av, bv = a.subs(subs), b.subs(subs)
        A, B = Matrix.from_rows(av.tolist()), Matrix.from_rows(bv.tolist())
        for i in range(1, n + 1):
            for k in range(1, n + 1):
                ip = mirror(i, n)
                if ip < k:
                    assert eval_P(A, B, i, k) == sym_P(av, bv, i, k)
                    assert eval_Rminus(A, B, i, k) == sym_Rminus(av, bv, i, k)
                elif ip > k:
                    assert eval_Rplus(A, B, i, k) == sym_Rplus(av, bv, i, k)
            assert corner_minor_D(A, i) == sym_D(av, i)


# ---- product identities and frozen signs -----------------------------------

def test_sign_table_matches_closed_forms():
    assert len(SIGNS["Rminus"]) == len(SIGNS["Rplus"]) == sum(n * (n - 1) // 2 for n in range(1, 7))
    for key, sign in SIGNS["Rminus"].items():
        assert rminus_factor_sign(*map(int, key.split(","))) == sign, key
    for key, sign in SIGNS["Rplus"].items():
        assert rplus_factor_sign(*map(int, key.split(","))) == sign, key


def test_sign_table_agrees_with_worked_examples():
    assert SIGNS["Rminus"]["3,3,2"] == -1  # -D3(S+) x32
    assert SIGNS["Rminus"]["3,3,3"] == 1
    assert SIGNS["Rplus"]["3,2,1"] == -1  # -D3(S-) x21
    assert SIGNS["Rplus"]["3,1,1"] == 1


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_product_identities_symbolic(n):
    x = symbolic("x", n)
    lo = symbolic("l", n, lower_anti(n))
    up = symbolic("u", n, upper_anti(n))
    X, L, U = library_matrix(x), library_matrix(lo), library_matrix(up)

    def m(mat, rows, cols):
        return mat.extract([r - 1 for r in rows], [c - 1 for c in cols]).det()

    for i in range(1, n + 1):
        ip = mirror(i, n)
        for k in range(1, n + 1):
            kp = mirror(k, n)
            if ip < k:
                mik = m(x, range(i, n + 1), list(range(1, ip)) + [k])
                assert expand_zero(eval_P(X, L, i, k) - mik * sym_D(lo, k))
                rm = rminus_factor_sign(n, i, k) * m(x, range(i, n + 1), range(k - ip + 1, k + 1))
                assert expand_zero(eval_Rminus(X, U, i, k) - rm * sym_D(up, kp + ip))
                nk = m(x, [ip] + list(range(k + 1, n + 1)), range(1, kp + 1))
                assert expand_zero(eval_P(U, X, i, k) - sym_D(up, i) * nk)
            elif ip > k:
                rp = rplus_factor_sign(n, i, k) * m(x, range(i, i + k), range(1, k + 1))
                assert expand_zero(eval_Rplus(L, X, i, k) - sym_D(lo, i + k) * rp)


# ---- invariance --------------------------------------------------------------

@given(seed=st.integers(0, 10**6), n=st.integers(1, 4))
def test_u_invariance_random_quiver(seed, n):
    rng = random.Random(seed)
    q, psi = random_quiver(rng)
    system = build_system(q, psi, n)
    for field in (F, QQ):
        h = sample_point(q, n, field, rng)
        gh = act(sample_group(q, n, field, rng), h, q)
        for d in system:
            assert eval_generator(d, h) == eval_generator(d, gh), d.id


def test_non_unitriangular_breaks_invariance():
    q, psi = build(FOUR_VERTEX)
    h = sample_point(q, 3, F, 1)
    g = sample_group(q, 3, F, 2)
    g = type(g)({v: m.with_entry(3, 1, F(5)) for v, m in g.matrices.items()}, 3, F)
    gh = act(g, h, q, strict=False)
    system = build_system(q, psi, 3)
    assert any(eval_generator(d, h) != eval_generator(d, gh) for d in system)


# ---- derivatives -------------------------------------------------------------

def test_partials_of_corner_minors():
    q, psi = build(FOUR_VERTEX)
    n = 4
    h = sample_point(q, n, F, 3)
    for k in range(1, n):
        desc = GeneratorDescriptor(D, ("a2",), None, k, Coordinate("a2", k, mirror(k, n)), "diagonal")
        (d,) = partials(desc, h, [desc.leading])
        expect = corner_minor_D(h["a2"], k + 1)
        assert d == (expect if mirror(k, n) % 2 == 1 else F.neg(expect))


def test_partial_on_section_example():
    rng = random.Random(8)
    x = random_matrix(3, QQ, rng)
    s = random_matrix(3, QQ, rng, lambda i, j: Shape.LOWER_ANTI.allows(i, j, 3))
    from quivinv.quiver import RepPoint

    h = RepPoint({"x": x, "s": s}, 3, QQ)
    desc = GeneratorDescriptor(P, ("x", "s"), 3, 2, Coordinate("x", 3, 2), "source")
    value, slope = value_and_partial(desc, h, desc.leading)
    assert value == eval_P(x, s, 3, 2)
    assert slope == corner_minor_D(s, 2)
    other = [Coordinate("a_missing_from_desc", 1, 1)]
    with pytest.raises(KeyError):
        partials(desc, h, other)
    h2 = RepPoint({"x": x, "s": s, "z": x}, 3, QQ)
    assert partials(desc, h2, [Coordinate("z", 1, 1)]) == [0]


@given(seed=st.integers(0, 10**6))
def test_partials_match_finite_differences(seed):
    # along one entry a generator is a polynomial of degree <= 2n; interpolate
    # it exactly from 2n+1 values and differentiate with sympy
    rng = random.Random(seed)
    q, psi = random_quiver(rng)
    n = rng.randint(1, 3)
    system = build_system(q, psi, n)
    d = system.descriptors[rng.randrange(len(system))]
    h = sample_point(q, n, QQ, rng)
    a = d.arrows[rng.randrange(len(d.arrows))]
    i, j = rng.randint(1, n), rng.randint(1, n)
    x0 = h[a][i, j]
    ts = [x0 + t for t in range(2 * n + 1)]
    ys = [eval_generator(d, h.replace(**{a: h[a].with_entry(i, j, t)})) for t in ts]
    t = sympy.Symbol("t")
    poly = sympy.interpolate(list(zip(ts, ys)), t)
    expect = sympy.diff(poly, t).subs(t, x0)
    (got,) = partials(d, h, [Coordinate(a, i, j)])
    assert sympy.Rational(got.numerator, got.denominator) == expect


# ---- linearity in the leading coordinate -----------------------------------

@given(seed=st.integers(0, 10**6), n=st.integers(1, 4))
def test_affine_in_leading_coordinate_on_section(seed, n):
    rng = random.Random(seed)
    q, psi = random_quiver(rng)
    spec = section_spec(q, psi, n)
    h = sample_section_point(spec, F, rng)
    for d in build_system(q, psi, n):
        lead = d.leading
        x = h[lead.arrow]
        vals = [eval_generator(d, h.replace(**{lead.arrow: x.with_entry(lead.row, lead.col, F(t))}))
                for t in (0, 1, 2)]
        assert F.sub(F.add(vals[2], vals[0]), F.mul(2, vals[1])) == 0, d.id


def test_self_pair_quadratic_off_section(one_loop):
    # P32(X, X) at n=3: x32 sits in both M_32 and D_2, so the generator is
    # quadratic in it on the full space and affine once X is lower anti-triangular
    q, psi = one_loop
    desc = next(d for d in build_system(q, psi, 3) if (d.kind, d.i, d.k) == (P, 3, 2))
    assert desc.leading == ("a", 3, 2)
    rng = random.Random(2)

    def second_difference(h):
        x = h["a"]
        vals = [eval_generator(desc, h.replace(a=x.with_entry(3, 2, QQ(t)))) for t in (0, 1, 2)]
        return vals[2] + vals[0] - 2 * vals[1]

    assert second_difference(sample_point(q, 3, QQ, 0)) != 0
    assert second_difference(sample_section_point(section_spec(q, psi, 3), QQ, rng)) == 0


# ---- descriptors -------------------------------------------------------------

def test_descriptor_ids_and_json():
    q, psi = build(FOUR_VERTEX)
    for d in build_system(q, psi, 3):
        obj = json.loads(json.dumps(d.to_json()))
        assert GeneratorDescriptor.from_json(obj) == d
        d.check(3)
    d = GeneratorDescriptor(P, ("a1", "a4"), 3, 2, Coordinate("a1", 3, 2), "source")
    assert d.id == "P(a1,a4;i=3,k=2)"
    assert GeneratorDescriptor(D, ("a1",), None, 2, Coordinate("a1", 2, 2), "diagonal").id == "D(a1;k=2)"
    with pytest.raises(ValueError):
        GeneratorDescriptor.from_json({**d.to_json(), "id": "P(a1,a4;i=1,k=2)"})


@pytest.mark.parametrize("kind,i,k", [(P, 1, 2), (RMINUS, 3, 1), (RPLUS, 1, 3), (D, None, 4), ("Q", 1, 1)])
def test_descriptor_check_rejects(kind, i, k):
    arrows = ("a",) if kind == D else ("a", "b")
    with pytest.raises(ValueError):
        GeneratorDescriptor(kind, arrows, i, k, Coordinate("a", 1, 1), "source").check(3)


def test_evaluators_reject_bad_indices():
    x = random_matrix(3, QQ, random.Random(0))
    with pytest.raises(ValueError):
        eval_P(x, x, 1, 2)
    with pytest.raises(ValueError):
        eval_Rminus(x, x, 1, 3)
    with pytest.raises(ValueError):
        eval_Rplus(x, x, 3, 1)
    with pytest.raises(ValueError):
        eval_P(x, random_matrix(2, QQ, random.Random(0)), 3, 3)


def test_eval_generator_dispatch():
    q, psi = build(FOUR_VERTEX)
    h = sample_point(q, 3, QQ, 4)
    for d in build_system(q, psi, 3):
        if d.kind == D:
            assert eval_generator(d, h) == corner_minor_D(h[d.arrows[0]], d.k)
        elif d.arrows == ("a4", "a3"):
            assert eval_generator(d, h) == eval_P(h["a4"], h["a3"], d.i, d.k)
    missing = type(h)({"a1": h["a1"]}, 3, QQ)
    with pytest.raises(KeyError):
        eval_generator(GeneratorDescriptor(D, ("a2",), None, 1, Coordinate("a2", 1, 3), "diagonal"), missing)
