import dataclasses
import json

import pytest

from quivinv.assembly import build_system
from quivinv.fields import GF
from quivinv.invariants import D, eval_generator
from quivinv.quiver import act, sample_group, sample_point
from quivinv.verify import (
    check_factorizations,
    check_independence,
    check_invariance,
    check_mutants,
    check_non_unitriangular,
    check_reduction,
    check_triangularity,
    derive_seed,
    factorization_identities,
    jacobian_rank,
    run_all,
)

F = GF()


def test_derive_seed_stable():
    assert derive_seed(0, "a", 1) == derive_seed(0, "a", 1)
    assert derive_seed(0, "a", 1) != derive_seed(0, "a", 2)
    assert 0 <= derive_seed(123, "x") < 2**63


def test_invariance_four_vertex(four_vertex):
    q, psi = four_vertex
    rec = check_invariance(q, psi, 3, trials=100, seed=0)
    assert rec.passed and rec.trials == 100
    assert rec.failure_bound == 100 * 2 * 3 * 4 / F.p


@pytest.mark.parametrize("n", [2, 3, 4])
def test_negative_controls_fire(four_vertex, n):
    q, psi = four_vertex
    mut = check_mutants(q, psi, n, seed=1)
    assert mut.passed and mut.trials == len(build_system(q, psi, n)), mut.detail
    assert check_non_unitriangular(q, psi, n, seed=1).passed


def test_negative_controls_vacuous_at_n1(four_vertex):
    q, psi = four_vertex
    assert check_mutants(q, psi, 1).trials == 0
    assert check_non_unitriangular(q, psi, 1).trials == 0


def test_swapped_indices_are_still_invariant(four_vertex):
    # i' < k and i' > k are both symmetric in (i, k), so swapping gives another
    # genuine invariant; this is why the mutants change structure instead
    q, psi = four_vertex
    n = 4
    h = sample_point(q, n, F, 5)
    gh = act(sample_group(q, n, F, 6), h, q)
    swapped = [dataclasses.replace(d, i=d.k, k=d.i) for d in build_system(q, psi, n) if d.kind != D]
    for d in swapped:
        d.check(n)
        assert eval_generator(d, h) == eval_generator(d, gh)


def test_triangularity_records(four_vertex):
    q, psi = four_vertex
    recs = check_triangularity(q, psi, 3, seed=2)
    assert [r.name for r in recs] == ["triangularity.T1", "triangularity.T2", "triangularity.cross_arrow"]
    assert all(r.passed for r in recs)


def test_independence_examples(one_loop, two_loops, four_vertex):
    q, psi = one_loop
    indep, cover = check_independence(q, psi, 2)
    assert indep.passed and cover.passed and "rank 3 of 3" in indep.detail
    q, psi = two_loops
    indep, cover = check_independence(q, psi, 2, mode="paper")
    assert indep.passed and not cover.passed
    assert "rank 6 of 6" in indep.detail and "section dimension 7" in cover.detail
    indep, cover = check_independence(q, psi, 2)
    assert indep.passed and cover.passed and "rank 7 of 7" in indep.detail
    q, psi = four_vertex
    system = build_system(q, psi, 2)
    assert len(system) == 4 * 2 + 4 * 1
    assert jacobian_rank(system, sample_point(q, 2, F, 0), q) == 12


def test_rank_detects_dependence(one_loop):
    q, psi = one_loop
    system = build_system(q, psi, 2)
    doubled = dataclasses.replace(system, descriptors=system.descriptors + system.descriptors[:1])
    assert jacobian_rank(doubled, sample_point(q, 2, F, 0), q) == 3


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_factorizations(n):
    rec = check_factorizations(n, trials=20, seed=3)
    assert rec.passed
    assert rec.trials == len(factorization_identities(n))
    if n == 1:
        assert rec.trials == 0
    if n == 3:
        assert rec.trials == 12


def test_reduction_check(four_vertex):
    q, psi = four_vertex
    assert check_reduction(q, psi, 3, trials=10, seed=4).passed


def test_run_all_report(four_vertex):
    q, psi = four_vertex
    report = run_all(q, psi, 3, trials=20, seed=7)
    assert report.verdict == "pass"
    names = [c.name for c in report.checks]
    assert names == [
        "invariance", "negative_control.mutants", "negative_control.non_unitriangular",
        "triangularity.T1", "triangularity.T2", "triangularity.cross_arrow",
        "independence", "coverage", "factorizations", "reduction",
    ]
    doc = json.loads(report.dumps())
    assert doc["config"]["generators"] == doc["config"]["section_dim"] == 24
    assert all("counterexample_seed" not in c for c in doc["checks"])
    assert report.dumps() == run_all(q, psi, 3, trials=20, seed=7).dumps()
    assert report.dumps() != run_all(q, psi, 3, trials=20, seed=8).dumps()


def test_run_all_paper_gap(two_loops):
    q, psi = two_loops
    report = run_all(q, psi, 2, trials=10, mode="paper")
    assert report.verdict == "fail"
    failing = [c.name for c in report.checks if not c.passed]
    assert failing == ["coverage"]
    assert report.check("coverage").counterexample_seed is not None
    with pytest.raises(KeyError):
        report.check("nope")
