"""Randomised evidence that a generator system does what it should.

Checks, each producing one or more :class:`CheckRecord`:

``invariance``
    generator values agree at ``h`` and ``g.h`` for random ``h`` and
    unitriangular ``g`` over GF(p).
``negative_control.*``
    the harness must notice broken generators and non-unitriangular ``g``.
``triangularity.T1``
    on the section each generator is affine in its leading coordinate with a
    nonzero slope.
``triangularity.T2``
    on the section each generator has zero partials in the off-anti-diagonal
    coordinates of its own arrow that come after its leading one.
``triangularity.cross_arrow``
    zero partials in off-anti-diagonal coordinates of the partner arrow.
``independence``
    the Jacobian at a random point has full row rank.
``coverage``
    the number of generators equals the dimension of the section.
``factorizations``
    the four restricted product identities for every admissible ``(i, k)``.
``reduction``
    rational points with nonzero corner minors reduce exactly into the
    section without changing any generator value.

Every random draw comes from a seed derived from the master seed, the check
name and a counter, so reports are reproducible byte for byte.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field as dc_field

from quivinv.assembly import LoopMode, build_system, expected_count
from quivinv.fields import DEFAULT_PRIME, GF, QQ, make_rng
from quivinv.invariants import (
    D,
    P,
    RMINUS,
    Coordinate,
    eval_generator,
    eval_P,
    eval_Rminus,
    eval_Rplus,
    partials,
    rminus_factor_sign,
    rplus_factor_sign,
    value_and_partial,
)
from quivinv.linalg import Matrix, Shape, corner_minor_D, minor, minor_M, minor_N, prec, shape_member
from quivinv.quiver import GroupElement, act, random_matrix, sample_group, sample_omega_point, sample_point
from quivinv.reduction import reduce_to_section
from quivinv.section import free_coordinates, project_membership, sample_section_point, section_spec

SLOPE_RETRIES = 5
MUTANT_TRIALS = 10
CONTROL_GROUPS = 5


def derive_seed(seed, *parts):
    text = ":".join(str(p) for p in (seed,) + parts)
    return int.from_bytes(hashlib.sha256(text.encode()).digest()[:8], "big") >> 1


@dataclass
class CheckRecord:
    name: str
    trials: int
    passes: int
    counterexample_seed: int | None = None
    failure_bound: float | None = None
    detail: str | None = None

    @property
    def passed(self):
        return self.passes == self.trials

    def to_json(self):
        out = {"name": self.name, "trials": self.trials, "passes": self.passes}
        if self.counterexample_seed is not None:
            out["counterexample_seed"] = self.counterexample_seed
        if self.failure_bound is not None:
            out["failure_bound"] = self.failure_bound
        if self.detail is not None:
            out["detail"] = self.detail
        return out


@dataclass
class VerificationReport:
    config: dict
    checks: list = dc_field(default_factory=list)

    @property
    def verdict(self):
        return "pass" if all(c.passed for c in self.checks) else "fail"

    def check(self, name):
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_json(self):
        return {
            "config": self.config,
            "checks": [c.to_json() for c in self.checks],
            "verdict": self.verdict,
        }

    def dumps(self):
        return json.dumps(self.to_json(), indent=2) + "\n"


def _values(system, h):
    return [eval_generator(d, h) for d in system]


def _record(name, trials, failures, bound=None, detail=None):
    return CheckRecord(
        name=name,
        trials=trials,
        passes=trials - len(failures),
        counterexample_seed=failures[0] if failures else None,
        failure_bound=bound,
        detail=detail,
    )


def _invariance_degree(n):
    # generator degree <= 2n in entries of g.h; each entry has degree <= n+1 in (g, h)
    return 2 * n * (n + 1)


def check_invariance(quiver, psi, n, trials=100, seed=0, prime=DEFAULT_PRIME,
                     mode=LoopMode.EXTENDED, system=None):
    field = GF(prime)
    system = system or build_system(quiver, psi, n, mode)
    failures = []
    for t in range(trials):
        s = derive_seed(seed, "invariance", t)
        rng = make_rng(s)
        h = sample_point(quiver, n, field, rng)
        g = sample_group(quiver, n, field, rng)
        if _values(system, h) != _values(system, act(g, h, quiver)):
            failures.append(s)
    return _record("invariance", trials, failures, trials * _invariance_degree(n) / prime)


def mutant_value(desc, h):
    """Value of a deliberately broken variant of ``desc``; used as a negative control.

    D uses an upper-left minor instead of the lower-left one, P drops the
    first term of its sum, R- takes the top rows of its second matrix, R+
    shifts the column window of its first matrix one step right.
    """
    x = h[desc.arrows[0]]
    n, f = x.n, x.field
    if desc.kind == D:
        order = n - desc.k + 1 if desc.k > 1 else n - 1
        return minor(x, range(1, order + 1), range(1, order + 1))
    y = h[desc.arrows[1]]
    i, k = desc.i, desc.k
    ip = n - i + 1
    if desc.kind == P:
        total = f.zero
        for j in range(ip + 1, k + 1):
            total = f.add(total, f.mul(minor_M(x, i, j), minor_N(y, j, k)))
        return total
    if desc.kind == RMINUS:
        rows = [x.rows[r][:k] for r in range(i - 1, n)] + [y.rows[r][:k] for r in range(k - ip)]
        return f.det(rows)
    rows = [x.rows[r][1: ip - k + 1] + y.rows[r][:k] for r in range(i - 1, n)]
    return f.det(rows)


def check_mutants(quiver, psi, n, seed=0, prime=DEFAULT_PRIME, mode=LoopMode.EXTENDED, system=None):
    """Every mutated generator must be caught as non-invariant."""
    if n == 1:
        return _record("negative_control.mutants", 0, [], detail="UT(1) is trivial")
    field = GF(prime)
    system = system or build_system(quiver, psi, n, mode)
    pairs = []
    for t in range(MUTANT_TRIALS):
        rng = make_rng(derive_seed(seed, "mutants", t))
        h = sample_point(quiver, n, field, rng)
        pairs.append((h, act(sample_group(quiver, n, field, rng), h, quiver)))
    missed = [
        d.id for d in system
        if all(mutant_value(d, h) == mutant_value(d, gh) for h, gh in pairs)
    ]
    return CheckRecord("negative_control.mutants", len(system), len(system) - len(missed),
                       detail=("undetected: " + ", ".join(missed)) if missed else None)


def check_non_unitriangular(quiver, psi, n, seed=0, prime=DEFAULT_PRIME,
                            mode=LoopMode.EXTENDED, system=None):
    """Lower unitriangular group elements must move some generator value."""
    if n == 1:
        return _record("negative_control.non_unitriangular", 0, [], detail="UT(1) is trivial")
    field = GF(prime)
    system = system or build_system(quiver, psi, n, mode)
    failures = []
    for t in range(CONTROL_GROUPS):
        s = derive_seed(seed, "non_unitriangular", t)
        rng = make_rng(s)
        h = sample_point(quiver, n, field, rng)
        mats = {}
        for v in quiver.vertices:
            rows = [[field.one if i == j else (field.random(rng) if i > j else field.zero)
                     for j in range(n)] for i in range(n)]
            mats[v] = Matrix(field, tuple(tuple(r) for r in rows))
        g = GroupElement(mats, n, field)
        if _values(system, h) == _values(system, act(g, h, quiver, strict=False)):
            failures.append(s)
    return _record("negative_control.non_unitriangular", CONTROL_GROUPS, failures)


def _off_diagonal_free(spec, arrow):
    n = spec.n
    return [c for c in free_coordinates(spec, arrow) if c.k != n - c.i + 1]


def check_triangularity(quiver, psi, n, seed=0, prime=DEFAULT_PRIME, mode=LoopMode.EXTENDED,
                        system=None):
    """Returns the T1, T2 and cross-arrow records."""
    field = GF(prime)
    system = system or build_system(quiver, psi, n, mode)
    spec = section_spec(quiver, psi, n)
    off = {a.name: _off_diagonal_free(spec, a.name) for a in quiver.arrows}
    t1_fail, t2_fail, cross_fail = [], [], []
    t1_ids, t2_ids, cross_ids = [], [], []
    for idx, desc in enumerate(system):
        lead = desc.leading
        slope = None
        for attempt in range(SLOPE_RETRIES):
            s = derive_seed(seed, "triangularity", idx, attempt)
            rng = make_rng(s)
            h = sample_section_point(spec, field, rng)
            value, slope = value_and_partial(desc, h, lead)
            if slope != 0:
                break
        if slope == 0:
            t1_fail.append(s)
            t1_ids.append(desc.id)
        else:
            x = h[lead.arrow]
            t0 = x[lead.row, lead.col]
            t1 = field.random(rng)
            moved = h.replace(**{lead.arrow: x.with_entry(lead.row, lead.col, t1)})
            expect = field.add(value, field.mul(slope, field.sub(t1, t0)))
            if eval_generator(desc, moved) != expect:
                t1_fail.append(s)
                t1_ids.append(desc.id)
        later = [Coordinate(lead.arrow, c.i, c.k) for c in off[lead.arrow]
                 if prec((lead.row, lead.col), c)]
        if any(partials(desc, h, later)):
            t2_fail.append(s)
            t2_ids.append(desc.id)
        others = [Coordinate(a, c.i, c.k) for a in dict.fromkeys(desc.arrows) if a != lead.arrow
                  for c in off[a]]
        if any(partials(desc, h, others)):
            cross_fail.append(s)
            cross_ids.append(desc.id)

    def detail(ids):
        return ("failing: " + ", ".join(ids)) if ids else None

    total = len(system)
    bound = SLOPE_RETRIES * total * 2 * n / prime
    return [
        _record("triangularity.T1", total, t1_fail, bound, detail(t1_ids)),
        _record("triangularity.T2", total, t2_fail, bound, detail(t2_ids)),
        _record("triangularity.cross_arrow", total, cross_fail, bound, detail(cross_ids)),
    ]


def jacobian(system, h, quiver):
    """Rows: generators. Columns: every ``(arrow, i, j)`` in arrow order, row-major."""
    n = h.n
    cols = [Coordinate(a.name, i, j) for a in quiver.arrows
            for i in range(1, n + 1) for j in range(1, n + 1)]
    return [partials(d, h, cols) for d in system], cols


def jacobian_rank(system, h, quiver):
    rows, _ = jacobian(system, h, quiver)
    return h.field.rank(rows) if rows else 0


def check_independence(quiver, psi, n, seed=0, prime=DEFAULT_PRIME, mode=LoopMode.EXTENDED,
                       system=None):
    """Returns the independence and coverage records.

    A full-rank Jacobian at a single point is a proof of algebraic
    independence; the randomness only affects the chance of finding one.
    """
    field = GF(prime)
    system = system or build_system(quiver, psi, n, mode)
    s = derive_seed(seed, "independence")
    h = sample_point(quiver, n, field, make_rng(s))
    rank = jacobian_rank(system, h, quiver)
    count = len(system)
    dim = expected_count(quiver, psi, n)
    indep = _record("independence", 1, [] if rank == count else [s], count * 2 * n / prime,
                    f"rank {rank} of {count} generators")
    cover = _record("coverage", 1, [] if count == dim else [s], None,
                    f"{count} generators, section dimension {dim}")
    return [indep, cover]


def factorization_identities(n):
    """``(identity, i, k)`` for every admissible index pair of the four restricted identities."""
    out = []
    for i in range(1, n + 1):
        for k in range(1, n + 1):
            ip = n - i + 1
            if ip < k:
                out += [("P_source", i, k), ("Rminus", i, k), ("P_target", i, k)]
            elif ip > k:
                out.append(("Rplus", i, k))
    return out


def factorization_sides(identity, i, k, n, field, rng):
    """Both sides of one restricted identity at a random point."""
    ip, kp = n - i + 1, n - k + 1
    x = random_matrix(n, field, rng)
    lower = random_matrix(n, field, rng, lambda a, b: Shape.LOWER_ANTI.allows(a, b, n))
    upper = random_matrix(n, field, rng, lambda a, b: Shape.UPPER_ANTI.allows(a, b, n))
    f = field
    if identity == "P_source":
        return eval_P(x, lower, i, k), f.mul(minor_M(x, i, k), corner_minor_D(lower, k))
    if identity == "Rminus":
        sign = f(rminus_factor_sign(n, i, k))
        m = minor(x, range(i, n + 1), range(k - ip + 1, k + 1))
        return eval_Rminus(x, upper, i, k), f.mul(sign, f.mul(m, corner_minor_D(upper, kp + ip)))
    if identity == "P_target":
        return eval_P(upper, x, i, k), f.mul(corner_minor_D(upper, i), minor_N(x, ip, k))
    sign = f(rplus_factor_sign(n, i, k))
    m = minor(x, range(i, i + k), range(1, k + 1))
    return eval_Rplus(lower, x, i, k), f.mul(sign, f.mul(corner_minor_D(lower, i + k), m))


def check_factorizations(n, trials=20, seed=0, prime=DEFAULT_PRIME):
    field = GF(prime)
    identities = factorization_identities(n)
    failures, bad = [], []
    for idx, (identity, i, k) in enumerate(identities):
        for t in range(trials):
            s = derive_seed(seed, "factorizations", idx, t)
            lhs, rhs = factorization_sides(identity, i, k, n, field, make_rng(s))
            if lhs != rhs:
                failures.append(s)
                bad.append(f"{identity}[{i},{k}]")
                break
    rec = _record("factorizations", len(identities), failures, trials * len(identities) * 2 * n / prime,
                  ("failing: " + ", ".join(bad)) if bad else None)
    return rec


def check_reduction(quiver, psi, n, trials=100, seed=0, mode=LoopMode.EXTENDED, system=None):
    """Exact reduction round trips over the rationals."""
    system = system or build_system(quiver, psi, n, mode)
    spec = section_spec(quiver, psi, n)
    failures = []
    for t in range(trials):
        s = derive_seed(seed, "reduction", t)
        h = sample_omega_point(quiver, n, QQ, s)
        g = reduce_to_section(h, quiver, psi)
        gh = act(g, h, quiver)
        ok = (
            g.is_unitriangular()
            and project_membership(gh, spec)
            and all(shape_member(gh[a], shape) for a, shape in spec.shapes.items())
            and all(corner_minor_D(h[a.name], k) == corner_minor_D(gh[a.name], k)
                    for a in quiver.arrows for k in range(1, n + 1))
            and _values(system, h) == _values(system, gh)
        )
        if not ok:
            failures.append(s)
    return _record("reduction", trials, failures)


def run_all(quiver, psi, n, trials=100, seed=0, prime=DEFAULT_PRIME, mode=LoopMode.EXTENDED,
            reduction_trials=None):
    mode = LoopMode(mode)
    system = build_system(quiver, psi, n, mode)
    config = {
        "n": n,
        "prime": prime,
        "seed": seed,
        "mode": mode.value,
        "trials": trials,
        "generators": len(system),
        "section_dim": expected_count(quiver, psi, n),
    }
    report = VerificationReport(config)
    sub = lambda name: derive_seed(seed, "run_all", name)  # noqa: E731
    report.checks.append(check_invariance(quiver, psi, n, trials, sub("invariance"), prime, mode, system))
    report.checks.append(check_mutants(quiver, psi, n, sub("mutants"), prime, mode, system))
    report.checks.append(check_non_unitriangular(quiver, psi, n, sub("non_unitriangular"), prime, mode, system))
    report.checks += check_triangularity(quiver, psi, n, sub("triangularity"), prime, mode, system)
    report.checks += check_independence(quiver, psi, n, sub("independence"), prime, mode, system)
    report.checks.append(check_factorizations(n, min(trials, 20), sub("factorizations"), prime))
    rt = trials if reduction_trials is None else reduction_trials
    report.checks.append(check_reduction(quiver, psi, n, rt, sub("reduction"), mode, system))
    return report


__all__ = [
    "CheckRecord",
    "VerificationReport",
    "check_factorizations",
    "check_independence",
    "check_invariance",
    "check_mutants",
    "check_non_unitriangular",
    "check_reduction",
    "check_triangularity",
    "derive_seed",
    "factorization_identities",
    "jacobian",
    "jacobian_rank",
    "mutant_value",
    "run_all",
]
