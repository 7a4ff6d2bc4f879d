"""Command-line interface.

Exit codes: 0 success, 1 semantic failure (invalid quiver, failed
verification), 2 parse or arity error, 3 point outside Omega.
"""

from __future__ import annotations

import argparse
import json
import sys

from quivinv.assembly import LoopMode, build_system, expected_count
from quivinv.fields import DEFAULT_PRIME, QQ
from quivinv.fileformats import (
    PointFileError,
    QuiverFileError,
    format_blocks,
    read_point_file,
    read_quiver_file,
)
from quivinv.invariants import GeneratorDescriptor, eval_generator
from quivinv.linalg import shape_member
from quivinv.quiver import act
from quivinv.reduction import NotInOmega, reduce_to_section
from quivinv.section import section_spec
from quivinv.verify import run_all

EXIT_OK, EXIT_FAIL, EXIT_PARSE, EXIT_OMEGA = 0, 1, 2, 3


class CliError(Exception):
    def __init__(self, message, code):
        super().__init__(message)
        self.code = code


def _load_quiver(path):
    try:
        return read_quiver_file(path)
    except QuiverFileError as exc:
        raise CliError(str(exc), EXIT_PARSE if exc.is_parse_error else EXIT_FAIL) from None
    except OSError as exc:
        raise CliError(f"E005 cannot read {path}: {exc.strerror}", EXIT_PARSE) from None


def _load_point(path, spec):
    try:
        return read_point_file(path, spec.quiver, spec.n, QQ)
    except PointFileError as exc:
        raise CliError(f"E005 {path}: {exc}", EXIT_PARSE) from None
    except OSError as exc:
        raise CliError(f"E005 cannot read {path}: {exc.strerror}", EXIT_PARSE) from None


def _load_descriptors(path, system):
    known = {d.id: d for d in system}
    out = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            if not line.strip():
                continue
            try:
                desc = GeneratorDescriptor.from_json(json.loads(line))
            except (ValueError, KeyError, TypeError) as exc:
                raise CliError(f"E005 {path}: line {lineno}: {exc}", EXIT_PARSE) from None
            if known.get(desc.id) != desc:
                raise CliError(f"E005 {path}: line {lineno}: {desc.id} is not in the system", EXIT_PARSE)
            out.append(desc)
    return out


def cmd_validate(args, out):
    spec = _load_quiver(args.quiver)
    print(f"ok: {len(spec.quiver.vertices)} vertices, {len(spec.quiver.arrows)} arrows, n={spec.n}", file=out)
    return EXIT_OK


def cmd_section(args, out):
    spec = _load_quiver(args.quiver)
    sec = section_spec(spec.quiver, spec.psi, spec.n)
    rows = [(a, s.value, s.dim(spec.n)) for a, s in sec.shapes.items()]
    if args.format == "json":
        for a, s, d in rows:
            print(json.dumps({"arrow": a, "shape": s, "dim": d}), file=out)
    else:
        width = max(len(a) for a, _, _ in rows)
        for a, s, d in rows:
            print(f"{a:<{width}}  {s:<9}  {d}", file=out)
        print(f"total dim {sec.dim()}", file=out)
    return EXIT_OK


def cmd_generators(args, out):
    spec = _load_quiver(args.quiver)
    system = build_system(spec.quiver, spec.psi, spec.n, args.mode)
    for d in system:
        if args.format == "json":
            print(json.dumps(d.to_json()), file=out)
        else:
            lead = d.leading
            print(f"{d.id}  leading {lead.arrow}[{lead.row},{lead.col}]  {d.side}", file=out)
    return EXIT_OK


def cmd_count(args, out):
    spec = _load_quiver(args.quiver)
    system = build_system(spec.quiver, spec.psi, spec.n, args.mode)
    per = {a: len(ds) for a, ds in system.per_arrow().items()}
    per = {a.name: per.get(a.name, 0) for a in spec.quiver.arrows}
    dim = expected_count(spec.quiver, spec.psi, spec.n)
    if args.format == "json":
        print(json.dumps({"total": len(system), "per_arrow": per, "section_dim": dim}), file=out)
    else:
        for a, c in per.items():
            print(f"{a}  {c}", file=out)
        print(f"total {len(system)}  section_dim {dim}", file=out)
    return EXIT_OK


def cmd_eval(args, out):
    spec = _load_quiver(args.quiver)
    h = _load_point(args.point, spec)
    system = build_system(spec.quiver, spec.psi, spec.n, args.mode)
    descs = _load_descriptors(args.generators, system) if args.generators else list(system)
    for d in descs:
        value = QQ.format(eval_generator(d, h))
        if args.format == "json":
            print(json.dumps({"id": d.id, "value": value}), file=out)
        else:
            print(f"{d.id} {value}", file=out)
    return EXIT_OK


def cmd_reduce(args, out):
    spec = _load_quiver(args.quiver)
    h = _load_point(args.point, spec)
    try:
        g = reduce_to_section(h, spec.quiver, spec.psi)
    except NotInOmega as exc:
        raise CliError(str(exc), EXIT_OMEGA) from None
    gh = act(g, h, spec.quiver)
    sec = section_spec(spec.quiver, spec.psi, spec.n)
    reduced = format_blocks(gh.matrices)
    print("# group element, one block per vertex", file=out)
    out.write(format_blocks(g.matrices))
    print("# reduced point", file=out)
    out.write(reduced)
    print("# section membership", file=out)
    ok = True
    for a, shape in sec.shapes.items():
        member = shape_member(gh[a], shape)
        ok &= member
        print(f"{'ok' if member else 'FAIL'} {a} {shape.value}", file=out)
    if args.point_out:
        with open(args.point_out, "w", encoding="utf-8") as fh:
            fh.write(reduced)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_verify(args, out):
    spec = _load_quiver(args.quiver)
    report = run_all(spec.quiver, spec.psi, spec.n, trials=args.trials, seed=args.seed,
                     prime=args.prime, mode=args.mode)
    if args.format == "json":
        out.write(report.dumps())
    else:
        for c in report.checks:
            status = "pass" if c.passed else "FAIL"
            extra = f"  ({c.detail})" if c.detail else ""
            print(f"{status}  {c.name}  {c.passes}/{c.trials}{extra}", file=out)
        print(f"verdict {report.verdict}", file=out)
    return EXIT_OK if report.verdict == "pass" else EXIT_FAIL


def build_parser():
    parser = argparse.ArgumentParser(
        prog="quivinv",
        description="Generators of the field of U-invariants of equidimensional quiver representations.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, help_text, mode=False, fmt=True):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("quiver", help="quiver file")
        if mode:
            p.add_argument("--mode", choices=[m.value for m in LoopMode], default="extended")
        if fmt:
            p.add_argument("--format", choices=["text", "json"], default="text")
        p.set_defaults(func=fn)
        return p

    add("validate", cmd_validate, "check a quiver file", fmt=False)
    add("section", cmd_section, "section shape per arrow")
    add("generators", cmd_generators, "list the generator system", mode=True)
    add("count", cmd_count, "count generators", mode=True)
    p = add("eval", cmd_eval, "evaluate generators at a point", mode=True)
    p.add_argument("--point", required=True, help="point file")
    p.add_argument("--generators", help="JSON-lines descriptor file restricting the output")
    p = add("reduce", cmd_reduce, "reduce a point into the section", fmt=False)
    p.add_argument("--point", required=True, help="point file")
    p.add_argument("--point-out", help="also write the reduced point to this file")
    p = add("verify", cmd_verify, "run the verification suite", mode=True, fmt=False)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--prime", type=int, default=DEFAULT_PRIME)
    p.add_argument("--format", choices=["text", "json"], default="json")
    return parser


def main(argv=None, out=None, err=None):
    out = out or sys.stdout
    err = err or sys.stderr
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except CliError as exc:
        print(exc, file=err)
        return exc.code


def entry():
    sys.exit(main())


if __name__ == "__main__":
    entry()
