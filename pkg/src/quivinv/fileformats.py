"""Quiver files and point files.

Quiver file, one directive per line::

    n 3
    vertex 1
    arrow a1 1 1
    psi 1 a1

Point file, one block per arrow, ``n`` rows of exact rationals each::

    matrix a1
    1 0 -3
    0 7/2 0
    1 1 1

``#`` starts a comment; blank lines are ignored in both formats.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from quivinv.fields import QQ
from quivinv.linalg import Matrix
from quivinv.quiver import Diagnostic, Quiver, RepPoint, is_identifier, validate


class QuiverFileError(ValueError):
    def __init__(self, diagnostics):
        self.diagnostics = list(diagnostics)
        super().__init__("\n".join(str(d) for d in self.diagnostics))

    @property
    def is_parse_error(self):
        return any(d.code == "E005" for d in self.diagnostics)


class PointFileError(ValueError):
    def __init__(self, message, line=None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


@dataclass(frozen=True)
class QuiverSpec:
    quiver: Quiver
    psi: dict
    n: int


def _lines(text):
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line.split()


def parse_quiver_text(text, check=True):
    """Parse and (by default) validate. Raises :class:`QuiverFileError`."""
    errors = []
    n = None
    saw_n = False
    vertices, arrows, psi = [], [], {}
    psi_lines = {}

    def parse_error(lineno, msg):
        errors.append(Diagnostic("E005", msg, lineno))

    arity = {"n": 1, "vertex": 1, "arrow": 3, "psi": 2}
    for lineno, words in _lines(text):
        head, args = words[0], words[1:]
        if head not in arity:
            parse_error(lineno, f"unknown directive {head!r}")
            continue
        if len(args) != arity[head]:
            parse_error(lineno, f"{head} takes {arity[head]} argument(s), got {len(args)}")
            continue
        if head == "n":
            if saw_n:
                parse_error(lineno, "n given more than once")
            elif not args[0].isdigit() or int(args[0]) < 1:
                parse_error(lineno, f"n must be a positive integer, got {args[0]!r}")
            else:
                n = int(args[0])
            saw_n = True
            continue
        bad = [a for a in args if not is_identifier(a)]
        if bad:
            parse_error(lineno, f"invalid identifier {bad[0]!r}")
            continue
        if head == "vertex":
            vertices.append(args[0])
        elif head == "arrow":
            arrows.append(tuple(args))
        else:
            v, a = args
            if v in psi:
                errors.append(Diagnostic("E007", f"psi for vertex {v} given twice "
                                                 f"(first on line {psi_lines[v]})", lineno))
                continue
            psi[v] = a
            psi_lines[v] = lineno
    if not saw_n:
        errors.append(Diagnostic("E005", "missing n directive"))
    quiver = Quiver.build(vertices, arrows)
    if not errors and check:
        errors = validate(quiver, psi, n)
    if errors:
        raise QuiverFileError(errors)
    return QuiverSpec(quiver, psi, n)


def read_quiver_file(path, check=True):
    with open(path, encoding="utf-8") as fh:
        return parse_quiver_text(fh.read(), check)


def format_quiver(spec):
    out = [f"n {spec.n}"]
    out += [f"vertex {v}" for v in spec.quiver.vertices]
    out += [f"arrow {a.name} {a.source} {a.target}" for a in spec.quiver.arrows]
    out += [f"psi {v} {spec.psi[v]}" for v in spec.quiver.vertices if v in spec.psi]
    return "\n".join(out) + "\n"


def _rational(word, lineno):
    try:
        return Fraction(word)
    except (ValueError, ZeroDivisionError):
        raise PointFileError(f"not an exact rational: {word!r}", lineno) from None


def parse_matrix_blocks(text, n, field=QQ):
    """``{name: Matrix}`` from ``matrix <name>`` blocks of ``n`` rows each."""
    return _parse_blocks(text, n, field)[0]


def _parse_blocks(text, n, field):
    blocks, starts = {}, {}
    current, rows, start = None, [], None
    for lineno, words in _lines(text):
        if words[0] == "matrix":
            if current is not None:
                raise PointFileError(f"block {current} has {len(rows)} rows, expected {n}", lineno)
            if len(words) != 2 or not is_identifier(words[1]):
                raise PointFileError("expected 'matrix <identifier>'", lineno)
            if words[1] in blocks:
                raise PointFileError(f"duplicate block {words[1]}", lineno)
            current, rows, start = words[1], [], lineno
            starts[current] = lineno
            continue
        if current is None:
            raise PointFileError("row outside of a matrix block", lineno)
        if len(words) != n:
            raise PointFileError(f"row has {len(words)} entries, expected {n}", lineno)
        rows.append([field(_rational(w, lineno)) for w in words])
        if len(rows) == n:
            blocks[current] = Matrix(field, tuple(tuple(r) for r in rows))
            current = None
    if current is not None:
        raise PointFileError(f"block {current} has {len(rows)} rows, expected {n}", start)
    return blocks, starts


def parse_point_text(text, quiver, n, field=QQ):
    blocks, starts = _parse_blocks(text, n, field)
    names = set(quiver.arrow_names)
    unknown = [b for b in blocks if b not in names]
    if unknown:
        raise PointFileError(f"unknown arrow {unknown[0]}", starts[unknown[0]])
    missing = [a for a in quiver.arrow_names if a not in blocks]
    if missing:
        raise PointFileError(f"missing matrix for arrow {missing[0]}")
    return RepPoint({a: blocks[a] for a in quiver.arrow_names}, n, field)


def read_point_file(path, quiver, n, field=QQ):
    with open(path, encoding="utf-8") as fh:
        return parse_point_text(fh.read(), quiver, n, field)


def format_blocks(mats, field=QQ):
    out = []
    for name, m in mats.items():
        out.append(f"matrix {name}")
        out += [" ".join(field.format(x) for x in row) for row in m.rows]
    return "\n".join(out) + "\n"
