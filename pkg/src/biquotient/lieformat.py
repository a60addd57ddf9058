"""The line-oriented ``.lie`` text format.

::

    # comment
    algebra winkelmann8 dim 8
    basis X1 X2 Y1 Y2 Y3 Y4 Z1 Z2
    [X1,Y2] = Y3
    sub h = X1, X2
    matrix 4 E12=E(1,2)
    var Z1 z2
    chart twoblock = y1:E12 y2:E34 | y3:E13 z:E14
    derivation delta = y2*d/dy3 + 1*d/dz1

Unlisted brackets are zero. ``var`` renames the chart variable of a basis
label, ``chart`` declares a product-of-exponentials chart (blocks separated
by ``|``), ``derivation`` lines may appear without any algebra.
"""
from dataclasses import dataclass, field
from fractions import Fraction
import re

from . import linalg
from .algebra import LieAlgebra, Subspace, format_vector
from .derivation import format_derivation, parse_derivation
from .errors import InputError, ParseError
from .poly import PolyRing, parse_polynomial


@dataclass
class LieFile:
    algebra: LieAlgebra = None
    subs: dict = field(default_factory=dict)
    variables: dict = field(default_factory=dict)  # basis label -> chart variable name
    charts: dict = field(default_factory=dict)  # name -> list of blocks of (var, vector)
    derivations: dict = field(default_factory=dict)

    def sub(self, name):
        try:
            return self.subs[name]
        except KeyError:
            raise InputError(f"no subspace named {name!r}") from None


def parse_vector(text, labels, line=None):
    ring = PolyRing(tuple(labels))
    try:
        p = parse_polynomial(text, ring)
    except (ParseError, InputError) as exc:
        raise ParseError(str(exc), line) from None
    if p.total_degree() > 1 or p.constant_term():
        raise ParseError(f"{text.strip()!r} is not a linear combination of basis labels", line)
    out = [Fraction(0)] * len(labels)
    for e, c in p.terms.items():
        out[e.index(1)] = c
    return tuple(out)


_MATRIX_TERM = re.compile(r"([+-]?)\s*(?:(\d+(?:/\d+)?)\s*\*\s*)?E\((\d+),(\d+)\)")


def _parse_matrix_value(text, m, line):
    entries = [[Fraction(0)] * m for _ in range(m)]
    pos = 0
    text = text.replace(" ", "")
    while pos < len(text):
        mt = _MATRIX_TERM.match(text, pos)
        if not mt or mt.end() == pos:
            raise ParseError(f"bad matrix term near {text[pos:]!r}", line)
        sign, coef, i, j = mt.groups()
        c = Fraction(coef) if coef else Fraction(1)
        if sign == "-":
            c = -c
        i, j = int(i) - 1, int(j) - 1
        if not (0 <= i < j < m):
            raise ParseError("matrix presentation must be strictly upper triangular", line)
        entries[i][j] += c
        pos = mt.end()
    return tuple(tuple(r) for r in entries)


def parse_lie(text):
    out = LieFile()
    name = dim = None
    labels = None
    brackets = {}
    bracket_lines = {}
    pending_subs = []
    pending_charts = []
    matrices = {}
    msize = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head = line.split()[0]
        if head == "algebra":
            m = re.fullmatch(r"algebra\s+(\S+)\s+dim\s+(\d+)", line)
            if not m:
                raise ParseError("expected 'algebra <name> dim <n>'", lineno)
            name, dim = m.group(1), int(m.group(2))
        elif head == "basis":
            labels = tuple(line.split()[1:])
            if dim is None:
                raise ParseError("'basis' before 'algebra'", lineno)
            if len(labels) != dim:
                raise ParseError(f"basis has {len(labels)} labels, expected {dim}", lineno)
            if len(set(labels)) != len(labels):
                raise ParseError("duplicate basis label", lineno)
        elif line.startswith("["):
            m = re.fullmatch(r"\[\s*(\S+?)\s*,\s*(\S+?)\s*\]\s*=\s*(.+)", line)
            if not m:
                raise ParseError("expected '[A,B] = <combination>'", lineno)
            if labels is None:
                raise ParseError("bracket before 'basis'", lineno)
            a, b, rhs = m.groups()
            for lab in (a, b):
                if lab not in labels:
                    raise ParseError(f"unknown label {lab!r}", lineno)
            i, j = labels.index(a), labels.index(b)
            if i == j:
                raise ParseError(f"[{a},{a}] must vanish by antisymmetry", lineno)
            if i > j:
                raise ParseError(f"write [{b},{a}]: brackets are listed with the earlier label first", lineno)
            if (i, j) in brackets:
                raise ParseError(f"bracket [{a},{b}] given twice", lineno)
            brackets[(i, j)] = parse_vector(rhs, labels, lineno)
            bracket_lines[(i, j)] = lineno
        elif head == "sub":
            m = re.fullmatch(r"sub\s+(\S+)\s*=\s*(.*)", line)
            if not m:
                raise ParseError("expected 'sub <name> = <vectors>'", lineno)
            pending_subs.append((m.group(1), m.group(2), lineno))
        elif head == "matrix":
            parts = line.split()
            if len(parts) < 3:
                raise ParseError("expected 'matrix <m> <label>=E(i,j) ...'", lineno)
            size = int(parts[1])
            if msize is not None and size != msize:
                raise ParseError("inconsistent matrix sizes", lineno)
            msize = size
            for item in parts[2:]:
                lab, _, val = item.partition("=")
                if labels is None or lab not in labels:
                    raise ParseError(f"unknown label {lab!r}", lineno)
                matrices[lab] = _parse_matrix_value(val, size, lineno)
        elif head == "var":
            parts = line.split()
            if len(parts) != 3:
                raise ParseError("expected 'var <label> <name>'", lineno)
            out.variables[parts[1]] = parts[2]
        elif head == "chart":
            m = re.fullmatch(r"chart\s+(\S+)\s*=\s*(.+)", line)
            if not m:
                raise ParseError("expected 'chart <name> = v:vec ... | ...'", lineno)
            pending_charts.append((m.group(1), m.group(2), lineno))
        elif head == "derivation":
            m = re.fullmatch(r"derivation\s+(\S+)\s*=\s*(.+)", line)
            if not m:
                raise ParseError("expected 'derivation <name> = <expr>'", lineno)
            try:
                out.derivations[m.group(1)] = parse_derivation(m.group(2), name=m.group(1))
            except (ParseError, InputError) as exc:
                raise ParseError(str(exc), lineno) from None
        else:
            raise ParseError(f"unknown directive {head!r}", lineno)

    if name is not None:
        if labels is None:
            raise ParseError("missing 'basis' line")
        matrix = None
        if matrices:
            missing = [lab for lab in labels if lab not in matrices]
            if missing:
                raise ParseError(f"matrix presentation misses {missing}")
            matrix = tuple(matrices[lab] for lab in labels)
        try:
            out.algebra = LieAlgebra(name, labels, brackets, matrix)
        except InputError as exc:
            msg = str(exc)
            line = None
            if "Jacobi" in msg:
                line = min(bracket_lines.values(), default=None)
            raise ParseError(msg, line) from None
        for sname, body, lineno in pending_subs:
            vectors = [parse_vector(v, labels, lineno) for v in body.split(",") if v.strip()]
            out.subs[sname] = Subspace.span(dim, vectors)
        for cname, body, lineno in pending_charts:
            blocks = []
            for block in body.split("|"):
                items = []
                for item in block.split():
                    var, _, vtext = item.partition(":")
                    if not vtext:
                        raise ParseError("chart entries look like name:vector", lineno)
                    items.append((var, parse_vector(vtext, labels, lineno)))
                blocks.append(items)
            out.charts[cname] = blocks
        for lab in out.variables:
            if lab not in labels:
                raise ParseError(f"'var' names unknown label {lab!r}")
    elif pending_subs or pending_charts:
        raise ParseError("subspaces or charts need an 'algebra' line")
    return out


def _fmt_rational(c):
    return str(Fraction(c))


def _fmt_vec(labels, v):
    return format_vector(labels, v).replace(" ", "")


def emit_lie(lf):
    lines = []
    alg = lf.algebra
    if alg is not None:
        labels = alg.labels
        lines.append(f"algebra {alg.name} dim {alg.dim}")
        lines.append("basis " + " ".join(labels))
        for (i, j) in sorted(alg.brackets):
            lines.append(f"[{labels[i]},{labels[j]}] = {format_vector(labels, alg.brackets[(i, j)])}")
        for sname, s in lf.subs.items():
            lines.append(f"sub {sname} = " + ", ".join(format_vector(labels, b) for b in s.basis))
        if alg.matrix is not None:
            m = len(alg.matrix[0])
            for lab, mat in zip(labels, alg.matrix):
                terms = []
                for i in range(m):
                    for j in range(m):
                        c = mat[i][j]
                        if c:
                            coef = "" if abs(c) == 1 else f"{abs(c)}*"
                            sign = "-" if c < 0 else ("+" if terms else "")
                            terms.append(f"{sign}{coef}E({i + 1},{j + 1})")
                lines.append(f"matrix {m} {lab}=" + "".join(terms))
        for lab, var in lf.variables.items():
            lines.append(f"var {lab} {var}")
        for cname, blocks in lf.charts.items():
            body = " | ".join(
                " ".join(f"{var}:{_fmt_vec(labels, v)}" for var, v in block) for block in blocks
            )
            lines.append(f"chart {cname} = {body}")
    for dname, d in lf.derivations.items():
        lines.append(f"derivation {dname} = {format_derivation(d)}")
    return "\n".join(lines) + "\n"
