"""Built-in algebras and worked examples as fixtures."""
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from . import linalg
from .algebra import LieAlgebra
from .derivation import Derivation, parse_derivation
from .errors import InputError
from .lieformat import LieFile, emit_lie, parse_lie
from .poly import PolyRing


def _e(m, i, j):
    return tuple(tuple(Fraction(int((r, s) == (i, j))) for s in range(m)) for r in range(m))


@lru_cache(maxsize=None)
def ut(n):
    """Strictly upper triangular n x n matrices, basis E(i,j) in lexicographic order."""
    if n < 2:
        raise InputError("ut(n) needs n >= 2")
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    sep = "" if n < 10 else "_"
    labels = tuple(f"E{i + 1}{sep}{j + 1}" for i, j in pairs)
    index = {p: k for k, p in enumerate(pairs)}
    dim = len(pairs)
    brackets = {}
    for a, (i, j) in enumerate(pairs):
        for b, (k, l) in enumerate(pairs):
            if b <= a:
                continue
            v = [Fraction(0)] * dim
            if j == k:
                v[index[(i, l)]] += 1
            if l == i:
                v[index[(k, j)]] -= 1
            if any(v):
                brackets[(a, b)] = tuple(v)
    matrix = tuple(_e(n, i, j) for i, j in pairs)
    return LieAlgebra(f"ut{n}", labels, brackets, matrix)


@lru_cache(maxsize=None)
def heisenberg(dim):
    if dim < 3 or dim % 2 == 0:
        raise InputError("Heisenberg algebras have odd dimension >= 3")
    k = (dim - 1) // 2
    if k == 1:
        labels = ("X", "Y", "Z")
    else:
        labels = tuple(f"X{i}" for i in range(1, k + 1)) + tuple(f"Y{i}" for i in range(1, k + 1)) + ("Z",)
    z = linalg.unit(dim, dim - 1)
    brackets = {(i, k + i): z for i in range(k)}
    m = k + 2
    matrix = tuple(_e(m, 0, i + 1) for i in range(k)) + tuple(_e(m, i + 1, m - 1) for i in range(k)) + (_e(m, 0, m - 1),)
    return LieAlgebra(f"heisenberg{dim}", labels, brackets, matrix)


@lru_cache(maxsize=None)
def abelian(n):
    labels = tuple(f"A{i}" for i in range(1, n + 1))
    matrix = tuple(_e(n + 1, 0, i + 1) for i in range(n))
    return LieAlgebra(f"abelian{n}", labels, {}, matrix)


WINKELMANN8 = """\
# 3-step algebra whose induced C^2-action on C^6 is Winkelmann's
algebra winkelmann8 dim 8
basis X1 X2 Y1 Y2 Y3 Y4 Z1 Z2
[X1,Y2] = Y3
[X2,Y1] = Y3 + Z2
[X2,Y2] = Y4
[X2,Z2] = Z1
sub v = X1 + Z1, X2 + Z2
sub h = X1, X2
derivation delta = y2*d/dy3 + 1*d/dz1
derivation delta_prime = y1*d/dy3 + y2*d/dy4 + (1 + y1)*d/dz2 + z2*d/dz1
"""

YOSHINO7 = """\
# 4-step algebra carrying the free non-proper C^2-action on C^5
algebra yoshino7 dim 7
basis X1 X2 Y1 Y2 Y3 Z1 Z2
[X1,Y1] = Y2
[X1,Y2] = Y3
[X1,Y3] = Z2
[X2,Y1] = Z1
sub v = X1 + Z1, X2 + Z2
sub h = X1, X2
# chart identification: z1 is the coordinate along Z2 and vice versa
var Z1 z2
var Z2 z1
derivation delta1 = 1*d/dz1 + y1*d/dz2
derivation delta2 = y1*d/dy2 + y2*d/dy3 + y3*d/dz1 + 1*d/dz2
derivation quotient = -y1^2*d/dy2 - y1*y2*d/dy3 + (1 - y1*y3)*d/dz1
"""

UPPER4 = """\
# unipotent upper triangular 4x4 matrices with a one-dimensional V
algebra upper4 dim 6
basis E12 E13 E14 E23 E24 E34
[E12,E23] = E13
[E12,E24] = E14
[E13,E34] = E14
[E23,E34] = E24
sub h = E23, E24
sub v = E14 + E23
sub N = E13, E14, E23, E24
matrix 4 E12=E(1,2) E13=E(1,3) E14=E(1,4) E23=E(2,3) E24=E(2,4) E34=E(3,4)
var E12 y1
var E34 y2
var E13 y3
var E14 z
chart twoblock = y1:E12 y2:E34 | y3:E13 z:E14
derivation delta = -y1*d/dy3 + (1 - y1*y2)*d/dz
"""

TWOSTEP5 = """\
# two-step algebra with a free one-dimensional pair and no Levi-Malcev slice
algebra twostep5 dim 5
basis X U Y Z W
[X,Y] = Z
[U,Y] = W
sub h = X
sub v = X + W
"""
TWOFILIFORM7 = """\
# two filiform chains through Y; the one-dimensional pair needs the quotient route
algebra twofiliform7 dim 7
basis X0 U Y W T Z1 Z0
[X0,Y] = W
[X0,W] = Z1
[U,Y] = T
[U,T] = Z0
sub h = X0, U
sub v = X0 + Z0
"""
HEIS5 = """\
# 5-dimensional Heisenberg algebra with a one-dimensional free pair
algebra heis5 dim 5
basis X1 X2 Y1 Y2 Z
[X1,Y1] = Z
[X2,Y2] = Z
sub v = X1 + Z
sub h = Y1
matrix 4 X1=E(1,2) X2=E(1,3) Y1=E(2,4) Y2=E(3,4) Z=E(1,4)
"""

TRANSLATION = """\
derivation translation = 1*d/dx
"""


@dataclass
class CatalogEntry:
    name: str
    lie: LieFile
    golden: dict = field(default_factory=dict)

    @property
    def algebra(self):
        return self.lie.algebra

    @property
    def v(self):
        return self.lie.subs.get("v")

    @property
    def h(self):
        return self.lie.subs.get("h")

    def text(self):
        return emit_lie(self.lie)


def _entry(name, text, golden):
    return CatalogEntry(name, parse_lie(text), golden)


GOLDEN = {
    "winkelmann8": {
        "central_series": ([8, 4, 1, 0], "derived"),
        "step": (3, "reference"),
        "center": (["Y3", "Y4", "Z1"], "derived"),
        "h_slice": (["Y1", "Y2", "Y3", "Y4", "Z1", "Z2"], "reference"),
        "induced": (["delta", "delta_prime"], "reference"),
        "slice_search": ("none up to degree 6", "reference"),
        "freeness": ("never refuted", "reference"),
        "properness": ("none found", "reference"),
    },
    "yoshino7": {
        "central_series": ([7, 4, 2, 1, 0], "derived"),
        "step": (4, "reference"),
        "h_slice": (["Y1", "Y2", "Y3", "Z1", "Z2"], "reference"),
        "induced": (["delta2", "delta1"], "reference"),
        "depth": ({"y1": 1, "y2": 3, "y3": 5, "z1": 7}, "reference"),
        "freeness": ("never refuted", "reference"),
        "properness": ("witness found", "derived"),
    },
    "upper4": {
        "induced": (["delta"], "reference"),
        "slice_function": ("z - y2*y3", "reference"),
        "dim1_route": ("b", "reference"),
        "family_split": ("E34", "reference"),
    },
    "heis5": {
        "slice_dimension": (3, "derived"),
        "dim1_route": ("levi-malcev", "derived"),
    },
    "twofiliform7": {
        "dim1_route": ("c", "derived"),
    },
    "twostep5": {
        "dim1_route": ("a", "derived"),
        "slice_dimension": (3, "derived"),
    },
}


@lru_cache(maxsize=None)
def _fixtures():
    return {
        "winkelmann8": WINKELMANN8,
        "yoshino7": YOSHINO7,
        "upper4": UPPER4,
        "heis5": HEIS5,
        "twostep5": TWOSTEP5,
        "twofiliform7": TWOFILIFORM7,
    }


def entry(name):
    """Catalog entry by name. Also accepts heisenberg<d>, abelian<n>, ut<n>."""
    fixtures = _fixtures()
    if name in fixtures:
        return _entry(name, fixtures[name], GOLDEN.get(name, {}))
    for prefix, build in (("heisenberg", heisenberg), ("abelian", abelian), ("ut", ut)):
        if name.startswith(prefix) and name[len(prefix):].isdigit():
            return CatalogEntry(name, LieFile(algebra=build(int(name[len(prefix):]))), {})
    raise InputError(f"unknown catalog entry {name!r}")


def catalog():
    names = ["heisenberg3", "heisenberg5", "abelian3", "ut3", "ut4", "ut5", "ut6"]
    names += list(_fixtures())
    return {n: entry(n) for n in names}


def pair_names():
    """Catalog entries that carry a (v, h) pair."""
    return list(_fixtures())


def family_ring(derivations):
    """A common ring for a family, ordered so every member is triangular when possible."""
    names = []
    for d in derivations:
        for n in d.ring.names:
            if n not in names:
                names.append(n)
    deps = {n: set() for n in names}
    for d in derivations:
        for var, img in d.images.items():
            deps[var].update(u for u in img.variables() if u != var)
    order = []
    remaining = list(names)
    while remaining:
        for var in remaining:
            if deps[var] <= set(order):
                order.append(var)
                remaining.remove(var)
                break
        else:
            order.extend(remaining)
            break
    ring = PolyRing(tuple(order))
    return ring, [d.to_ring(ring) for d in derivations]


ACTIONS = {
    "winkelmann8-action": ("winkelmann8", ["delta", "delta_prime"]),
    "yoshino7-action": ("yoshino7", ["delta1", "delta2"]),
    "upper4-action": ("upper4", ["delta"]),
    "translation": (None, ["translation"]),
}

NAMED_DERIVATIONS = {
    "yoshino-quotient": ("yoshino7", "quotient"),
}


def action(name):
    """A derivation family by catalog name, in a common triangular ring."""
    if name not in ACTIONS:
        raise InputError(f"unknown action {name!r}")
    src, names = ACTIONS[name]
    lf = entry(src).lie if src else parse_lie(TRANSLATION)
    return family_ring([lf.derivations[n] for n in names])


def named_derivation(name):
    if name not in NAMED_DERIVATIONS:
        raise InputError(f"unknown derivation {name!r}")
    src, dname = NAMED_DERIVATIONS[name]
    return entry(src).lie.derivations[dname]
