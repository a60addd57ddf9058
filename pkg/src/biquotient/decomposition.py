"""Levi-Malcev bases and decompositions, and factorisation of G through them."""
from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .algebra import LevelMap, Subspace
from .bch import product, star
from .errors import InconsistencyError, InputError


@dataclass(frozen=True)
class LeviMalcevDecomposition:
    """g = parts[0] + ... + parts[-1], with ``witness`` a Levi-Malcev basis grouped by part."""

    algebra: object
    parts: tuple
    witness: tuple  # tuple of tuples of vectors, one per part
    names: tuple = None

    def part(self, name):
        return self.parts[self.names.index(name)]

    def basis(self):
        return [v for group in self.witness for v in group]


def is_levi_malcev_basis(algebra, basis):
    n = algebra.dim
    basis = [tuple(b) for b in basis]
    if len(basis) != n or linalg.rank(basis) != n:
        raise InputError("not a basis of the algebra")
    for term in algebra.central_series:
        inside = [b for b in basis if term.contains(b)]
        if Subspace.span(n, inside) != term:
            return False
    return True


def adapted_basis(algebra, layers):
    """Levi-Malcev basis adapted to ``layers``.

    ``layers`` is a list of subspaces whose sum is the part of g to be
    covered, innermost first; the last layer only fills up. At each level j the vectors of layer k are
    drawn from the echelon basis of ``layer_k cap g^(j)`` and kept when
    independent modulo g^(j+1) and everything chosen before. Returns one
    list of vectors per layer, or (None, j) with the first level where the
    layers' shadows overlap.
    """
    n = algebra.dim
    series = algebra.central_series
    chosen = [[] for _ in layers]
    for j in range(algebra.step):
        below = series[j + 1]
        acc = below
        for k, layer in enumerate(layers):
            before = layer.intersect(series[j])
            taken_here = 0
            for b in before.basis:
                if not acc.contains(b):
                    chosen[k].append(b)
                    acc = acc + Subspace.span(n, [b])
                    taken_here += 1
            # every graded piece of the layer must survive next to earlier layers
            shadow = Subspace.span(n, list(before.basis) + list(below.basis)).dim - below.dim
            if k < len(layers) - 1 and taken_here != shadow:
                return None, j
    return chosen, None


def levi_malcev_decomposition(algebra, v, h):
    """Decomposition g = v + s + h with a Levi-Malcev witness basis, or ('not_exists', level)."""
    if v.intersect(h).dim:
        raise InputError("v and h intersect: the action is not free at the identity")
    for j in range(algebra.step):
        pj = LevelMap(algebra, j)
        if pj.image(v).intersect(pj.image(h)).dim:
            return ("not_exists", j)
    whole = algebra.whole()
    chosen, level = adapted_basis(algebra, [v, h, whole])
    if chosen is None:
        return ("not_exists", level)
    vb, hb, sb = chosen
    s = Subspace.span(algebra.dim, sb)
    return LeviMalcevDecomposition(algebra, (v, s, h), (tuple(vb), tuple(sb), tuple(hb)), ("v", "s", "h"))


def h_slice(algebra, h):
    """Decomposition g = s + h; exp(s) is a global slice of the right H-action."""
    chosen, level = adapted_basis(algebra, [h, algebra.whole()])
    if chosen is None:
        raise InconsistencyError(f"no complement at level {level}")
    hb, sb = chosen
    sb = sorted(sb, key=lambda b: (algebra.level(b), _pivot(b)))
    s = Subspace.span(algebra.dim, sb)
    return LeviMalcevDecomposition(algebra, (s, h), (tuple(sb), tuple(hb)), ("s", "h"))


def _pivot(v):
    return next(i for i, a in enumerate(v) if a)


def complement_in(algebra, outer, inner, extra_layers=()):
    """Levi-Malcev compatible complement of ``inner`` inside ``outer``."""
    chosen, level = adapted_basis(algebra, [inner, *extra_layers, outer])
    if chosen is None:
        raise InputError(f"no compatible complement (level {level})")
    return chosen


class Factorizer:
    """Solve g = exp(a_1) ... exp(a_k) with a_i in the given parts.

    The parts' bases must concatenate to a Levi-Malcev basis; the solve
    fixes coordinates level by level down the central series, where each
    level is linear because brackets only affect deeper levels.
    """

    def __init__(self, algebra, groups):
        self.algebra = algebra
        self.groups = [tuple(g) for g in groups]
        basis = [b for g in self.groups for b in g]
        if not is_levi_malcev_basis(algebra, basis):
            raise InputError("parts do not form a Levi-Malcev basis")
        self.basis = basis
        self.solver = linalg.CoordinateSolver(basis, algebra.dim)
        self.levels = [algebra.level(b) for b in basis]
        self.offsets = []
        k = 0
        for g in self.groups:
            self.offsets.append((k, k + len(g)))
            k += len(g)

    def compose(self, coords):
        n = self.algebra.dim
        elements = []
        for (a, b), g in zip(self.offsets, self.groups):
            elements.append(linalg.combine(coords[a:b], g, n) if b > a else linalg.zero(n))
        return product(self.algebra, *elements)

    def solve(self, target):
        n = self.algebra.dim
        coords = [Fraction(0)] * len(self.basis)
        for j in range(self.algebra.step):
            residual = linalg.sub(target, self.compose(coords))
            r = self.solver.coordinates(residual)
            for i, lvl in enumerate(self.levels):
                if lvl < j and r[i]:
                    raise InconsistencyError("factorisation residual above the current level")
                if lvl == j:
                    coords[i] = coords[i] + r[i]
        if any(linalg.sub(target, self.compose(coords))):
            raise InconsistencyError("factorisation did not converge")
        return coords

    def components(self, target):
        coords = self.solve(target)
        n = self.algebra.dim
        return [
            linalg.combine(coords[a:b], g, n) if b > a else linalg.zero(n)
            for (a, b), g in zip(self.offsets, self.groups)
        ]


def factorize(algebra, decomposition, g):
    """Components (log vectors, one per part) whose product is exp(g)."""
    return Factorizer(algebra, decomposition.witness).components(g)
