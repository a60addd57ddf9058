"""Charts on G/H and the induced V-action as a family of derivations."""
from fractions import Fraction

from . import linalg
from .algebra import Subspace
from .bch import star
from .decomposition import Factorizer, adapted_basis, h_slice
from .derivation import Derivation
from .errors import InputError
from .poly import PolyRing

T = "_t"


class Chart:
    """Coordinates on G/H: y -> exp(B_1(y)) ... exp(B_k(y)) H for blocks B_i of a complement of h.

    Variables are ordered by depth (position in the central series), then by
    block order; that order makes induced derivations triangular.
    """

    def __init__(self, algebra, h, blocks):
        self.algebra = algebra
        self.h = h
        self.blocks = [[(name, tuple(v)) for name, v in block] for block in blocks]
        chosen, _ = adapted_basis(algebra, [h])
        if chosen is None:
            raise InputError("h has no Levi-Malcev basis")
        self.h_basis = tuple(chosen[0])
        groups = [tuple(v for _, v in block) for block in self.blocks] + [self.h_basis]
        self.factorizer = Factorizer(algebra, groups)
        self.block_names = [name for block in self.blocks for name, _ in block]
        if len(set(self.block_names)) != len(self.block_names):
            raise InputError("chart variable names must be unique")
        vectors = [v for block in self.blocks for _, v in block]
        depths = [algebra.depth(v) for v in vectors]
        order = sorted(range(len(vectors)), key=lambda i: (depths[i], i))
        self.ring = PolyRing(
            tuple(self.block_names[i] for i in order), tuple(depths[i] for i in order)
        )
        self.vectors = dict(zip(self.block_names, vectors))

    @classmethod
    def from_h_slice(cls, algebra, h, variables=None):
        variables = variables or {}
        dec = h_slice(algebra, h)
        block = []
        for k, vec in enumerate(dec.witness[0]):
            nz = [i for i, a in enumerate(vec) if a]
            if len(nz) == 1 and vec[nz[0]] == 1:
                lab = algebra.labels[nz[0]]
                name = variables.get(lab, lab.lower())
            else:
                name = f"s{k + 1}"
            block.append((name, vec))
        return cls(algebra, h, [block])

    @property
    def dim(self):
        return len(self.block_names)

    def point(self, y):
        """Log coordinates of the chart point; ``y`` maps names to numbers or polynomials."""
        coords = [y[name] for name in self.block_names] + [Fraction(0)] * len(self.h_basis)
        return self.factorizer.compose(coords)

    def coordinates(self, g):
        """Chart coordinates of the coset exp(g) H."""
        c = self.factorizer.solve(g)
        return dict(zip(self.block_names, c[: self.dim]))

    def decompose(self, g):
        """(chart coordinates, h-component log) with exp(g) = point(y) exp(h)."""
        comps = self.factorizer.components(g)
        c = self.factorizer.solve(g)
        return dict(zip(self.block_names, c[: self.dim])), comps[-1]

    def act(self, w, y):
        """Chart coordinates of exp(w) . point(y) H."""
        return self.coordinates(star(self.algebra, w, self.point(y)))


def induced_action(algebra, v, h, chart=None, variables=None):
    """Chart and one derivation per canonical basis vector of v.

    delta(f)(p) = d/dt f(exp(tW) . p) at t = 0, computed exactly by running
    BCH and the factorisation over polynomial coordinates.
    """
    chart = chart or Chart.from_h_slice(algebra, h, variables)
    ring = chart.ring
    derivations = []
    for w in v.basis:
        _, flows = symbolic_action(chart, w)
        images = {}
        for name in ring.names:
            p = flows[name]
            images[name] = _t_coefficient(p, ring)
        derivations.append(Derivation(ring, images))
    return chart, derivations


def symbolic_action(chart, w):
    """Coordinates of exp(t w) . point(y) as polynomials in (chart vars, t)."""
    ring = chart.ring.extend([T])
    y = {name: ring.var(name) for name in chart.block_names}
    t = ring.var(T)
    tw = tuple(t * a if a else ring.zero() for a in w)
    return ring, chart.coordinates(star(chart.algebra, tw, chart.point(y)))


def _t_coefficient(p, ring):
    c = p.coefficient(T, 1)
    return c.to_ring(ring) if not c.degree_in(T) > 0 else c


def chart_from_blocks(algebra, h, blocks):
    return Chart(algebra, h, blocks)
