"""Reductions of the V x H problem and slice constructions for one-dimensional V."""
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product

from . import linalg
from .action import freeness_check
from .algebra import (
    LevelMap,
    Subspace,
    bracket,
    bracket_subspaces,
    ideal_closure,
    is_commutative,
    quotient_algebra,
    restrict_algebra,
)
from .bch import star
from .decomposition import adapted_basis, levi_malcev_decomposition
from .errors import InconsistencyError, InputError
from .induced import Chart, induced_action
from .slices import (
    LevelSetSlice,
    LinearSlice,
    SliceFunctions,
    WholeSlice,
    degree_one_slice,
    roundtrip,
    slice_function_search,
    verify_slice_functions,
)

COMPOSE_SAMPLES = 200


def _neg(x):
    return tuple(-a for a in x)


@dataclass
class ReducedProblem:
    algebra: object
    v: Subspace
    h: Subspace
    provenance: list = field(default_factory=list)

    def describe(self):
        return {
            "algebra": self.algebra.name,
            "dim": self.algebra.dim,
            "v_dim": self.v.dim,
            "h_dim": self.h.dim,
            "steps": [
                {k: val for k, val in step.items() if k not in ("projection", "solver")}
                for step in self.provenance
            ],
        }


def _labels(algebra, vectors):
    from .algebra import format_vector

    return [format_vector(algebra.labels, b) for b in vectors]


def reduce_by_center(algebra, v, h):
    """Quotient by (v cap Z) + (h cap Z) until both central intersections vanish."""
    steps = []
    for _ in range(algebra.dim + 1):
        z = algebra.center
        ideal = v.intersect(z) + h.intersect(z)
        if ideal.dim == 0:
            return ReducedProblem(algebra, v, h, steps)
        quotient, proj = quotient_algebra(algebra, ideal, name=f"{algebra.name}/center")
        steps.append({
            "step": "center",
            "ideal": _labels(algebra, ideal.basis),
            "projection": proj,
        })
        algebra, v, h = quotient, proj.image(v), proj.image(h)
    raise InconsistencyError("central reduction did not terminate")


def reduce_common_shadow(algebra, v, h):
    """The (g1, v0, h0) problem with n = preimage of the common shadow in g/g^(1)."""
    n_dim = algebra.dim
    low = algebra.central_series[1] if algebra.step > 0 else Subspace.zero(n_dim)
    n = (h + low).intersect(v + low)
    v0, h0 = n.intersect(v), n.intersect(h)
    g1 = n
    for i in range(n_dim):
        e = linalg.unit(n_dim, i)
        if g1.contains(e):
            continue
        bigger = g1 + Subspace.span(n_dim, [e])
        if bigger.intersect(h) == h0 and bigger.intersect(v) == v0:
            g1 = bigger
    # complement of g1 drawn from v and h first
    complement = []
    acc = g1
    for b in list(v.basis) + list(h.basis) + [linalg.unit(n_dim, i) for i in range(n_dim)]:
        if not acc.contains(b):
            complement.append(tuple(b))
            acc = acc + Subspace.span(n_dim, [b])
    sub_algebra, solver = restrict_algebra(algebra, g1, name=f"{algebra.name}/g1")
    to_sub = lambda s: Subspace.span(g1.dim, [solver.coordinates(b) for b in s.basis])
    step = {
        "step": "common shadow",
        "n": _labels(algebra, n.basis),
        "g1": _labels(algebra, g1.basis),
        "complement": _labels(algebra, complement),
        "solver": solver,
    }
    return ReducedProblem(sub_algebra, to_sub(v0), to_sub(h0), [step])


def family_split(algebra, v, h, max_terms=2):
    """Y0 normalising v (or h) with g = <Y0> + g1 and v, h inside the ideal g1 >= g^(1).

    Candidates are standard basis vectors, then combinations of up to
    ``max_terms`` of them with coefficients +-1. Returns None when nothing is found.
    """
    n = algebra.dim
    low = algebra.central_series[1] if algebra.step > 0 else Subspace.zero(n)
    base = v + h + low
    if base.dim >= n:
        return None
    for y0 in _candidates(n, max_terms):
        if base.contains(y0):
            continue
        normalises = None
        if all(v.contains(bracket(algebra, y0, b)) for b in v.basis):
            normalises = "v"
        elif all(h.contains(bracket(algebra, y0, b)) for b in h.basis):
            normalises = "h"
        if normalises is None:
            continue
        g1 = base
        for i in range(n):
            if g1.dim == n - 1:
                break
            e = linalg.unit(n, i)
            bigger = g1 + Subspace.span(n, [e])
            if not bigger.contains(y0) and bigger.dim > g1.dim:
                g1 = bigger
        if g1.dim != n - 1:
            continue
        sub_algebra, solver = restrict_algebra(algebra, g1, name=f"{algebra.name}/split")
        to_sub = lambda s: Subspace.span(g1.dim, [solver.coordinates(b) for b in s.basis])
        step = {
            "step": "family split",
            "y0": _labels(algebra, [y0])[0],
            "normalises": normalises,
            "g1": _labels(algebra, g1.basis),
            "equation": _hyperplane(algebra, g1),
            "product": "double coset space = (reduced double coset space) x C",
        }
        return y0, g1, ReducedProblem(sub_algebra, to_sub(v), to_sub(h), [step])
    return None


def _hyperplane(algebra, g1):
    """The linear form vanishing on g1, written in lower-case label coordinates."""
    normal = linalg.nullspace([list(b) for b in g1.basis], algebra.dim)[0]
    terms = []
    for lab, c in zip(algebra.labels, normal):
        if c:
            terms.append(lab.lower() if c == 1 else f"{c}*{lab.lower()}")
    return " + ".join(terms) + " = 0"


def _candidates(n, max_terms):
    for i in range(n):
        yield linalg.unit(n, i)
    for k in range(2, max_terms + 1):
        for idx in combinations(range(n), k):
            for signs in product((1, -1), repeat=k - 1):
                vec = [Fraction(0)] * n
                vec[idx[0]] = Fraction(1)
                for i, s in zip(idx[1:], signs):
                    vec[i] = Fraction(s)
                yield tuple(vec)


# -- composing slices ----------------------------------------------------------------

@dataclass
class CompositeSlice:
    """S cap S_N N: a slice downstairs on g/N combined with a slice of (V cap N) x (H cap N)."""

    algebra: object
    ideal: Subspace
    projection: object
    upstairs: object
    inner: object
    v: Subspace
    h: Subspace
    kind: str = field(default="Composite", init=False)

    def __post_init__(self):
        proj = self.projection
        self.v_lift = _lift_basis(self.v, self.ideal)
        self.h_lift = _lift_basis(self.h, self.ideal)
        self.v_solver = linalg.CoordinateSolver([proj(b) for b in self.v_lift], len(proj.keep))
        self.h_solver = linalg.CoordinateSolver([proj(b) for b in self.h_lift], len(proj.keep))

    def _lift(self, solver, basis, y):
        c = solver.coordinates(y) if basis else []
        return linalg.combine(c, basis, self.algebra.dim) if basis else (Fraction(0),) * self.algebra.dim

    def decompose(self, g):
        A = self.algebra
        a_bar, _, b_bar = self.upstairs.decompose(self.projection(g))
        a1 = self._lift(self.v_solver, self.v_lift, a_bar)
        b1 = self._lift(self.h_solver, self.h_lift, b_bar)
        rest = star(A, _neg(a1), star(A, g, _neg(b1)))
        a2, s, b2 = self.inner.decompose(rest)
        return star(A, a1, a2), s, star(A, b2, b1)

    def contains(self, g):
        return self.inner.contains(g) and self.upstairs.contains(self.projection(g))

    def describe(self):
        return {
            "kind": self.kind,
            "ideal_dim": self.ideal.dim,
            "upstairs": self.upstairs.describe(),
            "inner": self.inner.describe(),
        }


def _lift_basis(s, ideal):
    """Vectors of s completing s cap ideal to s."""
    acc = s.intersect(ideal)
    out = []
    for b in s.basis:
        if not acc.contains(b):
            out.append(tuple(b))
            acc = acc + Subspace.span(s.n, [b])
    return out


def compose_slices(algebra, ideal, upstairs, inner, v, h, projection=None, samples=COMPOSE_SAMPLES, seed=0):
    """Combine a slice on g/N with a slice of the (V cap N) x (H cap N) action; verified by roundtrip."""
    if projection is None:
        _, projection = quotient_algebra(algebra, ideal)
    out = CompositeSlice(algebra, ideal, projection, upstairs, inner, v, h)
    if samples:
        roundtrip(out, v, h, samples=samples, seed=seed)
    return out


# -- one-dimensional V -------------------------------------------------------------------

@dataclass
class Unsupported:
    reason: str
    fingerprint: dict = field(default_factory=dict)

    kind = "Unsupported"

    def describe(self):
        return {"kind": self.kind, "reason": self.reason, "fingerprint": self.fingerprint}


@dataclass
class Dim1Result:
    route: str
    slice: object
    functions: list = field(default_factory=list)

    def describe(self):
        out = {"route": self.route}
        out.update(self.slice.describe())
        return out


def normal_form(algebra, v, h):
    """(X0, Z0) with v = <X0 + Z0>, X0 in h and Z0 in g^(l-1); InputError otherwise."""
    if v.dim != 1:
        raise InputError(f"v has dimension {v.dim}, expected 1")
    top = algebra.central_series[algebra.step - 1]
    w = v.basis[0]
    if h.dim == 0:
        raise InputError("normal form needs a nontrivial h")
    cols = linalg.transpose(list(h.basis) + list(top.basis))
    c = linalg.solve(cols, list(w))
    if c is None:
        raise InputError("v is not of the form <X0 + Z0> with X0 in h and Z0 in g^(l-1)")
    x0 = linalg.combine(c[: h.dim], h.basis, algebra.dim)
    z0 = linalg.sub(w, x0)
    if not any(x0):
        raise InputError("v lies in g^(l-1)")
    if h.intersect(top).dim:
        raise InputError("h meets g^(l-1)")
    return x0, z0


def ad_rank_level(algebra, x):
    """Largest r with ad(x)(g) inside g^(r)."""
    image = bracket_subspaces(algebra, Subspace.span(algebra.dim, [x]), algebra.whole())
    r = 0
    for j, layer in enumerate(algebra.central_series):
        if layer.contains_subspace(image):
            r = j
    return r


def dim1_pipeline(algebra, v, h, variables=None, ceiling=6, _depth=0):
    """Slice for a free V x H action with dim V = 1, or Unsupported.

    A Levi-Malcev decomposition is used when one exists. Otherwise the pair
    must be in normal form and one of three routes applies: an
    ad(X0)-invariant linear slice, a slice function on a normal commutative
    subgroup, or (for 3-step algebras) a quotient by ad(X0)(g^(1)).
    """
    if v.dim != 1:
        raise InputError(f"v has dimension {v.dim}, expected 1")
    dec = levi_malcev_decomposition(algebra, v, h)
    if not isinstance(dec, tuple):
        return Dim1Result("levi-malcev", LinearSlice(algebra, dec))
    x0, z0 = normal_form(algebra, v, h)
    l = algebra.step
    r = ad_rank_level(algebra, x0)
    if r >= l - 1 or h.dim == 1:
        res = _route_a(algebra, v, h, x0, z0, variables)
        if res is not None:
            return res
    closure = ideal_closure(algebra, v)
    if is_commutative(algebra, closure):
        res = _route_b(algebra, v, h, closure, variables, ceiling)
        if res is not None:
            return res
    if l == 3 and _depth < algebra.dim:
        return _route_c(algebra, v, h, x0, z0, variables, ceiling, _depth)
    return Unsupported("no applicable construction", _fingerprint(algebra, v, h, x0, z0))


def _names_for(algebra, vectors, variables, prefix):
    variables = variables or {}
    out = []
    for k, vec in enumerate(vectors):
        nz = [i for i, a in enumerate(vec) if a]
        if len(nz) == 1 and vec[nz[0]] == 1:
            lab = algebra.labels[nz[0]]
            out.append(variables.get(lab, lab.lower()))
        else:
            out.append(f"{prefix}{k + 1}")
    return out


def _route_a(algebra, v, h, x0, z0, variables):
    n = algebra.dim
    image = bracket_subspaces(algebra, Subspace.span(n, [x0]), algebra.whole())
    zline = Subspace.span(n, [z0])
    if image.intersect(zline + h).dim:
        return None
    chosen, _ = adapted_basis(algebra, [zline, image, h, algebra.whole()])
    if chosen is None:
        return None
    s0 = chosen[1] + chosen[3]
    vectors = s0 + chosen[0]
    names = _names_for(algebra, vectors, variables, "s")
    if len(set(names)) != len(names):
        names = [f"s{k + 1}" for k in range(len(vectors))]
    chart = Chart(algebra, h, [list(zip(names, vectors))])
    _, derivs = induced_action(algebra, v, h, chart=chart)
    f = chart.ring.var(names[-1])
    if not verify_slice_functions(derivs, [f]):
        return None
    sl = LevelSetSlice(algebra, list(v.basis), chart, derivs, [f])
    return Dim1Result("a", sl, [f])


def _route_b(algebra, v, h, normal, variables, ceiling):
    n = algebra.dim
    if not normal.contains_subspace(h):
        inner_h = h.intersect(normal)
        inner = _route_b(algebra, v, inner_h, normal, variables, ceiling)
        if inner is None:
            return None
        quotient, proj = quotient_algebra(algebra, normal)
        up = levi_malcev_decomposition(quotient, Subspace.zero(quotient.dim), proj.image(h))
        if isinstance(up, tuple):
            return None
        sl = compose_slices(algebra, normal, LinearSlice(quotient, up), inner.slice, v, h, proj)
        return Dim1Result("b", sl, inner.functions)
    chosen0, _ = adapted_basis(algebra, [normal, algebra.whole()])
    chosen1, _ = adapted_basis(algebra, [h, normal])
    if chosen0 is None or chosen1 is None:
        return None
    s0, s1 = chosen0[1], chosen1[1]
    names = _names_for(algebra, s0 + s1, variables, "y")
    if len(set(names)) != len(names):
        names = [f"y{k + 1}" for k in range(len(names))]
    blocks = [list(zip(names[: len(s0)], s0)), list(zip(names[len(s0):], s1))]
    chart = Chart(algebra, h, blocks)
    _, derivs = induced_action(algebra, v, h, chart=chart)
    res = degree_one_slice(derivs, ceiling)
    if not isinstance(res, SliceFunctions):
        res = slice_function_search(derivs, ceiling)
    if not isinstance(res, SliceFunctions):
        return None
    sl = LevelSetSlice(algebra, list(v.basis), chart, derivs, res.functions)
    return Dim1Result("b", sl, res.functions)


def _route_c(algebra, v, h, x0, z0, variables, ceiling, depth):
    n = algebra.dim
    low = algebra.central_series[1]
    s2 = bracket_subspaces(algebra, Subspace.span(n, [x0]), low)
    if s2.contains(z0):
        raise InputError("Z0 lies in ad(X0)(g^(1)); the action is not free")
    if not algebra.center.contains_subspace(s2):
        return Unsupported("ad(X0)(g^(1)) is not central", _fingerprint(algebra, v, h, x0, z0))
    if s2.dim == 0:
        return Unsupported("ad(X0)(g^(1)) vanishes", _fingerprint(algebra, v, h, x0, z0))
    quotient, proj = quotient_algebra(algebra, s2, name=f"{algebra.name}/s2")
    v_bar, h_bar = proj.image(v), proj.image(h)
    if freeness_check(quotient, v_bar, h_bar).verdict == "Refuted":
        raise InconsistencyError("quotient action by ad(X0)(g^(1)) is not free")
    sub = dim1_pipeline(quotient, v_bar, h_bar, variables, ceiling, depth + 1)
    if isinstance(sub, Unsupported):
        return sub
    sl = compose_slices(algebra, s2, sub.slice, WholeSlice(algebra), v, h, proj)
    return Dim1Result("c", sl, [])


def _fingerprint(algebra, v, h, x0, z0):
    """The three properties of the smallest case the constructions above do not cover."""
    n = algebra.dim
    l = algebra.step
    r = ad_rank_level(algebra, x0)
    pi0 = LevelMap(algebra, 0)
    shadow = pi0.image(h)
    third = True
    for i in range(n):
        y = linalg.unit(n, i)
        if shadow.contains(pi0(y)):
            continue
        normalises = all(h.contains(bracket(algebra, y, b)) for b in h.basis)
        if normalises or not any(bracket(algebra, y, x0)):
            third = False
            break
    return {
        "g3_nonzero": algebra.step > 3,
        "ad_x0_not_in_top": r < l - 1,
        "normal_form": True,
        "no_normalising_direction": third,
    }
