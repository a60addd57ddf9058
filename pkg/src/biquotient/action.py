"""Freeness of the V x H action, action families on affine space and the 3-step normal pair."""
import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product

from . import linalg
from .algebra import LevelMap, Subspace, bracket, subalgebra_closure
from .bch import Ad_apply, star
from .derivation import Derivation, apply, flow
from .errors import InconsistencyError, InputError
from .ideals import determinant, unit_certificate
from .poly import Polynomial, PolyRing

DEFAULT_SAMPLES = 1000
SAMPLE_RANGE = 10


def isotropy_condition(algebra, v, h, g):
    """Ad(exp g)(v) cap h."""
    moved = Subspace.span(algebra.dim, [Ad_apply(algebra, g, w) for w in v.basis])
    return moved.intersect(h)


@dataclass
class FreenessCertificate:
    verdict: str  # Certified | Refuted | Unknown
    reason: str = ""
    degree: int | None = None
    minors: list = field(default_factory=list)
    multipliers: list = field(default_factory=list)
    witness_g: tuple | None = None
    witness_x: tuple | None = None
    samples: int = 0
    clean_samples: int = 0
    max_degree: int | None = None

    @property
    def flagged(self):
        """Unknown verdicts rest on sampling only."""
        return self.verdict == "Unknown"

    def to_dict(self):
        out = {"verdict": self.verdict, "reason": self.reason}
        if self.verdict == "Certified":
            out["degree"] = self.degree
            out["combination"] = [
                {"minor": str(m), "multiplier": str(a)}
                for m, a in zip(self.minors, self.multipliers) if a
            ]
        if self.verdict == "Refuted":
            out["witness_g"] = [str(c) for c in self.witness_g]
            out["witness_x"] = [str(c) for c in self.witness_x]
        if self.verdict == "Unknown":
            out["samples"] = self.samples
            out["clean_samples"] = self.clean_samples
            out["max_degree"] = self.max_degree
            out["flag"] = "sampling only"
        return out


def param_ring(algebra):
    return PolyRing(tuple(f"t{i + 1}" for i in range(algebra.dim)))


def param_matrix(algebra, v, h):
    """Columns Ad(exp sum t_i e_i)(v basis) then h basis, as polynomials in t; returned as rows."""
    ring = param_ring(algebra)
    t = tuple(ring.gens())
    cols = [Ad_apply(algebra, t, tuple(ring.const(a) for a in w)) for w in v.basis]
    cols += [tuple(ring.const(a) for a in w) for w in h.basis]
    cols = [tuple(c if isinstance(c, Polynomial) else ring.const(c) for c in col) for col in cols]
    return ring, linalg.transpose(cols) if cols else [[] for _ in range(algebra.dim)]


def quotient_minors(algebra, v, h):
    """Maximal minors of Ad(g)(v) read modulo h.

    Constant row and column operations turn the h columns into unit columns,
    which leaves the ideal of maximal minors of the full parameter matrix
    unchanged and shrinks the minors to size dim v.
    """
    ring = param_ring(algebra)
    t = tuple(ring.gens())
    free = h.complement_pivots()
    rows = []
    for w in v.basis:
        col = Ad_apply(algebra, t, tuple(ring.const(a) for a in w))
        col = [c if isinstance(c, Polynomial) else ring.const(c) for c in col]
        for b, p in zip(h.basis, h.pivots):
            f = col[p]
            if f:
                col = [a - f * c for a, c in zip(col, b)]
        rows.append([col[i] for i in free])
    p = v.dim
    minors = []
    for s in combinations(range(len(free)), p):
        d = determinant([[r[c] for c in s] for r in rows])
        minors.append(d if isinstance(d, Polynomial) else ring.const(d))
    return ring, minors


def _sample_point(rng, n):
    out = []
    for _ in range(n):
        q = rng.choice((1, 1, 2, 3))
        out.append(Fraction(rng.randint(-SAMPLE_RANGE * q, SAMPLE_RANGE * q), q))
    return tuple(out)


def _refute_at(algebra, v, h, g):
    """A nonzero x in v with Ad(g)x in h, or None."""
    cols = [Ad_apply(algebra, g, w) for w in v.basis] + [tuple(w) for w in h.basis]
    kernel = linalg.nullspace(linalg.transpose(cols), len(cols))
    for z in kernel:
        x = linalg.combine(z[: v.dim], v.basis, algebra.dim)
        if any(x) and h.contains(Ad_apply(algebra, g, x)):
            return x
    return None


def freeness_check(algebra, v, h, budget=None, seed=0, samples=DEFAULT_SAMPLES, grid=2):
    """Three-valued freeness verdict for the V x H action on G.

    Certified when the maximal minors generate the unit ideal with a
    combination of degree at most ``budget`` (default twice the step);
    Refuted when a concrete g with Ad(g)(v) cap h nonzero turns up on a small
    integer grid or among seeded samples; Unknown otherwise.
    """
    n = algebra.dim
    budget = 2 * algebra.step if budget is None else budget
    zero = (Fraction(0),) * n
    if v.intersect(h).dim:
        x = v.intersect(h).basis[0]
        return FreenessCertificate("Refuted", "v and h meet at the identity", witness_g=zero, witness_x=x)
    if v.dim == 0:
        return FreenessCertificate("Certified", "v is trivial", degree=0)
    ring, minors = quotient_minors(algebra, v, h)
    used = sorted({ring.index(x) for m in minors for x in m.variables()})
    if any(m.is_constant() and m for m in minors):
        cert = unit_certificate(minors, 0)
        return FreenessCertificate("Certified", "constant minor", degree=0, minors=minors, multipliers=cert[1])
    # integer grid over the parameters the minors depend on
    span = grid if len(used) <= 4 else 1
    if len(used) <= 8:
        for vals in product(range(-span, span + 1), repeat=len(used)):
            point = [Fraction(0)] * n
            for i, a in zip(used, vals):
                point[i] = Fraction(a)
            if any(m.evaluate(point) for m in minors):
                continue
            x = _refute_at(algebra, v, h, tuple(point))
            if x is not None:
                return FreenessCertificate("Refuted", "grid point", witness_g=tuple(point), witness_x=x)
    cert = unit_certificate(minors, budget)
    if cert is not None:
        degree, mult = cert
        reason = "constant minor" if degree == 0 else f"unit ideal at degree {degree}"
        return FreenessCertificate("Certified", reason, degree=degree, minors=minors, multipliers=mult)
    rng = random.Random(seed)
    clean = 0
    for _ in range(samples):
        g = _sample_point(rng, n)
        if any(m.evaluate(g) for m in minors):
            clean += 1
            continue
        x = _refute_at(algebra, v, h, g)
        if x is not None:
            return FreenessCertificate("Refuted", "sampled point", witness_g=g, witness_x=x)
        clean += 1
    return FreenessCertificate(
        "Unknown", "no certificate within budget", samples=samples, clean_samples=clean, max_degree=budget
    )


def verify_refutation(algebra, h, cert):
    g, x = cert.witness_g, cert.witness_x
    return any(x) and h.contains(Ad_apply(algebra, g, x))


# -- action families on affine space ------------------------------------------------

@dataclass
class ActionFamily:
    """exp(sum s_i delta_i) acting on affine space; ``coordinates`` are polynomials in (x, s)."""

    derivations: list
    params: tuple
    ring: object
    coordinates: list
    name: str = ""

    @classmethod
    def from_derivations(cls, derivations, name="", params=None):
        if not derivations:
            raise InputError("empty family")
        base = derivations[0].ring
        params = tuple(params or (f"s{i + 1}" for i in range(len(derivations))))
        ring = base.extend(list(params))
        coords = [flow(derivations, params, base.var(x), ring) for x in base.names]
        return cls(list(derivations), params, ring, coords, name)

    @property
    def space(self):
        return self.derivations[0].ring

    def act(self, s, x):
        point = dict(zip(self.space.names, x))
        point.update(zip(self.params, s))
        return tuple(c.evaluate(point) for c in self.coordinates)


def action_degree(family):
    """Largest degree in the group parameters over all coordinates."""
    return max((c.degree_in(list(family.params)) for c in family.coordinates), default=0)


def family_freeness(derivations, budget=6):
    """Infinitesimal freeness: the maximal minors of [delta_i(x_k)] generate the unit ideal.

    Isotropy groups of unipotent actions are connected, so this certifies
    freeness of the group action.
    """
    ring = derivations[0].ring
    rows = [[d.image(x) for x in ring.names] for d in derivations]
    m = len(rows)
    minors = []
    for s in combinations(range(ring.nvars), m):
        d = determinant([[r[c] for c in s] for r in rows])
        minors.append(d if isinstance(d, Polynomial) else ring.const(d))
    cert = unit_certificate(minors, budget)
    if cert is None:
        return FreenessCertificate("Unknown", "no certificate within budget", max_degree=budget)
    degree, mult = cert
    reason = "constant minor" if degree == 0 else f"unit ideal at degree {degree}"
    return FreenessCertificate("Certified", reason, degree=degree, minors=minors, multipliers=mult)


# -- 3-step normal pair ----------------------------------------------------------------

@dataclass
class NormalPair:
    xs: list
    zs: list
    v0: Subspace
    h0: Subspace
    phi: list  # pairs (vector of v0, image in h0) over a basis of v0
    n_basis: list  # pairs (v component, h component)
    family: ActionFamily

    @property
    def m(self):
        return len(self.xs)

    def phi_apply(self, x):
        coords = linalg.CoordinateSolver([a for a, _ in self.phi], len(x)).coordinates(x)
        return linalg.combine(coords, [b for _, b in self.phi], len(x))


def three_step_normal_pair(algebra, v, h):
    """The ideal n = {(Y0 + Y1, phi(Y0) + Y)} of v + h and the affine action of exp(n) on G."""
    n = algebra.dim
    series = algebra.central_series
    if algebra.step != 3:
        raise InputError(f"algebra is {algebra.step}-step, expected 3-step")
    if v.intersect(series[2]).dim:
        raise InputError("v meets g^(2)")
    if h.intersect(series[2]).dim:
        raise InputError("h meets g^(2)")
    pi0 = LevelMap(algebra, 0)
    if pi0.image(v) != pi0.image(h):
        raise InputError("v and h have different shadows in g/g^(1)")
    xs, zs = [], []
    acc = series[1]
    v_solver_rows = list(v.basis)
    for x in h.basis:
        if acc.contains(x):
            continue
        acc = acc + Subspace.span(n, [x])
        # w in v with w - x in g^(1)
        shadows = [pi0(b) for b in v_solver_rows]
        c = linalg.CoordinateSolver(shadows, pi0.target_dim).coordinates(pi0(x))
        w = linalg.combine(c, v_solver_rows, n)
        xs.append(tuple(x))
        zs.append(linalg.sub(w, x))
    gens_v = [linalg.add(x, z) for x, z in zip(xs, zs)]
    v0 = subalgebra_closure(algebra, Subspace.span(n, gens_v))
    h0 = subalgebra_closure(algebra, Subspace.span(n, xs))
    phi = _extend_isomorphism(algebra, gens_v, xs)
    v1 = _complement(v, v0, series[1])
    h_low = h.intersect(series[1])
    pairs = [(a, b) for a, b in phi]
    pairs += [(tuple(y), (Fraction(0),) * n) for y in v1]
    pairs += [((Fraction(0),) * n, tuple(y)) for y in h_low.basis]
    _check_ideal(algebra, v, h, pairs)
    family = _pair_family(algebra, pairs)
    return NormalPair(xs, zs, v0, h0, phi, pairs, family)


def _extend_isomorphism(algebra, gens, images):
    """Pairs (w, phi(w)) over a basis of the subalgebra generated by ``gens``; checks brackets."""
    n = algebra.dim
    pairs = list(zip(gens, images))
    basis = Subspace.span(n, [])
    chosen = []
    frontier = list(pairs)
    while frontier:
        nxt = []
        for a, b in frontier:
            if basis.contains(a):
                # consistency of the linear extension
                if chosen:
                    c = linalg.CoordinateSolver([p for p, _ in chosen], n).coordinates(a)
                    if linalg.combine(c, [q for _, q in chosen], n) != tuple(b):
                        raise InputError("generator map does not extend to a Lie isomorphism")
                elif any(b):
                    raise InputError("generator map does not extend to a Lie isomorphism")
                continue
            chosen.append((tuple(a), tuple(b)))
            basis = basis + Subspace.span(n, [a])
            for a2, b2 in list(chosen):
                nxt.append((bracket(algebra, a, a2), bracket(algebra, b, b2)))
        frontier = nxt
    return chosen


def _complement(v, v0, low):
    """Basis of a complement of v0 inside v, drawn from v cap low."""
    inner = v.intersect(low)
    acc = v0
    out = []
    for b in inner.basis:
        if not acc.contains(b):
            out.append(tuple(b))
            acc = acc + Subspace.span(v.n, [b])
    if acc != v:
        raise InputError("v is not v0 plus a piece of g^(1)")
    return out


def _check_ideal(algebra, v, h, pairs):
    n = algebra.dim
    space = Subspace.span(2 * n, [tuple(a) + tuple(b) for a, b in pairs])
    zero = (Fraction(0),) * n
    for a, b in pairs:
        for x in v.basis:
            if not space.contains(tuple(bracket(algebra, x, a)) + zero):
                raise InconsistencyError("n is not an ideal of v + h")
        for y in h.basis:
            if not space.contains(zero + tuple(bracket(algebra, y, b))):
                raise InconsistencyError("n is not an ideal of v + h")


def _pair_family(algebra, pairs):
    """g -> exp(a) g exp(-b) in exponential coordinates, one parameter per pair."""
    n = algebra.dim
    names = tuple(f"x{i + 1}" for i in range(n))
    space = PolyRing(names, tuple(algebra.depth(linalg.unit(n, i)) for i in range(n)))
    params = tuple(f"s{k + 1}" for k in range(len(pairs)))
    ring = space.extend(list(params))
    x = tuple(ring.var(a) for a in names)
    s = [ring.var(p) for p in params]
    a = tuple(sum((sk * p[0][i] for sk, p in zip(s, pairs) if p[0][i]), ring.zero()) for i in range(n))
    b = tuple(sum((-sk * p[1][i] for sk, p in zip(s, pairs) if p[1][i]), ring.zero()) for i in range(n))
    coords = list(star(algebra, a, star(algebra, x, b)))
    coords = [c if isinstance(c, Polynomial) else ring.const(c) for c in coords]
    derivs = []
    for k, p in enumerate(params):
        images = {}
        for name, c in zip(names, coords):
            d = c.diff(p).substitute({q: 0 for q in params}, ring).to_ring(space)
            images[name] = d
        derivs.append(Derivation(space, images))
    return ActionFamily(derivs, params, ring, coords, "normal pair")


def generic_cube_vanishes(family):
    """delta^3(x_j) = 0 for the generic member sum s_i delta_i."""
    ring = family.ring
    total = None
    for d, p in zip(family.derivations, family.params):
        part = Derivation(ring, {v: q.to_ring(ring) * ring.var(p) for v, q in d.images.items()})
        total = part if total is None else total + part
    for x in family.space.names:
        q = ring.var(x)
        for _ in range(3):
            q = apply(total, q)
        if q:
            return False
    return True
