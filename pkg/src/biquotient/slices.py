"""Slice functions for commuting locally nilpotent families and slice descriptions."""
from dataclasses import dataclass, field
from fractions import Fraction

from . import linalg
from .bch import star
from .derivation import Derivation, apply, commute, flow
from .errors import InconsistencyError, InputError
from .ideals import determinant, monomials, solve_sparse, unit_certificate
from .poly import Polynomial

DEFAULT_CEILING = 6


@dataclass
class SliceFunctions:
    """Functions f_j with delta_i(f_j) = [i == j]; their common zero set is a slice."""

    functions: list
    degree: int
    method: str


@dataclass
class NoneFound:
    """No slice functions of degree at most ``ceiling``."""

    ceiling: int
    failing_index: int
    method: str = "degree search"


def check_commuting(derivations):
    for i in range(len(derivations)):
        for j in range(i + 1, len(derivations)):
            if not commute(derivations[i], derivations[j]):
                raise InputError(f"derivations {i} and {j} do not commute")


def _common_ring(derivations):
    ring = derivations[0].ring
    if any(d.ring != ring for d in derivations):
        raise InputError("derivations must share a ring")
    return ring


def verify_slice_functions(derivations, functions):
    """Exact checks: delta_i(f_j) = [i == j], f(r(x)) = 0 and delta_i(r(x)) = 0."""
    for i, d in enumerate(derivations):
        for j, f in enumerate(functions):
            if apply(d, f) != (1 if i == j else 0):
                return False
    ring = derivations[0].ring
    r = retraction(derivations, functions)
    sub = dict(zip(ring.names, r))
    for f in functions:
        if f.substitute(sub, ring):
            return False
    for d in derivations:
        if any(apply(d, p) for p in r):
            return False
    return True


def retraction(derivations, functions):
    """Coordinates of r(x) = exp(-sum f_i(x) delta_i)(x)."""
    ring = derivations[0].ring
    params = [f"_s{i}" for i in range(len(derivations))]
    big = ring.extend(params)
    sub = {s: -f for s, f in zip(params, functions)}
    out = []
    for name in ring.names:
        p = flow(derivations, params, ring.var(name), big)
        out.append(p.substitute({**{n: ring.var(n) for n in ring.names}, **sub}, ring))
    return out


def slice_function_search(derivations, ceiling=DEFAULT_CEILING, start=1):
    """Search f_j of total degree <= b, b = start..ceiling, with no constant term.

    One sparse exact linear system per target function. Returns
    SliceFunctions or NoneFound.
    """
    if not derivations:
        return SliceFunctions([], 0, "degree search")
    ring = _common_ring(derivations)
    check_commuting(derivations)
    m = len(derivations)
    degree = start
    found = [None] * m
    fail = 0
    for b in range(start, ceiling + 1):
        degree = b
        monos = monomials(ring.nvars, b, 1)
        images = [[_apply_monomial(d, mono) for mono in monos] for d in derivations]
        ok = True
        for j in range(m):
            f = _solve_target(ring, monos, images, j)
            if f is None:
                ok = False
                fail = j
                break
            found[j] = f
        if ok:
            if not verify_slice_functions(derivations, found):
                raise InconsistencyError("slice functions failed verification")
            return SliceFunctions(found, degree, "degree search")
    return NoneFound(ceiling, fail)


def _apply_monomial(d, mono):
    p = Polynomial(d.ring, {mono: Fraction(1)})
    return apply(d, p)


def _solve_target(ring, monos, images, j):
    eqs = {}
    rhs = {}
    for i, row in enumerate(images):
        for col, img in enumerate(row):
            for e, c in img.terms.items():
                eqs.setdefault((i, e), {})[col] = c
        key = (i, (0,) * ring.nvars)
        eqs.setdefault(key, {})
        rhs[key] = 1 if i == j else 0
    keys = list(eqs)
    sol = solve_sparse([eqs[k] for k in keys], [rhs.get(k, 0) for k in keys])
    if sol is None:
        return None
    return Polynomial(ring, {monos[c]: v for c, v in sol.items() if v})


# -- degree-one families ---------------------------------------------------------

def action_degree_one(derivations):
    """delta_i(delta_j(x)) = 0 for every generator x and all i, j."""
    ring = derivations[0].ring
    return all(
        not apply(a, b.image(v)) for a in derivations for b in derivations for v in ring.names
    )


def degree_one_slice(derivations, ceiling=DEFAULT_CEILING, certificate_degree=6):
    """Slice functions for a commuting family whose flows are affine in the parameters.

    Translation coordinates are peeled off first; the remaining family is
    handled on the fibre of the invariant coordinates using a polynomial
    right inverse built from the maximal minors. Falls back to the degree
    search.
    """
    if not derivations:
        return SliceFunctions([], 0, "empty")
    _common_ring(derivations)
    check_commuting(derivations)
    if not action_degree_one(derivations):
        raise InputError("family does not act with degree one")
    funcs = _eliminate(derivations, ceiling, certificate_degree)
    if isinstance(funcs, NoneFound):
        return funcs
    if not verify_slice_functions(derivations, funcs):
        raise InconsistencyError("slice functions failed verification")
    degree = max((f.total_degree() for f in funcs), default=0)
    return SliceFunctions(funcs, degree, "degree one")


def _eliminate(derivations, ceiling, cert_degree):
    ring = derivations[0].ring
    m = len(derivations)
    if m == 0:
        return []
    trans = [v for v in ring.names if all(d.image(v).is_constant() for d in derivations)]
    rows = [[d.image(v).constant_term() for v in trans] for d in derivations]
    _, piv_rows = linalg.rref(linalg.transpose(rows)) if trans else ([], [])
    independent = list(piv_rows)
    if independent:
        return _translate(derivations, trans, rows, independent, ceiling, cert_degree)
    fibre = _fibre(derivations, cert_degree)
    if fibre is not None:
        return fibre
    res = slice_function_search(derivations, ceiling)
    return res.functions if isinstance(res, SliceFunctions) else res


def _translate(derivations, trans, rows, independent, ceiling, cert_degree):
    ring = derivations[0].ring
    m = len(derivations)
    rest = [i for i in range(m) if i not in independent]
    # basis change: rest members become zero on translation coordinates
    base = [rows[a] for a in independent]
    change = []  # rows of M with delta' = M delta
    for a in independent:
        change.append([Fraction(int(i == a)) for i in range(m)])
    new_family = [derivations[a] for a in independent]
    solver = linalg.CoordinateSolver(base, len(trans))
    for i in rest:
        lam = solver.coordinates(rows[i])
        row = [Fraction(int(k == i)) for k in range(m)]
        d = derivations[i]
        for a, l in zip(independent, lam):
            if l:
                row[a] -= l
                d = d + derivations[a].scaled(-l)
        change.append(row)
        new_family.append(d)
    r = len(independent)
    # linear f_a on translation coordinates with first-group derivatives = identity
    t_rows = [list(x) for x in base]
    linear = []
    for a in range(r):
        phi = linalg.solve(t_rows, [Fraction(int(a == b)) for b in range(r)])
        linear.append(sum((ring.var(v) * c for v, c in zip(trans, phi) if c), ring.zero()))
    # slice L = {f_a = 0}: eliminate pivot translation coordinates
    phis, pivots = linalg.rref([[p.coefficient(v, 1).constant_term() for v in trans] for p in linear])
    pivot_names = [trans[p] for p in pivots]
    keep = [v for v in ring.names if v not in pivot_names]
    sub_ring = ring.__class__(tuple(keep), tuple(ring.weights[ring.index(v)] for v in keep))
    on_slice = {v: sub_ring.var(v) for v in keep}
    for row, p in zip(phis, pivots):
        on_slice[trans[p]] = -sum(
            (sub_ring.var(trans[k]) * c for k, c in enumerate(row) if c and k != p), sub_ring.zero()
        )
    first = new_family[:r]
    r_coords = retraction(first, linear)
    r_of = dict(zip(ring.names, r_coords))
    induced = []
    for d in new_family[r:]:
        images = {}
        for v in keep:
            img = apply(d, r_of[v]).substitute(on_slice, sub_ring)
            images[v] = img
        induced.append(Derivation(sub_ring, images))
    inner = _eliminate(induced, ceiling, cert_degree) if induced else []
    if isinstance(inner, NoneFound):
        return NoneFound(inner.ceiling, inner.failing_index + r, inner.method)
    lift = {v: r_of[v] for v in keep}
    lifted = [g.substitute(lift, ring) for g in inner]
    new_funcs = linear + lifted
    # back to the original family: f_j = sum_b F_b M_bj
    out = []
    for j in range(m):
        acc = ring.zero()
        for b in range(m):
            c = change[b][j]
            if c:
                acc = acc + new_funcs[b] * c
        out.append(acc)
    return out


def _fibre(derivations, cert_degree):
    ring = derivations[0].ring
    m = len(derivations)
    invariant = [v for v in ring.names if all(not d.image(v) for d in derivations)]
    inv = set(invariant)
    layer = [
        v for v in ring.names
        if v not in inv and all(set(d.image(v).variables()) <= inv for d in derivations)
    ]
    if len(layer) < m:
        return None
    mat = [[d.image(v) for v in layer] for d in derivations]
    from itertools import combinations

    cols = list(combinations(range(len(layer)), m))
    minors = [determinant([[row[c] for c in s] for row in mat]) for s in cols]
    minors = [p if isinstance(p, Polynomial) else ring.const(p) for p in minors]
    cert = unit_certificate(minors, cert_degree)
    if cert is None:
        return None
    _, mult = cert
    # right inverse B = sum_S a_S P_S adj(M_S)
    inv_mat = [[ring.zero() for _ in range(m)] for _ in layer]
    for s, a in zip(cols, mult):
        if not a:
            continue
        sub = [[row[c] for c in s] for row in mat]
        adj = _adjugate(sub, ring)
        for r_i, c in enumerate(s):
            for j in range(m):
                inv_mat[c][j] = inv_mat[c][j] + a * adj[r_i][j]
    z = [ring.var(v) for v in layer]
    return [sum((z[k] * inv_mat[k][j] for k in range(len(layer))), ring.zero()) for j in range(m)]


def _adjugate(mat, ring):
    n = len(mat)
    if n == 1:
        return [[ring.const(1)]]
    adj = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [row[:j] + row[j + 1:] for k, row in enumerate(mat) if k != i]
            d = determinant(minor)
            d = d if isinstance(d, Polynomial) else ring.const(d)
            adj[j][i] = d if (i + j) % 2 == 0 else -d
    return adj


# -- slice descriptions ----------------------------------------------------------

@dataclass
class LinearSlice:
    """S = exp(s) for a subspace s from a Levi-Malcev decomposition (v, s, h)."""

    algebra: object
    decomposition: object
    kind: str = field(default="Linear", init=False)

    def decompose(self, g):
        from .decomposition import factorize

        v, s, h = factorize(self.algebra, self.decomposition, g)
        return v, s, h

    def contains(self, g):
        return self.decomposition.part("s").contains(g)

    def describe(self):
        from .algebra import format_vector

        s = self.decomposition.part("s")
        labels = self.algebra.labels
        return {"kind": self.kind, "dim": s.dim, "basis": [format_vector(labels, b) for b in s.basis]}


@dataclass
class LevelSetSlice:
    """S = { chart point y : f_1(y) = ... = f_p(y) = 0 } for slice functions f."""

    algebra: object
    v_basis: list
    chart: object
    derivations: list
    functions: list
    kind: str = field(default="LevelSet", init=False)

    def decompose(self, g):
        y = self.chart.coordinates(g)
        tau = [f.evaluate(y) for f in self.functions]
        ring = self.chart.ring
        point = [y[n] for n in ring.names]
        moved = self._flow([-t for t in tau], point)
        y0 = dict(zip(ring.names, moved))
        if any(f.evaluate(y0) for f in self.functions):
            raise InconsistencyError("retraction left the level set")
        n = self.algebra.dim
        v_log = tuple(sum((t * w[i] for t, w in zip(tau, self.v_basis)), Fraction(0)) for i in range(n))
        s_log = self.chart.point(y0)
        neg = lambda x: tuple(-a for a in x)
        h_log = star(self.algebra, neg(s_log), star(self.algebra, neg(v_log), g))
        if not self.chart.h.contains(h_log):
            raise InconsistencyError("decomposition left a non-h remainder")
        return v_log, s_log, h_log

    def _flow(self, tau, point):
        if not hasattr(self, "_flows"):
            ring = self.derivations[0].ring
            params = [f"_s{i}" for i in range(len(self.derivations))]
            big = ring.extend(params)
            self._flows = (params, [flow(self.derivations, params, ring.var(n), big) for n in ring.names])
        params, polys = self._flows
        values = dict(zip(self.chart.ring.names, point))
        values.update(zip(params, tau))
        return [p.evaluate(values) for p in polys]

    def contains(self, g):
        y, hpart = self.chart.decompose(g)
        return not any(hpart) and not any(f.evaluate(y) for f in self.functions)

    def describe(self):
        return {
            "kind": self.kind,
            "chart": list(self.chart.ring.names),
            "equations": [str(f) for f in self.functions],
        }


@dataclass
class WholeSlice:
    """The whole group: the slice of the trivial action."""

    algebra: object
    kind: str = field(default="Whole", init=False)

    def decompose(self, g):
        zero = (Fraction(0),) * self.algebra.dim
        return zero, tuple(g), zero

    def contains(self, g):
        return True

    def describe(self):
        return {"kind": self.kind, "dim": self.algebra.dim}


def roundtrip(slice_, v, h, samples=100, seed=0, scale=10):
    """Exact V x S x H factorization on seeded random elements; raises on the first failure."""
    import random

    algebra = slice_.algebra
    rng = random.Random(seed)
    for k in range(samples):
        g = tuple(Fraction(rng.randint(-scale, scale), rng.choice((1, 2, 3))) for _ in range(algebra.dim))
        a, s, b = slice_.decompose(g)
        if star(algebra, a, star(algebra, s, b)) != g:
            raise InconsistencyError(f"sample {k}: product does not reproduce g = {g}")
        if not v.contains(a) or not h.contains(b):
            raise InconsistencyError(f"sample {k}: factors leave v or h for g = {g}")
        if not slice_.contains(s):
            raise InconsistencyError(f"sample {k}: middle factor is not on the slice for g = {g}")
    return samples
