"""Derivations of polynomial rings: application, triangularity, flows and depth bounds."""
from fractions import Fraction
from math import factorial

from .errors import InputError, ParseError
from .poly import Polynomial, PolyRing, _Parser, tokenize


class Derivation:
    """A derivation determined by its values on the ring generators."""

    def __init__(self, ring, images, name=None):
        self.ring = ring
        self.name = name
        imgs = {}
        for var, p in images.items():
            ring.index(var)
            if not isinstance(p, Polynomial):
                p = ring.const(p)
            p = p.to_ring(ring)
            if p:
                imgs[var] = p
        self.images = imgs

    def image(self, var):
        return self.images.get(var, self.ring.zero())

    def __call__(self, p):
        return apply(self, p)

    def __eq__(self, other):
        if not isinstance(other, Derivation):
            return NotImplemented
        names = set(self.images) | set(other.images)
        return all(self.image_key(n) == other.image_key(n) for n in names)

    def image_key(self, var):
        p = self.images.get(var)
        return p.rename_key() if p is not None else frozenset()

    def __hash__(self):
        return hash(frozenset(self.images))

    def to_ring(self, ring):
        return Derivation(ring, {v: p.to_ring(ring) for v, p in self.images.items()}, self.name)

    def __add__(self, other):
        images = dict(self.images)
        for v, p in other.images.items():
            images[v] = images.get(v, self.ring.zero()) + p
        return Derivation(self.ring, images)

    def scaled(self, c):
        return Derivation(self.ring, {v: p * c for v, p in self.images.items()})

    def __str__(self):
        return format_derivation(self)

    def __repr__(self):
        return f"Derivation({self})"


def apply(delta, p):
    if p.ring != delta.ring:
        if set(p.ring.names) <= set(delta.ring.names):
            p = p.to_ring(delta.ring)
        else:
            raise InputError("derivation and polynomial live in different rings")
    out = delta.ring.zero()
    for var, img in delta.images.items():
        d = p.diff(var)
        if d:
            out = out + d * img
    return out


def commutator(d1, d2):
    ring = d1.ring
    return Derivation(
        ring, {v: apply(d1, d2.image(v)) - apply(d2, d1.image(v)) for v in ring.names}
    )


def commute(d1, d2):
    return not commutator(d1, d2).images


def is_triangular(delta):
    """delta(x_k) only involves variables x_i with i < k in the ring order."""
    names = delta.ring.names
    for k, var in enumerate(names):
        img = delta.images.get(var)
        if img is None:
            continue
        if any(names.index(u) >= k for u in img.variables()):
            return False
    return True


def nilpotency_orders(delta, limit=64):
    """Smallest m with delta^m(x) = 0 for every generator x, or None if not reached by ``limit``."""
    out = {}
    for var in delta.ring.names:
        p = delta.ring.var(var)
        m = 0
        while p:
            p = apply(delta, p)
            m += 1
            if m > limit:
                return None
        out[var] = m
    return out


def is_locally_nilpotent(delta, limit=64):
    if is_triangular(delta):
        return True
    return nilpotency_orders(delta, limit) is not None


def exp_derivation(delta, t, p, ring=None):
    """sum_k t^k delta^k(p) / k! in the ring extended by the parameter ``t``."""
    if not is_locally_nilpotent(delta):
        raise InputError("derivation is not locally nilpotent")
    ring = ring or delta.ring.extend([t])
    d = delta.to_ring(ring)
    tv = ring.var(t)
    p = p.to_ring(ring)
    out = ring.zero()
    term = p
    k = 0
    while term:
        out = out + term * (tv**k) * Fraction(1, factorial(k))
        term = apply(d, term)
        k += 1
    return out


def flow(derivations, params, p, ring=None):
    """exp(sum_i params[i] * derivations[i]) applied to p; family must commute."""
    base = derivations[0].ring
    ring = ring or base.extend(list(params))
    total = None
    for d, s in zip(derivations, params):
        dd = d.to_ring(ring)
        sv = ring.var(s)
        part = Derivation(ring, {v: q * sv for v, q in dd.images.items()})
        total = part if total is None else total + part
    p = p.to_ring(ring)
    out = ring.zero()
    term = p
    k = 0
    while term:
        out = out + term * Fraction(1, factorial(k))
        term = apply(total, term)
        k += 1
        if k > 256:
            raise InputError("flow did not terminate; family not locally nilpotent")
    return out


def action_polynomials(derivations, params):
    """Coordinates of exp(sum s_i delta_i).x as polynomials in params and the ring variables."""
    base = derivations[0].ring
    ring = base.extend(list(params))
    return ring, [flow(derivations, params, base.var(v), ring) for v in base.names]


# -- depth bounds ------------------------------------------------------------

def depth_bound(delta, d_x0, initial=None):
    """Lower bounds d(y) >= d(delta(y)) + d(x0) with weighted degree d(P).

    ``initial`` fixes depths of source variables (default: variables with
    delta(y) = 0 get depth 1). Returns (bounds, max bound).
    """
    if not is_triangular(delta):
        raise InputError("depth bounds need a triangular derivation")
    if d_x0 < 1:
        raise InputError("d(x0) must be positive")
    initial = dict(initial or {})
    bounds = {}
    names = delta.ring.names
    for var in names:
        img = delta.images.get(var)
        lower = initial.get(var, 1)
        if img is not None:
            weights = [bounds.get(n, 0) for n in names]
            lower = max(lower, max(0, img.weighted_degree(weights)) + d_x0)
        bounds[var] = lower
    return bounds, max(bounds.values())


# -- text syntax -------------------------------------------------------------

def format_derivation(delta):
    parts = []
    for var in delta.ring.names:
        p = delta.images.get(var)
        if p is None:
            continue
        if len(p.terms) == 1:
            (e, c), = p.terms.items()
            text = str(p)
            if not any(e):
                text = str(c)
            coeff = text
        else:
            coeff = f"({p})"
        if coeff.startswith("-"):
            parts.append(("-", f"{coeff[1:]}*d/d{var}"))
        else:
            parts.append(("+", f"{coeff}*d/d{var}"))
    if not parts:
        return "0"
    text = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for s, b in parts[1:]:
        text += f" {s} {b}"
    return text


def parse_derivation(text, ring=None, name=None):
    """Parse ``y2*d/dy3 + 1*d/dz1``. Without a ring, variables are ordered triangularly where possible."""
    if "=" in text:
        lhs, text = text.split("=", 1)
        name = name or lhs.strip()
    toks = tokenize(text)
    names = []
    for kind, val in toks:
        if kind in ("name", "d") and val not in names:
            names.append(val)
    if ring is not None:
        missing = [n for n in names if n not in ring.names]
        if missing:
            raise ParseError(f"unknown variables {missing}")
    work = PolyRing(tuple(names) + tuple("@" + n for n in names))

    def atom(kind, val):
        return work.var("@" + val if kind == "d" else val)

    expr = _Parser(toks, atom).parse()
    if not isinstance(expr, Polynomial):
        raise ParseError("derivation has no d/d terms")
    images = {}
    nd = len(names)
    for e, c in expr.terms.items():
        dpart = e[nd:]
        if sum(dpart) != 1:
            raise ParseError("each term must contain exactly one d/d factor")
        var = names[dpart.index(1)]
        mono = {tuple(e[:nd]): c}
        images.setdefault(var, []).append(mono)
    if ring is None:
        ring = PolyRing(tuple(_triangular_order(names, images)))
    base = PolyRing(tuple(names))
    out = {}
    for var, monos in images.items():
        p = base.zero()
        for m in monos:
            p = p + Polynomial(base, m)
        out[var] = p.to_ring(ring)
    return Derivation(ring, out, name)


def _triangular_order(names, images):
    deps = {}
    for var in names:
        used = set()
        for mono in images.get(var, []):
            for e in mono:
                used.update(names[i] for i, a in enumerate(e) if a)
        deps[var] = used - {var}
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
    return order
