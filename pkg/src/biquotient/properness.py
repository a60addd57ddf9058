"""Search for polynomial rays witnessing that an affine action is not proper.

A witness is a pair of curves t -> g(t) (polynomial, some coordinate of
positive degree) and t -> x(t) (polynomial in 1/t) such that x(t) and
g(t).x(t) stay bounded as t grows. Boundedness is the vanishing of every
coefficient of a positive power of t. The resulting polynomial systems are
decided with Groebner bases and solved over the algebraic numbers by sympy,
because the witnesses can need irrational (even non-real) coefficients.
"""
import random
from dataclasses import dataclass, field

import sympy as sp

DEFAULT_ANSATZ = 4


@dataclass
class WitnessFound:
    ansatz_degree: int
    group_curve: dict  # parameter name -> expression in t
    point_curve: dict  # coordinate name -> expression in t and 1/t
    unbounded: str
    image_curve: dict = field(default_factory=dict)

    verdict = "WitnessFound"

    def to_dict(self):
        return {
            "verdict": self.verdict,
            "ansatz_degree": self.ansatz_degree,
            "g": {k: str(v) for k, v in self.group_curve.items()},
            "x": {k: str(v) for k, v in self.point_curve.items()},
            "g.x": {k: str(v) for k, v in self.image_curve.items()},
            "unbounded": self.unbounded,
        }


@dataclass
class NoneFoundRays:
    ansatz_degree: int
    systems: int
    inconsistent: int
    unresolved: int

    verdict = "NoneFound"

    def to_dict(self):
        return {
            "verdict": self.verdict,
            "ansatz_degree": self.ansatz_degree,
            "systems": self.systems,
            "inconsistent": self.inconsistent,
            "unresolved": self.unresolved,
        }


def _to_sympy(poly, values):
    names = poly.ring.names
    out = sp.Integer(0)
    for e, c in poly.terms.items():
        term = sp.Rational(c.numerator, c.denominator)
        for n, a in zip(names, e):
            if a:
                term *= values[n] ** a
        out += term
    return out


def _ansatz(family, degree, lead, lead_degree, t):
    unknowns = []
    values = {}
    for i, p in enumerate(family.params):
        top = lead_degree if i == lead else degree + 1
        cs = [sp.Symbol(f"g{i}_{e}") for e in range(top)]
        unknowns += cs
        curve = sum((c * t**e for e, c in enumerate(cs)), sp.Integer(0))
        values[p] = curve + t**lead_degree if i == lead else curve
    for k, x in enumerate(family.space.names):
        cs = [sp.Symbol(f"x{k}_{e}") for e in range(degree + 1)]
        unknowns += cs
        values[x] = sum((c * t ** (-e) for e, c in enumerate(cs)), sp.Integer(0))
    return unknowns, values


def _positive_coefficients(expr, t):
    expr = sp.expand(expr)
    out = []
    for term in sp.Add.make_args(expr):
        coeff, power = term.as_coeff_exponent(t)
        if power > 0:
            out.append((power, term / t**power))
    grouped = {}
    for power, c in out:
        grouped[power] = grouped.get(power, 0) + c
    return [sp.expand(c) for c in grouped.values()]


def _degree(expr, t):
    expr = sp.expand(expr)
    top = None
    for term in sp.Add.make_args(expr):
        if term == 0:
            continue
        _, power = term.as_coeff_exponent(t)
        top = power if top is None else max(top, power)
    return top


def verify_ray(family, group_curve, point_curve, t):
    """Exact check of a ray; returns (ok, unbounded parameter, image curve)."""
    image = {}
    for name, c in zip(family.space.names, family.coordinates):
        values = dict(point_curve)
        values.update(group_curve)
        image[name] = sp.expand(_to_sympy(c, values))
    for curve in list(point_curve.values()) + list(image.values()):
        if any(sp.radsimp(c) != 0 for c in _positive_coefficients(curve, t)):
            return False, None, image
    for p, curve in group_curve.items():
        deg = _degree(curve, t)
        if deg is not None and deg > 0:
            return True, p, image
    return False, None, image


def properness_witness_search(family, ansatz=DEFAULT_ANSATZ, seed=0):
    """Rays up to the ansatz degree, smallest degree first. Returns WitnessFound or NoneFoundRays."""
    t = sp.Symbol("t")
    rng = random.Random(seed)
    systems = inconsistent = unresolved = 0
    for degree in range(1, ansatz + 1):
        for lead in range(len(family.params)):
            for lead_degree in range(1, degree + 1):
                systems += 1
                unknowns, values = _ansatz(family, degree, lead, lead_degree, t)
                eqs = []
                for c in family.coordinates:
                    eqs += _positive_coefficients(_to_sympy(c, values), t)
                eqs = [e for e in eqs if e != 0]
                if eqs and sp.groebner(eqs, *unknowns, order="grevlex").exprs == [1]:
                    inconsistent += 1
                    continue
                found = _solve_and_verify(family, eqs, unknowns, values, t, rng, degree)
                if found is None:
                    unresolved += 1
                    continue
                return found
    return NoneFoundRays(ansatz, systems, inconsistent, unresolved)


def _solve_and_verify(family, eqs, unknowns, values, t, rng, degree):
    solutions = sp.solve(eqs, unknowns, dict=True) if eqs else [{}]
    for sol in solutions:
        for attempt in range(4):
            free = {}
            for u in unknowns:
                if u not in sol:
                    free[u] = sp.Integer(0 if attempt == 0 else rng.randint(-3, 3))
            full = {u: sp.expand(sp.sympify(sol.get(u, free.get(u))).subs(free)) for u in unknowns}
            group = {p: sp.expand(values[p].subs(full)) for p in family.params}
            point = {x: sp.expand(values[x].subs(full)) for x in family.space.names}
            ok, unbounded, image = verify_ray(family, group, point, t)
            if ok:
                return WitnessFound(degree, group, point, unbounded, image)
    return None
