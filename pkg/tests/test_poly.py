from fractions import Fraction

from hypothesis import given
from hypothesis import strategies as st

from biquotient.poly import PolyRing, parse_polynomial

from strategies import rationals

R = PolyRing(("x", "y", "z"))


def polys():
    term = st.tuples(st.tuples(st.integers(0, 2), st.integers(0, 2), st.integers(0, 2)), rationals)
    return st.lists(term, max_size=4).map(
        lambda ts: sum((R.const(c) * R.var("x") ** a * R.var("y") ** b * R.var("z") ** e for (a, b, e), c in ts), R.zero())
    )


@given(polys(), polys(), polys())
def test_ring_axioms(p, q, r):
    assert (p + q) * r == p * r + q * r
    assert (p * q) * r == p * (q * r)
    assert p - p == R.zero()


@given(polys(), polys())
def test_leibniz_rule(p, q):
    assert (p * q).diff("x") == p.diff("x") * q + p * q.diff("x")


@given(polys(), st.tuples(rationals, rationals, rationals))
def test_evaluate_is_a_homomorphism(p, pt):
    point = dict(zip(R.names, pt))
    assert (p * p + p).evaluate(point) == p.evaluate(point) ** 2 + p.evaluate(point)


def test_parse_and_print_roundtrip():
    p = parse_polynomial("z - y*x^2 + 1/2*x", R)
    assert p == R.var("z") - R.var("y") * R.var("x") ** 2 + R.var("x") * Fraction(1, 2)
    assert parse_polynomial(str(p), R) == p
    assert p.total_degree() == 3
    assert p.coefficient("x", 2) == -R.var("y")


def test_substitute_and_weighted_degree():
    p = parse_polynomial("x*y + z", R)
    q = p.substitute({"x": R.var("y")})
    assert q == parse_polynomial("y^2 + z", R)
    assert p.weighted_degree([1, 2, 5]) == 5
