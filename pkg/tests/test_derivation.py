from fractions import Fraction

import pytest
from hypothesis import given

from biquotient.catalog import action, entry, named_derivation
from biquotient.derivation import (
    Derivation,
    commutator,
    commute,
    depth_bound,
    exp_derivation,
    flow,
    format_derivation,
    is_locally_nilpotent,
    is_triangular,
    parse_derivation,
)
from biquotient.errors import InputError
from biquotient.poly import PolyRing

from strategies import rationals


def test_parse_format_roundtrip():
    d = parse_derivation("-y1*d/dy3 + (1 - y1*y2)*d/dz")
    assert parse_derivation(format_derivation(d)) == d
    assert is_triangular(d)


def test_apply_is_a_derivation():
    d = entry("upper4").lie.derivations["delta"]
    R = d.ring
    p, q = R.var("y3") * R.var("z"), R.var("y2") + R.var("y3") ** 2
    assert d(p * q) == d(p) * q + p * d(q)


def test_catalog_families_commute():
    for name in ("winkelmann8-action", "yoshino7-action"):
        _, derivs = action(name)
        assert commute(*derivs)
        assert commutator(*derivs).images == {}


def test_non_nilpotent_flow_rejected():
    R = PolyRing(("x",))
    d = Derivation(R, {"x": R.var("x")})
    assert not is_locally_nilpotent(d)
    with pytest.raises(InputError):
        exp_derivation(d, "t", R.var("x"))


@given(rationals, rationals)
def test_flow_is_a_one_parameter_group(s, t):
    d = entry("upper4").lie.derivations["delta"]
    R = d.ring
    ring, _ = R.extend(["s"]), None
    for x in R.names:
        fs = flow([d], ["s"], R.var(x), ring)
        once = fs.evaluate({"s": s + t, "y1": 1, "y2": 2, "y3": 3, "z": 4})
        point = {n: flow([d], ["s"], R.var(n), ring).evaluate({"s": t, "y1": 1, "y2": 2, "y3": 3, "z": 4}) for n in R.names}
        point["s"] = s
        assert fs.evaluate(point) == once


def test_depth_bounds_of_quotient_derivation():
    bounds, top = depth_bound(named_derivation("yoshino-quotient"), 1)
    assert bounds == {"y1": 1, "y2": 3, "y3": 5, "z1": 7}
    assert top == 7


def test_exp_derivation_of_translation():
    R = PolyRing(("x", "y"))
    d = Derivation(R, {"x": 1, "y": R.var("x")})
    e = exp_derivation(d, "t", R.var("y"))
    t = e.ring.var("t")
    assert e == e.ring.var("y") + t * e.ring.var("x") + t * t * Fraction(1, 2)
