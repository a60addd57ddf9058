import sympy as sp

from biquotient.action import ActionFamily
from biquotient.catalog import action
from biquotient.properness import NoneFoundRays, WitnessFound, properness_witness_search, verify_ray


def test_translation_is_proper_at_low_budget():
    _, derivs = action("translation")
    res = properness_witness_search(ActionFamily.from_derivations(derivs), ansatz=2)
    assert isinstance(res, NoneFoundRays) and res.inconsistent == res.systems


def test_upper4_action_has_no_ray():
    _, derivs = action("upper4-action")
    res = properness_witness_search(ActionFamily.from_derivations(derivs), ansatz=3)
    assert res.verdict == "NoneFound"


def test_yoshino_witness_reverifies():
    _, derivs = action("yoshino7-action")
    fam = ActionFamily.from_derivations(derivs)
    res = properness_witness_search(fam, ansatz=2)
    assert isinstance(res, WitnessFound)
    ok, param, _ = verify_ray(fam, res.group_curve, res.point_curve, sp.Symbol("t"))
    assert ok and param == res.unbounded


def test_bounded_group_curve_is_not_a_witness():
    _, derivs = action("translation")
    fam = ActionFamily.from_derivations(derivs)
    t = sp.Symbol("t")
    ok, _, _ = verify_ray(fam, {"s1": sp.Integer(1)}, {"x": 1 / t}, t)
    assert not ok
