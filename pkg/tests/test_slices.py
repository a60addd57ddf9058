from biquotient.catalog import entry
from biquotient.induced import Chart, induced_action
from biquotient.poly import parse_polynomial
from biquotient.reduction import dim1_pipeline
from biquotient.slices import (
    LevelSetSlice,
    NoneFound,
    SliceFunctions,
    degree_one_slice,
    retraction,
    roundtrip,
    slice_function_search,
    verify_slice_functions,
)


def _twoblock_upper4():
    e = entry("upper4")
    chart = Chart(e.algebra, e.h, e.lie.charts["twoblock"])
    return e, induced_action(e.algebra, e.v, e.h, chart=chart)


def test_upper4_slice_function_and_retraction():
    e, (chart, derivs) = _twoblock_upper4()
    res = slice_function_search(derivs, 2)
    f = parse_polynomial("z - y2*y3", chart.ring)
    assert isinstance(res, SliceFunctions) and res.functions == [f]
    assert verify_slice_functions(derivs, res.functions)
    r = retraction(derivs, res.functions)
    assert all(not derivs[0](p) for p in r)


def test_degree_one_construction_agrees():
    e, (chart, derivs) = _twoblock_upper4()
    res = degree_one_slice(derivs)
    assert isinstance(res, SliceFunctions)
    assert res.functions == [parse_polynomial("z - y2*y3", chart.ring)]


def test_level_set_slice_roundtrip():
    e, (chart, derivs) = _twoblock_upper4()
    res = degree_one_slice(derivs)
    s = LevelSetSlice(e.algebra, list(e.v.basis), chart, derivs, res.functions)
    assert roundtrip(s, e.v, e.h, samples=40) == 40


def test_winkelmann_has_no_low_degree_slice():
    e = entry("winkelmann8")
    _, derivs = induced_action(e.algebra, e.v, e.h, variables=e.lie.variables)
    res = slice_function_search(derivs, 4)
    assert isinstance(res, NoneFound) and res.ceiling == 4


def test_dim1_routes_match_catalog():
    for name in ("upper4", "heis5", "twostep5", "twofiliform7"):
        e = entry(name)
        res = dim1_pipeline(e.algebra, e.v, e.h, variables=e.lie.variables)
        assert res.route == e.golden["dim1_route"][0], name
        assert roundtrip(res.slice, e.v, e.h, samples=25, seed=1) == 25
