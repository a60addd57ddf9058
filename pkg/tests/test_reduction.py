from biquotient.catalog import entry
from biquotient.reduction import (
    dim1_pipeline,
    family_split,
    normal_form,
    reduce_by_center,
    reduce_common_shadow,
)
from biquotient.errors import InputError

import pytest


def test_upper4_family_split_normalises_h():
    e = entry("upper4")
    y0, g1, reduced = family_split(e.algebra, e.v, e.h)
    assert [e.algebra.labels[i] for i, a in enumerate(y0) if a] == ["E34"]
    assert reduced.algebra.dim == 5


def test_winkelmann_does_not_split():
    e = entry("winkelmann8")
    assert family_split(e.algebra, e.v, e.h) is None


def test_center_reduction_keeps_dimensions_consistent():
    for name in ("winkelmann8", "yoshino7", "heis5"):
        e = entry(name)
        r = reduce_by_center(e.algebra, e.v, e.h)
        assert r.v.dim + r.h.dim <= r.algebra.dim
        s = reduce_common_shadow(e.algebra, e.v, e.h)
        assert s.v.intersect(s.h).dim == 0


def test_normal_form_rejects_wrong_shape():
    e = entry("winkelmann8")
    with pytest.raises(InputError):
        normal_form(e.algebra, e.v, e.h)
    e = entry("upper4")
    x0, z0 = normal_form(e.algebra, e.v, e.h)
    assert e.h.contains(x0)


def test_route_c_lifts_through_the_quotient():
    e = entry("twofiliform7")
    res = dim1_pipeline(e.algebra, e.v, e.h)
    assert res.route == "c"
    assert res.slice.describe()
