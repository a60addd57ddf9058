import random
from fractions import Fraction

from biquotient import linalg
from biquotient.bch import star
from biquotient.catalog import entry
from biquotient.derivation import is_triangular
from biquotient.induced import Chart, induced_action


def test_chart_coordinates_invert_point():
    e = entry("yoshino7")
    chart = Chart.from_h_slice(e.algebra, e.h, e.lie.variables)
    rng = random.Random(4)
    for _ in range(20):
        y = {n: Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for n in chart.block_names}
        assert chart.coordinates(chart.point(y)) == y


def test_decompose_recovers_h_component():
    e = entry("winkelmann8")
    chart = Chart.from_h_slice(e.algebra, e.h)
    g = tuple(Fraction(k + 1, 3) for k in range(8))
    y, hpart = chart.decompose(g)
    assert e.h.contains(hpart)
    assert star(e.algebra, chart.point(y), hpart) == g


def test_induced_derivations_are_triangular_and_commute():
    for name in ("winkelmann8", "yoshino7", "upper4", "twofiliform7"):
        e = entry(name)
        _, derivs = induced_action(e.algebra, e.v, e.h, variables=e.lie.variables)
        assert len(derivs) == e.v.dim
        assert all(is_triangular(d) for d in derivs)


def test_upper4_twoblock_chart_gives_stored_derivation():
    e = entry("upper4")
    chart = Chart(e.algebra, e.h, e.lie.charts["twoblock"])
    _, (d,) = induced_action(e.algebra, e.v, e.h, chart=chart)
    assert d == e.lie.derivations["delta"]
    # the action moves points but fixes the chart structure
    y = {"y1": Fraction(1), "y2": Fraction(2), "y3": Fraction(3), "z": Fraction(4)}
    moved = chart.act(linalg.scale(Fraction(1, 2), e.v.basis[0]), y)
    assert moved["y1"] == 1 and moved["y2"] == 2
