import random
from fractions import Fraction

import pytest

from biquotient import linalg
from biquotient.algebra import Subspace
from biquotient.bch import star
from biquotient.catalog import entry
from biquotient.decomposition import (
    Factorizer,
    factorize,
    h_slice,
    is_levi_malcev_basis,
    levi_malcev_decomposition,
)
from biquotient.errors import InputError


def test_h_slice_of_winkelmann():
    w = entry("winkelmann8")
    dec = h_slice(w.algebra, w.h)
    labels = sorted(w.algebra.labels[i] for b in dec.witness[0] for i, a in enumerate(b) if a)
    assert labels == ["Y1", "Y2", "Y3", "Y4", "Z1", "Z2"]
    assert is_levi_malcev_basis(w.algebra, dec.basis())


def test_levi_malcev_decomposition_factorizes():
    e = entry("heis5")
    dec = levi_malcev_decomposition(e.algebra, e.v, e.h)
    assert not isinstance(dec, tuple)
    rng = random.Random(3)
    for _ in range(30):
        g = tuple(Fraction(rng.randint(-5, 5), rng.randint(1, 3)) for _ in range(5))
        a, s, b = factorize(e.algebra, dec, g)
        assert star(e.algebra, a, star(e.algebra, s, b)) == g
        assert e.v.contains(a) and e.h.contains(b)


def test_missing_decomposition_reports_level():
    e = entry("winkelmann8")
    res = levi_malcev_decomposition(e.algebra, e.v, e.h)
    assert isinstance(res, tuple) and res[0] == "not_exists"


def test_overlapping_pair_rejected():
    e = entry("winkelmann8")
    with pytest.raises(InputError):
        levi_malcev_decomposition(e.algebra, e.v, e.v)


def test_factorizer_compose_solve_inverse():
    A = entry("yoshino7").algebra
    groups = [tuple(linalg.unit(7, i) for i in range(7))]
    groups = [(v,) for v in groups[0]]
    f = Factorizer(A, groups)
    coords = [Fraction(k - 3, 2) for k in range(7)]
    assert list(f.solve(f.compose(coords))) == coords
