import pytest

from biquotient.catalog import GOLDEN, catalog, entry, pair_names
from biquotient.errors import InputError


def test_every_entry_loads():
    for name, e in catalog().items():
        assert e.algebra.dim > 0, name


def test_golden_central_series():
    for name, gold in GOLDEN.items():
        if "central_series" in gold:
            assert [s.dim for s in entry(name).algebra.central_series] == gold["central_series"][0]


def test_pairs_are_disjoint():
    for name in pair_names():
        e = entry(name)
        assert e.v.intersect(e.h).dim == 0, name


def test_generated_entries_and_unknown():
    assert entry("heisenberg7").algebra.dim == 7
    assert entry("ut4").algebra.dim == 6
    with pytest.raises(InputError):
        entry("nonexistent")
