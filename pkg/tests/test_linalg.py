from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from biquotient import linalg
from biquotient.errors import InputError

from strategies import rationals

matrices = st.integers(1, 4).flatmap(
    lambda c: st.lists(st.lists(rationals, min_size=c, max_size=c), min_size=1, max_size=4)
)


@given(matrices)
def test_rref_is_reduced_and_spans_same_rows(m):
    rows, pivots = linalg.rref(m)
    for r, p in zip(rows, pivots):
        assert r[p] == 1
        assert all(other[p] == 0 for other in rows if other is not r)
    assert linalg.rank(m) == len(pivots) == linalg.rank(m + rows)


@given(matrices)
def test_nullspace_vectors_are_annihilated(m):
    ncols = len(m[0])
    null = linalg.nullspace(m, ncols)
    assert len(null) + linalg.rank(m) == ncols
    for v in null:
        assert all(sum(a * b for a, b in zip(row, v)) == 0 for row in m)


def test_solve_and_inconsistency():
    a = [[Fraction(1), Fraction(2)], [Fraction(3), Fraction(4)]]
    x = linalg.solve(a, [Fraction(5), Fraction(6)])
    assert [sum(p * q for p, q in zip(row, x)) for row in a] == [5, 6]
    assert linalg.solve([[Fraction(1)], [Fraction(1)]], [Fraction(0), Fraction(1)]) is None
    with pytest.raises(InputError):
        linalg.CoordinateSolver([linalg.vec((1, 0)), linalg.vec((2, 0))], 2)


def test_coordinate_solver():
    vecs = [(1, 1, 0), (0, 1, 1)]
    solver = linalg.CoordinateSolver([linalg.vec(v) for v in vecs], 3)
    assert solver.coordinates(linalg.vec((2, 5, 3))) == (2, 3)
    assert not solver.contains(linalg.vec((1, 0, 0)))
