"""Hypothesis strategies shared by the test modules."""
from fractions import Fraction

from hypothesis import strategies as st

rationals = st.builds(Fraction, st.integers(-6, 6), st.integers(1, 4))


def vectors(n):
    return st.lists(rationals, min_size=n, max_size=n).map(tuple)
