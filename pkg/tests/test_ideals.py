from fractions import Fraction

from biquotient.ideals import consistent_mod_p, determinant, monomials, solve_sparse, unit_certificate
from biquotient.poly import PolyRing, parse_polynomial

R = PolyRing(("x", "y"))


def test_unit_certificate_for_coprime_pair():
    f, g = parse_polynomial("x", R), parse_polynomial("1 + x*y", R)
    degree, mult = unit_certificate([f, g], 3)
    assert degree <= 2
    assert sum((m * p for m, p in zip(mult, [f, g])), R.zero()) == R.const(1)


def test_no_certificate_for_proper_ideal():
    assert unit_certificate([parse_polynomial("x", R), parse_polynomial("x*y", R)], 4) is None


def test_sparse_solver_and_mod_p_agree():
    rows = [{0: Fraction(1), 1: Fraction(1)}, {1: Fraction(2)}]
    sol = solve_sparse(rows, [Fraction(3), Fraction(4)])
    assert sol[0] == 1 and sol[1] == 2
    assert consistent_mod_p(rows, [Fraction(3), Fraction(4)])
    bad = [{0: Fraction(1)}, {0: Fraction(2)}]
    assert solve_sparse(bad, [Fraction(1), Fraction(1)]) is None
    assert not consistent_mod_p(bad, [Fraction(1), Fraction(1)])


def test_monomials_and_determinant():
    assert len(list(monomials(2, 2))) == 6
    assert determinant([[Fraction(1), Fraction(2)], [Fraction(3), Fraction(4)]]) == -2
