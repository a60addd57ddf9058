import random
from fractions import Fraction

from hypothesis import given, settings

from biquotient.action import (
    ActionFamily,
    action_degree,
    family_freeness,
    freeness_check,
    generic_cube_vanishes,
    isotropy_condition,
    three_step_normal_pair,
    verify_refutation,
)
from biquotient.algebra import Subspace
from biquotient.catalog import action, entry
from biquotient import linalg

from strategies import vectors


def test_catalog_pairs_certified():
    for name in ("winkelmann8", "yoshino7", "upper4", "heis5", "twostep5", "twofiliform7"):
        e = entry(name)
        cert = freeness_check(e.algebra, e.v, e.h, samples=0)
        assert cert.verdict == "Certified", name


@settings(max_examples=200)
@given(vectors(8))
def test_certified_means_trivial_isotropy(g):
    e = entry("winkelmann8")
    assert isotropy_condition(e.algebra, e.v, e.h, g).dim == 0


def test_refutation_away_from_identity_reverifies():
    # v = <X1 + Y1>, h = <X1>: conjugating by Y-direction elements lands v in h
    A = entry("heis5").algebra
    v = Subspace.span(5, [linalg.add(A.basis_vector("X1"), A.basis_vector("Z"))])
    h = Subspace.span(5, [A.basis_vector("X1")])
    cert = freeness_check(A, v, h)
    assert cert.verdict == "Refuted"
    assert verify_refutation(A, h, cert)


def test_overlap_refuted_at_identity():
    e = entry("yoshino7")
    cert = freeness_check(e.algebra, e.h, e.h)
    assert cert.verdict == "Refuted" and not any(cert.witness_g)


def test_family_freeness_and_degree():
    _, derivs = action("winkelmann8-action")
    fam = ActionFamily.from_derivations(derivs)
    assert action_degree(fam) == 2
    assert family_freeness(derivs).verdict == "Certified"


def test_three_step_normal_pair():
    e = entry("winkelmann8")
    pair = three_step_normal_pair(e.algebra, e.v, e.h)
    assert pair.m == 2
    assert action_degree(pair.family) == 2
    assert generic_cube_vanishes(pair.family)
    rng = random.Random(2)
    for _ in range(10):
        x = linalg.combine([Fraction(rng.randint(-3, 3)) for _ in pair.v0.basis], pair.v0.basis, e.algebra.dim)
        assert pair.h0.contains(pair.phi_apply(x))
