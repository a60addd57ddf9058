from fractions import Fraction

import pytest
from hypothesis import given

from biquotient import linalg
from biquotient.algebra import (
    LieAlgebra,
    Subspace,
    ideal_closure,
    is_ideal,
    is_subalgebra,
    quotient_algebra,
)
from biquotient.catalog import entry, heisenberg, ut
from biquotient.errors import InputError, NotNilpotentError

from strategies import vectors


def test_jacobi_violation_names_triple():
    with pytest.raises(InputError, match=r"\(X1, X2, X3\)"):
        LieAlgebra("bad", ("X1", "X2", "X3"), {(0, 1): (0, 0, 1), (0, 2): (1, 0, 0)})


def test_non_nilpotent_rejected():
    # [X, Y] = Y is solvable but not nilpotent
    with pytest.raises(NotNilpotentError):
        LieAlgebra("affine", ("X", "Y"), {(0, 1): (0, 1)})


def test_central_series_and_center():
    w = entry("winkelmann8").algebra
    assert [s.dim for s in w.central_series] == [8, 4, 1, 0]
    labels = [w.labels[i] for b in w.center.basis for i, a in enumerate(b) if a]
    assert sorted(labels) == ["Y3", "Y4", "Z1"]
    assert [s.dim for s in ut(4).central_series] == [6, 3, 1, 0]
    assert heisenberg(5).step == 2


@given(vectors(8), vectors(8))
def test_bracket_is_antisymmetric(x, y):
    w = entry("winkelmann8").algebra
    assert w.bracket(x, y) == linalg.scale(-1, w.bracket(y, x))


def test_subspace_operations():
    n = 4
    a = Subspace.span(n, [linalg.unit(n, 0), linalg.unit(n, 1)])
    b = Subspace.span(n, [linalg.unit(n, 1), linalg.unit(n, 2)])
    assert (a + b).dim == 3
    assert a.intersect(b).dim == 1
    assert a.contains(linalg.vec((1, 1, 0, 0)))


def test_ideals_and_quotient():
    w = entry("winkelmann8").algebra
    g1 = w.central_series[1]
    assert is_ideal(w, g1) and is_subalgebra(w, g1)
    z = w.basis_vector("Z2")
    closure = ideal_closure(w, Subspace.span(w.dim, [z]))
    assert closure.contains(w.basis_vector("Z1"))
    q, proj = quotient_algebra(w, w.center, "wq")
    assert q.dim == 5
    assert proj(w.basis_vector("Y3")) == linalg.zero(5)


def test_level_and_depth():
    w = entry("winkelmann8").algebra
    assert w.level(w.basis_vector("X1")) == 0
    assert w.level(w.basis_vector("Z1")) == 2
    assert w.depth(w.basis_vector("Y3")) == 2
    assert w.level(linalg.vec([Fraction(0)] * 8)) == 3
