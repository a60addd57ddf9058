import random

from hypothesis import given

from biquotient import linalg
from biquotient.bch import Ad, Ad_apply, inverse, matrix_model, model_star, star
from biquotient.catalog import entry, ut

from strategies import vectors

W = entry("winkelmann8").algebra
Y = entry("yoshino7").algebra


@given(vectors(8), vectors(8), vectors(8))
def test_star_is_associative(x, y, z):
    assert star(W, star(W, x, y), z) == star(W, x, star(W, y, z))


@given(vectors(7))
def test_inverse_and_identity(x):
    zero = linalg.zero(7)
    assert star(Y, x, inverse(x)) == zero
    assert star(Y, x, zero) == x


@given(vectors(7), vectors(7), vectors(7))
def test_adjoint_is_conjugation(g, y, _):
    # exp(g) exp(y) exp(-g) = exp(Ad(g) y)
    assert star(Y, star(Y, g, y), inverse(g)) == Ad_apply(Y, g, y)


@given(vectors(8), vectors(8))
def test_ad_matrix_matches_apply(g, y):
    m = Ad(W, g)
    assert tuple(sum(a * b for a, b in zip(row, y)) for row in m) == Ad_apply(W, g, y)


def test_star_matches_matrix_model_ut5():
    A = ut(5)
    model = matrix_model(A)
    rng = random.Random(1)
    for _ in range(50):
        x = tuple(rng.randint(-3, 3) for _ in range(A.dim))
        y = tuple(rng.randint(-3, 3) for _ in range(A.dim))
        assert star(A, linalg.vec(x), linalg.vec(y)) == model_star(model, linalg.vec(x), linalg.vec(y))
