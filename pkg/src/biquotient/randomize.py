"""Seeded random two-step algebras and free pairs in normal form."""
from fractions import Fraction

from .action import freeness_check
from .algebra import LieAlgebra, Subspace


def random_two_step(rng, max_dim=8, name="random"):
    """A two-step nilpotent algebra: k generators X_i bracketing into c central Z_j."""
    while True:
        n = rng.randint(4, max_dim)
        c = rng.randint(1, max(1, n // 2 - 1))
        k = n - c
        brackets = {}
        for i in range(k):
            for j in range(i + 1, k):
                if rng.random() < 0.5:
                    vec = [Fraction(0)] * n
                    for z in range(c):
                        if rng.random() < 0.6:
                            vec[k + z] = Fraction(rng.randint(-2, 2))
                    if any(vec):
                        brackets[(i, j)] = tuple(vec)
        labels = tuple(f"X{i + 1}" for i in range(k)) + tuple(f"Z{j + 1}" for j in range(c))
        algebra = LieAlgebra(name, labels, brackets)
        if algebra.step == 2:
            return algebra


def random_normal_pair(algebra, rng, attempts=40):
    """(v, h) with h spanned by commuting X's and v by X_j + Z_j, Z_j in g^(1), certified free; or None."""
    n = algebra.dim
    low = algebra.central_series[1]
    top_labels = [i for i, lab in enumerate(algebra.labels) if lab.startswith("X")]
    for _ in range(attempts):
        m = rng.randint(1, 2)
        xs = rng.sample(top_labels, m)
        if m == 2 and any(algebra.bracket(_unit(n, xs[0]), _unit(n, xs[1]))):
            continue
        gens_h, gens_v = [], []
        for x in xs:
            z = [Fraction(0)] * n
            for b in low.basis:
                a = rng.randint(-2, 2)
                z = [p + a * q for p, q in zip(z, b)]
            gens_h.append(_unit(n, x))
            gens_v.append(tuple(Fraction(int(i == x)) + z[i] for i in range(n)))
        h = Subspace.span(n, gens_h)
        v = Subspace.span(n, gens_v)
        if v.intersect(h).dim:
            continue
        if freeness_check(algebra, v, h, samples=0).verdict == "Certified":
            return v, h
    return None


def _unit(n, i):
    return tuple(Fraction(int(k == i)) for k in range(n))
