"""Exact linear algebra over the rationals.

Vectors are tuples. Entries are usually ``Fraction`` but the routines that
only combine vectors with rational scalars (``combine``, ``coordinates``)
also accept polynomial entries.
"""
from fractions import Fraction

from .errors import InputError


def vec(entries):
    return tuple(Fraction(e) for e in entries)


def zero(n):
    return (Fraction(0),) * n


def unit(n, i):
    return tuple(Fraction(1 if k == i else 0) for k in range(n))


def is_zero(v):
    return not any(v)


def add(x, y):
    return tuple(a + b for a, b in zip(x, y))


def sub(x, y):
    return tuple(a - b for a, b in zip(x, y))


def scale(c, x):
    return tuple(c * a for a in x)


def combine(coeffs, vectors, n):
    """Return sum(c * v) for rational ``coeffs``; entries of ``vectors`` may be polynomials."""
    out = list(zero(n))
    for c, v in zip(coeffs, vectors):
        if not c:
            continue
        for i, a in enumerate(v):
            if a:
                out[i] = out[i] + c * a
    return tuple(out)


def rref(rows):
    """Reduced row echelon form. Returns (nonzero rows, pivot columns)."""
    m = [list(map(Fraction, r)) for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        p = m[r][c]
        if p != 1:
            m[r] = [a / p for a in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return [tuple(row) for row in m[:r]], pivots


def rank(rows):
    return len(rref(rows)[1])


def nullspace(rows, ncols):
    """Basis of {x : rows . x = 0}."""
    red, pivots = rref(rows) if rows else ([], [])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for row, p in zip(red, pivots):
            x[p] = -row[f]
        basis.append(tuple(x))
    return basis


def transpose(m):
    return [tuple(col) for col in zip(*m)]


def solve(a_rows, b):
    """One solution x of A x = b, or None when inconsistent."""
    ncols = len(a_rows[0]) if a_rows else 0
    aug = [tuple(r) + (bi,) for r, bi in zip(a_rows, b)]
    red, pivots = rref(aug)
    if ncols in pivots:
        return None
    x = [Fraction(0)] * ncols
    for row, p in zip(red, pivots):
        x[p] = row[-1]
    return tuple(x)


class CoordinateSolver:
    """Coordinates with respect to a fixed list of independent vectors.

    Precomputes a left inverse, so ``coordinates`` only multiplies by
    rationals and therefore also works on vectors with polynomial entries.
    """

    def __init__(self, vectors, n):
        self.vectors = [tuple(map(Fraction, v)) for v in vectors]
        self.n = n
        k = len(self.vectors)
        cols = transpose(self.vectors) if k else [()] * n
        # [A | I] reduced: rows of the reduced identity part give a left inverse.
        aug = [tuple(cols[i]) + unit(n, i) for i in range(n)]
        red, pivots = rref(aug)
        if pivots[:k] != list(range(k)):
            raise InputError("vectors are linearly dependent")
        self.left_inverse = [row[k:] for row in red[:k]]
        # Rows beyond k of red with zero A-part describe the consistency conditions.
        self.checks = [row[k:] for row in red if all(a == 0 for a in row[:k])]

    def coordinates(self, x, check=True):
        coords = tuple(_dot(row, x) for row in self.left_inverse)
        if check:
            for row in self.checks:
                if _dot(row, x):
                    raise InputError("vector not in the span")
        return coords

    def contains(self, x):
        return not any(_dot(row, x) for row in self.checks)


def _dot(row, x):
    s = 0
    for c, a in zip(row, x):
        if c and a:
            s = s + c * a
    return s
