"""Nilpotent Lie algebras given by rational structure constants."""
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

from . import linalg
from .errors import InputError, NotNilpotentError


@dataclass(frozen=True)
class Subspace:
    """A subspace of Q^n kept in canonical reduced row echelon form."""

    n: int
    basis: tuple
    pivots: tuple

    @classmethod
    def span(cls, n, vectors):
        vectors = [tuple(v) for v in vectors]
        for v in vectors:
            if len(v) != n:
                raise InputError(f"vector of length {len(v)} in ambient dimension {n}")
        rows, pivots = linalg.rref(vectors) if vectors else ([], [])
        return cls(n, tuple(rows), tuple(pivots))

    @classmethod
    def zero(cls, n):
        return cls(n, (), ())

    @classmethod
    def whole(cls, n):
        return cls.span(n, [linalg.unit(n, i) for i in range(n)])

    @property
    def dim(self):
        return len(self.basis)

    def __len__(self):
        return self.dim

    def _same(self, other):
        if self.n != other.n:
            raise InputError("subspaces live in different algebras")

    def contains(self, x):
        if len(x) != self.n:
            raise InputError("dimension mismatch")
        x = list(x)
        for row, p in zip(self.basis, self.pivots):
            if x[p]:
                f = x[p]
                x = [a - f * b for a, b in zip(x, row)]
        return not any(x)

    def __contains__(self, x):
        return self.contains(x)

    def contains_subspace(self, other):
        self._same(other)
        return all(self.contains(b) for b in other.basis)

    def __add__(self, other):
        self._same(other)
        return Subspace.span(self.n, self.basis + other.basis)

    def intersect(self, other):
        self._same(other)
        if not self.basis or not other.basis:
            return Subspace.zero(self.n)
        # a.S = b.T  <=>  (a, -b) in the kernel of [S; T]^T
        k = self.dim
        cols = linalg.transpose(list(self.basis) + [linalg.scale(-1, b) for b in other.basis])
        kernel = linalg.nullspace(cols, k + other.dim)
        vectors = [linalg.combine(z[:k], self.basis, self.n) for z in kernel]
        return Subspace.span(self.n, vectors)

    def complement_pivots(self):
        return [i for i in range(self.n) if i not in self.pivots]

    def reduce(self, x):
        """Remainder of x after eliminating pivot coordinates."""
        x = list(x)
        for row, p in zip(self.basis, self.pivots):
            if x[p]:
                f = x[p]
                x = [a - f * b for a, b in zip(x, row)]
        return tuple(x)


def span(algebra, vectors):
    return Subspace.span(algebra.dim, vectors)


def intersect(s1, s2):
    return s1.intersect(s2)


def subspace_sum(s1, s2):
    return s1 + s2


def contains(s, x):
    return s.contains(x)


@dataclass(frozen=True, eq=False)
class LieAlgebra:
    """Structure constants ``brackets[(i, j)] = [e_i, e_j]`` for i < j; missing pairs are zero.

    The Jacobi identity and nilpotency are checked on construction.
    ``matrix`` optionally maps each basis index to an m x m strictly upper
    triangular matrix (tuple of rows) giving a faithful presentation.
    """

    name: str
    labels: tuple
    brackets: dict = field(repr=False)
    matrix: tuple = field(default=None, repr=False)

    def __post_init__(self):
        n = len(self.labels)
        if n == 0:
            raise InputError("algebra must have positive dimension")
        if len(set(self.labels)) != n:
            raise InputError("basis labels must be unique")
        clean = {}
        for (i, j), v in self.brackets.items():
            if not (0 <= i < j < n):
                raise InputError(f"bracket index pair ({i}, {j}) must satisfy i < j < {n}")
            v = linalg.vec(v)
            if len(v) != n:
                raise InputError("bracket value has wrong length")
            if any(v):
                clean[(i, j)] = v
        object.__setattr__(self, "brackets", clean)
        violation = jacobi_check(self)
        if violation is not None:
            i, j, k, res = violation
            exc = InputError(
                f"Jacobi identity fails for ({self.labels[i]}, {self.labels[j]}, {self.labels[k]})"
            )
            exc.violation = violation
            raise exc
        self.central_series  # raises NotNilpotentError early

    @property
    def dim(self):
        return len(self.labels)

    def basis_vector(self, label_or_index):
        i = label_or_index if isinstance(label_or_index, int) else self.labels.index(label_or_index)
        return linalg.unit(self.dim, i)

    def bracket(self, x, y):
        return bracket(self, x, y)

    @cached_property
    def central_series(self):
        return _central_series(self)

    @cached_property
    def step(self):
        return len(self.central_series) - 1

    def level(self, x):
        """Largest j with x in g^(j); the zero vector gets the step."""
        lvl = 0
        for j, term in enumerate(self.central_series):
            if term.contains(x):
                lvl = j
        return lvl

    def depth(self, x):
        return self.level(x) + 1

    @cached_property
    def center(self):
        return center(self)

    def whole(self):
        return Subspace.whole(self.dim)


def bracket(algebra, x, y):
    """Bilinear extension of the structure constants. Entries may be polynomials."""
    n = algebra.dim
    if len(x) != n or len(y) != n:
        raise InputError("dimension mismatch in bracket")
    out = [0] * n
    for (i, j), v in algebra.brackets.items():
        xi, xj, yi, yj = x[i], x[j], y[i], y[j]
        c = 0
        if xi and yj:
            c = xi * yj
        if xj and yi:
            c = c - xj * yi
        if not c:
            continue
        for k, a in enumerate(v):
            if a:
                out[k] = out[k] + a * c
    return tuple(Fraction(0) if (isinstance(a, int) and a == 0) else a for a in out)


def _basis_bracket(algebra, i, j):
    n = algebra.dim
    if i == j:
        return linalg.zero(n)
    if i < j:
        return algebra.brackets.get((i, j), linalg.zero(n))
    return linalg.scale(-1, algebra.brackets.get((j, i), linalg.zero(n)))


def jacobi_check(algebra):
    """None if the Jacobi identity holds, else (i, j, k, residual) for the first failing triple."""
    n = algebra.dim
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                ei, ej, ek = (linalg.unit(n, a) for a in (i, j, k))
                # cyclic sum [e_i,[e_j,e_k]] + [e_j,[e_k,e_i]] + [e_k,[e_i,e_j]]
                r = linalg.add(
                    linalg.add(
                        bracket(algebra, ei, _basis_bracket(algebra, j, k)),
                        bracket(algebra, ej, _basis_bracket(algebra, k, i)),
                    ),
                    bracket(algebra, ek, _basis_bracket(algebra, i, j)),
                )
                if any(r):
                    return (i, j, k, r)
    return None


def _central_series(algebra):
    n = algebra.dim
    series = [Subspace.whole(n)]
    while series[-1].dim > 0:
        prev = series[-1]
        vectors = [
            bracket(algebra, linalg.unit(n, i), b) for i in range(n) for b in prev.basis
        ]
        nxt = Subspace.span(n, vectors)
        if nxt.dim == prev.dim or len(series) > n + 1:
            raise NotNilpotentError(f"{algebra.name}: central series stabilises at dimension {nxt.dim}")
        series.append(nxt)
    return tuple(series)


def central_series(algebra):
    return list(algebra.central_series)


def nilpotency_step(algebra):
    return algebra.step


def ad_rows(algebra, x):
    """Matrix of ad(x) as a list of rows (entry [i][j] = e_i-coefficient of [x, e_j])."""
    n = algebra.dim
    cols = [bracket(algebra, x, linalg.unit(n, j)) for j in range(n)]
    return linalg.transpose(cols)


def center(algebra):
    n = algebra.dim
    rows = []
    for i in range(n):
        # [x, e_i] = 0 as linear conditions on x
        cols = [_basis_bracket(algebra, j, i) for j in range(n)]
        rows.extend(linalg.transpose(cols))
    return Subspace.span(n, linalg.nullspace(rows, n))


def bracket_subspaces(algebra, s1, s2):
    return Subspace.span(
        algebra.dim, [bracket(algebra, a, b) for a in s1.basis for b in s2.basis]
    )


def is_subalgebra(algebra, s):
    return s.contains_subspace(bracket_subspaces(algebra, s, s))


def is_ideal(algebra, s):
    return s.contains_subspace(bracket_subspaces(algebra, algebra.whole(), s))


def subalgebra_closure(algebra, s):
    while True:
        nxt = s + bracket_subspaces(algebra, s, s)
        if nxt == s:
            return s
        s = nxt


def ideal_closure(algebra, s):
    while True:
        nxt = s + bracket_subspaces(algebra, algebra.whole(), s)
        if nxt == s:
            return s
        s = nxt


def is_commutative(algebra, s):
    return bracket_subspaces(algebra, s, s).dim == 0


class Projection:
    """Linear projection g -> g/N using the standard basis vectors of non-pivot columns as a section."""

    def __init__(self, algebra, ideal):
        self.source = algebra
        self.kernel = ideal
        self.keep = ideal.complement_pivots()

    def __call__(self, x):
        r = self.kernel.reduce(x)
        return tuple(r[i] for i in self.keep)

    def lift(self, y):
        out = [Fraction(0)] * self.source.dim
        for i, c in zip(self.keep, y):
            out[i] = c
        return tuple(out)

    def image(self, s):
        return Subspace.span(len(self.keep), [self(b) for b in s.basis])

    def preimage(self, s):
        return Subspace.span(self.source.dim, [self.lift(b) for b in s.basis] + list(self.kernel.basis))


def quotient_algebra(algebra, ideal, name=None):
    if not is_ideal(algebra, ideal):
        raise InputError("quotient requires an ideal")
    proj = Projection(algebra, ideal)
    keep = proj.keep
    brackets = {}
    for a in range(len(keep)):
        for b in range(a + 1, len(keep)):
            v = proj(_basis_bracket(algebra, keep[a], keep[b]))
            if any(v):
                brackets[(a, b)] = v
    quotient = LieAlgebra(
        name or f"{algebra.name}/ideal{ideal.dim}",
        tuple(algebra.labels[i] for i in keep),
        brackets,
    )
    # the projection is a Lie homomorphism
    n = algebra.dim
    for i in range(n):
        for j in range(i + 1, n):
            lhs = proj(_basis_bracket(algebra, i, j))
            rhs = bracket(quotient, proj(linalg.unit(n, i)), proj(linalg.unit(n, j)))
            if lhs != rhs:
                raise InputError("projection is not a homomorphism")
    return quotient, proj


def restrict_algebra(algebra, sub, name=None):
    """The subalgebra ``sub`` as a Lie algebra in its canonical basis, plus the embedding solver."""
    if not is_subalgebra(algebra, sub):
        raise InputError("not a subalgebra")
    solver = linalg.CoordinateSolver(sub.basis, algebra.dim)
    brackets = {}
    for a in range(sub.dim):
        for b in range(a + 1, sub.dim):
            v = solver.coordinates(bracket(algebra, sub.basis[a], sub.basis[b]))
            if any(v):
                brackets[(a, b)] = v
    labels = tuple(_vector_label(algebra, v) for v in sub.basis)
    return LieAlgebra(name or f"{algebra.name}|sub{sub.dim}", labels, brackets), solver


def _vector_label(algebra, v):
    terms = format_vector(algebra.labels, v)
    return terms.replace(" ", "")


def format_vector(labels, v):
    parts = []
    for lab, c in zip(labels, v):
        if not c:
            continue
        c = Fraction(c)
        sign = "-" if c < 0 else "+"
        a = abs(c)
        body = lab if a == 1 else f"{a}*{lab}"
        parts.append((sign, body))
    if not parts:
        return "0"
    text = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        text += f" {sign} {body}"
    return text


class LevelMap:
    """pi_j : g^(j) -> g^(j) / g^(j+1), realised on coordinates of a complement."""

    def __init__(self, algebra, j):
        l = algebra.step
        if not 0 <= j < l:
            raise InputError(f"level {j} outside 0..{l - 1}")
        self.algebra = algebra
        self.j = j
        self.source = algebra.central_series[j]
        self.kernel = algebra.central_series[j + 1]
        # complement of the kernel inside the source, taken from the source's echelon basis
        chosen = []
        acc = self.kernel
        for b in self.source.basis:
            if not acc.contains(b):
                chosen.append(b)
                acc = acc + Subspace.span(algebra.dim, [b])
        self.complement = chosen
        self._solver = linalg.CoordinateSolver(chosen + list(self.kernel.basis), algebra.dim)

    @property
    def target_dim(self):
        return len(self.complement)

    def __call__(self, x):
        if not self.source.contains(x):
            raise InputError(f"vector not in g^({self.j})")
        return self._solver.coordinates(x)[: self.target_dim]

    def image(self, s):
        """pi_j(s cap g^(j)) as a subspace of the quotient coordinates."""
        part = s.intersect(self.source)
        return Subspace.span(self.target_dim, [self(b) for b in part.basis])


def pi_j(algebra, j):
    return LevelMap(algebra, j)
