"""Group law on G = exp(g) in logarithmic coordinates.

The BCH series is generated in the free associative algebra on {x, y},
truncated at the requested degree, and converted to left-normed bracket
words with the Dynkin-Specht-Wever projection. In an l-step nilpotent
algebra all brackets of length > l vanish, so truncating at l is exact.
"""
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
import random
import threading

from . import linalg
from .algebra import bracket
from .errors import CapabilityError, InconsistencyError, InputError

MAX_DEGREE = 6


@dataclass(frozen=True)
class BchTable:
    max_degree: int
    terms: tuple  # (coefficient, word) with word a tuple over {0: x, 1: y}

    def degree_part(self, k):
        return [(c, w) for c, w in self.terms if len(w) == k]


def _mul_words(a, b, max_degree):
    out = {}
    for w1, c1 in a.items():
        for w2, c2 in b.items():
            if len(w1) + len(w2) > max_degree:
                continue
            w = w1 + w2
            out[w] = out.get(w, 0) + c1 * c2
    return {w: c for w, c in out.items() if c}


def _exp_letter(letter, max_degree):
    return {(letter,) * k: Fraction(1, factorial(k)) for k in range(max_degree + 1)}


def _free_log_of_product(max_degree):
    """log(exp(x) exp(y)) in the free associative algebra, truncated."""
    prod = _mul_words(_exp_letter(0, max_degree), _exp_letter(1, max_degree), max_degree)
    w = {k: v for k, v in prod.items() if k}
    out = {}
    power = {(): Fraction(1)}
    for k in range(1, max_degree + 1):
        power = _mul_words(power, w, max_degree)
        sign = 1 if k % 2 else -1
        for word, c in power.items():
            out[word] = out.get(word, 0) + sign * c / k
    return {w: c for w, c in out.items() if c}


def _generate(max_degree):
    log = _free_log_of_product(max_degree)
    terms = []
    for word in sorted(log, key=lambda w: (len(w), w)):
        if len(word) > 1 and word[0] == word[1]:
            continue  # left-normed bracket starts with [a, a] = 0
        terms.append((log[word] / len(word), word))
    return BchTable(max_degree, tuple(terms))


_TABLES = {}
_LOCK = threading.Lock()


def bch_table(max_degree, validate=True):
    if not isinstance(max_degree, int) or max_degree < 1:
        raise InputError("max_degree must be a positive integer")
    if max_degree > MAX_DEGREE:
        raise CapabilityError(f"BCH tables are supported up to degree {MAX_DEGREE}")
    with _LOCK:
        table = _TABLES.get(max_degree)
        if table is None:
            table = _generate(max_degree)
            if validate:
                _validate(table)
            _TABLES[max_degree] = table
    return table


def _validate(table):
    # ut(d+1) is exactly d-step nilpotent, so every word of the table is exercised.
    from .catalog import ut

    alg = ut(table.max_degree + 1)
    model = matrix_model(alg)
    rng = random.Random(12345)
    x = tuple(Fraction(rng.randint(-3, 3)) for _ in range(alg.dim))
    y = tuple(Fraction(rng.randint(-3, 3)) for _ in range(alg.dim))
    if _star_with(alg, table, x, y) != model_star(model, x, y):
        raise InconsistencyError("BCH table disagrees with the matrix model")


def _star_with(algebra, table, x, y):
    n = algebra.dim
    l = algebra.step
    out = list(linalg.zero(n))
    letters = (x, y)
    cache = {}
    for c, word in table.terms:
        if len(word) > l:
            continue
        v = _left_normed(algebra, word, letters, cache)
        if not any(v):
            continue
        for i, a in enumerate(v):
            if a:
                out[i] = out[i] + c * a
    return tuple(out)


def _left_normed(algebra, word, letters, cache):
    if word in cache:
        return cache[word]
    if len(word) == 1:
        v = letters[word[0]]
    else:
        prefix = _left_normed(algebra, word[:-1], letters, cache)
        v = bracket(algebra, prefix, letters[word[-1]]) if any(prefix) else prefix
    cache[word] = v
    return v


def star(algebra, x, y, table=None):
    """z with exp(z) = exp(x) exp(y). Entries may be polynomials."""
    n = algebra.dim
    if len(x) != n or len(y) != n:
        raise InputError("dimension mismatch")
    if table is None:
        table = bch_table(max(algebra.step, 1))
    elif table.max_degree < algebra.step:
        raise CapabilityError("BCH table degree below the nilpotency step")
    return _star_with(algebra, table, x, y)


def product(algebra, *elements):
    out = linalg.zero(algebra.dim)
    for e in elements:
        out = star(algebra, out, e)
    return out


def inverse(x):
    return tuple(-a for a in x)


@dataclass(frozen=True)
class GroupElement:
    algebra: object
    log: tuple

    def __mul__(self, other):
        return GroupElement(self.algebra, star(self.algebra, self.log, other.log))

    def inverse(self):
        return GroupElement(self.algebra, inverse(self.log))

    @classmethod
    def identity(cls, algebra):
        return cls(algebra, linalg.zero(algebra.dim))


# -- adjoint -----------------------------------------------------------------

def ad_matrix(algebra, x):
    from .algebra import ad_rows

    return ad_rows(algebra, x)


def Ad_apply(algebra, g_log, y):
    """Ad(exp g_log)(y) = sum_k ad(g_log)^k y / k!  (finite). Entries may be polynomials."""
    out = list(y)
    term = y
    for k in range(1, algebra.step + 1):
        term = bracket(algebra, g_log, term)
        if not any(term):
            break
        f = Fraction(1, factorial(k))
        out = [a + f * b if b else a for a, b in zip(out, term)]
    return tuple(out)


def Ad(algebra, g_log):
    """Matrix of Ad(exp g_log) as rows."""
    n = algebra.dim
    cols = [Ad_apply(algebra, g_log, linalg.unit(n, j)) for j in range(n)]
    return linalg.transpose(cols)


def mat_apply(m, x):
    return tuple(sum((a * b for a, b in zip(row, x)), Fraction(0)) for row in m)


def mat_mul(a, b):
    bt = linalg.transpose(b)
    return [tuple(sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in bt) for row in a]


# -- matrix model oracle -----------------------------------------------------

@dataclass(frozen=True)
class MatrixModel:
    algebra: object
    size: int
    matrices: tuple  # one m x m matrix per basis vector
    solver: object


def matrix_model(algebra):
    if algebra.matrix is None:
        raise CapabilityError(f"{algebra.name} has no matrix presentation")
    mats = algebra.matrix
    m = len(mats[0])
    flat = [tuple(a for row in mat for a in row) for mat in mats]
    solver = linalg.CoordinateSolver(flat, m * m)
    model = MatrixModel(algebra, m, tuple(mats), solver)
    n = algebra.dim
    for i in range(n):
        for j in range(i + 1, n):
            lhs = _commutator(mats[i], mats[j])
            rhs = _to_matrix(model, bracket(algebra, linalg.unit(n, i), linalg.unit(n, j)))
            if lhs != rhs:
                raise InputError("matrix presentation does not respect the bracket")
    return model


def _to_matrix(model, x):
    m = model.size
    out = [[Fraction(0)] * m for _ in range(m)]
    for c, mat in zip(x, model.matrices):
        if c:
            for r in range(m):
                for s in range(m):
                    if mat[r][s]:
                        out[r][s] += c * mat[r][s]
    return [tuple(r) for r in out]


def _commutator(a, b):
    ab, ba = mat_mul(a, b), mat_mul(b, a)
    return [tuple(x - y for x, y in zip(r1, r2)) for r1, r2 in zip(ab, ba)]


def _identity(m):
    return [tuple(Fraction(int(i == j)) for j in range(m)) for i in range(m)]


def mat_exp(a):
    m = len(a)
    out = [list(r) for r in _identity(m)]
    term = _identity(m)
    for k in range(1, m):
        term = mat_mul(term, a)
        term = [tuple(x / k for x in r) for r in term]
        for i in range(m):
            for j in range(m):
                out[i][j] += term[i][j]
    return [tuple(r) for r in out]


def mat_log_unipotent(u):
    m = len(u)
    n = [tuple(u[i][j] - int(i == j) for j in range(m)) for i in range(m)]
    out = [[Fraction(0)] * m for _ in range(m)]
    power = _identity(m)
    for k in range(1, m):
        power = mat_mul(power, n)
        sign = 1 if k % 2 else -1
        for i in range(m):
            for j in range(m):
                out[i][j] += sign * power[i][j] / k
    return [tuple(r) for r in out]


def model_star(model, x, y):
    """log(exp(M x) exp(M y)) pulled back to coordinates."""
    prod = mat_mul(mat_exp(_to_matrix(model, x)), mat_exp(_to_matrix(model, y)))
    z = mat_log_unipotent(prod)
    return model.solver.coordinates(tuple(a for row in z for a in row))


def model_group(model, x):
    return mat_exp(_to_matrix(model, x))
