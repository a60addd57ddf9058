"""Sparse exact linear solving and bounded-degree unit-ideal certificates."""
from fractions import Fraction
from itertools import combinations_with_replacement

from .poly import Polynomial


def solve_sparse(rows, rhs):
    """Solve sparse rows (dicts col -> coeff) against rhs; free unknowns are 0. None if inconsistent."""
    pivots = {}
    order = []
    for row, b in zip(rows, rhs):
        row = {c: Fraction(v) for c, v in row.items() if v}
        b = Fraction(b)
        while True:
            hit = next((c for c in row if c in pivots), None)
            if hit is None:
                break
            prow, pb = pivots[hit]
            f = row[hit]
            for c, v in prow.items():
                nv = row.get(c, 0) - f * v
                if nv:
                    row[c] = nv
                else:
                    row.pop(c, None)
            b -= f * pb
        if not row:
            if b:
                return None
            continue
        col = min(row, key=lambda c: (len(str(row[c])), c))
        p = row[col]
        row = {c: v / p for c, v in row.items()}
        pivots[col] = (row, b / p)
        order.append(col)
    x = {}
    for col in reversed(order):
        row, b = pivots[col]
        s = b
        for c, v in row.items():
            if c != col:
                s -= v * x.get(c, 0)
        x[col] = s
    return x


PRIME = 2_147_483_647


def consistent_mod_p(rows, rhs, prime=PRIME):
    """Consistency of the system over GF(p); rows with denominators divisible by p are skipped."""
    pivots = {}
    for row, b in zip(rows, rhs):
        r = {}
        ok = True
        for c, v in row.items():
            v = Fraction(v)
            if v.denominator % prime == 0:
                ok = False
                break
            x = v.numerator * pow(v.denominator, -1, prime) % prime
            if x:
                r[c] = x
        b = Fraction(b)
        if not ok or b.denominator % prime == 0:
            continue
        b = b.numerator * pow(b.denominator, -1, prime) % prime
        while True:
            hit = next((c for c in r if c in pivots), None)
            if hit is None:
                break
            prow, pb = pivots[hit]
            f = r[hit]
            for c, v in prow.items():
                nv = (r.get(c, 0) - f * v) % prime
                if nv:
                    r[c] = nv
                else:
                    r.pop(c, None)
            b = (b - f * pb) % prime
        if not r:
            if b:
                return False
            continue
        col = min(r, key=lambda c: c)
        inv = pow(r[col], -1, prime)
        pivots[col] = ({c: v * inv % prime for c, v in r.items()}, b * inv % prime)
    return True


def monomials(nvars, max_degree, min_degree=0):
    out = []
    for d in range(min_degree, max_degree + 1):
        for combo in combinations_with_replacement(range(nvars), d):
            e = [0] * nvars
            for i in combo:
                e[i] += 1
            out.append(tuple(e))
    return out


def distinct_generators(polys):
    """Drop zeros and scalar multiples."""
    seen = set()
    out = []
    for p in polys:
        if not p:
            continue
        lead = p.sorted_terms()[0][1]
        key = frozenset((e, c / lead) for e, c in p.terms.items())
        if key not in seen:
            seen.add(key)
            out.append(p)
    return out


def unit_certificate(polys, max_degree):
    """Multipliers a_k with sum a_k * polys[k] = 1 and deg(a_k * polys[k]) <= max_degree, or None.

    Returns (degree reached, multipliers aligned with ``polys``).
    """
    if not polys:
        return None
    ring = polys[0].ring
    gens = [(k, p) for k, p in enumerate(polys) if p]
    for k, p in gens:
        if p.is_constant():
            mult = [ring.zero() for _ in polys]
            mult[k] = ring.const(1 / p.constant_term())
            return 0, mult
    used = sorted({ring.index(v) for _, p in gens for v in p.variables()})
    uniq = distinct_generators([p for _, p in gens])
    index_of = {id(p): k for k, p in gens}
    for degree in range(1, max_degree + 1):
        unknowns = []
        for p in uniq:
            room = degree - p.total_degree()
            if room < 0:
                continue
            for mono in monomials(len(used), room):
                unknowns.append((p, mono))
        if not unknowns:
            continue
        eqs = {}
        for col, (p, mono) in enumerate(unknowns):
            for e, c in p.terms.items():
                full = list(e)
                for i, a in zip(used, mono):
                    full[i] += a
                eqs.setdefault(tuple(full), {})[col] = c
        one = (0,) * ring.nvars
        eqs.setdefault(one, {})
        keys = list(eqs)
        rows = [eqs[k] for k in keys]
        rhs = [1 if k == one else 0 for k in keys]
        # a certificate over Q reduces to one mod p unless p divides a denominator;
        # a miss only costs a certificate, never soundness
        if not consistent_mod_p(rows, rhs):
            continue
        sol = solve_sparse(rows, rhs)
        if sol is None:
            continue
        mult = [ring.zero() for _ in polys]
        for col, val in sol.items():
            if not val:
                continue
            p, mono = unknowns[col]
            e = [0] * ring.nvars
            for i, a in zip(used, mono):
                e[i] = a
            k = index_of[id(p)]
            mult[k] = mult[k] + Polynomial(ring, {tuple(e): val})
        total = ring.zero()
        for a, p in zip(mult, polys):
            if a:
                total = total + a * p
        assert total == 1
        return degree, mult
    return None


def determinant(m):
    """Laplace expansion; entries may be polynomials."""
    n = len(m)
    if n == 0:
        return Fraction(1)
    if n == 1:
        return m[0][0]
    if n == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    total = 0
    for j in range(n):
        a = m[0][j]
        if not a:
            continue
        minor = [row[:j] + row[j + 1:] for row in m[1:]]
        d = determinant(minor)
        if not d:
            continue
        term = a * d
        total = total + term if j % 2 == 0 else total - term
    return total
