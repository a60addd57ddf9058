"""Sparse multivariate polynomials with exact rational coefficients."""
from dataclasses import dataclass
from fractions import Fraction
import re

from .errors import InputError, ParseError


@dataclass(frozen=True)
class PolyRing:
    """Ordered variables with depth weights. The order defines triangularity."""

    names: tuple
    weights: tuple = None

    def __post_init__(self):
        names = tuple(self.names)
        if len(set(names)) != len(names):
            raise InputError("variable names must be unique")
        object.__setattr__(self, "names", names)
        w = tuple(self.weights) if self.weights is not None else (1,) * len(names)
        if len(w) != len(names) or any(int(a) < 1 for a in w):
            raise InputError("weights must be positive integers, one per variable")
        object.__setattr__(self, "weights", w)

    @property
    def nvars(self):
        return len(self.names)

    def index(self, name):
        try:
            return self.names.index(name)
        except ValueError:
            raise InputError(f"unknown variable {name!r}") from None

    def var(self, name):
        i = self.index(name) if isinstance(name, str) else name
        e = [0] * self.nvars
        e[i] = 1
        return Polynomial(self, {tuple(e): Fraction(1)})

    def gens(self):
        return [self.var(i) for i in range(self.nvars)]

    def const(self, c):
        c = Fraction(c)
        return Polynomial(self, {(0,) * self.nvars: c} if c else {})

    def zero(self):
        return Polynomial(self, {})

    def extend(self, names, weights=None):
        """A ring with extra variables appended (skipping names already present)."""
        new = [n for n in names if n not in self.names]
        w = list(weights) if weights is not None else [1] * len(names)
        neww = [w[list(names).index(n)] for n in new]
        return PolyRing(self.names + tuple(new), self.weights + tuple(neww))

    def parse(self, text):
        return parse_polynomial(text, self)


class Polynomial:
    __slots__ = ("ring", "terms")

    def __init__(self, ring, terms):
        self.ring = ring
        self.terms = {e: Fraction(c) for e, c in terms.items() if c}

    # -- arithmetic ---------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                if other.is_constant():
                    return self.ring.const(other.constant_term())
                raise InputError("polynomials from different rings")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        t = dict(self.terms)
        for e, c in other.terms.items():
            v = t.get(e, 0) + c
            if v:
                t[e] = v
            else:
                t.pop(e, None)
        return Polynomial._raw(self.ring, t)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self.ring, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return self.ring.zero()
            return Polynomial._raw(self.ring, {e: c * other for e, c in self.terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        t = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = t.get(e, 0) + c1 * c2
                if v:
                    t[e] = v
                else:
                    t.pop(e, None)
        return Polynomial._raw(self.ring, t)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (1 / Fraction(other))
        if isinstance(other, Polynomial) and other.is_constant() and other:
            return self * (1 / other.constant_term())
        return NotImplemented

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise InputError("only non-negative integer powers")
        out = self.ring.const(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    @classmethod
    def _raw(cls, ring, terms):
        p = cls.__new__(cls)
        p.ring = ring
        p.terms = terms
        return p

    # -- comparison -----------------------------------------------------------
    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.terms == ({(0,) * self.ring.nvars: Fraction(other)} if other else {})
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                return self.rename_key() == other.rename_key()
            return self.terms == other.terms
        return NotImplemented

    def __hash__(self):
        return hash((self.ring.names, frozenset(self.terms.items())))

    def rename_key(self):
        """Ring-independent description: frozenset of (sorted (name, exp) pairs, coeff)."""
        names = self.ring.names
        return frozenset(
            (tuple(sorted((names[i], a) for i, a in enumerate(e) if a)), c)
            for e, c in self.terms.items()
        )

    # -- inspection -----------------------------------------------------------
    def is_constant(self):
        return all(not any(e) for e in self.terms)

    def constant_term(self):
        return self.terms.get((0,) * self.ring.nvars, Fraction(0))

    def total_degree(self):
        return max((sum(e) for e in self.terms), default=-1)

    def degree_in(self, names):
        idx = [self.ring.index(n) for n in ([names] if isinstance(names, str) else names)]
        return max((sum(e[i] for i in idx) for e in self.terms), default=-1)

    def weighted_degree(self, weights=None):
        w = weights if weights is not None else self.ring.weights
        return max((sum(a * b for a, b in zip(e, w)) for e in self.terms), default=-1)

    def variables(self):
        used = set()
        for e in self.terms:
            used.update(i for i, a in enumerate(e) if a)
        return [self.ring.names[i] for i in sorted(used)]

    # -- calculus and substitution ------------------------------------------
    def diff(self, name):
        i = self.ring.index(name) if isinstance(name, str) else name
        t = {}
        for e, c in self.terms.items():
            if e[i]:
                e2 = list(e)
                e2[i] -= 1
                t[tuple(e2)] = c * e[i]
        return Polynomial._raw(self.ring, t)

    def coefficient(self, name, k):
        """Coefficient of name**k as a polynomial in the same ring."""
        i = self.ring.index(name)
        t = {}
        for e, c in self.terms.items():
            if e[i] == k:
                e2 = list(e)
                e2[i] = 0
                t[tuple(e2)] = c
        return Polynomial._raw(self.ring, t)

    def evaluate(self, point):
        """Evaluate at a full point (sequence in ring order or dict by name)."""
        if isinstance(point, dict):
            point = [point[n] for n in self.ring.names]
        total = Fraction(0)
        for e, c in self.terms.items():
            term = c
            for x, a in zip(point, e):
                if a:
                    term = term * x**a
            total = total + term
        return total

    def substitute(self, mapping, ring=None):
        """Replace variables by polynomials (in ``ring``); unmapped variables are kept by name."""
        ring = ring or self.ring
        images = []
        for i, name in enumerate(self.ring.names):
            if name in mapping:
                v = mapping[name]
                images.append(v if isinstance(v, Polynomial) else ring.const(v))
            else:
                images.append(ring.var(name))
        out = ring.zero()
        cache = {}
        for e, c in self.terms.items():
            term = ring.const(c)
            for i, a in enumerate(e):
                if a:
                    key = (i, a)
                    if key not in cache:
                        cache[key] = images[i] ** a
                    term = term * cache[key]
            out = out + term
        return out

    def to_ring(self, ring):
        """Embed into a ring containing all variables that occur."""
        if ring == self.ring:
            return self
        pos = []
        for i, name in enumerate(self.ring.names):
            pos.append(ring.names.index(name) if name in ring.names else None)
        t = {}
        for e, c in self.terms.items():
            e2 = [0] * ring.nvars
            for i, a in enumerate(e):
                if a:
                    if pos[i] is None:
                        raise InputError(f"variable {self.ring.names[i]} missing from target ring")
                    e2[pos[i]] = a
            t[tuple(e2)] = c
        return Polynomial._raw(ring, t)

    # -- printing -------------------------------------------------------------
    def sorted_terms(self):
        """Graded lexicographic order, highest first."""
        return sorted(self.terms.items(), key=lambda it: (sum(it[0]), it[0]), reverse=True)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                n if a == 1 else f"{n}^{a}" for n, a in zip(self.ring.names, e) if a
            )
            a = abs(c)
            if not mono:
                body = str(a)
            elif a == 1:
                body = mono
            else:
                body = f"{a}*{mono}"
            parts.append(("-" if c < 0 else "+", body))
        text = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for s, b in parts[1:]:
            text += f" {s} {b}"
        return text

    def __repr__(self):
        return f"Polynomial({self})"


_TOKEN = re.compile(r"\s*(?:(\d+(?:/\d+)?)|(d/d[A-Za-z_][A-Za-z_0-9]*)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*/^()]))")


def tokenize(text):
    pos = 0
    out = []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos:pos + 1]!r} at column {pos + 1}")
        num, dd, name, op = m.groups()
        if num:
            out.append(("num", Fraction(num)))
        elif dd:
            out.append(("d", dd[3:]))
        elif name:
            out.append(("name", name))
        else:
            out.append(("op", "^" if op == "**" else op))
        pos = m.end()
    return out


class _Parser:
    """Recursive descent over + - * / ^ and parentheses; ``atom`` resolves names."""

    def __init__(self, tokens, atom):
        self.toks = tokens
        self.i = 0
        self.atom = atom

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self):
        t = self.peek()
        self.i += 1
        return t

    def parse(self):
        v = self.expr()
        if self.i != len(self.toks):
            raise ParseError(f"trailing input near token {self.peek()[1]!r}")
        return v

    def expr(self):
        sign = 1
        if self.peek() == ("op", "-"):
            self.take()
            sign = -1
        elif self.peek() == ("op", "+"):
            self.take()
        v = self.term() * sign
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            t = self.term()
            v = v + t if op == "+" else v - t
        return v

    def term(self):
        v = self.factor()
        while self.peek() in (("op", "*"), ("op", "/")):
            op = self.take()[1]
            f = self.factor()
            if op == "*":
                v = v * f
            else:
                if not (isinstance(f, Fraction) or (isinstance(f, Polynomial) and f.is_constant())):
                    raise ParseError("division only by constants")
                v = v / (f if isinstance(f, Fraction) else f.constant_term())
        return v

    def factor(self):
        base = self.unary()
        if self.peek() == ("op", "^"):
            self.take()
            kind, val = self.take()
            if kind != "num" or val.denominator != 1:
                raise ParseError("exponent must be a non-negative integer")
            base = base ** int(val)
        return base

    def unary(self):
        if self.peek() == ("op", "-"):
            self.take()
            return -self.unary()
        kind, val = self.take()
        if kind == "num":
            return val
        if kind in ("name", "d"):
            return self.atom(kind, val)
        if (kind, val) == ("op", "("):
            v = self.expr()
            if self.take() != ("op", ")"):
                raise ParseError("missing ')'")
            return v
        raise ParseError(f"unexpected token {val!r}")


def parse_polynomial(text, ring):
    def atom(kind, name):
        if kind == "d":
            raise ParseError("derivative symbol inside a polynomial")
        return ring.var(name)

    v = _Parser(tokenize(text), atom).parse()
    return v if isinstance(v, Polynomial) else ring.const(v)
