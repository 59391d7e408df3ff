"""Exact homogeneous polynomials in x, y, z over the rationals.

A :class:`HomPoly` stores its terms as a mapping from :class:`Monomial` to a
nonzero :class:`~fractions.Fraction`, together with an explicit degree so
that the zero polynomial still knows which graded piece it lives in.

Term order is graded lexicographic with ``x > y > z``; all printing and all
vector layouts (see :func:`monomial_basis`) follow it.

Text grammar accepted by :func:`parse_poly`::

    expr   := ['+'|'-'] term (('+'|'-') term)*
    term   := factor (('*' factor) | ('/' INT))*
    factor := INT | VAR | factor '^' INT | '(' expr ')'

Division is allowed by integer constants only, so that rational
coefficients can be written and read back.
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import comb
from typing import Dict, Iterable, Iterator, List, Mapping, NamedTuple, Sequence, Tuple, Union

from .errors import BadRange, DegreeMismatch, NotHomogeneous, PolySyntaxError

Rational = Union[int, Fraction]

VARIABLES = ("x", "y", "z")
_AXIS = {"x": 0, "y": 1, "z": 2, 0: 0, 1: 1, 2: 2}


class Monomial(NamedTuple):
    ex: int
    ey: int
    ez: int

    @property
    def degree(self) -> int:
        return self.ex + self.ey + self.ez

    def sort_key(self):
        """Key realising graded-lex order (larger key = larger monomial)."""
        return (self.ex + self.ey + self.ez, self.ex, self.ey, self.ez)

    def times(self, other: Sequence[int]) -> "Monomial":
        return Monomial(self.ex + other[0], self.ey + other[1], self.ez + other[2])

    def divides(self, other: Sequence[int]) -> bool:
        return self.ex <= other[0] and self.ey <= other[1] and self.ez <= other[2]

    def to_text(self) -> str:
        parts = []
        for name, e in zip(VARIABLES, self):
            if e == 1:
                parts.append(name)
            elif e > 1:
                parts.append(f"{name}^{e}")
        return "*".join(parts) if parts else "1"


def monomial_basis(k: int) -> List[Monomial]:
    """All monomials of degree ``k``, largest first in graded-lex order."""
    if k < 0:
        return []
    return [Monomial(a, b, k - a - b) for a in range(k, -1, -1) for b in range(k - a, -1, -1)]


def monomial_index(k: int) -> Dict[Monomial, int]:
    return {m: i for i, m in enumerate(monomial_basis(k))}


def num_monomials(k: int) -> int:
    return comb(k + 2, 2) if k >= 0 else 0


class HomPoly:
    """Immutable homogeneous polynomial of a declared degree."""

    __slots__ = ("_degree", "_terms", "_hash")

    def __init__(self, degree: int, terms: Mapping[Sequence[int], Rational] = ()):
        if degree < 0:
            raise ValueError("degree must be non-negative")
        clean: Dict[Monomial, Fraction] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for mono, c in items:
            mono = Monomial(*mono)
            if min(mono) < 0:
                raise ValueError(f"negative exponent in {mono}")
            if mono.degree != degree:
                raise NotHomogeneous(f"monomial {mono.to_text()} has degree {mono.degree}, expected {degree}")
            c = Fraction(c)
            if c:
                clean[mono] = clean.get(mono, Fraction(0)) + c
                if not clean[mono]:
                    del clean[mono]
        self._degree = degree
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, degree: int, terms: Dict[Monomial, Fraction]) -> "HomPoly":
        # trusted constructor: terms already homogeneous, zero-free, Fraction-valued
        obj = object.__new__(cls)
        obj._degree = degree
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def zero(cls, degree: int) -> "HomPoly":
        return cls._raw(degree, {})

    @classmethod
    def constant(cls, c: Rational) -> "HomPoly":
        return cls(0, {(0, 0, 0): c})

    @classmethod
    def monomial(cls, exps: Sequence[int], c: Rational = 1) -> "HomPoly":
        return cls(sum(exps), {tuple(exps): c})

    @classmethod
    def linear(cls, p: Rational, q: Rational, r: Rational) -> "HomPoly":
        return cls(1, {(1, 0, 0): p, (0, 1, 0): q, (0, 0, 1): r})

    @classmethod
    def from_vector(cls, degree: int, coeffs: Sequence[Rational]) -> "HomPoly":
        basis = monomial_basis(degree)
        if len(coeffs) != len(basis):
            raise ValueError("coefficient vector has the wrong length")
        return cls._raw(degree, {m: Fraction(c) for m, c in zip(basis, coeffs) if c})

    # -- accessors -------------------------------------------------------
    @property
    def degree(self) -> int:
        return self._degree

    @property
    def terms(self) -> Mapping[Monomial, Fraction]:
        return dict(self._terms)

    def items(self) -> Iterator[Tuple[Monomial, Fraction]]:
        return iter(self._terms.items())

    def coefficient(self, mono: Sequence[int]) -> Fraction:
        return self._terms.get(Monomial(*mono), Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def sorted_terms(self) -> List[Tuple[Monomial, Fraction]]:
        return sorted(self._terms.items(), reverse=True)

    def leading_term(self) -> Tuple[Monomial, Fraction]:
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        m = max(self._terms)
        return m, self._terms[m]

    def to_vector(self) -> List[Fraction]:
        return [self._terms.get(m, Fraction(0)) for m in monomial_basis(self._degree)]

    def denominator_lcm(self) -> int:
        out = 1
        for c in self._terms.values():
            q = c.denominator
            out = out * q // _gcd(out, q)
        return out

    # -- arithmetic ------------------------------------------------------
    def __add__(self, other: "HomPoly") -> "HomPoly":
        if not isinstance(other, HomPoly):
            return NotImplemented
        if other._degree != self._degree:
            raise DegreeMismatch(f"cannot add degree {self._degree} and degree {other._degree}")
        out = dict(self._terms)
        for m, c in other._terms.items():
            v = out.get(m)
            if v is None:
                out[m] = c
            else:
                v += c
                if v:
                    out[m] = v
                else:
                    del out[m]
        return HomPoly._raw(self._degree, out)

    def __neg__(self) -> "HomPoly":
        return HomPoly._raw(self._degree, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other: "HomPoly") -> "HomPoly":
        if not isinstance(other, HomPoly):
            return NotImplemented
        return self + (-other)

    def scale(self, c: Rational) -> "HomPoly":
        c = Fraction(c)
        if not c:
            return HomPoly.zero(self._degree)
        return HomPoly._raw(self._degree, {m: v * c for m, v in self._terms.items()})

    def __mul__(self, other) -> "HomPoly":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, HomPoly):
            return NotImplemented
        out: Dict[Monomial, Fraction] = {}
        get = out.get
        for (a0, a1, a2), ca in self._terms.items():
            for (b0, b1, b2), cb in other._terms.items():
                m = Monomial(a0 + b0, a1 + b1, a2 + b2)
                out[m] = get(m, 0) + ca * cb
        return HomPoly._raw(self._degree + other._degree, {m: c for m, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "HomPoly":
        if n < 0:
            raise ValueError("negative power")
        result = HomPoly.constant(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        if not isinstance(other, HomPoly):
            return NotImplemented
        return self._degree == other._degree and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self._degree, frozenset(self._terms.items())))
        return self._hash

    # -- calculus and evaluation ----------------------------------------
    def derivative(self, axis) -> "HomPoly":
        i = _AXIS[axis]
        if self._degree == 0:
            raise ValueError("derivative of a degree-0 polynomial is not defined here")
        out: Dict[Monomial, Fraction] = {}
        for m, c in self._terms.items():
            e = m[i]
            if e:
                exps = list(m)
                exps[i] -= 1
                out[Monomial(*exps)] = c * e
        return HomPoly._raw(self._degree - 1, out)

    def gradient(self) -> Tuple["HomPoly", "HomPoly", "HomPoly"]:
        return self.derivative(0), self.derivative(1), self.derivative(2)

    def __call__(self, x: Rational, y: Rational, z: Rational) -> Fraction:
        return self.eval_point((x, y, z))

    def eval_point(self, p: Sequence[Rational]) -> Fraction:
        x, y, z = (Fraction(v) for v in p)
        total = Fraction(0)
        for (a, b, c), coef in self._terms.items():
            total += coef * x**a * y**b * z**c
        return total

    def substitute(self, forms: Sequence["HomPoly"]) -> "HomPoly":
        """Replace x, y, z by the given polynomials (each of one common degree)."""
        if len(forms) != 3:
            raise ValueError("need three substitution polynomials")
        e = forms[0].degree
        if any(g.degree != e for g in forms):
            raise DegreeMismatch("substitution polynomials must share a degree")
        powers = [[HomPoly.constant(1)] for _ in range(3)]
        for i, g in enumerate(forms):
            top = max((m[i] for m in self._terms), default=0)
            for _ in range(top):
                powers[i].append(powers[i][-1] * g)
        result = HomPoly.zero(self._degree * e)
        for (a, b, c), coef in self._terms.items():
            result = result + (powers[0][a] * powers[1][b] * powers[2][c]).scale(coef)
        return result

    def divide_exact(self, g: "HomPoly") -> "HomPoly":
        """Return ``q`` with ``q * g == self``; raise ``ArithmeticError`` otherwise."""
        if g.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        if g._degree > self._degree:
            if self.is_zero():
                raise ArithmeticError("quotient degree would be negative")
            raise ArithmeticError("divisor degree exceeds dividend degree")
        qdeg = self._degree - g._degree
        lm, lc = g.leading_term()
        rem = dict(self._terms)
        quot: Dict[Monomial, Fraction] = {}
        while rem:
            m = max(rem)
            if not lm.divides(m):
                raise ArithmeticError("polynomial division is not exact")
            qm = Monomial(m[0] - lm[0], m[1] - lm[1], m[2] - lm[2])
            qc = rem[m] / lc
            quot[qm] = qc
            for gm, gc in g._terms.items():
                t = qm.times(gm)
                v = rem.get(t, 0) - qc * gc
                if v:
                    rem[t] = v
                else:
                    rem.pop(t, None)
        return HomPoly._raw(qdeg, quot)

    # -- text ------------------------------------------------------------
    def to_text(self) -> str:
        if not self._terms:
            return "0" if self._degree == 0 else f"0*x^{self._degree}" if self._degree > 1 else "0*x"
        pieces = []
        for i, (m, c) in enumerate(self.sorted_terms()):
            sign = "-" if c < 0 else "+"
            a = -c if c < 0 else c
            mono = m.to_text()
            if mono == "1":
                body = _fraction_text(a)
            elif a == 1:
                body = mono
            else:
                body = f"{_fraction_text(a)}*{mono}"
            if i == 0:
                pieces.append(body if sign == "+" else "-" + body)
            else:
                pieces.append(sign + body)
        return "".join(pieces)

    __str__ = to_text

    def __repr__(self) -> str:
        return f"HomPoly({self._degree}, {self.to_text()!r})"


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


def _fraction_text(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


# -- free-function surface ---------------------------------------------

def var(name: str) -> HomPoly:
    exps = [0, 0, 0]
    exps[_AXIS[name]] = 1
    return HomPoly(1, {tuple(exps): 1})


X, Y, Z = var("x"), var("y"), var("z")


def derivative(f: HomPoly, axis) -> HomPoly:
    return f.derivative(axis)


def add(f: HomPoly, g: HomPoly) -> HomPoly:
    return f + g


def mul(f: HomPoly, g: HomPoly) -> HomPoly:
    return f * g


def scale(f: HomPoly, c: Rational) -> HomPoly:
    return f.scale(c)


def eval_point(f: HomPoly, p: Sequence[Rational]) -> Fraction:
    return f.eval_point(p)


def product(polys: Iterable[HomPoly]) -> HomPoly:
    out = HomPoly.constant(1)
    for p in polys:
        out = out * p
    return out


def gij(i: int, j: int, u_axis="x", v_axis="y") -> HomPoly:
    """The product ``(u - i v)(u - (i+1) v) ... (u - j v)``."""
    if i > j:
        raise BadRange(f"gij needs i <= j, got i={i}, j={j}")
    if _AXIS[u_axis] == _AXIS[v_axis]:
        raise ValueError("u and v must be different variables")
    u, v = var(VARIABLES[_AXIS[u_axis]]), var(VARIABLES[_AXIS[v_axis]])
    return product(u - v.scale(t) for t in range(i, j + 1))


# -- parser --------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([xyz])|(\*\*|[-+*/^()]))")


def _tokenize(text: str):
    pos = 0
    tokens = []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise PolySyntaxError(f"unexpected character {text[pos:].strip()[:1]!r} at offset {pos}")
        if m.group(1) is not None:
            tokens.append(("INT", int(m.group(1))))
        elif m.group(2) is not None:
            tokens.append(("VAR", m.group(2)))
        else:
            op = m.group(3)
            tokens.append(("OP", "^" if op == "**" else op))
        pos = m.end()
    return tokens


class _Expr:
    # non-homogeneous intermediate: terms plus the set of degrees seen before cancellation
    __slots__ = ("terms", "degs")

    def __init__(self, terms, degs):
        self.terms = terms
        self.degs = degs

    def add(self, other, sign=1):
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = out.get(m, 0) + sign * c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return _Expr(out, self.degs | other.degs)

    def mul(self, other):
        out: Dict[Tuple[int, int, int], Fraction] = {}
        for a, ca in self.terms.items():
            for b, cb in other.terms.items():
                m = (a[0] + b[0], a[1] + b[1], a[2] + b[2])
                out[m] = out.get(m, 0) + ca * cb
        return _Expr({m: c for m, c in out.items() if c}, {p + q for p in self.degs for q in other.degs})


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.i = 0
        if not self.tokens:
            raise PolySyntaxError("empty polynomial text")

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None)

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def expect_op(self, op):
        kind, val = self.take()
        if kind != "OP" or val != op:
            raise PolySyntaxError(f"expected {op!r}, found {val!r}")

    def expr(self) -> _Expr:
        sign = 1
        kind, val = self.peek()
        if kind == "OP" and val in "+-":
            self.take()
            sign = -1 if val == "-" else 1
        acc = _Expr({}, set()).add(self.term(), sign)
        while True:
            kind, val = self.peek()
            if kind == "OP" and val in "+-":
                self.take()
                acc = acc.add(self.term(), -1 if val == "-" else 1)
            else:
                return acc

    def term(self) -> _Expr:
        acc = self.factor()
        while True:
            kind, val = self.peek()
            if kind == "OP" and val == "*":
                self.take()
                acc = acc.mul(self.factor())
            elif kind == "OP" and val == "/":
                self.take()
                k2, n = self.take()
                if k2 != "INT":
                    raise PolySyntaxError("division is only allowed by an integer constant")
                if n == 0:
                    raise PolySyntaxError("division by zero")
                acc = _Expr({m: c / n for m, c in acc.terms.items()}, acc.degs)
            else:
                return acc

    def factor(self) -> _Expr:
        kind, val = self.take()
        if kind == "INT":
            base = _Expr({(0, 0, 0): Fraction(val)} if val else {}, {0})
        elif kind == "VAR":
            e = [0, 0, 0]
            e[_AXIS[val]] = 1
            base = _Expr({tuple(e): Fraction(1)}, {1})
        elif kind == "OP" and val == "(":
            base = self.expr()
            self.expect_op(")")
        else:
            raise PolySyntaxError(f"unexpected token {val!r}")
        while True:
            kind, val = self.peek()
            if kind == "OP" and val == "^":
                self.take()
                k2, n = self.take()
                if k2 != "INT":
                    raise PolySyntaxError("exponent must be a non-negative integer")
                result = _Expr({(0, 0, 0): Fraction(1)}, {0})
                for _ in range(n):
                    result = result.mul(base)
                base = result
            else:
                return base


def parse_poly(text: str) -> HomPoly:
    """Parse ``text`` into a :class:`HomPoly`.

    Raises :class:`PolySyntaxError` for malformed input and
    :class:`NotHomogeneous` when the expanded terms have mixed degrees.
    """
    p = _Parser(text)
    e = p.expr()
    if p.i != len(p.tokens):
        raise PolySyntaxError(f"trailing input starting at token {p.tokens[p.i][1]!r}")
    degrees = {sum(m) for m in e.terms}
    if len(degrees) > 1:
        raise NotHomogeneous(f"terms of degrees {sorted(degrees)} in {text!r}")
    if degrees:
        degree = degrees.pop()
    elif len(e.degs) == 1:
        degree = next(iter(e.degs))
    else:
        raise NotHomogeneous(f"expression {text!r} mixes degrees {sorted(e.degs)}")
    return HomPoly(degree, e.terms)
