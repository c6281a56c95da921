"""Sparse multivariate polynomials over the rationals.

Terms are held in a dict keyed by exponent tuples.  Monomial orders are
pluggable (lex / deglex / degrevlex, with an arbitrary variable priority
permutation), and a small recursive-descent parser accepts the text
grammar documented in docs/polynomial-grammar.md.

Formal power series never appear symbolically: every power-series
computation elsewhere in the package happens on truncations at a degree
bound that is provably sufficient because the algebras in play are
finite-dimensional, making the truncated answer exact.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Iterable, Mapping

from .errors import AmbientMismatchError, ParseError

Monomial = tuple  # exponent vectors; length fixed by the ambient VarSet


class VarSet:
    """Ordered set of variable names."""

    __slots__ = ("names", "_index")

    def __init__(self, names: Iterable[str]):
        names = tuple(names)
        if not names or len(set(names)) != len(names):
            raise ValueError("variable names must be unique and non-empty")
        for n in names:
            if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", n):
                raise ValueError(f"bad variable name: {n!r}")
        self.names = names
        self._index = {n: i for i, n in enumerate(names)}

    def __len__(self):
        return len(self.names)

    def __eq__(self, other):
        return isinstance(other, VarSet) and self.names == other.names

    def __hash__(self):
        return hash(self.names)

    def __repr__(self):
        return f"VarSet({', '.join(self.names)})"

    def index(self, name: str) -> int:
        if name not in self._index:
            raise AmbientMismatchError(f"unknown variable: {name!r}")
        return self._index[name]


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def mono_divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def mono_div(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x - y for x, y in zip(a, b))


def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def mono_degree(a: Monomial) -> int:
    return sum(a)


def weighted_degree(m: Monomial, weights) -> int:
    """Dot product of the exponent vector with an integer weight vector."""
    if len(m) != len(weights):
        raise AmbientMismatchError("weight vector length differs from variables")
    return sum(e * w for e, w in zip(m, weights))


class MonomialOrder:
    """Total multiplicative monomial order.

    kind is one of lex, deglex, degrevlex; priority is a permutation of
    variable indices, highest priority first.  The deg* kinds refine total
    degree.  A "homogeneous lexicographic" order that makes y beat x on
    ties is deglex with priority (y, x).
    """

    KINDS = ("lex", "deglex", "degrevlex")
    __slots__ = ("kind", "priority")

    def __init__(self, kind: str, priority: Iterable[int]):
        if kind not in self.KINDS:
            raise ValueError(f"unknown order kind: {kind}")
        priority = tuple(priority)
        if sorted(priority) != list(range(len(priority))):
            raise ValueError("priority must be a permutation of variable indices")
        self.kind = kind
        self.priority = priority

    @classmethod
    def for_varset(
        cls, vars: VarSet, kind: str = "degrevlex", priority_names=None
    ) -> "MonomialOrder":
        if priority_names is None:
            priority = range(len(vars))
        else:
            priority = [vars.index(n) for n in priority_names]
        return cls(kind, priority)

    def key(self, m: Monomial):
        if self.kind == "lex":
            return tuple(m[p] for p in self.priority)
        if self.kind == "deglex":
            return (sum(m), tuple(m[p] for p in self.priority))
        return (sum(m), tuple(-m[p] for p in reversed(self.priority)))

    def greater(self, a: Monomial, b: Monomial) -> bool:
        return self.key(a) > self.key(b)

    def __eq__(self, other):
        return (
            isinstance(other, MonomialOrder)
            and self.kind == other.kind
            and self.priority == other.priority
        )

    def __hash__(self):
        return hash((self.kind, self.priority))

    def __repr__(self):
        return f"MonomialOrder({self.kind}, priority={self.priority})"


class Polynomial:
    """Polynomial with Fraction coefficients; zero coefficients never stored."""

    __slots__ = ("vars", "terms")

    def __init__(self, vars: VarSet, terms: Mapping[Monomial, Fraction] | None = None):
        self.vars = vars
        clean = {}
        n = len(vars)
        for mono, c in (terms or {}).items():
            c = c if isinstance(c, Fraction) else Fraction(c)
            if c == 0:
                continue
            mono = tuple(int(e) for e in mono)
            if len(mono) != n or any(e < 0 for e in mono):
                raise ValueError(f"bad exponent vector {mono}")
            clean[mono] = c
        self.terms = clean

    # constructors -----------------------------------------------------
    @classmethod
    def zero(cls, vars: VarSet) -> "Polynomial":
        return cls(vars)

    @classmethod
    def constant(cls, vars: VarSet, c) -> "Polynomial":
        return cls(vars, {tuple([0] * len(vars)): Fraction(c)})

    @classmethod
    def variable(cls, vars: VarSet, name: str) -> "Polynomial":
        mono = [0] * len(vars)
        mono[vars.index(name)] = 1
        return cls(vars, {tuple(mono): Fraction(1)})

    @classmethod
    def monomial(cls, vars: VarSet, mono: Monomial, coeff=1) -> "Polynomial":
        return cls(vars, {tuple(mono): Fraction(coeff)})

    # basic queries -----------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return (
            isinstance(other, Polynomial)
            and self.vars == other.vars
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.vars, frozenset(self.terms.items())))

    def coefficient(self, mono: Monomial) -> Fraction:
        return self.terms.get(tuple(mono), Fraction(0))

    def constant_term(self) -> Fraction:
        return self.terms.get(tuple([0] * len(self.vars)), Fraction(0))

    def total_degree(self) -> int:
        """Max total degree; -1 for the zero polynomial."""
        return max((sum(m) for m in self.terms), default=-1)

    def order_of(self):
        """Min total degree of a term; math.inf for the zero polynomial."""
        return min((sum(m) for m in self.terms), default=math.inf)

    def leading_term(self, order: MonomialOrder) -> tuple[Monomial, Fraction]:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        m = max(self.terms, key=order.key)
        return m, self.terms[m]

    def sorted_terms(self, order: MonomialOrder):
        return sorted(self.terms.items(), key=lambda t: order.key(t[0]), reverse=True)

    # arithmetic ---------------------------------------------------------
    def _check(self, other: "Polynomial"):
        if self.vars != other.vars:
            raise AmbientMismatchError("polynomials over different variable sets")

    def __add__(self, other: "Polynomial") -> "Polynomial":
        self._check(other)
        terms = dict(self.terms)
        for m, c in other.terms.items():
            s = terms.get(m, Fraction(0)) + c
            if s:
                terms[m] = s
            else:
                terms.pop(m, None)
        return Polynomial(self.vars, terms)

    def __neg__(self) -> "Polynomial":
        return Polynomial(self.vars, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __mul__(self, other) -> "Polynomial":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        self._check(other)
        terms: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = mono_mul(m1, m2)
                s = terms.get(m, Fraction(0)) + c1 * c2
                if s:
                    terms[m] = s
                else:
                    terms.pop(m, None)
        return Polynomial(self.vars, terms)

    __rmul__ = __mul__

    def scale(self, c) -> "Polynomial":
        c = Fraction(c)
        return Polynomial(self.vars, {m: c * v for m, v in self.terms.items()})

    def __pow__(self, n: int) -> "Polynomial":
        if n < 0:
            raise ValueError("negative power")
        result = Polynomial.constant(self.vars, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    # calculus and rewriting ----------------------------------------------
    def partial_derivative(self, name: str) -> "Polynomial":
        i = self.vars.index(name)
        terms: dict = {}
        for m, c in self.terms.items():
            if m[i] == 0:
                continue
            dm = list(m)
            dm[i] -= 1
            terms[tuple(dm)] = c * m[i]
        return Polynomial(self.vars, terms)

    def truncate(self, deg: int) -> "Polynomial":
        """Drop all terms of total degree > deg."""
        if deg < 0:
            raise ValueError("truncation degree must be non-negative")
        return Polynomial(
            self.vars, {m: c for m, c in self.terms.items() if sum(m) <= deg}
        )

    def substitute(
        self,
        images: Mapping[str, "Polynomial"],
        target: VarSet | None = None,
        max_degree: int | None = None,
    ) -> "Polynomial":
        """Composition p(images); fully expanded.

        Variables absent from `images` map to themselves in the target
        variable set.  With `max_degree` every intermediate product is
        truncated, which is exact for callers working modulo a power of
        the maximal ideal.
        """
        if target is None:
            target = next(iter(images.values())).vars if images else self.vars
        imgs = []
        for name in self.vars.names:
            if name in images:
                img = images[name]
                if img.vars != target:
                    raise AmbientMismatchError("image over a different variable set")
            else:
                img = Polynomial.variable(target, name)
            imgs.append(img)
        cache: list[dict[int, Polynomial]] = [
            {0: Polynomial.constant(target, 1)} for _ in imgs
        ]

        def power(i, e):
            c = cache[i]
            if e not in c:
                p = power(i, e - 1) * imgs[i]
                if max_degree is not None:
                    p = p.truncate(max_degree)
                c[e] = p
            return c[e]

        out = Polynomial.zero(target)
        for m, coeff in self.terms.items():
            part = Polynomial.constant(target, coeff)
            for i, e in enumerate(m):
                if e:
                    part = part * power(i, e)
                    if max_degree is not None:
                        part = part.truncate(max_degree)
            out = out + part
        return out

    # presentation ---------------------------------------------------------
    def __str__(self):
        if not self.terms:
            return "0"
        order = MonomialOrder.for_varset(self.vars, "deglex")
        parts = []
        for m, c in self.sorted_terms(order):
            factors = []
            for name, e in zip(self.vars.names, m):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            mag = abs(c)
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = "*".join([str(mag)] + factors)
            parts.append(("-" if c < 0 else "+", body))
        sign, body = parts[0]
        out = ("-" if sign == "-" else "") + body
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    __repr__ = __str__


# parser ---------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|([+\-*/^()]))")


def _tokenize(text: str):
    pos = 0
    out = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            stripped = text[pos:].lstrip()
            if not stripped:
                break
            at = len(text) - len(stripped)
            raise ParseError(f"unexpected character {stripped[0]!r}", at)
        if m.group(1):
            out.append(("int", int(m.group(1)), m.start(1)))
        elif m.group(2):
            out.append(("name", m.group(2), m.start(2)))
        else:
            out.append(("op", m.group(3), m.start(3)))
        pos = m.end()
    out.append(("end", None, len(text)))
    return out


class _Parser:
    def __init__(self, text: str, vars: VarSet):
        self.tokens = _tokenize(text)
        self.i = 0
        self.vars = vars

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect_op(self, op):
        kind, val, pos = self.take()
        if kind != "op" or val != op:
            raise ParseError(f"expected {op!r}", pos)

    def parse(self) -> Polynomial:
        p = self.expr()
        kind, val, pos = self.peek()
        if kind != "end":
            raise ParseError(f"trailing input {val!r}", pos)
        return p

    def expr(self) -> Polynomial:
        kind, val, _ = self.peek()
        negate = False
        if kind == "op" and val in "+-":
            self.take()
            negate = val == "-"
        p = self.term()
        if negate:
            p = -p
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val in "+-":
                self.take()
                q = self.term()
                p = p - q if val == "-" else p + q
            else:
                return p

    def term(self) -> Polynomial:
        p = self.factor()
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val == "*":
                self.take()
                p = p * self.factor()
            else:
                return p

    def factor(self) -> Polynomial:
        p = self.base()
        kind, val, _ = self.peek()
        if kind == "op" and val == "^":
            self.take()
            kind, e, pos = self.take()
            if kind != "int":
                raise ParseError("exponent must be a non-negative integer", pos)
            p = p**e
        return p

    def base(self) -> Polynomial:
        kind, val, pos = self.take()
        if kind == "int":
            k2, v2, _ = self.peek()
            if k2 == "op" and v2 == "/":
                self.take()
                k3, v3, p3 = self.take()
                if k3 != "int":
                    raise ParseError("denominator must be an integer", p3)
                if v3 == 0:
                    raise ParseError("zero denominator", p3)
                return Polynomial.constant(self.vars, Fraction(val, v3))
            return Polynomial.constant(self.vars, val)
        if kind == "name":
            if val not in self.vars.names:
                raise ParseError(f"unknown variable {val!r}", pos)
            return Polynomial.variable(self.vars, val)
        if kind == "op" and val == "(":
            p = self.expr()
            self.expect_op(")")
            return p
        raise ParseError(f"unexpected token {val!r}", pos)


def parse(text: str, vars: VarSet) -> Polynomial:
    """Parse the documented grammar: signed terms built from `+ - * ^`,
    integer or p/q coefficients, parentheses; no implicit multiplication."""
    return _Parser(text, vars).parse()


def parse_many(text: str, vars: VarSet) -> list[Polynomial]:
    """Comma-separated polynomial list."""
    return [parse(chunk, vars) for chunk in text.split(",") if chunk.strip()]
