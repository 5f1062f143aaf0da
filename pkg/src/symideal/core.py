"""Exact coefficient rings, monomials and sparse polynomials.

Variables are ``x[i,j]`` (row ``i``, column ``j``) or ``t[j]``.  Internally a
variable is the pair ``(col, row)`` with ``row == 0`` standing for ``t[col]``,
and a monomial is a tuple of ``(col, row, exp)`` triples sorted by
``(col, row)``.  That column-major order is the canonical variable order:
``x[1,1] > x[2,1] > ... > x[1,2] > ...``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Mapping, NamedTuple, Union

MAX_ROWS = 12
GREVLEX = "grevlex"

Coefficient = Union[int, Fraction]
Monomial = tuple  # tuple[tuple[int, int, int], ...]
MultiDegree = tuple  # tuple[int, ...], trailing zeros trimmed


class PolynomialError(ValueError):
    """Raised on malformed polynomials or incompatible operands."""


class ParseError(PolynomialError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class CharacteristicObstruction(ArithmeticError):
    """An operation needs ``1/n!`` but the characteristic is at most ``n``."""


@lru_cache(maxsize=None)
def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    i = 3
    while i * i <= n:
        if n % i == 0:
            return False
        i += 2
    return True


@dataclass(frozen=True)
class CoefficientRing:
    """One of ZZ, QQ or GF(p).  ``kind`` is ``"int"``, ``"rat"`` or ``"gf"``."""

    kind: str
    p: int | None = None

    def __post_init__(self):
        if self.kind not in ("int", "rat", "gf"):
            raise PolynomialError(f"unknown coefficient ring {self.kind!r}")
        if self.kind == "gf":
            if self.p is None or not (2 <= self.p < 2**31) or not is_prime(self.p):
                raise PolynomialError(f"GF(p) needs a prime 2 <= p < 2^31, got {self.p}")
        elif self.p is not None:
            raise PolynomialError("only GF(p) carries a modulus")

    @property
    def is_field(self) -> bool:
        return self.kind != "int"

    @property
    def characteristic(self) -> int:
        return self.p if self.kind == "gf" else 0

    def __call__(self, c) -> Coefficient:
        """Normalize ``c`` into this ring."""
        if self.kind == "gf":
            if isinstance(c, Fraction):
                return c.numerator * pow(c.denominator, -1, self.p) % self.p
            return int(c) % self.p
        if self.kind == "rat":
            return Fraction(c)
        if isinstance(c, Fraction):
            if c.denominator != 1:
                raise PolynomialError(f"{c} is not an integer")
            return c.numerator
        return int(c)

    def inv(self, c: Coefficient) -> Coefficient:
        if self.kind == "int":
            raise PolynomialError("ZZ is not a field")
        if not c:
            raise ZeroDivisionError("inverse of zero")
        if self.kind == "gf":
            return pow(int(c), -1, self.p)
        return 1 / Fraction(c)

    def __str__(self):
        return {"int": "ZZ", "rat": "QQ"}.get(self.kind) or f"GF({self.p})"


ZZ = CoefficientRing("int")
QQ = CoefficientRing("rat")


def GF(p: int) -> CoefficientRing:
    return CoefficientRing("gf", p)


class Variable(NamedTuple):
    """``x[row,col]``, or ``t[col]`` when ``row == 0``."""

    col: int
    row: int

    @property
    def kind(self) -> str:
        return "t" if self.row == 0 else "x"

    def __str__(self):
        return f"t[{self.col}]" if self.row == 0 else f"x[{self.row},{self.col}]"


# -- monomials ---------------------------------------------------------------


@lru_cache(maxsize=1 << 18)
def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    exps = {(c, r): e for c, r, e in a}
    for c, r, e in b:
        exps[c, r] = exps.get((c, r), 0) + e
    return tuple(sorted((c, r, e) for (c, r), e in exps.items()))


def mono_divides(a: Monomial, b: Monomial) -> bool:
    """True iff ``a`` divides ``b``."""
    if len(a) > len(b):
        return False
    exps = {(c, r): e for c, r, e in b}
    return all(exps.get((c, r), 0) >= e for c, r, e in a)


def mono_div(b: Monomial, a: Monomial) -> Monomial:
    """``b / a``; assumes ``a`` divides ``b``."""
    exps = {(c, r): e for c, r, e in b}
    for c, r, e in a:
        exps[c, r] -= e
    return tuple(sorted((c, r, e) for (c, r), e in exps.items() if e))


def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    exps = {(c, r): e for c, r, e in a}
    for c, r, e in b:
        exps[c, r] = max(exps.get((c, r), 0), e)
    return tuple(sorted((c, r, e) for (c, r), e in exps.items()))


def mono_degree(m: Monomial) -> int:
    return sum(e for _, _, e in m)


def mono_kind(m: Monomial) -> str | None:
    if not m:
        return None
    return "t" if m[0][1] == 0 else "x"


@lru_cache(maxsize=1 << 18)
def grevlex_key(m: Monomial) -> tuple:
    """Sort key: larger key means larger monomial in grevlex.

    Ties in total degree are broken at the smallest variable where the
    exponents differ; the monomial with the smaller exponent there wins.
    """
    return (mono_degree(m), tuple((-c, -r, -e) for c, r, e in reversed(m)))


def compare_monomials(a: Monomial, b: Monomial, order: str = GREVLEX) -> int:
    """Return -1, 0 or 1 as ``a`` is smaller, equal or larger than ``b``."""
    if order != GREVLEX:
        raise PolynomialError(f"unsupported monomial order {order!r}")
    ka, kb = mono_kind(a), mono_kind(b)
    if ka and kb and ka != kb:
        raise PolynomialError("cannot compare x- and t-monomials")
    if a == b:
        return 0
    return 1 if grevlex_key(a) > grevlex_key(b) else -1


def multidegree(m: Monomial) -> MultiDegree:
    """Per-column total degrees ``(u_1, u_2, ...)``, trailing zeros trimmed."""
    if mono_kind(m) == "t":
        raise PolynomialError("multidegree is defined for x-monomials only")
    if not m:
        return ()
    out = [0] * m[-1][0]
    for c, _, e in m:
        out[c - 1] += e
    return tuple(out)


def md_add(a: MultiDegree, b: MultiDegree) -> MultiDegree:
    n = max(len(a), len(b))
    out = [(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)]
    return md_trim(out)


def md_sub(a: MultiDegree, b: MultiDegree) -> MultiDegree:
    n = max(len(a), len(b))
    out = [(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)]
    if any(v < 0 for v in out):
        raise PolynomialError(f"{b} is not below {a}")
    return md_trim(out)


def md_leq(a: MultiDegree, b: MultiDegree) -> bool:
    return len(a) <= len(b) and all(x <= y for x, y in zip(a, b))


def md_trim(seq) -> MultiDegree:
    seq = list(seq)
    while seq and seq[-1] == 0:
        seq.pop()
    return tuple(seq)


def format_monomial(m: Monomial) -> str:
    parts = []
    for c, r, e in m:
        v = f"t[{c}]" if r == 0 else f"x[{r},{c}]"
        parts.append(v if e == 1 else f"{v}^{e}")
    return "*".join(parts)


# -- polynomials -------------------------------------------------------------


class Polynomial:
    """Immutable sparse polynomial over ``ring`` in ``rows`` rows of x-variables.

    ``kind`` is ``"x"`` or ``"t"``; t-polynomials always have ``rows == 0``.
    """

    __slots__ = ("ring", "rows", "kind", "_terms", "_hash")

    def __init__(self, ring: CoefficientRing, rows: int, terms=(), kind: str = "x", *,
                 _trusted: bool = False):
        self.ring = ring
        self.kind = kind
        self.rows = 0 if kind == "t" else rows
        self._hash = None
        if _trusted:
            self._terms = terms
            return
        if kind not in ("x", "t"):
            raise PolynomialError(f"unknown variable kind {kind!r}")
        if kind == "x" and not (1 <= rows <= MAX_ROWS):
            raise PolynomialError(f"row bound must be in 1..{MAX_ROWS}, got {rows}")
        acc: dict = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for m, c in items:
            m = tuple(sorted((int(col), int(row), int(e)) for col, row, e in m if e))
            for col, row, e in m:
                if e < 0 or col < 1:
                    raise PolynomialError(f"bad variable or exponent in {m}")
                if kind == "t" and row != 0 or kind == "x" and not (1 <= row <= rows):
                    raise PolynomialError(f"variable {Variable(col, row)} outside the ring")
            if len({(col, row) for col, row, _ in m}) != len(m):
                raise PolynomialError(f"repeated variable in {m}")
            acc[m] = acc.get(m, 0) + ring(c)
        self._terms = {m: ring(c) for m, c in acc.items() if ring(c)}

    # construction helpers

    @classmethod
    def constant(cls, ring, rows, c=1, kind="x") -> Polynomial:
        return cls(ring, rows, {(): c}, kind)

    @classmethod
    def zero(cls, ring, rows, kind="x") -> Polynomial:
        return cls(ring, rows, {}, kind)

    @classmethod
    def x(cls, ring, rows, row, col) -> Polynomial:
        return cls(ring, rows, {((col, row, 1),): 1})

    @classmethod
    def t(cls, ring, col) -> Polynomial:
        return cls(ring, 0, {((col, 0, 1),): 1}, "t")

    def _new(self, terms: dict, ring=None, rows=None, kind=None) -> Polynomial:
        return Polynomial(ring or self.ring, self.rows if rows is None else rows, terms,
                          kind or self.kind, _trusted=True)

    # access

    def items(self):
        return self._terms.items()

    def coeff(self, m: Monomial) -> Coefficient:
        return self._terms.get(m, self.ring(0))

    def monomials(self) -> list:
        return sorted(self._terms, key=grevlex_key, reverse=True)

    def terms(self) -> list:
        """``(monomial, coefficient)`` pairs in descending grevlex order."""
        return [(m, self._terms[m]) for m in self.monomials()]

    def leading_monomial(self) -> Monomial:
        if not self._terms:
            raise PolynomialError("zero polynomial has no leading monomial")
        return max(self._terms, key=grevlex_key)

    def leading_coefficient(self) -> Coefficient:
        return self._terms[self.leading_monomial()]

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(not m for m in self._terms)

    def degree(self) -> int:
        return max((mono_degree(m) for m in self._terms), default=-1)

    def columns(self) -> set:
        return {c for m in self._terms for c, _, _ in m}

    def multidegrees(self) -> set:
        return {multidegree(m) for m in self._terms}

    def is_multihomogeneous(self) -> bool:
        return len(self.multidegrees()) <= 1

    def is_homogeneous(self) -> bool:
        return len({mono_degree(m) for m in self._terms}) <= 1

    def multidegree(self) -> MultiDegree:
        """The common multidegree of a nonzero multihomogeneous polynomial."""
        degs = self.multidegrees()
        if len(degs) != 1:
            raise PolynomialError("polynomial is zero or not multihomogeneous")
        return next(iter(degs))

    def components(self) -> dict:
        """Split into multihomogeneous components keyed by multidegree."""
        parts: dict = {}
        for m, c in self._terms.items():
            parts.setdefault(multidegree(m), {})[m] = c
        return {d: self._new(t) for d, t in parts.items()}

    def map_coefficients(self, fn, ring: CoefficientRing) -> Polynomial:
        return Polynomial(ring, self.rows, {m: fn(c) for m, c in self._terms.items()}, self.kind)

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def __iter__(self) -> Iterator:
        return iter(self.terms())

    # arithmetic

    def _check(self, other: Polynomial) -> str:
        if self.ring != other.ring:
            raise PolynomialError(f"ring mismatch: {self.ring} vs {other.ring}")
        kind = self.kind
        if self.kind != other.kind:
            if self.is_constant():
                kind = other.kind
            elif not other.is_constant():
                raise PolynomialError("cannot mix x- and t-polynomials")
        elif self.rows != other.rows:
            raise PolynomialError(f"row-bound mismatch: {self.rows} vs {other.rows}")
        return kind

    def _coerce(self, other) -> Polynomial:
        if isinstance(other, Polynomial):
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial(self.ring, self.rows, {(): other}, self.kind)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        kind = self._check(other)
        rows = self.rows if kind == self.kind else other.rows
        ring = self.ring
        out = dict(self._terms)
        for m, c in other._terms.items():
            v = ring(out.get(m, 0) + c)
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return Polynomial(ring, rows, out, kind, _trusted=True)

    __radd__ = __add__

    def __neg__(self):
        return self._new({m: self.ring(-c) for m, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        kind = self._check(other)
        rows = self.rows if kind == self.kind else other.rows
        ring = self.ring
        out: dict = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = mono_mul(m1, m2)
                out[m] = out.get(m, 0) + c1 * c2
        out = {m: v for m, c in out.items() if (v := ring(c))}
        return Polynomial(ring, rows, out, kind, _trusted=True)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def scale(self, c) -> Polynomial:
        ring = self.ring
        c = ring(c)
        if not c:
            return self._new({})
        return self._new({m: v for m, a in self._terms.items() if (v := ring(a * c))})

    def mul_term(self, mono: Monomial, c) -> Polynomial:
        ring = self.ring
        return self._new({mono_mul(m, mono): v for m, a in self._terms.items()
                          if (v := ring(a * c))})

    def __pow__(self, e: int):
        if e < 0:
            raise PolynomialError("negative exponent")
        result = Polynomial.constant(self.ring, self.rows, 1, self.kind)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self._coerce(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return (self.ring == other.ring and self._terms == other._terms
                and (self.is_constant() or (self.kind, self.rows) == (other.kind, other.rows)))

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self._terms.items())))
        return self._hash

    def __str__(self):
        return format_polynomial(self)

    def __repr__(self):
        return f"Polynomial({self.ring}, rows={self.rows}, {format_polynomial(self)!r})"


def format_polynomial(f: Polynomial) -> str:
    """Canonical text: descending grevlex, unit coefficients and exponents suppressed."""
    if f.is_zero():
        return "0"
    out = []
    for i, (m, c) in enumerate(f.terms()):
        neg = c < 0
        a = -c if neg else c
        if f.ring.kind == "rat" and a.denominator == 1:
            a = a.numerator
        mono = format_monomial(m)
        if not mono:
            body = str(a)
        elif a == 1:
            body = mono
        else:
            body = f"{a}*{mono}"
        if i == 0:
            out.append("-" + body if neg else body)
        else:
            out.append(("-" if neg else "+") + body)
    return "".join(out)


def valuation_p(f: Polynomial, p: int) -> float | int:
    """Largest ``e`` with ``p**e`` dividing every coefficient; ``inf`` for zero."""
    if f.ring.kind != "int":
        raise PolynomialError("valuation_p needs an integer polynomial")
    if p < 2 or not is_prime(p):
        raise PolynomialError(f"{p} is not prime")
    best = math.inf
    for _, c in f.items():
        c = abs(c)
        e = 0
        while c % p == 0:
            c //= p
            e += 1
        best = min(best, e)
    return best


# -- parsing -----------------------------------------------------------------


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def peek(self) -> str:
        while self.pos < len(self.text) and self.text[self.pos] in " \t":
            self.pos += 1
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, s: str):
        self.peek()
        if not self.text.startswith(s, self.pos):
            raise ParseError(f"expected {s!r}", self.pos)
        self.pos += len(s)

    def nat(self) -> int:
        self.peek()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            raise ParseError("expected a natural number", start)
        return int(self.text[start:self.pos])

    def index(self) -> int:
        pos = self.pos
        v = self.nat()
        if v < 1:
            raise ParseError("indices start at 1", pos)
        return v

    def factor(self):
        ch = self.peek()
        pos = self.pos
        if ch == "x":
            self.expect("x[")
            row = self.index()
            self.expect(",")
            col = self.index()
            self.expect("]")
            var = (col, row)
        elif ch == "t":
            self.expect("t[")
            var = (self.index(), 0)
            self.expect("]")
        else:
            raise ParseError("expected a variable", pos)
        e = 1
        if self.peek() == "^":
            self.pos += 1
            e = self.nat()
        return var, e, pos

    def term(self):
        coeff = Fraction(1)
        factors = []
        if self.peek().isdigit():
            num = self.nat()
            if self.peek() == "/":
                slash = self.pos
                self.pos += 1
                den = self.nat()
                if den == 0:
                    raise ParseError("zero denominator", slash)
                coeff = Fraction(num, den)
                self.has_fraction = slash
            else:
                coeff = Fraction(num)
            if self.peek() != "*":
                return coeff, factors
            self.pos += 1
        factors.append(self.factor())
        while self.peek() == "*":
            self.pos += 1
            factors.append(self.factor())
        return coeff, factors

    def poly(self):
        self.has_fraction = None
        sign = 1
        if self.peek() == "-":
            self.pos += 1
            sign = -1
        terms = [(sign, *self.term())]
        while self.peek() in ("+", "-"):
            sign = 1 if self.text[self.pos] == "+" else -1
            self.pos += 1
            terms.append((sign, *self.term()))
        if self.peek():
            raise ParseError(f"unexpected {self.text[self.pos]!r}", self.pos)
        return terms


def parse_polynomial(text: str, ring: CoefficientRing, rows: int, kind: str | None = None) -> Polynomial:
    """Parse the ASCII polynomial grammar, e.g. ``"x[1,1]*x[1,2]-1/2*x[2,1]^3"``."""
    parser = _Parser(text)
    terms = parser.poly()
    if parser.has_fraction is not None and ring.kind != "rat":
        raise ParseError(f"denominator not allowed over {ring}", parser.has_fraction)
    kinds = set()
    acc: dict = {}
    for sign, coeff, factors in terms:
        exps: dict = {}
        for (col, row), e, pos in factors:
            if row:
                kinds.add("x")
                if row > rows:
                    raise ParseError(f"row index {row} exceeds row bound {rows}", pos)
            else:
                kinds.add("t")
            exps[col, row] = exps.get((col, row), 0) + e
        m = tuple(sorted((c, r, e) for (c, r), e in exps.items() if e))
        acc[m] = acc.get(m, 0) + sign * coeff
    if len(kinds) > 1:
        raise PolynomialError("polynomial mixes x- and t-variables")
    found = kinds.pop() if kinds else None
    if kind and found and kind != found:
        raise PolynomialError(f"expected a {kind}-polynomial")
    kind = found or kind or "x"
    return Polynomial(ring, rows, acc, kind)

