"""Sparse multivariate polynomials over the integers.

``x`` and ``y`` are the ring variables of the interlace polynomials; every other
name is a weight indeterminate.  A :class:`Poly` is an immutable mapping from
monomials to nonzero ``int`` coefficients, so equality is structural.

A monomial is a tuple of ``(name, exponent)`` pairs sorted by name, with every
exponent positive.  The empty tuple is the unit monomial.
"""

from __future__ import annotations

import re
from typing import Dict, Iterable, Mapping, Tuple, Union

Monomial = Tuple[Tuple[str, int], ...]

RING_VARS = ("x", "y")
NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")

PolyLike = Union["Poly", int]


class PolyError(ValueError):
    """Raised for arithmetic that has no answer in the polynomial ring."""


class PolyParseError(ValueError):
    """Syntax error in a polynomial expression; ``pos`` is a 0-based offset."""

    def __init__(self, message: str, pos: int, text: str = ""):
        super().__init__(f"{message} at position {pos}")
        self.message = message
        self.pos = pos
        self.text = text


def _mono_mul(m1: Monomial, m2: Monomial) -> Monomial:
    if not m1:
        return m2
    if not m2:
        return m1
    out = []
    i = j = 0
    while i < len(m1) and j < len(m2):
        a, b = m1[i], m2[j]
        if a[0] == b[0]:
            out.append((a[0], a[1] + b[1]))
            i += 1
            j += 1
        elif a[0] < b[0]:
            out.append(a)
            i += 1
        else:
            out.append(b)
            j += 1
    out.extend(m1[i:])
    out.extend(m2[j:])
    return tuple(out)


def _mono_div(m: Monomial, d: Monomial):
    """Return m / d, or None if d does not divide m."""
    if not d:
        return m
    exps = dict(m)
    for name, e in d:
        have = exps.get(name, 0)
        if have < e:
            return None
        if have == e:
            del exps[name]
        else:
            exps[name] = have - e
    return tuple(sorted(exps.items()))


def _mono_degree(m: Monomial) -> int:
    return sum(e for _, e in m)


def monomial(**exponents: int) -> Monomial:
    """Build a monomial, e.g. ``monomial(y=1)``; zero exponents are dropped."""
    for name, e in exponents.items():
        if e < 0:
            raise ValueError(f"negative exponent for {name}")
    return tuple(sorted((n, e) for n, e in exponents.items() if e))


def _sort_key(m: Monomial):
    return (_mono_degree(m), m)


class Poly:
    """Immutable sparse polynomial with arbitrary-precision integer coefficients."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, int] | None = None):
        if terms:
            self._terms: Dict[Monomial, int] = {m: c for m, c in terms.items() if c}
        else:
            self._terms = {}
        self._hash = None

    @classmethod
    def _raw(cls, terms: Dict[Monomial, int]) -> "Poly":
        # caller guarantees no zero coefficients
        p = object.__new__(cls)
        p._terms = terms
        p._hash = None
        return p

    @classmethod
    def const(cls, c: int) -> "Poly":
        return cls._raw({(): c} if c else {})

    @classmethod
    def var(cls, name: str) -> "Poly":
        if not NAME_RE.fullmatch(name):
            raise ValueError(f"invalid variable name {name!r}")
        return cls._raw({((name, 1),): 1})

    @classmethod
    def coerce(cls, value: PolyLike) -> "Poly":
        if isinstance(value, Poly):
            return value
        if isinstance(value, bool) or not isinstance(value, int):
            raise TypeError(f"cannot convert {type(value).__name__} to Poly")
        return cls.const(value)

    @property
    def terms(self) -> Dict[Monomial, int]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and () in self._terms)

    def constant_value(self) -> int:
        if not self.is_constant():
            raise PolyError("polynomial is not constant")
        return self._terms.get((), 0)

    def variables(self) -> set:
        return {name for m in self._terms for name, _ in m}

    def degree(self, name: str | None = None) -> int:
        """Total degree, or degree in one variable; the zero polynomial has degree -1."""
        if not self._terms:
            return -1
        if name is None:
            return max(_mono_degree(m) for m in self._terms)
        return max(dict(m).get(name, 0) for m in self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, int) and not isinstance(other, bool):
            other = Poly.const(other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __add__(self, other: PolyLike) -> "Poly":
        if isinstance(other, int):
            if not other:
                return self
            other = Poly.const(other)
        elif not isinstance(other, Poly):
            return NotImplemented
        if len(other._terms) > len(self._terms):
            big, small = other._terms, self._terms
        else:
            big, small = self._terms, other._terms
        out = dict(big)
        for m, c in small.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return Poly._raw(out)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly._raw({m: -c for m, c in self._terms.items()})

    def __sub__(self, other: PolyLike) -> "Poly":
        if isinstance(other, int):
            return self + (-other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: PolyLike) -> "Poly":
        return (-self) + other

    def __mul__(self, other: PolyLike) -> "Poly":
        if isinstance(other, int):
            if not other:
                return ZERO
            if other == 1:
                return self
            return Poly._raw({m: c * other for m, c in self._terms.items()})
        if not isinstance(other, Poly):
            return NotImplemented
        a, b = self._terms, other._terms
        if not a or not b:
            return ZERO
        if len(b) == 1 and () in b:
            return self * b[()]
        if len(a) == 1 and () in a:
            return other * a[()]
        out: Dict[Monomial, int] = {}
        for m1, c1 in a.items():
            for m2, c2 in b.items():
                m = _mono_mul(m1, m2)
                out[m] = out.get(m, 0) + c1 * c2
        return Poly._raw({m: c for m, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Poly":
        if not isinstance(n, int) or n < 0:
            raise PolyError("exponent must be a nonnegative integer")
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def substitute(self, bindings: Mapping[str, PolyLike]) -> "Poly":
        return substitute(self, bindings)

    def coefficient(self, m: Monomial) -> int:
        return self._terms.get(tuple(m), 0)

    def __repr__(self) -> str:
        return f"Poly({canonical_string(self)!r})"

    def __str__(self) -> str:
        return canonical_string(self)


ZERO = Poly._raw({})
ONE = Poly._raw({(): 1})
X = Poly.var("x")
Y = Poly.var("y")


def var(name: str) -> Poly:
    return Poly.var(name)


def const(c: int) -> Poly:
    return Poly.const(c)


def poly_sum(items: Iterable[Poly]) -> Poly:
    """Sum many polynomials with a single accumulator dict."""
    out: Dict[Monomial, int] = {}
    for p in items:
        for m, c in p._terms.items():
            out[m] = out.get(m, 0) + c
    return Poly._raw({m: c for m, c in out.items() if c})


def poly_prod(items: Iterable[PolyLike]) -> Poly:
    result = ONE
    for p in items:
        result = result * p
    return result


def substitute(p: Poly, bindings: Mapping[str, PolyLike]) -> Poly:
    """Simultaneous substitution of polynomials for variables.

    Unbound variables pass through unchanged.
    """
    if not bindings:
        return p
    bound = {name: Poly.coerce(v) for name, v in bindings.items()}
    power_cache: Dict[Tuple[str, int], Poly] = {}

    def power(name: str, e: int) -> Poly:
        key = (name, e)
        if key not in power_cache:
            power_cache[key] = bound[name] ** e
        return power_cache[key]

    parts = []
    for m, c in p._terms.items():
        keep = tuple((n, e) for n, e in m if n not in bound)
        term = Poly._raw({keep: c})
        for n, e in m:
            if n in bound:
                term = term * power(n, e)
                if not term:
                    break
        parts.append(term)
    return poly_sum(parts)


def exact_div(p: PolyLike, d: PolyLike) -> Poly:
    """Return ``c`` with ``c * d == p``.

    Multivariate division by repeatedly cancelling the leading term of the
    remainder in graded lexicographic order.  Raises :class:`PolyError` when the
    division is not exact or ``d`` is zero.
    """
    p = Poly.coerce(p)
    d = Poly.coerce(d)
    if d.is_zero():
        raise PolyError("division by the zero polynomial")
    if d == ONE:
        return p
    names = sorted(p.variables() | d.variables())

    def key(m: Monomial):
        exps = dict(m)
        vec = tuple(exps.get(n, 0) for n in names)
        return (sum(vec), vec)

    lead_d = max(d._terms, key=key)
    lead_c = d._terms[lead_d]
    rem = dict(p._terms)
    quot: Dict[Monomial, int] = {}
    while rem:
        lead_r = max(rem, key=key)
        coeff = rem[lead_r]
        m = _mono_div(lead_r, lead_d)
        if m is None or coeff % lead_c:
            raise PolyError(f"{canonical_string(p)} is not divisible by {canonical_string(d)}")
        q = coeff // lead_c
        quot[m] = quot.get(m, 0) + q
        for dm, dc in d._terms.items():
            t = _mono_mul(m, dm)
            v = rem.get(t, 0) - q * dc
            if v:
                rem[t] = v
            else:
                rem.pop(t, None)
    return Poly._raw({m: c for m, c in quot.items() if c})


def coefficient_of(p: Poly, m: Monomial) -> int:
    return p.coefficient(m)


def _format_monomial(m: Monomial) -> str:
    return "*".join(name if e == 1 else f"{name}^{e}" for name, e in m)


def canonical_string(p: Poly) -> str:
    """Deterministic text form; parses back to the same polynomial.

    Monomials are ordered by total degree, then by their sorted
    ``(name, exponent)`` lists.  ``-2*x + y + x^2`` is typical output.
    """
    if not p._terms:
        return "0"
    out = []
    for i, m in enumerate(sorted(p._terms, key=_sort_key)):
        c = p._terms[m]
        neg = c < 0
        a = -c if neg else c
        if not m:
            body = str(a)
        elif a == 1:
            body = _format_monomial(m)
        else:
            body = f"{a}*{_format_monomial(m)}"
        if i == 0:
            out.append(f"-{body}" if neg else body)
        else:
            out.append(f" - {body}" if neg else f" + {body}")
    return "".join(out)


# -- parsing ---------------------------------------------------------------

_TOKEN_RE = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(.))")


def _tokenize(text: str):
    tokens = []
    pos = 0
    n = len(text)
    while pos < n:
        m = _TOKEN_RE.match(text, pos)
        if m is None:  # only trailing whitespace left
            break
        if m.group(1) is not None:
            tokens.append(("int", m.group(1), m.start(1)))
        elif m.group(2) is not None:
            tokens.append(("name", m.group(2), m.start(2)))
        elif m.group(3) is not None:
            ch = m.group(3)
            if ch not in "+-*^()":
                raise PolyParseError(f"unexpected character {ch!r}", m.start(3), text)
            tokens.append((ch, ch, m.start(3)))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    # expr   := term (('+'|'-') term)*
    # term   := unary ('*' unary)*
    # unary  := '-' unary | '+' unary | power
    # power  := atom ('^' INT)?      (right operand must be an integer literal)
    # atom   := INT | NAME | '(' expr ')'

    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def fail(self, message: str, tok=None):
        tok = tok or self.peek()
        raise PolyParseError(message, tok[2], self.text)

    def parse(self) -> Poly:
        if self.peek()[0] == "end":
            self.fail("empty expression")
        result = self.expr()
        if self.peek()[0] != "end":
            self.fail(f"unexpected {self.peek()[1]!r}")
        return result

    def expr(self) -> Poly:
        result = self.term()
        while self.peek()[0] in ("+", "-"):
            op = self.take()[0]
            rhs = self.term()
            result = result + rhs if op == "+" else result - rhs
        return result

    def term(self) -> Poly:
        result = self.unary()
        while self.peek()[0] == "*":
            self.take()
            result = result * self.unary()
        return result

    def unary(self) -> Poly:
        kind = self.peek()[0]
        if kind == "-":
            self.take()
            return -self.unary()
        if kind == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self) -> Poly:
        base = self.atom()
        if self.peek()[0] == "^":
            self.take()
            tok = self.peek()
            if tok[0] != "int":
                self.fail("exponent must be a nonnegative integer literal", tok)
            self.take()
            base = base ** int(tok[1])
            if self.peek()[0] == "^":
                self.fail("chained exponent; use parentheses")
        return base

    def atom(self) -> Poly:
        tok = self.take()
        kind = tok[0]
        if kind == "int":
            if self.peek()[0] in ("name", "("):
                self.fail("implicit multiplication is not allowed; use '*'")
            return Poly.const(int(tok[1]))
        if kind == "name":
            nxt = self.peek()[0]
            if nxt in ("int", "name", "("):
                self.fail("implicit multiplication is not allowed; use '*'")
            return Poly.var(tok[1])
        if kind == "(":
            inner = self.expr()
            if self.peek()[0] != ")":
                self.fail("expected ')'")
            self.take()
            return inner
        if kind == "end":
            self.fail("unexpected end of expression", tok)
        self.fail(f"unexpected {tok[1]!r}", tok)


def parse_poly(text: str) -> Poly:
    """Parse an expression like ``"(x-1)^2 - 1"`` into expanded normal form."""
    return _Parser(text).parse()


__all__ = [
    "Monomial",
    "Poly",
    "PolyError",
    "PolyParseError",
    "ZERO",
    "ONE",
    "X",
    "Y",
    "var",
    "const",
    "monomial",
    "poly_sum",
    "poly_prod",
    "substitute",
    "exact_div",
    "coefficient_of",
    "canonical_string",
    "parse_poly",
]
