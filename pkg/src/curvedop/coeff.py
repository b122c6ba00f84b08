"""Exact scalars: the rationals, small prime fields, and polynomials in named parameters.

Every structure constant in the package is a :class:`Poly`.  A polynomial lives in a
:class:`Ring`, which fixes the coefficient :class:`Field` and the ordered list of
parameter names.  Polys are immutable and always stored in canonical form, so two
polys are equal exactly when their term maps are equal.

Printing uses graded-lexicographic order with variables compared alphabetically,
and the printed form parses back to the same polynomial::

    >>> R = Ring(Field.rationals(), ("p",))
    >>> f = R.parse("p^2 - 3/2*p")
    >>> str(f * 2)
    'p^2 - 3/2*p'
"""
from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Mapping, Union

Scalar = Union[int, Fraction]

MAX_PRIME = 251


class ParseError(ValueError):
    """Raised for malformed polynomial text; ``pos`` is the 0-based offset."""

    def __init__(self, message: str, pos: int | None = None):
        self.pos = pos
        if pos is not None:
            message = f"{message} (at position {pos})"
        super().__init__(message)


class RingMismatch(TypeError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    f = 2
    while f * f <= n:
        if n % f == 0:
            return False
        f += 1
    return True


class Field:
    """The base field: ``Field.rationals()`` or ``Field.gf(p)`` for a prime ``p <= 251``.

    Field elements are plain Python numbers.  Over Q they are ints or reduced
    Fractions (a Fraction with denominator 1 is always stored as int); over F_p
    they are ints in ``range(p)``.
    """

    __slots__ = ("p",)

    def __init__(self, p: int = 0):
        if p:
            if not is_prime(p) or p > MAX_PRIME:
                raise ValueError(f"prime field needs a prime 2 <= p <= {MAX_PRIME}, got {p}")
        object.__setattr__(self, "p", p)

    def __setattr__(self, name, value):
        raise AttributeError("Field is immutable")

    @classmethod
    def rationals(cls) -> "Field":
        return cls(0)

    @classmethod
    def gf(cls, p: int) -> "Field":
        if not p:
            raise ValueError("prime field needs a prime 2 <= p <= 251, got 0")
        return cls(p)

    @classmethod
    def from_string(cls, text: str) -> "Field":
        """Parse the bundle spelling: ``"Q"`` or ``"F<p>"``."""
        if text == "Q":
            return cls(0)
        m = re.fullmatch(r"F([0-9]+)", text)
        if not m:
            raise ValueError(f"field must be 'Q' or 'F<p>', got {text!r}")
        return cls.gf(int(m.group(1)))

    @property
    def characteristic(self) -> int:
        return self.p

    @property
    def is_rational(self) -> bool:
        return self.p == 0

    def __eq__(self, other):
        return isinstance(other, Field) and other.p == self.p

    def __hash__(self):
        return hash(("Field", self.p))

    def __str__(self):
        return "Q" if self.p == 0 else f"F{self.p}"

    def __repr__(self):
        return f"Field({str(self)!r})"

    def __reduce__(self):
        return (Field, (self.p,))

    # element arithmetic ---------------------------------------------------

    def __call__(self, x) -> Scalar:
        """Coerce an int or Fraction into this field."""
        if isinstance(x, bool):
            x = int(x)
        if self.p:
            if isinstance(x, Fraction):
                den = x.denominator % self.p
                if den == 0:
                    raise ZeroDivisionError(f"{x} has no image in {self}")
                return x.numerator * pow(den, -1, self.p) % self.p
            return int(x) % self.p
        if isinstance(x, Fraction):
            return x.numerator if x.denominator == 1 else x
        return int(x)

    def norm(self, x: Scalar) -> Scalar:
        """Canonicalize the result of raw int/Fraction arithmetic."""
        if self.p:
            return x % self.p
        if isinstance(x, Fraction) and x.denominator == 1:
            return x.numerator
        return x

    def inv(self, x: Scalar) -> Scalar:
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        if self.p:
            return pow(x, -1, self.p)
        return self.norm(Fraction(1) / x)

    def elements(self) -> range:
        if not self.p:
            raise ValueError("Q is infinite")
        return range(self.p)


class Ring:
    """Polynomial ring ``field[params]``; parameter order fixes exponent-vector layout."""

    __slots__ = ("field", "params", "_index", "_alpha", "_zero_exp")

    def __init__(self, field: Field, params: Iterable[str] = ()):
        params = tuple(params)
        if len(set(params)) != len(params):
            raise ValueError(f"duplicate parameter names in {params}")
        for name in params:
            if not _IDENT.fullmatch(name):
                raise ValueError(f"bad parameter name {name!r}")
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "params", params)
        object.__setattr__(self, "_index", {n: i for i, n in enumerate(params)})
        object.__setattr__(self, "_alpha", tuple(sorted(range(len(params)), key=params.__getitem__)))
        object.__setattr__(self, "_zero_exp", (0,) * len(params))

    def __setattr__(self, name, value):
        raise AttributeError("Ring is immutable")

    def __eq__(self, other):
        return isinstance(other, Ring) and self.field == other.field and self.params == other.params

    def __hash__(self):
        return hash((self.field, self.params))

    def __repr__(self):
        return f"Ring({self.field}, {list(self.params)})"

    def __reduce__(self):
        return (Ring, (self.field, self.params))

    @property
    def nvars(self) -> int:
        return len(self.params)

    def __call__(self, c) -> "Poly":
        if isinstance(c, Poly):
            if c.ring != self:
                raise RingMismatch(f"{c.ring} vs {self}")
            return c
        if isinstance(c, str):
            return self.parse(c)
        c = self.field(c)
        return Poly(self, {self._zero_exp: c} if c else {}, _trusted=True)

    @property
    def zero(self) -> "Poly":
        return Poly(self, {}, _trusted=True)

    @property
    def one(self) -> "Poly":
        return self(1)

    def var(self, name: str) -> "Poly":
        try:
            i = self._index[name]
        except KeyError:
            raise KeyError(f"{name!r} is not a parameter of {self}") from None
        e = [0] * self.nvars
        e[i] = 1
        return Poly(self, {tuple(e): 1}, _trusted=True)

    def parse(self, text: str) -> "Poly":
        return parse_poly(text, self)

    def with_field(self, field: Field) -> "Ring":
        return Ring(field, self.params)


class Poly:
    """Immutable polynomial with exact coefficients in canonical form."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: Ring, terms: Mapping[tuple, Scalar] | None = None, *, _trusted=False):
        if _trusted:
            object.__setattr__(self, "terms", terms)
        else:
            clean = {}
            n = ring.nvars
            for exp, c in (terms or {}).items():
                exp = tuple(exp)
                if len(exp) != n or any(e < 0 for e in exp):
                    raise ValueError(f"bad exponent vector {exp} for {ring}")
                c = ring.field(c)
                if c:
                    clean[exp] = ring.field.norm(clean.get(exp, 0) + c)
                    if not clean[exp]:
                        del clean[exp]
            object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    def __reduce__(self):
        return (Poly, (self.ring, dict(self.terms)))

    # predicates ------------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    @property
    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and self.ring._zero_exp in self.terms)

    def constant_value(self) -> Scalar:
        """The field element of a constant poly; raises ValueError otherwise."""
        if not self.is_constant:
            raise ValueError(f"{self} is not constant")
        return self.terms.get(self.ring._zero_exp, 0)

    @property
    def constant_term(self) -> Scalar:
        return self.terms.get(self.ring._zero_exp, 0)

    @property
    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def variables(self) -> tuple[str, ...]:
        used = set()
        for exp in self.terms:
            used.update(i for i, e in enumerate(exp) if e)
        return tuple(sorted(self.ring.params[i] for i in used))

    # arithmetic --------------------------------------------------------------

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.ring != self.ring:
                raise RingMismatch(f"{self.ring} vs {other.ring}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not other.terms:
            return self
        if not self.terms:
            return other
        norm = self.ring.field.norm
        out = dict(self.terms)
        for exp, c in other.terms.items():
            s = norm(out.get(exp, 0) + c)
            if s:
                out[exp] = s
            else:
                out.pop(exp, None)
        return Poly(self.ring, out, _trusted=True)

    __radd__ = __add__

    def __neg__(self):
        norm = self.ring.field.norm
        return Poly(self.ring, {e: norm(-c) for e, c in self.terms.items()}, _trusted=True)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not self.terms or not other.terms:
            return self.ring.zero
        norm = self.ring.field.norm
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        out = {e: c for e, c in ((e, norm(c)) for e, c in out.items()) if c}
        return Poly(self.ring, out, _trusted=True)

    __rmul__ = __mul__

    def scale(self, c) -> "Poly":
        c = self.ring.field(c)
        if not c:
            return self.ring.zero
        norm = self.ring.field.norm
        return Poly(self.ring, {e: norm(v * c) for e, v in self.terms.items()}, _trusted=True)

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a non-negative int")
        result, base = self.ring.one, self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            try:
                return self.terms == self.ring(other).terms
            except ZeroDivisionError:
                return False
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            object.__setattr__(self, "_hash", hash((self.ring, frozenset(self.terms.items()))))
        return self._hash

    # evaluation ------------------------------------------------------------------

    def eval(self, assignment: Mapping[str, Scalar]) -> Scalar:
        """Evaluate at a point; every ring parameter must be assigned."""
        field = self.ring.field
        missing = [n for n in self.ring.params if n not in assignment]
        if missing:
            raise KeyError(f"no value for parameter(s) {', '.join(missing)}")
        point = [field(assignment[n]) for n in self.ring.params]
        total = 0
        for exp, c in self.terms.items():
            term = c
            for x, e in zip(point, exp):
                if e:
                    term = term * x**e
            total = total + term
        return field.norm(total)

    def specialize(self, assignment: Mapping[str, Scalar]) -> "Poly":
        """Substitute values for some parameters; the ring is unchanged."""
        field = self.ring.field
        idx = [(i, field(assignment[n])) for i, n in enumerate(self.ring.params) if n in assignment]
        if not idx:
            return self
        out: dict = {}
        for exp, c in self.terms.items():
            e = list(exp)
            for i, x in idx:
                if e[i]:
                    c = c * x ** e[i]
                    e[i] = 0
            e = tuple(e)
            out[e] = out.get(e, 0) + c
        return Poly(self.ring, out)

    def to_ring(self, ring: Ring) -> "Poly":
        """Move into ``ring`` (e.g. reduce mod p); parameters are matched by name."""
        if ring == self.ring:
            return self
        pos = []
        for i, n in enumerate(self.ring.params):
            if n in ring._index:
                pos.append(ring._index[n])
            else:
                pos.append(None)
        out: dict = {}
        for exp, c in self.terms.items():
            e = [0] * ring.nvars
            for i, k in enumerate(exp):
                if k:
                    if pos[i] is None:
                        raise ValueError(f"{self} uses {self.ring.params[i]!r}, absent from {ring}")
                    e[pos[i]] = k
            e = tuple(e)
            out[e] = out.get(e, 0) + ring.field(c)
        return Poly(ring, out)

    # ordering and printing ---------------------------------------------------------

    def _key(self, exp):
        return (-sum(exp), tuple(-exp[i] for i in self.ring._alpha))

    def sorted_terms(self) -> list[tuple[tuple, Scalar]]:
        """Terms in graded-lex order (alphabetical variables), leading term first."""
        return sorted(self.terms.items(), key=lambda t: self._key(t[0]))

    @property
    def leading_coefficient(self) -> Scalar:
        if not self.terms:
            return 0
        return min(self.terms.items(), key=lambda t: self._key(t[0]))[1]

    def normalized(self) -> "Poly":
        """Sign-normalize: positive leading coefficient over Q, monic over F_p."""
        lc = self.leading_coefficient
        if not lc:
            return self
        if self.ring.field.p:
            return self.scale(self.ring.field.inv(lc))
        return -self if lc < 0 else self

    def _monomial(self, exp) -> str:
        parts = []
        for i in self.ring._alpha:
            e = exp[i]
            if e == 1:
                parts.append(self.ring.params[i])
            elif e:
                parts.append(f"{self.ring.params[i]}^{e}")
        return "*".join(parts)

    def __str__(self):
        if not self.terms:
            return "0"
        out = []
        for n, (exp, c) in enumerate(self.sorted_terms()):
            neg = c < 0
            a = -c if neg else c
            mono = self._monomial(exp)
            if not mono:
                body = str(a)
            elif a == 1:
                body = mono
            else:
                body = f"{a}*{mono}"
            if n == 0:
                out.append(f"-{body}" if neg else body)
            else:
                out.append(f" - {body}" if neg else f" + {body}")
        return "".join(out)

    def __repr__(self):
        return f"Poly({str(self)!r})"


# ---------------------------------------------------------------------------------
# parsing

_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_TOKEN = re.compile(r"\s*(?:(?P<num>[0-9]+)|(?P<id>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*/^]))")


def _tokenize(text: str):
    pos = 0
    toks = []
    n = len(text)
    while pos < n:
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        kind = m.lastgroup
        start = m.start(kind)
        toks.append((kind, m.group(kind), start))
        pos = m.end()
    toks.append(("end", "", n))
    return toks


class _Parser:
    def __init__(self, text: str, ring: Ring):
        self.ring = ring
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, kind, value=None):
        t = self.take()
        if t[0] != kind or (value is not None and t[1] != value):
            want = value or kind
            got = t[1] or "end of input"
            raise ParseError(f"expected {want}, got {got!r}", t[2])
        return t

    def expr(self) -> Poly:
        sign = 1
        if self.peek()[:2] == ("op", "-"):
            self.take()
            sign = -1
        total = self.term().scale(sign)
        while self.peek()[0] == "op" and self.peek()[1] in "+-":
            op = self.take()[1]
            t = self.term()
            total = total + t if op == "+" else total - t
        tok = self.peek()
        if tok[0] != "end":
            if tok[1] == "/":
                raise ParseError("division is only allowed inside a rational literal", tok[2])
            raise ParseError(f"unexpected token {tok[1]!r}", tok[2])
        return total

    def term(self) -> Poly:
        tok = self.peek()
        if tok[0] == "num":
            result = self.ring(self.coeff())
        elif tok[0] == "id":
            result = self.factor()
        else:
            raise ParseError(f"expected a number or a parameter, got {tok[1] or 'end of input'!r}", tok[2])
        while self.peek()[:2] == ("op", "*"):
            self.take()
            if self.peek()[0] == "num":
                raise ParseError("a coefficient may only start a term", self.peek()[2])
            result = result * self.factor()
        return result

    def coeff(self) -> Scalar:
        num = int(self.take()[1])
        if self.peek()[:2] == ("op", "/"):
            self.take()
            tok = self.expect("num")
            den = int(tok[1])
            if den == 0:
                raise ParseError("zero denominator", tok[2])
            try:
                return self.ring.field(Fraction(num, den))
            except ZeroDivisionError:
                raise ParseError(f"denominator {den} is not invertible in {self.ring.field}", tok[2]) from None
        return num

    def factor(self) -> Poly:
        tok = self.expect("id")
        name = tok[1]
        if name not in self.ring._index:
            raise ParseError(f"unknown variable {name!r}", tok[2])
        v = self.ring.var(name)
        if self.peek()[:2] == ("op", "^"):
            self.take()
            e = self.expect("num")
            return v ** int(e[1])
        return v


def parse_poly(text: str, ring: Ring) -> Poly:
    """Parse ``text`` in the polynomial grammar into a canonical Poly of ``ring``."""
    return _Parser(text, ring).expr()
