"""Exact arithmetic in F_p and F_p[T], plus the expression parser.

Polynomials are dense ``int64`` coefficient vectors in ascending power
order, entries reduced into ``[0, p)``, trailing zeros stripped (the zero
polynomial is the empty vector and has degree ``-inf``).  The heavy loops
live in :mod:`ffcf._kernels`.

The parser accepts the printed form used throughout the package
(``t^5 + 6*t^3 + 4*t``) and, for equation input, the same grammar extended
by the variable ``x`` and named constants bound to field values.
"""

from __future__ import annotations

import numpy as np

from . import _kernels
from .errors import BothZero, DivisionByZero, FieldMismatch, ParseError

MINUS_INFINITY = float("-inf")

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def _is_prime(n):
    if n < 2:
        return False
    for q in _SMALL_PRIMES:
        if n % q == 0:
            return n == q
    # deterministic Miller-Rabin for machine-width n
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _SMALL_PRIMES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class PrimeField:
    """The prime field F_p; also a factory for its elements and polynomials."""

    __slots__ = ("p",)

    def __init__(self, p):
        if not isinstance(p, (int, np.integer)) or not _is_prime(int(p)):
            raise ValueError(f"modulus {p!r} is not prime")
        self.p = int(p)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("PrimeField", self.p))

    def __repr__(self):
        return f"PrimeField({self.p})"

    def element(self, value):
        if isinstance(value, FieldElement):
            if value.field != self:
                raise FieldMismatch(f"{value!r} is not over F_{self.p}")
            return value
        return FieldElement(int(value) % self.p, self)

    def __call__(self, value):
        return self.element(value)

    @property
    def zero(self):
        return FieldElement(0, self)

    @property
    def one(self):
        return FieldElement(1, self)

    def poly(self, obj):
        """Coerce a string, scalar or coefficient sequence to a Polynomial."""
        if isinstance(obj, Polynomial):
            if obj.field != self:
                raise FieldMismatch(f"{obj!r} is not over F_{self.p}")
            return obj
        if isinstance(obj, str):
            return parse_poly(obj, self)
        if isinstance(obj, (int, np.integer, FieldElement)):
            return Polynomial(self, [int(self.element(obj))])
        return Polynomial(self, obj)

    @property
    def t(self):
        """The polynomial T."""
        return Polynomial._raw(self, np.array([0, 1], dtype=np.int64))


class FieldElement:
    """A residue in [0, p)."""

    __slots__ = ("value", "field")

    def __init__(self, value, field):
        self.value = value % field.p
        self.field = field

    def __int__(self):
        return self.value

    def __bool__(self):
        return self.value != 0

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return other.field == self.field and other.value == self.value
        if isinstance(other, (int, np.integer)):
            return self.value == int(other) % self.field.p
        return NotImplemented

    def __hash__(self):
        return hash((self.field.p, self.value))

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise FieldMismatch("elements of different fields")
            return other.value
        if isinstance(other, (int, np.integer)):
            return int(other) % self.field.p
        return None

    def __add__(self, other):
        v = self._coerce(other)
        if v is None:
            return NotImplemented
        return FieldElement(self.value + v, self.field)

    __radd__ = __add__

    def __sub__(self, other):
        v = self._coerce(other)
        if v is None:
            return NotImplemented
        return FieldElement(self.value - v, self.field)

    def __rsub__(self, other):
        v = self._coerce(other)
        if v is None:
            return NotImplemented
        return FieldElement(v - self.value, self.field)

    def __mul__(self, other):
        if isinstance(other, Polynomial):
            return NotImplemented
        v = self._coerce(other)
        if v is None:
            return NotImplemented
        return FieldElement(self.value * v, self.field)

    __rmul__ = __mul__

    def __neg__(self):
        return FieldElement(-self.value, self.field)

    def inverse(self):
        if self.value == 0:
            raise DivisionByZero("inverse of 0 in F_p")
        return FieldElement(pow(self.value, self.field.p - 2, self.field.p), self.field)

    def __truediv__(self, other):
        v = self._coerce(other)
        if v is None:
            return NotImplemented
        return self * FieldElement(v, self.field).inverse()

    def __rtruediv__(self, other):
        v = self._coerce(other)
        if v is None:
            return NotImplemented
        return FieldElement(v, self.field) * self.inverse()

    def __pow__(self, e):
        return FieldElement(pow(self.value, int(e), self.field.p), self.field)

    def __repr__(self):
        return f"{self.value} (mod {self.field.p})"


class Polynomial:
    """Element of F_p[T]."""

    __slots__ = ("field", "_c")

    def __init__(self, field, coeffs):
        arr = np.asarray(coeffs, dtype=np.int64) % field.p
        self.field = field
        self._c = _kernels.trim(np.ascontiguousarray(arr))

    @classmethod
    def _raw(cls, field, trimmed):
        self = object.__new__(cls)
        self.field = field
        self._c = trimmed
        return self

    # -- structure ---------------------------------------------------------

    @property
    def degree(self):
        """Degree, or -inf for the zero polynomial."""
        return self._c.size - 1 if self._c.size else MINUS_INFINITY

    @property
    def coeffs(self):
        """Ascending coefficient vector (a copy)."""
        return self._c.copy()

    def coefficient(self, k):
        v = int(self._c[k]) if 0 <= k < self._c.size else 0
        return FieldElement(v, self.field)

    def leading(self):
        if not self._c.size:
            return FieldElement(0, self.field)
        return FieldElement(int(self._c[-1]), self.field)

    def is_zero(self):
        return self._c.size == 0

    def is_one(self):
        return self._c.size == 1 and self._c[0] == 1

    def is_constant(self):
        return self._c.size <= 1

    def constant(self):
        """The value as a field element (requires degree <= 0)."""
        if self._c.size > 1:
            raise ValueError("not a constant polynomial")
        return FieldElement(int(self._c[0]) if self._c.size else 0, self.field)

    def __bool__(self):
        return self._c.size != 0

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return (
                other.field == self.field
                and other._c.size == self._c.size
                and bool(np.array_equal(other._c, self._c))
            )
        if isinstance(other, (int, np.integer, FieldElement)):
            v = int(self.field.element(other))
            if v == 0:
                return self._c.size == 0
            return self._c.size == 1 and self._c[0] == v
        return NotImplemented

    def __hash__(self):
        return hash((self.field.p, self._c.tobytes()))

    # -- arithmetic --------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, Polynomial):
            if other.field != self.field:
                raise FieldMismatch("polynomials over different fields")
            return other
        if isinstance(other, (int, np.integer, FieldElement)):
            return self.field.poly(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self._c, o._c
        if a.size < b.size:
            a, b = b, a
        out = a.copy()
        out[: b.size] = (out[: b.size] + b) % self.field.p
        return Polynomial._raw(self.field, _kernels.trim(out))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __neg__(self):
        return Polynomial._raw(self.field, (-self._c) % self.field.p)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not self._c.size or not o._c.size:
            return Polynomial._raw(self.field, _kernels.trim(np.zeros(0, np.int64)))
        return Polynomial._raw(self.field, _kernels.mul(self._c, o._c, self.field.p))

    __rmul__ = __mul__

    def __pow__(self, e):
        return poly_pow(self, e)

    def __divmod__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return poly_divrem(self, o)

    def __floordiv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.is_zero():
            raise DivisionByZero("polynomial division by zero")
        q, _ = _kernels.divrem(self._c, o._c, self.field.p, need_rem=False)
        return Polynomial._raw(self.field, _kernels.trim(q))

    def __mod__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return poly_divrem(self, o)[1]

    def monic(self):
        if self.is_zero():
            return self
        inv = pow(int(self._c[-1]), self.field.p - 2, self.field.p)
        return Polynomial._raw(self.field, (self._c * inv) % self.field.p)

    def derivative(self):
        return poly_derivative(self)

    def evaluate(self, x):
        """Value at a field element, by Horner."""
        x = self.field.element(x)
        acc = 0
        p = self.field.p
        for c in self._c[::-1]:
            acc = (acc * x.value + int(c)) % p
        return FieldElement(acc, self.field)

    def subst_power(self, k):
        """Substitution T -> T^k (k >= 1): spreads exponents by k."""
        if k < 1:
            raise ValueError("power substitution needs k >= 1")
        if self._c.size == 0 or k == 1:
            return self
        out = np.zeros((self._c.size - 1) * k + 1, dtype=np.int64)
        out[::k] = self._c
        return Polynomial._raw(self.field, out)

    def shift(self, k):
        """Multiplication by T^k (k >= 0)."""
        if self._c.size == 0 or k == 0:
            return self
        return Polynomial._raw(
            self.field, np.concatenate([np.zeros(k, np.int64), self._c])
        )

    # -- rendering ---------------------------------------------------------

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"<{format_poly(self)} over F_{self.field.p}>"


# ---------------------------------------------------------------------------
# module-level operations


def _same_field(u, v):
    if u.field != v.field:
        raise FieldMismatch("operands over different fields")
    return u.field


def poly_divrem(u, v, need_rem=True):
    """Quotient and remainder: u = q*v + r with deg r < deg v."""
    field = _same_field(u, v)
    if v.is_zero():
        raise DivisionByZero("polynomial division by zero")
    q, r = _kernels.divrem(u._c, v._c, field.p, need_rem=need_rem)
    qp = Polynomial._raw(field, _kernels.trim(q))
    if not need_rem:
        return qp, None
    return qp, Polynomial._raw(field, _kernels.trim(r))


def poly_gcd(u, v):
    """Monic greatest common divisor."""
    _same_field(u, v)
    if u.is_zero() and v.is_zero():
        raise BothZero("gcd(0, 0) is undefined")
    while not v.is_zero():
        u, v = v, u % v
    return u.monic()


def poly_pow(u, e):
    """u**e by binary exponentiation; u**0 == 1."""
    e = int(e)
    if e < 0:
        raise ValueError("negative polynomial power")
    result = u.field.poly(1)
    base = u
    while e:
        if e & 1:
            result = result * base
        base = base * base if e > 1 else base
        e >>= 1
    return result


def poly_derivative(u):
    """Formal derivative; k*T^(k-1) terms vanish when p divides k."""
    if u._c.size <= 1:
        return Polynomial._raw(u.field, np.zeros(0, np.int64))
    ks = np.arange(1, u._c.size, dtype=np.int64)
    return Polynomial._raw(u.field, _kernels.trim(u._c[1:] * ks % u.field.p))


# ---------------------------------------------------------------------------
# text formatting


def _format_term(c, e, var="t"):
    if e == 0:
        return str(c)
    v = var if e == 1 else f"{var}^{e}"
    return v if c == 1 else f"{c}*{v}"


def format_poly(u, var="t"):
    """Canonical text: descending powers, '*' separators, unit coefficients
    elided, residues in [0, p)."""
    if u.is_zero():
        return "0"
    terms = [
        _format_term(int(c), e, var)
        for e, c in reversed(list(enumerate(u._c)))
        if c != 0
    ]
    return " + ".join(terms)


# ---------------------------------------------------------------------------
# expression parser
#
# expr   := ['+'|'-'] term (('+'|'-') term)*
# term   := factor (('*'|'/') factor)*
# factor := atom ('^' integer)*
# atom   := integer | 't' | 'x' | name | '(' expr ')' | '-' atom
#
# Values are polynomials in x with coefficients in F_p[T] ("x-polys"),
# held as lists of Polynomial in ascending x-power.  '/' requires a
# nonzero constant divisor (a field scalar after reduction).


class _Token:
    __slots__ = ("kind", "text", "pos")

    def __init__(self, kind, text, pos):
        self.kind = kind
        self.text = text
        self.pos = pos


def _tokenize(text):
    text = text.replace("−", "-").replace("**", "^")
    tokens = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(_Token("int", text[i:j], i))
            i = j
        elif ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(_Token("name", text[i:j], i))
            i = j
        elif ch in "+-*/^()":
            tokens.append(_Token(ch, ch, i))
            i += 1
        else:
            raise ParseError(f"unexpected character {ch!r}", i)
    tokens.append(_Token("end", "", n))
    return tokens


class _XPoly:
    """Polynomial in x with F_p[T] coefficients; parser working value."""

    __slots__ = ("field", "cs")

    def __init__(self, field, cs):
        while cs and cs[-1].is_zero():
            cs.pop()
        self.field = field
        self.cs = cs

    @classmethod
    def const(cls, poly):
        return cls(poly.field, [poly])

    def __add__(self, other):
        n = max(len(self.cs), len(other.cs))
        zero = self.field.poly(0)
        cs = [
            (self.cs[i] if i < len(self.cs) else zero)
            + (other.cs[i] if i < len(other.cs) else zero)
            for i in range(n)
        ]
        return _XPoly(self.field, cs)

    def __neg__(self):
        return _XPoly(self.field, [-c for c in self.cs])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not self.cs or not other.cs:
            return _XPoly(self.field, [])
        zero = self.field.poly(0)
        cs = [zero] * (len(self.cs) + len(other.cs) - 1)
        for i, a in enumerate(self.cs):
            if a.is_zero():
                continue
            for j, b in enumerate(other.cs):
                cs[i + j] = cs[i + j] + a * b
        return _XPoly(self.field, cs)

    def pow(self, e):
        result = _XPoly.const(self.field.poly(1))
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def as_scalar(self):
        """The value as a field constant, or None."""
        if not self.cs:
            return self.field.zero
        if len(self.cs) == 1 and self.cs[0].is_constant():
            return self.cs[0].constant()
        return None


class _Parser:
    def __init__(self, text, field, bindings=None, allow_x=False):
        self.tokens = _tokenize(text)
        self.k = 0
        self.field = field
        self.bindings = bindings or {}
        self.allow_x = allow_x

    def peek(self):
        return self.tokens[self.k]

    def take(self, kind=None):
        tok = self.tokens[self.k]
        if kind is not None and tok.kind != kind:
            raise ParseError(f"expected {kind}, found {tok.text or 'end'!r}", tok.pos)
        self.k += 1
        return tok

    def parse(self):
        v = self.expr()
        tok = self.peek()
        if tok.kind != "end":
            raise ParseError(f"unexpected {tok.text!r}", tok.pos)
        return v

    def expr(self):
        tok = self.peek()
        neg = False
        if tok.kind in "+-":
            self.take()
            neg = tok.kind == "-"
        v = self.term()
        if neg:
            v = -v
        while self.peek().kind in "+-":
            op = self.take().kind
            w = self.term()
            v = v - w if op == "-" else v + w
        return v

    def term(self):
        v = self.factor()
        while self.peek().kind in "*/":
            op = self.take()
            w = self.factor()
            if op.kind == "*":
                v = v * w
            else:
                s = w.as_scalar()
                if s is None:
                    raise ParseError("division only by field constants", op.pos)
                if not s:
                    raise ParseError("division by zero constant", op.pos)
                v = v * _XPoly.const(self.field.poly(s.inverse()))
        return v

    def factor(self):
        v = self.atom()
        while self.peek().kind == "^":
            pos = self.take().pos
            tok = self.peek()
            neg = False
            if tok.kind == "(":  # allow ^(k) for symmetry
                self.take()
                if self.peek().kind == "-":
                    self.take()
                    neg = True
                e = int(self.take("int").text)
                self.take(")")
            else:
                e = int(self.take("int").text)
            if neg:
                raise ParseError("negative exponents are not supported", pos)
            v = v.pow(e)
        return v

    def atom(self):
        tok = self.take()
        if tok.kind == "int":
            return _XPoly.const(self.field.poly(int(tok.text)))
        if tok.kind == "name":
            name = tok.text
            if name in ("t", "T"):
                return _XPoly.const(self.field.t)
            if name in ("x", "X"):
                if not self.allow_x:
                    raise ParseError("variable x not allowed here", tok.pos)
                return _XPoly(self.field, [self.field.poly(0), self.field.poly(1)])
            if name in self.bindings:
                return _XPoly.const(self.field.poly(self.bindings[name]))
            raise ParseError(f"unbound name {name!r}", tok.pos)
        if tok.kind == "(":
            v = self.expr()
            self.take(")")
            return v
        if tok.kind == "-":
            return -self.atom()
        raise ParseError(f"unexpected {tok.text or 'end'!r}", tok.pos)


def parse_poly(text, field):
    """Parse a univariate polynomial expression over F_p."""
    if not text.strip():
        raise ParseError("empty input", 0)
    v = _Parser(text, field, allow_x=False).parse()
    if not v.cs:
        return field.poly(0)
    return v.cs[0]


def parse_x_poly(text, field, bindings=None):
    """Parse an expression in t and x; returns ascending x-coefficients.

    ``bindings`` maps parameter names to field values; binding values may
    themselves be constant expressions evaluated left to right.
    """
    if not text.strip():
        raise ParseError("empty input", 0)
    v = _Parser(text, field, bindings=bindings, allow_x=True).parse()
    return list(v.cs)


def parse_bindings(spec, field):
    """Evaluate "a=1,b=2,c=2*a+1/b" left to right into field elements."""
    out = {}
    if not spec:
        return out
    for item in spec.split(","):
        item = item.strip()
        if not item:
            continue
        if "=" not in item:
            raise ParseError(f"binding {item!r} is not name=value", 0)
        name, value = item.split("=", 1)
        name = name.strip()
        v = _Parser(value, field, bindings=out, allow_x=False).parse()
        s = v.as_scalar()
        if s is None:
            raise ParseError(f"binding {name!r} is not a field constant", 0)
        out[name] = s
    return out
