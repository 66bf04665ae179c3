"""Truncated formal Laurent series in 1/T over F_p.

A series carries the exponent window it is known on: coefficients for
exponents ``lo .. top`` (ascending array, leading coefficient nonzero),
plus the implicit fact that nothing lives above ``top``.  ``precision``
counts the known coefficients.  The magnitude of a series is compared
through its top exponent only; no real-valued absolute value is ever
materialized.

Cancellation can make a value indistinguishable from zero: that state is
kept as a distinguished zero-at-bound series ("the value is O(T^(lo-1))").
Operations that must see a leading coefficient raise
:class:`~ffcf.errors.PrecisionExhausted` on it instead of guessing.

All operations compute the exact precision of their result; coefficients
are never fabricated.
"""

from __future__ import annotations

import numpy as np

from . import _kernels
from .errors import (
    DivisionByZero,
    FieldMismatch,
    InsufficientPrecision,
    NotAFrobeniusPower,
    PrecisionExhausted,
)
from .ffpoly import FieldElement, Polynomial, _format_term


class LaurentSeries:
    """Element of F_p((1/T)) known to finite precision."""

    __slots__ = ("field", "lo", "_c")

    def __init__(self, field, lo, coeffs):
        arr = np.asarray(coeffs, dtype=np.int64) % field.p
        arr = _kernels.trim(np.ascontiguousarray(arr))
        self.field = field
        self.lo = int(lo)
        self._c = arr

    @classmethod
    def _make(cls, field, lo, trimmed):
        self = object.__new__(cls)
        self.field = field
        self.lo = int(lo)
        self._c = trimmed
        return self

    @classmethod
    def zero(cls, field, lo):
        """The designated zero value: known to be O(T^(lo-1))."""
        return cls._make(field, lo, np.zeros(0, np.int64))

    @classmethod
    def from_polynomial(cls, poly, lo):
        """Exact polynomial viewed down to exponent lo."""
        if poly.is_zero() or lo > poly.degree:
            return cls.zero(poly.field, lo)
        if lo >= 0:
            return cls._make(poly.field, lo, poly._c[lo:].copy())
        pad = np.zeros(-lo, np.int64)
        return cls._make(poly.field, lo, np.concatenate([pad, poly._c]))

    @classmethod
    def from_field_element(cls, elem, lo):
        return cls.from_polynomial(elem.field.poly(elem), lo)

    # -- structure -----------------------------------------------------

    @property
    def is_zero(self):
        return self._c.size == 0

    @property
    def top(self):
        """Leading exponent, or None for the zero value."""
        return self.lo + self._c.size - 1 if self._c.size else None

    @property
    def precision(self):
        """Number of known coefficients (0 for the zero value)."""
        return self._c.size

    def coefficient(self, e):
        """Coefficient at exponent e as an int; e must be >= lo."""
        if e < self.lo:
            raise InsufficientPrecision(f"exponent {e} below known window {self.lo}")
        i = e - self.lo
        return int(self._c[i]) if i < self._c.size else 0

    def _check(self, other):
        if other.field != self.field:
            raise FieldMismatch("series over different fields")

    def __eq__(self, other):
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        return (
            other.field == self.field
            and other.lo == self.lo
            and np.array_equal(other._c, self._c)
        )

    # -- ring operations -------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, LaurentSeries):
            self._check(other)
            return other
        if isinstance(other, Polynomial):
            if other.field != self.field:
                raise FieldMismatch("series/polynomial field mismatch")
            return LaurentSeries.from_polynomial(other, self.lo)
        if isinstance(other, (int, np.integer, FieldElement)):
            return LaurentSeries.from_polynomial(self.field.poly(other), self.lo)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self, o
        lo = max(a.lo, b.lo)
        if a.is_zero and b.is_zero:
            return LaurentSeries.zero(self.field, lo)
        tops = [s.top for s in (a, b) if not s.is_zero]
        hi = max(tops)
        if hi < lo:
            return LaurentSeries.zero(self.field, lo)
        out = np.zeros(hi - lo + 1, np.int64)
        for s in (a, b):
            if s.is_zero or s.top < lo:
                continue
            start = max(s.lo, lo)
            out[start - lo : s.top - lo + 1] += s._c[start - s.lo :]
        return LaurentSeries._make(self.field, lo, _kernels.trim(out % self.field.p))

    __radd__ = __add__

    def __neg__(self):
        return LaurentSeries._make(self.field, self.lo, (-self._c) % self.field.p)

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

    def __mul__(self, other):
        if isinstance(other, (int, np.integer, FieldElement)):
            v = int(self.field.element(other))
            if v == 0:
                return LaurentSeries.zero(self.field, self.lo)
            return LaurentSeries._make(self.field, self.lo, self._c * v % self.field.p)
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self, o
        if a.is_zero or b.is_zero:
            if a.is_zero and b.is_zero:
                return LaurentSeries.zero(self.field, a.lo + b.lo - 1)
            z, s = (a, b) if a.is_zero else (b, a)
            return LaurentSeries.zero(self.field, z.lo + s.top)
        full = _kernels.mul(a._c, b._c, self.field.p)
        lo = max(a.lo + b.top, b.lo + a.top)
        off = lo - (a.lo + b.lo)
        return LaurentSeries._make(self.field, lo, full[off:].copy())

    __rmul__ = __mul__

    def inverse(self):
        """Reciprocal at the same relative precision."""
        if self.is_zero:
            raise PrecisionExhausted(
                "inverting a series indistinguishable from zero "
                f"(O(t^{self.lo - 1}))"
            )
        n = self._c.size
        inv_desc = _kernels.series_inv(self._c[::-1].copy(), n, self.field.p)
        top = -self.top
        return LaurentSeries._make(self.field, top - n + 1, inv_desc[::-1].copy())

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __pow__(self, e):
        e = int(e)
        if e < 0:
            return self.inverse() ** (-e)
        result = LaurentSeries.from_polynomial(self.field.poly(1), min(self.lo, 0))
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    # -- structure-changing operations ------------------------------------

    def truncate_lo(self, new_lo):
        """Restrict knowledge to exponents >= new_lo (never extends)."""
        if new_lo <= self.lo:
            return self
        if self.is_zero or self.top < new_lo:
            return LaurentSeries.zero(self.field, new_lo)
        return LaurentSeries._make(self.field, new_lo, self._c[new_lo - self.lo :].copy())

    def truncate_precision(self, n):
        """Keep the n leading coefficients."""
        if self.is_zero or self._c.size <= n:
            return self
        return self.truncate_lo(self.top - n + 1)

    def poly_part(self):
        """The terms with nonnegative exponents, as a Polynomial."""
        if self.is_zero:
            if self.lo > 0:
                raise InsufficientPrecision("exponent 0 not covered")
            return self.field.poly(0)
        if self.top < 0:
            return self.field.poly(0)
        if self.lo > 0:
            raise InsufficientPrecision("exponent 0 not covered")
        return Polynomial(self.field, self._c[-self.lo :])

    def frac_part(self):
        """self - [self]; known on the same window below exponent 0."""
        if self.is_zero:
            if self.lo > 0:
                raise InsufficientPrecision("exponent 0 not covered")
            return self
        if self.top < 0:
            return self
        if self.lo > 0:
            raise InsufficientPrecision("exponent 0 not covered")
        return LaurentSeries._make(
            self.field, self.lo, _kernels.trim(self._c[: -self.lo].copy())
        )

    def pow_frobenius(self, r):
        """The field isomorphism x -> x^r for r a power of the characteristic."""
        p = self.field.p
        k = int(r)
        if k < 1:
            raise NotAFrobeniusPower(f"{r} is not a power of {p}")
        m = k
        while m % p == 0:
            m //= p
        if m != 1:
            raise NotAFrobeniusPower(f"{r} is not a power of {p}")
        if k == 1:
            return self
        if self.is_zero:
            return LaurentSeries.zero(self.field, k * (self.lo - 1) + 1)
        out = np.zeros((self._c.size - 1) * k + 1, np.int64)
        out[::k] = self._c
        return LaurentSeries._make(self.field, k * self.lo, out)

    def derivative(self):
        """Term-wise i*u_i*T^(i-1)."""
        if self.is_zero:
            return LaurentSeries.zero(self.field, self.lo - 1)
        exps = np.arange(self.lo, self.lo + self._c.size, dtype=np.int64)
        out = (self._c * (exps % self.field.p)) % self.field.p
        return LaurentSeries._make(self.field, self.lo - 1, _kernels.trim(out))

    # -- inspection --------------------------------------------------------

    def detect_period(self):
        """Smallest (preperiod, period) with >= 3 repetitions, or None.

        Smallest in lexicographic order on the pair; digits run from the
        top exponent downward over the whole known window.
        """
        if self.is_zero:
            return (0, 1)
        d = self._c[::-1]
        n = d.size
        for s in range(n):
            limit = (n - s) // 3
            for q in range(1, limit + 1):
                if np.array_equal(d[s : n - q], d[s + q : n]):
                    return (s, q)
        return None

    def to_json(self):
        return {
            "top": self.top,
            "precision": self.precision,
            "coeffs": [int(c) for c in self._c[::-1]],
        }

    def __str__(self):
        tail = f"O(t^{self.lo - 1})"
        if self.is_zero:
            return tail
        terms = [
            _format_term(int(c), self.lo + i)
            for i, c in reversed(list(enumerate(self._c)))
            if c != 0
        ]
        return " + ".join(terms + [tail])

    def __repr__(self):
        return f"<{self} over F_{self.field.p}>"


# ---------------------------------------------------------------------------
# module-level operations (the spec surface)


def series_add(a, b):
    return a + b


def series_mul(a, b):
    return a * b


def series_inv(a):
    return a.inverse()


def from_rational(P, Q, precision):
    """Series of P/Q with `precision` correct leading coefficients."""
    if P.field != Q.field:
        raise FieldMismatch("rational over mixed fields")
    if Q.is_zero():
        raise DivisionByZero("series of P/0")
    precision = int(precision)
    if precision < 1:
        raise ValueError("precision must be >= 1")
    if P.is_zero():
        return LaurentSeries.zero(P.field, -precision)
    top = int(P.degree - Q.degree)
    s = max(0, precision - 1 - top)
    q, _ = _kernels.divrem(P.shift(s)._c, Q._c, P.field.p, need_rem=False)
    keep = min(precision, q.size)
    return LaurentSeries._make(P.field, top - keep + 1, q[q.size - keep :].copy())


def poly_part(a):
    return a.poly_part()


def series_pow_frobenius(a, r):
    return a.pow_frobenius(r)


def detect_period(a):
    return a.detect_period()


def series_derivative(a):
    return a.derivative()


def first_disagreement(a, b):
    """Exponent of the first differing jointly-known coefficient, or None."""
    if a.field != b.field:
        raise FieldMismatch("series over different fields")
    lo = max(a.lo, b.lo)
    tops = [s.top for s in (a, b) if not s.is_zero]
    if not tops:
        return None
    hi = max(tops)
    for e in range(hi, lo - 1, -1):
        if a.coefficient(e) != b.coefficient(e):
            return e
    return None


def agree(a, b):
    """True when a and b coincide on their jointly known window."""
    return first_disagreement(a, b) is None
