"""Finite continued fractions over F_p(T): words, continuants, Euclid,
and the continued fraction algorithm on truncated series.

A Word is a finite sequence of partial quotients of positive degree,
optionally preceded by a head partial quotient (any polynomial, possibly
constant) absorbing values of non-positive top exponent.
"""

from __future__ import annotations

from collections import namedtuple

import numpy as np

from .errors import DivisionByZero, FieldMismatch, ZeroScalar
from .ffpoly import FieldElement, Polynomial, poly_gcd
from .laurent import LaurentSeries

ConvergentPair = namedtuple("ConvergentPair", ["x", "y"])


class Word:
    """Partial-quotient word: optional head a0, letters a1..an of degree >= 1."""

    __slots__ = ("field", "head", "letters")

    def __init__(self, field, letters=(), head=None):
        letters = tuple(letters)
        for a in letters:
            if a.field != field:
                raise FieldMismatch("letters over different fields")
            if a.degree < 1:
                raise ValueError(f"letter {a} must have positive degree")
        if head is not None and head.field != field:
            raise FieldMismatch("head over a different field")
        self.field = field
        self.head = head
        self.letters = letters

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __getitem__(self, k):
        if isinstance(k, slice):
            return Word(self.field, self.letters[k])
        return self.letters[k]

    def __eq__(self, other):
        if not isinstance(other, Word):
            return NotImplemented
        return (
            other.field == self.field
            and other.head == self.head
            and other.letters == self.letters
        )

    def prefix(self, n):
        """First n letters, keeping the head."""
        return Word(self.field, self.letters[:n], head=self.head)

    def concat(self, other):
        if other.head is not None:
            raise ValueError("cannot concatenate a word with a head")
        return Word(self.field, self.letters + other.letters, head=self.head)

    def degrees(self):
        return [int(a.degree) for a in self.letters]

    def leading_coefficients(self):
        return [int(a.leading()) for a in self.letters]

    def reverse(self):
        """W*: letters reversed (defined for headless words)."""
        if self.head is not None:
            raise ValueError("reverse is defined for words without a head")
        return Word(self.field, self.letters[::-1])

    def scale(self, y):
        """y.W = (y*a1, y^-1*a2, y*a3, ...) for a nonzero scalar y."""
        if self.head is not None:
            raise ValueError("scaling is defined for words without a head")
        y = self.field.element(y)
        if not y:
            raise ZeroScalar("scaling by zero")
        out = []
        cur = y
        for a in self.letters:
            out.append(a * cur)
            cur = cur.inverse()
        return Word(self.field, out)

    def render(self):
        parts = [] if self.head is None else [str(self.head)]
        parts.extend(str(a) for a in self.letters)
        return "[" + ", ".join(parts) + "]"

    def render_degrees(self):
        return "[" + ", ".join(str(d) for d in self.degrees()) + "]"

    def to_json(self):
        out = {"letters": [str(a) for a in self.letters]}
        if self.head is not None:
            out["head"] = str(self.head)
        return out

    def __repr__(self):
        return f"<word {self.render()} over F_{self.field.p}>"


def word_reverse(W):
    return W.reverse()


def word_scale(y, W):
    return W.scale(y)


# ---------------------------------------------------------------------------
# continuants and convergents


def continuant(letters):
    """<W> by the forward recurrence K[k+1] = a[k+1]*K[k] + K[k-1]."""
    if isinstance(letters, Word):
        letters = letters.letters
    letters = tuple(letters)
    if not letters:
        raise ValueError("continuant of an empty sequence needs a field; use continuant_in")
    field = letters[0].field
    return continuant_in(field, letters)


def continuant_in(field, letters):
    """<W> over an explicit field (handles the empty word: <()> = 1)."""
    prev = field.poly(1)
    if not letters:
        return prev
    cur = letters[0]
    for a in letters[1:]:
        prev, cur = cur, a * cur + prev
    return cur


def continuant_backward(field, letters):
    """<W> by the mirrored recurrence (peeling the last letter first)."""
    return continuant_in(field, tuple(letters)[::-1])


def convergents(W):
    """Pairs (x_k, y_k), k = 1..n, from the letter word."""
    field = W.field
    xs, ys = [], []
    x_prev, y_prev = field.poly(1), field.poly(0)
    x_cur, y_cur = None, None
    for k, a in enumerate(W.letters):
        if k == 0:
            x_cur, y_cur = a, field.poly(1)
        else:
            x_prev, x_cur = x_cur, a * x_cur + x_prev
            y_prev, y_cur = y_cur, a * y_cur + y_prev
        xs.append(x_cur)
        ys.append(y_cur)
    return [ConvergentPair(x, y) for x, y in zip(xs, ys)]


def cf_eval(W):
    """Value of the finite continued fraction as a coprime (num, den) pair."""
    field = W.field
    num = continuant_in(field, W.letters)
    den = continuant_in(field, W.letters[1:]) if W.letters else field.poly(0)
    if not W.letters:
        den = field.poly(1)
        num = field.poly(0)
    if W.head is not None:
        num, den = W.head * num + den, num
    return num, den


def moebius_matrix(W):
    """Product of the letter matrices [[a,1],[1,0]], head included."""
    field = W.field
    one, zero = field.poly(1), field.poly(0)
    a, b, c, d = one, zero, zero, one
    seq = ([W.head] if W.head is not None else []) + list(W.letters)
    for w in seq:
        a, b, c, d = a * w + b, a, c * w + d, c
    return a, b, c, d


# ---------------------------------------------------------------------------
# Euclid's algorithm


def euclid_cf(P, Q):
    """The unique expansion of P/Q; a head is emitted when deg P <= deg Q."""
    if P.field != Q.field:
        raise FieldMismatch("rational over mixed fields")
    if Q.is_zero():
        raise DivisionByZero("continued fraction of P/0")
    field = P.field
    letters = []
    head = None
    first = True
    while not Q.is_zero():
        q, r = divmod(P, Q)
        if first and q.degree < 1:
            head = q
        else:
            letters.append(q)
        first = False
        P, Q = Q, r
    return Word(field, letters, head=head)


# ---------------------------------------------------------------------------
# the continued fraction algorithm on series


def cf_of_series(a, max_letters=None):
    """Expand a truncated series; returns (word, certified).

    `certified` counts the leading letters guaranteed to agree with the
    exact expansion of any series sharing the input's known coefficients:
    letter k is certified while 2*deg(y_k) < precision - top, y_k being
    the k-th convergent denominator of the emitted word.  The run stops
    when the remaining tail is indistinguishable from zero or the next
    polynomial part is not covered.
    """
    field = a.field
    if a.is_zero:
        if a.lo > 0:
            return Word(field), 0
        return Word(field, head=field.poly(0)), 0
    n_rem = a.precision - a.top
    letters = []
    head = None
    denom_deg = 0
    certified = 0
    z = a
    first = True
    while max_letters is None or len(letters) < max_letters:
        if z.is_zero:
            break
        if (z.top >= 0 and z.lo > 0) or (z.is_zero and z.lo > 0):
            break  # polynomial part not covered by known coefficients
        ak = z.poly_part()
        if first and ak.degree < 1:
            head = ak
        else:
            letters.append(ak)
            if head is None and len(letters) == 1:
                pass  # y_1 = 1 contributes degree 0
            else:
                denom_deg += int(ak.degree)
            if 2 * denom_deg < n_rem:
                certified = len(letters)
        first = False
        u = z.frac_part()
        if u.is_zero:
            break
        z = u.inverse()
    return Word(field, letters, head=head), certified


def value_series(W, precision):
    """The value of a finite word as a series with `precision` coefficients."""
    from .laurent import from_rational

    num, den = cf_eval(W)
    return from_rational(num, den, precision)


# ---------------------------------------------------------------------------
# identity suite


def _sign(field, k):
    return field.poly(1) if k % 2 == 0 else field.poly(-1)


def identity_suite(W, split, y):
    """Evaluate the continuant identity toolkit on a concrete word.

    Returns a dict mapping identity names to booleans; `split` positions
    the A,B concatenation split and the (8) index m, `y` drives the
    scaling laws.  Words must be headless.
    """
    if W.head is not None:
        raise ValueError("identity suite runs on words without a head")
    field = W.field
    n = len(W)
    if not 0 <= split <= n:
        raise ValueError("split out of range")
    y = field.element(y)
    L = W.letters
    res = {}

    K = continuant_in(field, L)
    res["recurrence_forward_equals_backward"] = K == continuant_backward(field, L)

    A, B = L[:split], L[split:]
    KA = continuant_in(field, A)
    KB = continuant_in(field, B)
    KA2 = continuant_in(field, A[:-1]) if A else None  # <A''>
    KB1 = continuant_in(field, B[1:]) if B else None  # <B'>
    if A and B:
        res["concat_4"] = K == KA * KB + KA2 * KB1
    else:
        res["concat_4"] = K == KA * KB  # degenerate split: <A><B> with <()> = 1

    if n >= 2:
        lhs = K * continuant_in(field, L[1:-1]) - continuant_in(
            field, L[1:]
        ) * continuant_in(field, L[:-1])
        res["determinant_5"] = lhs == _sign(field, n)

    cs = convergents(W)
    if n >= 1:
        ok = True
        x_prev, y_prev = field.poly(1), field.poly(0)
        for k, (xk, yk) in enumerate(cs, start=1):
            ok = ok and (xk * y_prev - yk * x_prev == _sign(field, k))
            x_prev, y_prev = xk, yk
        res["determinant_6"] = ok

    if A:
        lhs = K * continuant_in(field, A[1:]) - KA * continuant_in(field, A[1:] + B)
        rhs = _sign(field, split - 1) * (KB1 if B else field.poly(1))
        res["cross_7"] = lhs == rhs

    if n >= 1:
        m = min(split, n - 1)
        xm, ym = (cs[m - 1] if m >= 1 else ConvergentPair(field.poly(1), field.poly(0)))
        xn, yn = cs[-1]
        rhs = _sign(field, m - 1) * continuant_in(field, L[m + 1 :])
        res["cross_8"] = xn * ym - yn * xm == rhs

    res["reversal"] = continuant_in(field, L[::-1]) == K

    if y:
        scaled = W.scale(y)
        Ks = continuant_in(field, scaled.letters)
        res["scaling_continuant"] = Ks == (K if n % 2 == 0 else y * K)
        num, den = cf_eval(W)
        nums, dens = cf_eval(scaled)
        res["scaling_value"] = nums * den == y * num * dens
    else:
        res["scaling_continuant"] = False
        res["scaling_value"] = False

    if n >= 1:
        # [W, x] = [W] + y*  <=>  y* <W'>(x<W'> + <(W')''>) = (-1)^(n-1),
        # with x a concrete letter and y* the solved rational: check the
        # cross-multiplied forms both ways.
        x = L[min(split, n - 1)]
        W1 = L[1:]
        KW1 = continuant_in(field, W1)
        KW1x = continuant_in(field, W1 + (x,))
        ok = KW1x == x * KW1 + (continuant_in(field, W1[:-1]) if W1 else field.poly(0))
        lhs = continuant_in(field, L + (x,)) * KW1 - K * KW1x
        res["tail_shift_exercise"] = ok and lhs == _sign(field, n - 1)

    return res
