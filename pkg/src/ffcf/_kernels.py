"""Dense coefficient-array kernels behind the polynomial and series layers.

Kernels operate on contiguous ``int64`` arrays, ascending power order,
entries reduced into ``[0, p)``.  Two interchangeable backends supply the
inner loops:

* ``numba`` (default when importable): ``@njit``-compiled schoolbook loops.
* ``numpy``: pure-numpy implementations of the same contracts.

Select one explicitly with ``FFCF_BACKEND=numba`` or ``FFCF_BACKEND=numpy``
(read once at import).  On either backend, products whose schoolbook cost
passes a cutoff are routed through exact Kronecker substitution on big
integers (gmpy2 when available, plain Python ints otherwise), so results
are identical bit for bit across backends.

``benchmarks/bench_kernels.py`` times the backends side by side.
"""

import os

import numpy as np

try:
    import gmpy2

    def _bigmul(x, y):
        return int(gmpy2.mpz(x) * gmpy2.mpz(y))

except ImportError:  # pragma: no cover - gmpy2 is a declared dependency
    def _bigmul(x, y):
        return x * y

try:
    from numba import njit

    _HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    _HAVE_NUMBA = False

_env = os.environ.get("FFCF_BACKEND", "").strip().lower()
if _env == "numba" and not _HAVE_NUMBA:
    raise ImportError("FFCF_BACKEND=numba requested but numba is not importable")
if _env in ("numba", "numpy"):
    _SELECTED = _env
else:
    _SELECTED = "numba" if _HAVE_NUMBA else "numpy"

# schoolbook multiply cost (len(a)*len(b)) above which Kronecker wins
KRONECKER_CUTOFF = 1 << 16
# schoolbook division cost (quotient_len*len(v)) above which the
# Newton-inversion division wins
FAST_DIV_CUTOFF = 1 << 22

_EMPTY = np.zeros(0, dtype=np.int64)


def backend():
    """Name of the selected backend: ``"numba"`` or ``"numpy"``."""
    return _SELECTED


# ---------------------------------------------------------------------------
# multiplication


def _mul_kronecker(a, b, p):
    """Exact convolution mod p via packing into one big integer each."""
    peak = min(a.size, b.size) * (p - 1) ** 2
    if peak < 1 << 32:
        dt = "<u4"
        width = 4
    else:
        if peak >= 1 << 64:
            raise OverflowError("kronecker packing width exceeded")
        dt = "<u8"
        width = 8
    na = int.from_bytes(a.astype(dt).tobytes(), "little")
    nb = int.from_bytes(b.astype(dt).tobytes(), "little")
    prod = _bigmul(na, nb)
    m = a.size + b.size - 1
    raw = prod.to_bytes(m * width, "little")
    return np.frombuffer(raw, dtype=dt).astype(np.int64) % p


def _mul_numpy_small(a, b, p):
    return np.convolve(a, b) % p


if _HAVE_NUMBA:

    @njit(cache=True)
    def _mul_numba_small(a, b, p):
        out = np.zeros(a.size + b.size - 1, dtype=np.int64)
        for i in range(a.size):
            ai = a[i]
            if ai != 0:
                for j in range(b.size):
                    out[i + j] += ai * b[j]
        return out % p


def _make_mul(small):
    def mul(a, b, p):
        """Product of two coefficient arrays, reduced mod p."""
        if a.size == 0 or b.size == 0:
            return _EMPTY
        cost = a.size * b.size
        if cost > KRONECKER_CUTOFF or min(a.size, b.size) * (p - 1) ** 2 >= 1 << 63:
            return _mul_kronecker(a, b, p)
        return small(a, b, p)

    return mul


mul_numpy = _make_mul(_mul_numpy_small)
if _HAVE_NUMBA:
    mul_numba = _make_mul(_mul_numba_small)
mul = mul_numba if _SELECTED == "numba" else mul_numpy


# ---------------------------------------------------------------------------
# division with remainder


def _divrem_numpy_small(u, v, inv_lead, p):
    r = u.copy()
    dv = v.size - 1
    q = np.zeros(u.size - dv, dtype=np.int64)
    for i in range(u.size - 1, dv - 1, -1):
        c = r[i]
        if c:
            f = (c * inv_lead) % p
            q[i - dv] = f
            r[i - dv : i + 1] = (r[i - dv : i + 1] - f * v) % p
    return q, r[:dv].copy()


if _HAVE_NUMBA:

    @njit(cache=True)
    def _divrem_numba_small(u, v, inv_lead, p):
        r = u.copy()
        dv = v.size - 1
        q = np.zeros(u.size - dv, dtype=np.int64)
        for i in range(u.size - 1, dv - 1, -1):
            c = r[i]
            if c != 0:
                f = (c * inv_lead) % p
                q[i - dv] = f
                for j in range(v.size):
                    r[i - dv + j] = (r[i - dv + j] - f * v[j]) % p
        return q, r[:dv].copy()


def series_inv(c, n, p, mul_fn=None):
    """First n coefficients of 1/c for an ascending array with c[0] != 0.

    Newton iteration on top of `mul`, so large sizes inherit the exact
    Kronecker path.
    """
    mul_fn = mul_fn or mul
    x = np.array([pow(int(c[0]), p - 2, p)], dtype=np.int64)
    k = 1
    while k < n:
        k2 = min(2 * k, n)
        t = mul_fn(c[: min(c.size, k2)], x, p)[:k2]
        t = (-t) % p
        t[0] = (t[0] + 2) % p
        x = mul_fn(x, t, p)[:k2]
        if x.size < k2:
            x = np.concatenate([x, np.zeros(k2 - x.size, dtype=np.int64)])
        k = k2
    return x


def _divrem_fast(u, v, p, mul_fn, need_rem):
    """Division via reversed-series inversion; cost ~ a few big multiplies."""
    dv = v.size - 1
    qlen = u.size - dv
    rv = v[::-1].copy()
    ru = u[::-1][:qlen].copy()
    inv_rv = series_inv(rv, qlen, p, mul_fn)
    q = mul_fn(ru, inv_rv, p)[:qlen][::-1].copy()
    if q.size < qlen:
        q = np.concatenate([np.zeros(qlen - q.size, dtype=np.int64), q])
    if not need_rem:
        return q, None
    r = (u[:dv] - mul_fn(q, v, p)[:dv]) % p if dv > 0 else _EMPTY
    return q, r


def _make_divrem(small, mul_fn):
    def divrem(u, v, p, need_rem=True):
        """Quotient and remainder of u by v (v nonzero, both reduced mod p).

        With need_rem=False the remainder slot is None (saves one big
        multiply on the fast path).
        """
        dv = v.size - 1
        if u.size < v.size:
            return _EMPTY, (u.copy() if need_rem else None)
        qlen = u.size - dv
        if qlen * v.size > FAST_DIV_CUTOFF:
            return _divrem_fast(u, v, p, mul_fn, need_rem)
        inv_lead = pow(int(v[dv]), p - 2, p)
        q, r = small(u, v, inv_lead, p)
        return q, (r if need_rem else None)

    return divrem


divrem_numpy = _make_divrem(_divrem_numpy_small, mul_numpy)
if _HAVE_NUMBA:
    divrem_numba = _make_divrem(_divrem_numba_small, mul_numba)
divrem = divrem_numba if _SELECTED == "numba" else divrem_numpy


def trim(c):
    """Strip trailing (leading-power) zeros from an ascending array."""
    n = c.size
    while n > 0 and c[n - 1] == 0:
        n -= 1
    return c[:n]
