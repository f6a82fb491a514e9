"""Compiled inner loops for F_{q^m} arithmetic.

Every kernel takes the field description as plain arguments
``(q, m, modi, modc)``: the prime ``q``, the degree ``m``, the modulus as its
canonical integer and as a little-endian coefficient array.  Elements are
int64 values ``sum(c_i * q**i)``.  ``q == 2`` takes a bit-packed fast path.
"""

from __future__ import annotations

import numpy as np
from numba import njit

_I64 = np.int64


@njit(cache=True)
def _mul2(a, b, m, modi):
    p = 0
    top = 1 << m
    while b:
        if b & 1:
            p ^= a
        b >>= 1
        a <<= 1
        if a & top:
            a ^= modi
    return p


@njit(cache=True)
def _digits(a, q, m):
    d = np.zeros(m, dtype=np.int64)
    for i in range(m):
        d[i] = a % q
        a //= q
    return d


@njit(cache=True)
def _undigits(d, q, m):
    v = 0
    for i in range(m - 1, -1, -1):
        v = v * q + d[i]
    return v


@njit(cache=True)
def _mulg(a, b, q, m, modc):
    da = _digits(a, q, m)
    db = _digits(b, q, m)
    prod = np.zeros(2 * m - 1, dtype=np.int64)
    for i in range(m):
        if da[i] == 0:
            continue
        for j in range(m):
            prod[i + j] = (prod[i + j] + da[i] * db[j]) % q
    # modc is monic: leading coefficient 1
    for d in range(2 * m - 2, m - 1, -1):
        c = prod[d]
        if c:
            for j in range(m + 1):
                prod[d - m + j] = (prod[d - m + j] - c * modc[j]) % q
    return _undigits(prod, q, m)


@njit(cache=True)
def fmul(a, b, q, m, modi, modc):
    if a == 0 or b == 0:
        return 0
    if q == 2:
        return _mul2(a, b, m, modi)
    return _mulg(a, b, q, m, modc)


@njit(cache=True)
def fadd(a, b, q, m):
    if q == 2:
        return a ^ b
    r = 0
    w = 1
    for _ in range(m):
        r += ((a % q + b % q) % q) * w
        a //= q
        b //= q
        w *= q
    return r


@njit(cache=True)
def fneg(a, q, m):
    if q == 2:
        return a
    r = 0
    w = 1
    for _ in range(m):
        r += ((q - a % q) % q) * w
        a //= q
        w *= q
    return r


@njit(cache=True)
def fsub(a, b, q, m):
    if q == 2:
        return a ^ b
    return fadd(a, fneg(b, q, m), q, m)


@njit(cache=True)
def fscale(c, a, q, m):
    """Multiply ``a`` by the prime-field scalar ``c``."""
    if q == 2:
        return a if c & 1 else 0
    r = 0
    w = 1
    for _ in range(m):
        r += ((c * (a % q)) % q) * w
        a //= q
        w *= q
    return r


@njit(cache=True)
def fpow(a, e, q, m, modi, modc):
    r = 1
    while e > 0:
        if e & 1:
            r = fmul(r, a, q, m, modi, modc)
        a = fmul(a, a, q, m, modi, modc)
        e >>= 1
    return r


@njit(cache=True)
def finv(a, q, m, modi, modc):
    # a^(q^m - 2); caller rejects zero
    order = 1
    for _ in range(m):
        order *= q
    return fpow(a, order - 2, q, m, modi, modc)


@njit(cache=True)
def ffrob(a, i, q, m, ftab):
    """``a ** (q ** i)`` for ``0 <= i < m`` via the precomputed basis images."""
    if i == 0 or a == 0:
        return a
    r = 0
    j = 0
    while a:
        c = a % q
        if c:
            r = fadd(r, fscale(c, ftab[i, j], q, m), q, m)
        a //= q
        j += 1
    return r


@njit(cache=True)
def arr_mul(a, b, q, m, modi, modc):
    out = np.empty(a.size, dtype=np.int64)
    for i in range(a.size):
        out[i] = fmul(a[i], b[i], q, m, modi, modc)
    return out


@njit(cache=True)
def arr_add(a, b, q, m):
    out = np.empty(a.size, dtype=np.int64)
    for i in range(a.size):
        out[i] = fadd(a[i], b[i], q, m)
    return out


@njit(cache=True)
def arr_sub(a, b, q, m):
    out = np.empty(a.size, dtype=np.int64)
    for i in range(a.size):
        out[i] = fsub(a[i], b[i], q, m)
    return out


@njit(cache=True)
def arr_neg(a, q, m):
    out = np.empty(a.size, dtype=np.int64)
    for i in range(a.size):
        out[i] = fneg(a[i], q, m)
    return out


@njit(cache=True)
def arr_inv(a, q, m, modi, modc):
    out = np.empty(a.size, dtype=np.int64)
    for i in range(a.size):
        out[i] = finv(a[i], q, m, modi, modc)
    return out


@njit(cache=True)
def arr_frob(a, i, q, m, ftab):
    out = np.empty(a.size, dtype=np.int64)
    for j in range(a.size):
        out[j] = ffrob(a[j], i, q, m, ftab)
    return out


@njit(cache=True)
def mat_mul(A, B, q, m, modi, modc):
    r, inner = A.shape
    c = B.shape[1]
    out = np.zeros((r, c), dtype=np.int64)
    for i in range(r):
        for t in range(inner):
            a = A[i, t]
            if a == 0:
                continue
            for j in range(c):
                b = B[t, j]
                if b != 0:
                    out[i, j] = fadd(out[i, j], fmul(a, b, q, m, modi, modc), q, m)
    return out


@njit(cache=True)
def rref(M, q, m, modi, modc, ncols):
    """Reduced row echelon form, pivots searched in the first ``ncols`` columns.

    Leftmost pivot column, topmost candidate row.  Returns ``(R, pivots)``
    where ``pivots`` holds the pivot column of each nonzero row.
    """
    R = M.copy()
    rows, cols = R.shape
    pivots = np.empty(min(rows, ncols), dtype=np.int64)
    r = 0
    for c in range(ncols):
        if r == rows:
            break
        p = -1
        for i in range(r, rows):
            if R[i, c] != 0:
                p = i
                break
        if p < 0:
            continue
        if p != r:
            for j in range(cols):
                tmp = R[r, j]
                R[r, j] = R[p, j]
                R[p, j] = tmp
        piv = R[r, c]
        if piv != 1:
            inv = finv(piv, q, m, modi, modc)
            for j in range(c, cols):
                if R[r, j] != 0:
                    R[r, j] = fmul(R[r, j], inv, q, m, modi, modc)
        for i in range(rows):
            if i == r:
                continue
            f = R[i, c]
            if f == 0:
                continue
            for j in range(c, cols):
                if R[r, j] != 0:
                    R[i, j] = fsub(R[i, j], fmul(f, R[r, j], q, m, modi, modc), q, m)
        pivots[r] = c
        r += 1
    return R, pivots[:r].copy()


@njit(cache=True)
def expand(M, q, m):
    """Replace every entry by its coefficient column: (rows*m) x cols over F_q."""
    rows, cols = M.shape
    out = np.zeros((rows * m, cols), dtype=np.int64)
    for i in range(rows):
        for j in range(cols):
            a = M[i, j]
            for t in range(m):
                out[i * m + t, j] = a % q
                a //= q
    return out
