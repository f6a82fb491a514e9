"""Arithmetic in F_q and in the extension F_{q^m}.

Elements are stored as their canonical integer ``sum(c_i * q**i)`` where
``c`` is the coefficient vector in the polynomial basis ``1, x, ..., x^{m-1}``.
Elements of F_q embed as the integers ``0..q-1``, so base-field matrices can
be used directly wherever extension-field matrices are expected.

Arrays of elements are plain ``np.int64`` arrays; :class:`GF` performs
element-wise operations on them.  :class:`FieldElement` is a small
operator-overloading wrapper for scalar work.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

import numpy as np

from . import _kernels as K
from .errors import FieldMismatchError, ParameterError

MAX_ORDER = 1 << 62


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def _prime_factors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


# -- dense polynomials over F_q as little-endian coefficient lists ----------

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a: list[int], f: list[int], q: int) -> list[int]:
    a = _trim([c % q for c in a])
    df = len(f) - 1
    inv_lead = pow(f[-1], q - 2, q) if q > 2 else 1
    while len(a) - 1 >= df:
        c = a[-1] * inv_lead % q
        shift = len(a) - 1 - df
        for j, fj in enumerate(f):
            a[shift + j] = (a[shift + j] - c * fj) % q
        _trim(a)
    return a


def _poly_mulmod(a: list[int], b: list[int], f: list[int], q: int) -> list[int]:
    if not a or not b:
        return []
    prod = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] += ai * bj
    return _poly_mod(prod, f, q)


def _poly_powmod(a: list[int], e: int, f: list[int], q: int) -> list[int]:
    result = [1]
    a = _poly_mod(list(a), f, q)
    while e:
        if e & 1:
            result = _poly_mulmod(result, a, f, q)
        a = _poly_mulmod(a, a, f, q)
        e >>= 1
    return result


def _poly_gcd(a: list[int], b: list[int], q: int) -> list[int]:
    a, b = _trim([c % q for c in a]), _trim([c % q for c in b])
    while b:
        a, b = b, _poly_mod(a, b, q)
    return a


def is_irreducible(coeffs: Sequence[int], q: int) -> bool:
    """Rabin's test for a monic polynomial given little-endian."""
    f = _trim([int(c) % q for c in coeffs])
    m = len(f) - 1
    if m < 1 or f[-1] != 1:
        return False
    if m == 1:
        return True
    if f[0] == 0:
        return False
    x = [0, 1]

    def x_qpow(j: int) -> list[int]:
        r = x
        for _ in range(j):
            r = _poly_powmod(r, q, f, q)
        return r

    diff = _trim([(a - b) % q for a, b in _zip_pad(x_qpow(m), x)])
    if diff:
        return False
    for p in _prime_factors(m):
        h = _trim([(a - b) % q for a, b in _zip_pad(x_qpow(m // p), x)])
        if len(_poly_gcd(f, h, q)) != 1:
            return False
    return True


def _zip_pad(a, b):
    n = max(len(a), len(b))
    return zip(list(a) + [0] * (n - len(a)), list(b) + [0] * (n - len(b)))


def _encode_coeffs(coeffs: Sequence[int], q: int) -> int:
    v = 0
    for c in reversed(list(coeffs)):
        v = v * q + int(c)
    return v


def _decode_int(v: int, q: int, length: int) -> list[int]:
    out = []
    for _ in range(length):
        out.append(v % q)
        v //= q
    return out


def smallest_irreducible(q: int, m: int) -> list[int]:
    """Monic irreducible of degree ``m`` with the smallest canonical encoding."""
    for low in range(q ** m):
        coeffs = _decode_int(low, q, m) + [1]
        if is_irreducible(coeffs, q):
            return coeffs
    raise ParameterError(f"no irreducible polynomial of degree {m} over F_{q}")  # unreachable


class GF:
    """The field F_{q^m} for a prime ``q``.

    ``modulus`` may be given as a little-endian coefficient sequence (length
    ``m + 1``, monic) or as its canonical integer encoding.  It defaults to
    the monic irreducible of degree ``m`` with the smallest encoding.
    """

    def __init__(self, q: int, m: int, modulus: Sequence[int] | int | None = None):
        if not is_prime(q):
            raise ParameterError(f"q={q} is not prime")
        if m < 1:
            raise ParameterError(f"extension degree must be positive, got m={m}")
        if q ** m >= MAX_ORDER or (q == 2 and m > 31):
            raise ParameterError(f"field of order {q}^{m} is too large")
        if modulus is None:
            coeffs = smallest_irreducible(q, m)
        else:
            if isinstance(modulus, (int, np.integer)):
                coeffs = _decode_int(int(modulus), q, m + 1)
                if _encode_coeffs(coeffs, q) != int(modulus):
                    raise ParameterError(f"modulus {modulus} has degree > {m}")
            else:
                coeffs = [int(c) for c in modulus]
            if len(coeffs) != m + 1 or coeffs[-1] != 1:
                raise ParameterError("modulus must be monic of degree m")
            if any(not 0 <= c < q for c in coeffs):
                raise ParameterError("modulus coefficients must lie in [0, q)")
            if not is_irreducible(coeffs, q):
                raise ParameterError(f"modulus {coeffs} is reducible over F_{q}")
        self.q = q
        self.m = m
        self.order = q ** m
        self.modulus = tuple(coeffs)
        self.modulus_int = _encode_coeffs(coeffs, q)
        self._modc = np.array(coeffs, dtype=np.int64)
        self._mul_args = (q, m, self.modulus_int, self._modc)
        self._ftab = self._frobenius_table()

    def _frobenius_table(self) -> np.ndarray:
        # row i, column j: (x^j)^(q^i)
        q, m = self.q, self.m
        tab = np.zeros((m, m), dtype=np.int64)
        tab[0] = [q ** j for j in range(m)]
        for i in range(1, m):
            for j in range(m):
                tab[i, j] = K.fpow(int(tab[i - 1, j]), q, *self._mul_args)
        return tab

    # -- identity ----------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        return isinstance(other, GF) and (self.q, self.m, self.modulus) == (other.q, other.m, other.modulus)

    def __hash__(self) -> int:
        return hash((self.q, self.m, self.modulus))

    def __repr__(self) -> str:
        return f"GF({self.q}^{self.m}, modulus={self.modulus_int})"

    @cached_property
    def base(self) -> GF:
        """The prime field F_q (itself when m == 1)."""
        return self if self.m == 1 else GF(self.q, 1)

    @property
    def is_prime_field(self) -> bool:
        return self.m == 1

    def __call__(self, value) -> FieldElement:
        if isinstance(value, FieldElement):
            self.check(value.field)
            return value
        if isinstance(value, (list, tuple)):
            if len(value) != self.m:
                raise ParameterError(f"expected {self.m} coefficients")
            value = self.from_coeffs(value)
        value = int(value)
        if not 0 <= value < self.order:
            raise ParameterError(f"{value} is not an element of {self}")
        return FieldElement(self, value)

    def check(self, other: GF) -> None:
        if other != self:
            raise FieldMismatchError(f"{other!r} is not {self!r}")

    # -- encodings ---------------------------------------------------------

    def coeffs(self, a: int) -> list[int]:
        return _decode_int(int(a), self.q, self.m)

    def from_coeffs(self, coeffs: Sequence[int]) -> int:
        if len(coeffs) != self.m or any(not 0 <= int(c) < self.q for c in coeffs):
            raise ParameterError(f"invalid coefficient vector {list(coeffs)}")
        return _encode_coeffs(coeffs, self.q)

    @property
    def generator_x(self) -> int:
        """The class of ``x`` (equals ``q`` unless m == 1)."""
        return self.q if self.m > 1 else 0

    # -- element-wise arithmetic on ints or int64 arrays --------------------

    def _apply2(self, kernel, a, b, *args):
        if np.ndim(a) == 0 and np.ndim(b) == 0:
            return int(kernel(np.array([a], dtype=np.int64), np.array([b], dtype=np.int64), *args)[0])
        a, b = np.broadcast_arrays(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64))
        out = kernel(np.ascontiguousarray(a).ravel(), np.ascontiguousarray(b).ravel(), *args)
        return out.reshape(a.shape)

    def _apply1(self, kernel, a, *args):
        if np.ndim(a) == 0:
            return int(kernel(np.array([a], dtype=np.int64), *args)[0])
        a = np.ascontiguousarray(a, dtype=np.int64)
        return kernel(a.ravel(), *args).reshape(a.shape)

    def add(self, a, b):
        if np.ndim(a) == 0 and np.ndim(b) == 0:
            return int(K.fadd(int(a), int(b), self.q, self.m))
        return self._apply2(K.arr_add, a, b, self.q, self.m)

    def sub(self, a, b):
        if np.ndim(a) == 0 and np.ndim(b) == 0:
            return int(K.fsub(int(a), int(b), self.q, self.m))
        return self._apply2(K.arr_sub, a, b, self.q, self.m)

    def neg(self, a):
        if np.ndim(a) == 0:
            return int(K.fneg(int(a), self.q, self.m))
        return self._apply1(K.arr_neg, a, self.q, self.m)

    def mul(self, a, b):
        if np.ndim(a) == 0 and np.ndim(b) == 0:
            return int(K.fmul(int(a), int(b), *self._mul_args))
        return self._apply2(K.arr_mul, a, b, *self._mul_args)

    def inv(self, a):
        if np.any(np.asarray(a) == 0):
            raise ZeroDivisionError("zero has no multiplicative inverse")
        if np.ndim(a) == 0:
            return int(K.finv(int(a), *self._mul_args))
        return self._apply1(K.arr_inv, a, *self._mul_args)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            a, e = self.inv(a), -e
        return int(K.fpow(int(a), e, *self._mul_args))

    def frobenius(self, a, i: int = 1):
        """``a ** (q ** i)``; negative ``i`` gives the inverse automorphism."""
        i %= self.m
        if np.ndim(a) == 0:
            return int(K.ffrob(int(a), i, self.q, self.m, self._ftab))
        return self._apply1(K.arr_frob, a, i, self.q, self.m, self._ftab)

    def frobenius_by_powering(self, a: int, i: int = 1) -> int:
        """Same map as :meth:`frobenius`, by repeated q-th powers."""
        a = int(a)
        for _ in range(i % self.m):
            a = self.pow(a, self.q)
        return a

    def random(self, rng: np.random.Generator, size=None, nonzero: bool = False):
        low = 1 if nonzero else 0
        if size is None:
            return int(rng.integers(low, self.order))
        return rng.integers(low, self.order, size=size, dtype=np.int64)

    def elements(self) -> np.ndarray:
        return np.arange(self.order, dtype=np.int64)


@dataclass(frozen=True)
class FieldElement:
    """A scalar of F_{q^m} bound to its field."""

    field: GF
    value: int

    @property
    def coeffs(self) -> list[int]:
        return self.field.coeffs(self.value)

    def _other(self, other) -> int:
        if isinstance(other, FieldElement):
            self.field.check(other.field)
            return other.value
        if isinstance(other, (int, np.integer)) and 0 <= other < self.field.q:
            return int(other)
        return NotImplemented

    def __add__(self, other):
        v = self._other(other)
        return v if v is NotImplemented else FieldElement(self.field, self.field.add(self.value, v))

    __radd__ = __add__

    def __sub__(self, other):
        v = self._other(other)
        return v if v is NotImplemented else FieldElement(self.field, self.field.sub(self.value, v))

    def __mul__(self, other):
        v = self._other(other)
        return v if v is NotImplemented else FieldElement(self.field, self.field.mul(self.value, v))

    __rmul__ = __mul__

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.value))

    def __truediv__(self, other):
        v = self._other(other)
        return v if v is NotImplemented else FieldElement(self.field, self.field.div(self.value, v))

    def __pow__(self, e: int):
        return FieldElement(self.field, self.field.pow(self.value, e))

    def inverse(self) -> FieldElement:
        return FieldElement(self.field, self.field.inv(self.value))

    def frobenius(self, i: int = 1) -> FieldElement:
        return FieldElement(self.field, self.field.frobenius(self.value, i))

    def __bool__(self) -> bool:
        return self.value != 0

    def __int__(self) -> int:
        return self.value

    def __repr__(self) -> str:
        return f"FieldElement({self.coeffs})"


def ff_add(a: FieldElement, b: FieldElement) -> FieldElement:
    a.field.check(b.field)
    return a + b


def ff_mul(a: FieldElement, b: FieldElement) -> FieldElement:
    a.field.check(b.field)
    return a * b


def ff_inv(a: FieldElement) -> FieldElement:
    return a.inverse()


def frobenius(x: FieldElement, i: int) -> FieldElement:
    return x.frobenius(i)
