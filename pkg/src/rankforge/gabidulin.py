"""Gabidulin codes, the Frobenius stacking operator and generator recovery."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from . import linalg as la
from .errors import DecodingError, NotGabidulinError, ParameterError, RecoveryError
from .field import GF


def moore_matrix(F: GF, g, k: int, check: bool = True) -> np.ndarray:
    """k x n matrix with entry (i, j) equal to ``g_j^{[i]}``.

    With ``check`` the support ``g`` must have full rank weight.
    """
    g = np.asarray(g, dtype=np.int64)
    if k < 0:
        raise ParameterError("k must be non-negative")
    if check and la.rank_weight(F, g) != len(g):
        raise ParameterError("generator vector must have rank weight n")
    rows = [g]
    for _ in range(1, k):
        rows.append(F.frobenius(rows[-1], 1))
    return np.ascontiguousarray(np.array(rows[:k], dtype=np.int64).reshape(k, len(g)))


def lambda_op(F: GF, M, i: int) -> np.ndarray:
    """Stack ``M^{[0]}, M^{[1]}, ..., M^{[i]}`` vertically."""
    if i < 0:
        raise ParameterError("expansion order must be non-negative")
    M = la._mat(M)
    blocks = [M]
    for _ in range(i):
        blocks.append(F.frobenius(blocks[-1], 1))
    return np.ascontiguousarray(np.vstack(blocks))


def lambda_code_dim(F: GF, M, i: int) -> int:
    return la.rank(F, lambda_op(F, M, i))


def lambda_dims(F: GF, M, i_max: int) -> list[int]:
    """``lambda_code_dim(M, i)`` for ``i = 0..i_max``, stopping early at full length."""
    M = la._mat(M)
    n = M.shape[1]
    dims = []
    for i in range(i_max + 1):
        if dims and dims[-1] == n:
            dims.append(n)
            continue
        dims.append(lambda_code_dim(F, M, i))
    return dims


def _linearized_compose_coeffs(F: GF, V, f, length: int) -> np.ndarray:
    """Coefficients of ``V(f(x))`` up to q-degree ``length - 1``."""
    out = np.zeros(length, dtype=np.int64)
    for a, va in enumerate(V):
        if va == 0:
            continue
        fa = F.frobenius(np.asarray(f, dtype=np.int64), a)
        for b, fb in enumerate(fa):
            if a + b < length and fb:
                out[a + b] = F.add(int(out[a + b]), F.mul(int(va), int(fb)))
    return out


@dataclass
class GabidulinCode:
    """The (n, k) Gabidulin code generated by the Moore matrix of ``g``."""

    field: GF
    g: np.ndarray
    k: int
    _check: bool = field(default=True, repr=False)

    def __post_init__(self):
        self.g = np.ascontiguousarray(self.g, dtype=np.int64)
        n = len(self.g)
        if not 0 <= self.k <= n:
            raise ParameterError(f"need 0 <= k <= n, got k={self.k}, n={n}")
        if n > self.field.m:
            raise ParameterError(f"length {n} exceeds extension degree {self.field.m}")
        if self._check and la.rank_weight(self.field, self.g) != n:
            raise ParameterError("generator vector must have rank weight n")

    @property
    def n(self) -> int:
        return len(self.g)

    @property
    def t(self) -> int:
        return (self.n - self.k) // 2

    @cached_property
    def generator(self) -> np.ndarray:
        return moore_matrix(self.field, self.g, self.k, check=False)

    @cached_property
    def _g_powers(self) -> np.ndarray:
        # rows g^{[0]} .. g^{[k+t-1]} for the interpolation step of decode
        return moore_matrix(self.field, self.g, self.k + self.t, check=False)

    def encode(self, msg) -> np.ndarray:
        msg = np.asarray(msg, dtype=np.int64)
        if msg.shape != (self.k,):
            raise ParameterError(f"message must have length {self.k}")
        return la.matmul(self.field, msg, self.generator)

    def decode(self, y) -> tuple[np.ndarray, np.ndarray]:
        """Return ``(msg, err)`` with ``y = encode(msg) + err`` and rank(err) <= t.

        Interpolation decoding: find linearized polynomials V (q-degree <= t)
        and N (q-degree <= k+t-1) with ``V(y_j) = N(g_j)`` for every j, then
        divide N = V o f on the left.  f has q-degree < k and its coefficients
        are the message.
        """
        F, k, t, n = self.field, self.k, self.t, self.n
        y = np.asarray(y, dtype=np.int64)
        if y.shape != (n,):
            raise ParameterError(f"received word must have length {n}")
        if t == 0:
            msg = la.solve_left(F, self.generator, y) if la.in_row_space(F, self.generator, y) else None
            if msg is None:
                raise DecodingError("word is not a codeword and the code corrects no errors")
            return msg, np.zeros(n, dtype=np.int64)
        ypow = moore_matrix(F, y, t + 1, check=False)
        system = np.ascontiguousarray(np.vstack([ypow, F.neg(self._g_powers)]).T)
        ker = la.right_kernel(F, system)
        if len(ker) == 0:
            raise DecodingError("interpolation system has only the trivial solution")
        sol = ker[0]
        V, N = sol[: t + 1], sol[t + 1:]
        f = self._left_divide(V, N)
        if f is None:
            raise DecodingError("interpolation polynomial is not divisible")
        err = F.sub(y, self.encode(f))
        if la.rank_weight(F, err) > t:
            raise DecodingError("no codeword within the decoding radius")
        return f, err

    def _left_divide(self, V, N):
        F, k = self.field, self.k
        nz = np.flatnonzero(V)
        if nz.size == 0:
            return None
        dv = int(nz[-1])
        lead_inv = F.inv(int(V[dv]))
        f = np.zeros(k, dtype=np.int64)
        for b in range(k - 1, -1, -1):
            acc = int(N[b + dv]) if b + dv < len(N) else 0
            for a in range(dv):
                idx = b + dv - a
                if idx < k and f[idx]:
                    acc = F.sub(acc, F.mul(int(V[a]), F.frobenius(int(f[idx]), a)))
            f[b] = F.frobenius(F.mul(acc, lead_inv), -dv)
        if not np.array_equal(_linearized_compose_coeffs(F, V, f, len(N)), N):
            return None
        return f

    def dual_generator(self) -> np.ndarray:
        """``h`` with ``Gab_{n-k}(h)`` equal to the dual code."""
        return dual_vector(self.field, self.g, self.k)

    def dual(self) -> GabidulinCode:
        return GabidulinCode(self.field, self.dual_generator(), self.n - self.k)

    def row_space_equal(self, M) -> bool:
        return la.row_space_equal(self.field, self.generator, M)


def dual_vector(F: GF, g, k: int) -> np.ndarray:
    """Generator vector of the dual of ``Gab_k(g)``.

    The one-dimensional dual of ``Gab_{n-1}(g)`` is spanned by some ``y``;
    shifting it by ``-(n-k-1)`` Frobenius steps gives the dual generator.
    """
    g = np.asarray(g, dtype=np.int64)
    n = len(g)
    if k >= n:
        raise ParameterError("the full code has an empty dual")
    ker = la.right_kernel(F, moore_matrix(F, g, n - 1, check=False))
    if len(ker) != 1:
        raise ParameterError("generator vector does not have rank weight n")
    y = la.normalize(F, ker[0])
    return F.frobenius(y, -(n - k - 1))


def recover_generator(F: GF, M, n: int, k: int) -> GabidulinCode:
    """Find ``g`` such that the rows of ``M`` span ``Gab_k(g)``."""
    M = la._mat(M)
    if M.shape[1] != n:
        raise ParameterError(f"matrix has {M.shape[1]} columns, expected {n}")
    if not 0 < k < n:
        raise ParameterError("recovery needs 0 < k < n")
    if la.rank(F, M) != k:
        raise NotGabidulinError(f"matrix does not have rank {k}")
    D = lambda_op(F, M, n - k - 1)
    ker = la.right_kernel(F, D)
    if len(ker) != 1:
        raise NotGabidulinError(f"expanded code has dimension {n - len(ker)}, expected {n - 1}")
    h = la.normalize(F, ker[0])
    if la.rank_weight(F, h) != n:
        raise NotGabidulinError("dual vector does not have full rank weight")
    h_dual = F.frobenius(h, -(n - k - 1))
    g = dual_vector(F, h_dual, n - k)
    try:
        code = GabidulinCode(F, g, k)
    except ParameterError as exc:
        raise RecoveryError(str(exc)) from exc
    if not code.row_space_equal(M):
        raise RecoveryError("recovered Gabidulin code differs from the input row space")
    return code
