"""Exact dense linear algebra over F_q and F_{q^m}, and rank-metric helpers.

Vectors and matrices are ``np.int64`` arrays of canonical element encodings;
the field is always passed explicitly.  A matrix over F_q is just an array
with entries in ``[0, q)`` and may be handed to any function expecting an
extension-field matrix.
"""

from __future__ import annotations

import numpy as np

from . import _kernels as K
from .errors import ParameterError, RankError, SamplingError, SingularMatrixError
from .field import GF

MAX_TRIES = 1000


def _arr(a) -> np.ndarray:
    return np.ascontiguousarray(a, dtype=np.int64)


def _mat(a) -> np.ndarray:
    a = _arr(a)
    if a.ndim == 1:
        a = a.reshape(1, -1)
    return a


# -- basic products --------------------------------------------------------

def matmul(F: GF, A, B) -> np.ndarray:
    A, B = _arr(A), _arr(B)
    squeeze_left = A.ndim == 1
    squeeze_right = B.ndim == 1
    A = A.reshape(1, -1) if squeeze_left else A
    B = B.reshape(-1, 1) if squeeze_right else B
    if A.shape[1] != B.shape[0]:
        raise ParameterError(f"shape mismatch {A.shape} x {B.shape}")
    out = K.mat_mul(A, B, *F._mul_args)
    if squeeze_left:
        out = out[0]
    if squeeze_right:
        out = out[..., 0]
    return out


def identity(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.int64)


def frobenius(F: GF, M, i: int) -> np.ndarray:
    """Entry-wise ``M^{[i]}``."""
    return F.frobenius(_arr(M), i)


# -- elimination -----------------------------------------------------------

def rref(F: GF, M, ncols: int | None = None) -> tuple[np.ndarray, np.ndarray]:
    M = _mat(M)
    if ncols is None:
        ncols = M.shape[1]
    R, piv = K.rref(M, *F._mul_args, ncols)
    return R, piv


def rank(F: GF, M) -> int:
    M = _mat(M)
    if M.size == 0:
        return 0
    return len(rref(F, M)[1])


def inverse(F: GF, M) -> np.ndarray:
    M = _mat(M)
    n = M.shape[0]
    if M.shape != (n, n):
        raise ParameterError("only square matrices have inverses")
    R, piv = rref(F, np.hstack([M, identity(n)]), ncols=n)
    if len(piv) < n:
        raise SingularMatrixError("matrix is singular")
    return np.ascontiguousarray(R[:, n:])


def is_invertible(F: GF, M) -> bool:
    M = _mat(M)
    return M.shape[0] == M.shape[1] and rank(F, M) == M.shape[0]


def right_kernel(F: GF, M) -> np.ndarray:
    """Basis of ``{x : M x = 0}`` as the rows of the returned array.

    One vector per free column, in increasing column order; each has a 1 at
    its free column, so the first nonzero coordinate is not necessarily 1.
    """
    M = _mat(M)
    n = M.shape[1]
    R, piv = rref(F, M)
    free = [j for j in range(n) if j not in set(piv.tolist())]
    basis = np.zeros((len(free), n), dtype=np.int64)
    for b, j in enumerate(free):
        basis[b, j] = 1
        for r, pc in enumerate(piv):
            basis[b, pc] = F.neg(int(R[r, j]))
    return basis


def solve_left(F: GF, A, y) -> np.ndarray:
    """The unique ``x`` with ``x A = y`` for ``A`` of full row rank."""
    A = _mat(A)
    At = np.ascontiguousarray(A.T)
    k = A.shape[0]
    R, piv = rref(F, np.hstack([At, _arr(y).reshape(-1, 1)]), ncols=k)
    if len(piv) < k:
        raise RankError("matrix does not have full row rank")
    if np.any(R[k:, k] != 0):
        raise ParameterError("vector is not in the row space")
    return np.ascontiguousarray(R[:k, k])


def normalize(F: GF, v) -> np.ndarray:
    """Scale so that the first nonzero coordinate is 1."""
    v = _arr(v)
    nz = np.flatnonzero(v)
    if nz.size == 0:
        return v.copy()
    return F.mul(v, F.inv(int(v[nz[0]])))


def row_space_equal(F: GF, A, B) -> bool:
    A, B = _mat(A), _mat(B)
    if A.shape[1] != B.shape[1]:
        return False
    ra, pa = rref(F, A)
    rb, pb = rref(F, B)
    return len(pa) == len(pb) and np.array_equal(ra[: len(pa)], rb[: len(pb)])


def in_row_space(F: GF, A, v) -> bool:
    A = _mat(A)
    return rank(F, np.vstack([A, _arr(v).reshape(1, -1)])) == rank(F, A)


# -- rank metric -------------------------------------------------------------

def expand_to_base(F: GF, x) -> np.ndarray:
    """The m x n matrix over F_q whose column j holds the coefficients of x_j.

    A k x n matrix expands to (k*m) x n, row block i being row i of the input.
    """
    return K.expand(_mat(x), F.q, F.m)


def rank_weight(F: GF, x) -> int:
    return rank(F.base, expand_to_base(F, _arr(x).reshape(1, -1)))


def rank_weight_matrix(F: GF, M) -> int:
    """Column rank over F_q of ``M``."""
    return rank(F.base, expand_to_base(F, M))


def fq_kernel(F: GF, v) -> np.ndarray:
    """Rows form an F_q-basis of ``{x in F_q^n : sum v_i x_i = 0}``."""
    return right_kernel(F.base, expand_to_base(F, v))


def complete_to_invertible(F: GF, cols, n: int) -> np.ndarray:
    """n x n matrix over F_q whose leading columns are ``cols`` (given as rows).

    Completed greedily with standard basis vectors, lowest index first.
    """
    B = F.base
    cols = np.asarray(cols, dtype=np.int64).reshape(-1, n)
    if rank(B, cols) < len(cols):
        raise RankError("input columns are linearly dependent")
    chosen = [c for c in cols]
    current = len(chosen)
    for j in range(n):
        if current == n:
            break
        e = np.zeros(n, dtype=np.int64)
        e[j] = 1
        if rank(B, np.array(chosen + [e])) > current:
            chosen.append(e)
            current += 1
    return np.ascontiguousarray(np.array(chosen, dtype=np.int64).reshape(n, n).T)


def rank_reduce(F: GF, M) -> tuple[np.ndarray, np.ndarray]:
    """Return ``(M_star, T)`` with ``M T = (M_star | 0)`` and T invertible over F_q."""
    M = _mat(M)
    n = M.shape[1]
    ker = fq_kernel(F, M)
    if len(ker) == 0:
        return M.copy(), identity(n)
    W = complete_to_invertible(F, ker, n)
    d = len(ker)
    T = np.ascontiguousarray(np.hstack([W[:, d:], W[:, :d]]))
    return matmul(F, M, T[:, : n - d]), T


def block_lower_inverse(F: GF, A, C, D) -> np.ndarray:
    """Inverse of ``((A, 0), (C, D))`` from the inverses of its diagonal blocks."""
    A, C, D = _mat(A), _mat(C), _mat(D)
    a, d = A.shape[0], D.shape[0]
    if A.shape != (a, a) or D.shape != (d, d) or C.shape != (d, a):
        raise ParameterError("blocks are not conformal")
    Ai = inverse(F, A)
    Di = inverse(F, D)
    lower = F.neg(matmul(F, matmul(F, Di, C), Ai))
    out = np.zeros((a + d, a + d), dtype=np.int64)
    out[:a, :a] = Ai
    out[a:, :a] = lower
    out[a:, a:] = Di
    return out


def block(rows) -> np.ndarray:
    return np.ascontiguousarray(np.block([[_mat(b) for b in row] for row in rows]).astype(np.int64))


# -- sampling ----------------------------------------------------------------

def sample_full_rank_vector(F: GF, n: int, rng: np.random.Generator, tries: int = MAX_TRIES) -> np.ndarray:
    if n > F.m:
        raise ParameterError(f"rank weight {n} exceeds extension degree {F.m}")
    for _ in range(tries):
        x = F.random(rng, n)
        if rank_weight(F, x) == n:
            return x
    raise SamplingError(f"no full-rank vector of length {n} after {tries} tries")


def sample_gl(F: GF, n: int, rng: np.random.Generator, tries: int = MAX_TRIES) -> np.ndarray:
    """Uniform invertible n x n matrix over ``F`` (pass ``F.base`` for F_q)."""
    if n < 1:
        raise ParameterError("n must be positive")
    for _ in range(tries):
        M = F.random(rng, (n, n))
        if rank(F, M) == n:
            return M
    raise SamplingError(f"no invertible {n}x{n} matrix after {tries} tries")


def sample_full_column_weight(F: GF, k: int, r: int, rng: np.random.Generator, tries: int = MAX_TRIES):
    """k x r matrix over F_{q^m} with F_q column rank r."""
    for _ in range(tries):
        A = F.random(rng, (k, r))
        if rank_weight_matrix(F, A) == r:
            return A
    raise SamplingError(f"no {k}x{r} matrix of rank weight {r} after {tries} tries")


def sample_full_row_rank_base(F: GF, r: int, n: int, rng: np.random.Generator, tries: int = MAX_TRIES):
    B = F.base
    for _ in range(tries):
        M = B.random(rng, (r, n))
        if rank(B, M) == r:
            return M
    raise SamplingError(f"no {r}x{n} full-rank base matrix after {tries} tries")


def sample_rank_bounded_matrix(F: GF, k: int, n: int, r: int, rng: np.random.Generator) -> np.ndarray:
    """k x n matrix of rank weight exactly ``r``, built as (k x r) * (r x n over F_q)."""
    if r < 0 or r > n or r > k * F.m:
        raise ParameterError(f"rank weight {r} infeasible for a {k}x{n} matrix over {F}")
    if r == 0:
        return np.zeros((k, n), dtype=np.int64)
    A = sample_full_column_weight(F, k, r, rng)
    B = sample_full_row_rank_base(F, r, n, rng)
    return matmul(F, A, B)


def sample_rank_error(F: GF, n: int, r: int, rng: np.random.Generator) -> np.ndarray:
    """Length-n vector of rank weight exactly ``r``."""
    return sample_rank_bounded_matrix(F, 1, n, r, rng)[0]
