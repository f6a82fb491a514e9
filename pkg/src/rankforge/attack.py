"""Structural key recovery for GPT-like schemes via the Frobenius stacking operator.

The public code is assumed to have the shape ``S (X | G_hat) P_hat`` with
``P_hat`` over F_q and ``G_hat`` generating an (n', k) Gabidulin code.  For
``i = n' - k - 1`` the stacked code ``Lambda_i(G_pub)`` generically has
codimension one; its dual vector ``v`` has rank weight n', and any F_q-basis
change that sends ``v`` to ``(0 | h')`` isolates a Gabidulin code on the last
n' columns.  Extension-field scramblers only shorten n', they do not prevent
this.
"""

from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from . import linalg as la
from .errors import (
    AttackError,
    DecodingError,
    DistinguisherFailure,
    NotGabidulinError,
    OracleError,
    ParameterError,
    RecoveryError,
    StructureError,
)
from .field import GF
from .gabidulin import GabidulinCode, lambda_dims, lambda_op, moore_matrix, recover_generator
from .schemes import PublicKey, SchemeParams, Variant


class Verdict(str, enum.Enum):
    GABIDULIN_LIKE = "gabidulin-like"
    RANDOM_LIKE = "random-like"


@dataclass
class DistinguisherReport:
    dims: list[int]
    verdict: Verdict
    degenerate: bool = False


def distinguish(F: GF, M, i_max: int) -> DistinguisherReport:
    """Compare the growth of ``dim Lambda_i(M)`` with that of a random code.

    A random k-dimensional code of length n reaches ``min(n, (i+1) k)``.
    Any shortfall exposes structure, so the verdict is GABIDULIN_LIKE exactly
    when some ``dims[i]`` is below that value.  When the Gabidulin profile
    ``min(n, k + i)`` coincides with the random one over the whole window
    (k = 1, k >= n - 1, or i_max = 0) the test cannot separate the two; the
    report is then flagged degenerate and called GABIDULIN_LIKE.
    """
    M = la._mat(M)
    k = la.rank(F, M)
    n = M.shape[1]
    dims = lambda_dims(F, M, i_max)
    generic = [min(n, (i + 1) * k) for i in range(i_max + 1)]
    gab = [min(n, k + i) for i in range(i_max + 1)]
    if generic == gab:
        return DistinguisherReport(dims, Verdict.GABIDULIN_LIKE, degenerate=True)
    structured = any(d < r for d, r in zip(dims, generic))
    return DistinguisherReport(dims, Verdict.GABIDULIN_LIKE if structured else Verdict.RANDOM_LIKE)


@dataclass
class AttackResult:
    """Alternative private key recovered from public data only.

    ``G_pub T_star^{-1} = (Z | B)`` where ``B`` (k x n') spans the Gabidulin
    code of ``degraded_code``.
    """

    T_star: np.ndarray
    T_star_inv: np.ndarray
    pad_width: int
    degraded_code: GabidulinCode
    B: np.ndarray
    t_star: int
    lambda_index: int
    tried: list[tuple[int, int]] = field(default_factory=list)
    _pivots: np.ndarray | None = field(default=None, repr=False)
    _B_sq_inv: np.ndarray | None = field(default=None, repr=False)

    @property
    def field(self) -> GF:
        return self.degraded_code.field

    @property
    def n_prime(self) -> int:
        return self.degraded_code.n

    def _message_solver(self):
        if self._B_sq_inv is None:
            F = self.field
            _, piv = la.rref(F, self.B)
            self._pivots = piv
            self._B_sq_inv = la.inverse(F, np.ascontiguousarray(self.B[:, piv]))
        return self._pivots, self._B_sq_inv

    def transcript(self) -> dict:
        return {
            "lambda_index": self.lambda_index,
            "tried": [{"i": i, "dim": d} for i, d in self.tried],
            "pad_width": self.pad_width,
            "n_prime": self.n_prime,
            "k": self.degraded_code.k,
            "t_star": self.t_star,
        }


def _search_order(i0: int, lo: int, hi: int) -> list[int]:
    order = [i0] if lo <= i0 <= hi else []
    for step in range(1, hi - lo + 1):
        for i in (i0 - step, i0 + step):
            if lo <= i <= hi and i not in order:
                order.append(i)
    return order


def overbeck_core(F: GF, G_pub, k: int, n_prime: int, ell_prime: int, search: bool = True) -> AttackResult:
    """Find ``T`` over F_q such that the last n' columns of ``G_pub T^{-1}`` are Gabidulin.

    Only ``G_pub`` and public dimensions are used.  The stacking index starts
    at ``n' - k - 1``; with ``search`` the neighbouring indices are tried in
    order of distance when the dual there is not one-dimensional, and n' is
    re-read from the rank weight of the dual vector that is found.
    """
    G_pub = la._mat(G_pub)
    N = G_pub.shape[1]
    if n_prime + ell_prime != N:
        raise ParameterError(f"n'={n_prime} plus ell'={ell_prime} does not match length {N}")
    if not 0 < k < n_prime:
        raise ParameterError(f"need 0 < k < n', got k={k}, n'={n_prime}")
    i0 = max(n_prime - k - 1, 1 if n_prime - k >= 2 else 0)
    candidates = _search_order(i0, 0, N - 2) if search else [i0]
    tried: list[tuple[int, int]] = []
    last_error: AttackError | None = None
    for i in candidates:
        D = lambda_op(F, G_pub, i)
        ker = la.right_kernel(F, D)
        tried.append((i, N - len(ker)))
        if len(ker) != 1:
            continue
        v = la.normalize(F, ker[0])
        n_obs = la.rank_weight(F, v)
        ell_obs = N - n_obs
        if not k < n_obs:
            last_error = StructureError(f"dual vector has rank weight {n_obs} <= k")
            continue
        K = la.fq_kernel(F, v)
        T_star = np.ascontiguousarray(la.complete_to_invertible(F, K, N).T)
        T_inv = la.inverse(F.base, T_star)
        B = np.ascontiguousarray(la.matmul(F, G_pub, T_inv)[:, ell_obs:])
        try:
            code = recover_generator(F, B, n_obs, k)
        except (NotGabidulinError, RecoveryError) as exc:
            last_error = StructureError(f"index {i}: {exc}")
            continue
        return AttackResult(T_star, T_inv, ell_obs, code, B, (n_obs - k) // 2, i, tried)
    # a non-generic dual at the primary index is the root cause, whatever the fallbacks hit
    if last_error is None or tried[0][1] != N - 1:
        detail = f"; last fallback error: {last_error}" if last_error is not None else ""
        raise DistinguisherFailure(
            f"dual at index {i0} is not one-dimensional; (index, dim) tried: {tried}{detail}")
    raise last_error


def attack_geometry(params: SchemeParams) -> tuple[int, int]:
    """Expected ``(n', ell')`` of the degraded code for a variant."""
    v, n, ell, h = params.variant, params.n, params.ell, params.hiding_rank
    if v is Variant.GAB08:
        return n - h, ell + h
    if v is Variant.GRH:
        return n - h, h
    if v is Variant.TP:
        return n - h - ell, 2 * ell + h
    # GO and CLASSIC: the rank-t2 distortion joins the padding
    return n - h, ell + h


def attack(pk: PublicKey, params: SchemeParams | None = None, search: bool = True) -> AttackResult:
    params = params or pk.params
    if pk.G_pub.shape != (params.k, params.length):
        raise ParameterError(f"public matrix shape {pk.G_pub.shape} does not match parameters")
    n_prime, ell_prime = attack_geometry(params)
    return overbeck_core(params.field, pk.G_pub, params.k, n_prime, ell_prime, search=search)


def oracle_decrypt(res: AttackResult, c) -> np.ndarray:
    """Decrypt with the degraded code instead of the secret one."""
    F = res.field
    y = la.matmul(F, np.asarray(c, dtype=np.int64), res.T_star_inv)[res.pad_width:]
    try:
        _, err = res.degraded_code.decode(y)
    except DecodingError as exc:
        raise OracleError(f"degraded code failed to decode: {exc}") from exc
    codeword = F.sub(y, err)
    piv, inv = res._message_solver()
    return la.matmul(F, codeword[piv], inv)


# -- dimension census ---------------------------------------------------------

@dataclass
class CensusTable:
    """Empirical distribution of ``dim Lambda_i`` for three kinds of codes."""

    n: int
    k: int
    ell: int
    trials: int
    i_max: int
    gabidulin: list[Counter] = field(default_factory=list)
    random: list[Counter] = field(default_factory=list)
    padded: list[Counter] = field(default_factory=list)
    gabidulin_exact: int = 0
    random_generic: int = 0
    padded_violations: int = 0
    padded_upper: int = 0
    padded_samples: int = 0

    def rates(self) -> dict[str, float]:
        return {
            "gabidulin_exact": self.gabidulin_exact / self.trials,
            "random_generic": self.random_generic / self.trials,
            "padded_violation": self.padded_violations / max(self.padded_samples, 1),
            "padded_upper_attained": self.padded_upper / max(self.padded_samples, 1),
        }

    def rows(self) -> list[dict]:
        out = []
        for kind in ("gabidulin", "random", "padded"):
            for i, counter in enumerate(getattr(self, kind)):
                out.append({"kind": kind, "i": i, "dims": dict(sorted(counter.items()))})
        return out


def padded_bounds(n: int, k: int, ell: int, i: int) -> tuple[int, int]:
    """Lower and upper bound on ``dim Lambda_i((X | G))``."""
    return k + i, k + i + min((i + 1) * k, ell)


def dimension_census(F: GF, n: int, k: int, ell: int, trials: int, rng: np.random.Generator,
                     i_max: int | None = None) -> CensusTable:
    """Sample Gabidulin, random and padded ``(X | G)`` generators and tabulate dims.

    ``i`` runs over ``0..n-k-1`` by default, the range where the Gabidulin
    part has not yet filled its length.
    """
    if i_max is None:
        i_max = n - k - 1
    table = CensusTable(n, k, ell, trials, i_max)
    table.gabidulin = [Counter() for _ in range(i_max + 1)]
    table.random = [Counter() for _ in range(i_max + 1)]
    table.padded = [Counter() for _ in range(i_max + 1)]
    for _ in range(trials):
        g = la.sample_full_rank_vector(F, n, rng)
        G = moore_matrix(F, g, k)
        gd = lambda_dims(F, G, i_max)
        rd = lambda_dims(F, F.random(rng, (k, n)), i_max)
        pd = lambda_dims(F, np.hstack([F.random(rng, (k, ell)), G]), i_max)
        table.gabidulin_exact += all(d == min(n, k + i) for i, d in enumerate(gd))
        table.random_generic += all(d == min(n, (i + 1) * k) for i, d in enumerate(rd))
        for i in range(i_max + 1):
            table.gabidulin[i][gd[i]] += 1
            table.random[i][rd[i]] += 1
            table.padded[i][pd[i]] += 1
            lo, hi = padded_bounds(n, k, ell, i)
            table.padded_samples += 1
            table.padded_violations += not lo <= pd[i] <= hi
            table.padded_upper += pd[i] == hi
    return table
