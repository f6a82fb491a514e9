"""GPT public-key encryption and its column-scrambler variants.

Variants (``N`` is the public code length, ``t = (n - k) // 2``):

``CLASSIC``  ``G_pub = S (G + X)`` with ``X`` of rank weight ``t - t_pub``.
``GO``       ``G_pub = S (X1 | G + X2) P``, P over F_q, ``X2`` of rank weight ``t - t_pub``.
``GAB08``    ``G_pub = S (X | G) P``, P over F_{q^m} whose inverse has an
             F_q lower-right block and an upper-right block of rank weight
             ``s = t - t_pub``.
``GRH``      ``G_pub = S G P``, ``P^{-1} = (Q1 | Q2)`` with ``Q2`` over F_q of
             width ``n - a``, ``a = t - t_pub``.
``TP``       ``G_pub = S (X | G) T P`` with T over F_q and P as in GAB08,
             ``t_pub = t - s - ell``.

Every hiding rank is derived from the public ``t_pub``, so
:class:`SchemeParams` is entirely public.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from . import linalg as la
from .errors import DecodingError, DecryptionError, ParameterError, SamplingError
from .field import GF
from .gabidulin import GabidulinCode


class Variant(str, enum.Enum):
    CLASSIC = "classic"
    GO = "go"
    GAB08 = "gab08"
    GRH = "grh"
    TP = "tp"

    @classmethod
    def parse(cls, name: str) -> Variant:
        try:
            return cls(name.lower())
        except ValueError:
            raise ParameterError(f"unknown scheme {name!r}") from None


@dataclass(frozen=True)
class SchemeParams:
    variant: Variant
    m: int
    n: int
    k: int
    t_pub: int
    ell: int = 0
    q: int = 2

    def __post_init__(self):
        object.__setattr__(self, "variant", Variant.parse(self.variant) if isinstance(self.variant, str) else self.variant)
        self.validate()

    @property
    def t(self) -> int:
        return (self.n - self.k) // 2

    @property
    def length(self) -> int:
        """Public code length N."""
        return self.n + self.ell

    @property
    def hiding_rank(self) -> int:
        """t_X, t2, s or a depending on the variant."""
        if self.variant is Variant.TP:
            return self.t - self.ell - self.t_pub
        return self.t - self.t_pub

    def validate(self) -> None:
        v, t, h = self.variant, self.t, self.hiding_rank
        if not 0 < self.k < self.n <= self.m:
            raise ParameterError(f"need 0 < k < n <= m, got k={self.k}, n={self.n}, m={self.m}")
        if self.ell < 0:
            raise ParameterError("padding width must be non-negative")
        if v in (Variant.CLASSIC, Variant.GRH) and self.ell != 0:
            raise ParameterError(f"{v.value} has no padding columns")
        if self.t_pub < 0 or self.t_pub > self.m:
            raise ParameterError(f"t_pub={self.t_pub} out of range")
        if v is Variant.CLASSIC and not 0 < h < t:
            raise ParameterError(f"classic GPT needs 0 < t_X < t, got t_X={h}, t={t}")
        if v is Variant.GO and not 0 <= h < t:
            raise ParameterError(f"GO needs 0 <= t2 < t, got t2={h}, t={t}")
        if v is Variant.GAB08:
            if not 0 <= h < t:
                raise ParameterError(f"GAB08 needs 0 <= s < t, got s={h}, t={t}")
            if h > self.ell:
                raise ParameterError(f"GAB08 needs s <= ell, got s={h}, ell={self.ell}")
        if v is Variant.GRH and not (0 < h and 0 <= self.t_pub < t):
            raise ParameterError(f"GRH needs 0 < a and t_pub < t, got a={h}, t={t}")
        if v is Variant.TP and not (self.t_pub > 0 and 0 <= h <= self.ell):
            raise ParameterError(f"TP needs t_pub = t - s - ell > 0 with 0 <= s <= ell, got s={h}")

    @cached_property
    def field(self) -> GF:
        return _field(self.q, self.m)


_FIELDS: dict[tuple[int, int], GF] = {}


def _field(q: int, m: int) -> GF:
    if (q, m) not in _FIELDS:
        _FIELDS[(q, m)] = GF(q, m)
    return _FIELDS[(q, m)]


@dataclass
class PublicKey:
    params: SchemeParams
    G_pub: np.ndarray

    @property
    def field(self) -> GF:
        return self.params.field

    @property
    def t_pub(self) -> int:
        return self.params.t_pub


@dataclass
class PrivateKey:
    """Secret material.  ``blocks`` holds the named pieces of each variant."""

    params: SchemeParams
    S: np.ndarray
    S_inv: np.ndarray
    code: GabidulinCode
    P: np.ndarray
    P_inv: np.ndarray
    blocks: dict[str, np.ndarray] = field(default_factory=dict)

    @property
    def field(self) -> GF:
        return self.params.field

    @cached_property
    def unscramble(self) -> np.ndarray:
        """Matrix applied to a ciphertext before truncation and decoding."""
        if self.params.variant is Variant.TP:
            return la.matmul(self.field, self.P_inv, self.blocks["T_inv"])
        return self.P_inv


@dataclass
class GODecomposition:
    """White-box view of a GO key: ``G_pub = S (X1 | G + X2) P``."""

    S: np.ndarray
    X1: np.ndarray
    G: np.ndarray
    X2: np.ndarray
    P: np.ndarray
    g: np.ndarray


def _sample_gab08_inverse(F: GF, n: int, ell: int, s: int, rng) -> np.ndarray:
    B = F.base
    for _ in range(la.MAX_TRIES):
        Q11 = F.random(rng, (ell, ell))
        Q12 = la.sample_rank_bounded_matrix(F, ell, n, s, rng)
        Q21 = F.random(rng, (n, ell))
        Q22 = B.random(rng, (n, n))
        Q = la.block([[Q11, Q12], [Q21, Q22]])
        if la.is_invertible(F, Q):
            return Q
    raise SamplingError("could not sample an invertible scrambler inverse")


def _sample_grh_inverse(F: GF, n: int, a: int, rng) -> np.ndarray:
    for _ in range(la.MAX_TRIES):
        Q = np.hstack([F.random(rng, (n, a)), F.base.random(rng, (n, n - a))])
        if la.is_invertible(F, Q):
            return np.ascontiguousarray(Q)
    raise SamplingError("could not sample an invertible GRH scrambler inverse")


def keygen(params: SchemeParams, rng: np.random.Generator) -> tuple[PublicKey, PrivateKey]:
    F = params.field
    n, k, ell, h = params.n, params.k, params.ell, params.hiding_rank
    v = params.variant
    g = la.sample_full_rank_vector(F, n, rng)
    code = GabidulinCode(F, g, k)
    G = code.generator
    S = la.sample_gl(F, k, rng)
    blocks: dict[str, np.ndarray] = {}

    if v is Variant.CLASSIC:
        X = la.sample_rank_bounded_matrix(F, k, n, h, rng)
        blocks["X"] = X
        P = P_inv = la.identity(n)
        core = F.add(G, X)
    elif v is Variant.GO:
        X1 = F.random(rng, (k, ell))
        X2 = la.sample_rank_bounded_matrix(F, k, n, h, rng)
        P = la.sample_gl(F.base, n + ell, rng)
        P_inv = la.inverse(F.base, P)
        blocks.update(X1=X1, X2=X2)
        core = np.hstack([X1, F.add(G, X2)])
    elif v is Variant.GAB08:
        X = F.random(rng, (k, ell))
        P_inv = _sample_gab08_inverse(F, n, ell, h, rng)
        P = la.inverse(F, P_inv)
        blocks["X"] = X
        core = np.hstack([X, G])
    elif v is Variant.GRH:
        P_inv = _sample_grh_inverse(F, n, h, rng)
        P = la.inverse(F, P_inv)
        core = G
    else:  # TP
        X = F.random(rng, (k, ell))
        T = la.sample_gl(F.base, n + ell, rng)
        P_inv = _sample_gab08_inverse(F, n, ell, h, rng)
        P = la.inverse(F, P_inv)
        blocks.update(X=X, T=T, T_inv=la.inverse(F.base, T))
        core = la.matmul(F, np.hstack([X, G]), T)

    G_pub = la.matmul(F, la.matmul(F, S, np.ascontiguousarray(core)), P)
    sk = PrivateKey(params, S, la.inverse(F, S), code, P, P_inv, blocks)
    return PublicKey(params, G_pub), sk


def encrypt(pk: PublicKey, msg, rng: np.random.Generator, error=None) -> np.ndarray:
    """``msg G_pub + e`` with ``e`` of rank weight exactly ``t_pub``.

    ``error`` overrides the sampled error vector (used by tests).
    """
    F = pk.field
    msg = np.asarray(msg, dtype=np.int64)
    if msg.shape != (pk.params.k,):
        raise ParameterError(f"message must have length {pk.params.k}")
    if error is None:
        error = la.sample_rank_error(F, pk.params.length, pk.t_pub, rng)
    return F.add(la.matmul(F, msg, pk.G_pub), np.asarray(error, dtype=np.int64))


def decrypt(sk: PrivateKey, c) -> np.ndarray:
    F, p = sk.field, sk.params
    c = np.asarray(c, dtype=np.int64)
    if c.shape != (p.length,):
        raise ParameterError(f"ciphertext must have length {p.length}")
    y = la.matmul(F, c, sk.unscramble)[p.ell:]
    try:
        mS, _ = sk.code.decode(y)
    except DecodingError as exc:
        raise DecryptionError(f"decoding failed: {exc}") from exc
    return la.matmul(F, mS, sk.S_inv)


def effective_error(sk: PrivateKey, e) -> np.ndarray:
    """Error seen by the decoder: last n entries of ``e`` after unscrambling.

    For CLASSIC and GO the distortion contribution ``m S X`` is not included.
    """
    return la.matmul(sk.field, np.asarray(e, dtype=np.int64), sk.unscramble)[sk.params.ell:]


def go_decomposition(sk: PrivateKey) -> GODecomposition:
    if sk.params.variant is not Variant.GO:
        raise ParameterError("decomposition is only defined for GO keys")
    return GODecomposition(sk.S, sk.blocks["X1"], sk.code.generator, sk.blocks["X2"], sk.P, sk.code.g)


@dataclass
class NormalizedKey:
    """``G_pub = S (X_star | G_star) P_star`` with ``G_star`` Gabidulin of length n - t2."""

    S: np.ndarray
    X_star: np.ndarray
    G_star: np.ndarray
    P_star: np.ndarray
    g_star: np.ndarray
    t_star: int


def x2_normalize(F: GF, dec: GODecomposition, k: int) -> NormalizedKey:
    """Move the rank-t2 distortion ``X2`` into the padding columns.

    ``X2 T2 = (X2' | 0)`` with T2 over F_q; then with ``G' = G T2`` split
    after t2 columns, ``X_star = (X1 | G'_1 + X2')``, ``G_star = G'_2`` and
    ``P_star = diag(I, T2)^{-1} P``.
    """
    ell = dec.X1.shape[1]
    n = dec.G.shape[1]
    X2_red, T2 = la.rank_reduce(F, dec.X2)
    t2 = X2_red.shape[1]
    G_prime = la.matmul(F, dec.G, T2)
    g_prime = la.matmul(F, dec.g, T2)
    X_star = np.hstack([dec.X1, F.add(G_prime[:, :t2], X2_red)])
    G_star = np.ascontiguousarray(G_prime[:, t2:])
    T = la.block([[la.identity(ell), np.zeros((ell, n), dtype=np.int64)],
                  [np.zeros((n, ell), dtype=np.int64), T2]])
    P_star = la.matmul(F.base, la.inverse(F.base, T), dec.P)
    return NormalizedKey(dec.S, np.ascontiguousarray(X_star), G_star, P_star,
                         np.ascontiguousarray(g_prime[t2:]), (n - t2 - k) // 2)
