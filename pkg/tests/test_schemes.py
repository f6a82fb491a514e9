import numpy as np
import pytest

from rankforge import linalg as la
from rankforge.errors import DecryptionError, ParameterError
from rankforge.gabidulin import recover_generator
from rankforge.schemes import (
    SchemeParams,
    Variant,
    decrypt,
    effective_error,
    encrypt,
    go_decomposition,
    keygen,
    x2_normalize,
)

from desk import DESK


def test_hiding_ranks():
    assert [DESK[v].hiding_rank for v in DESK] == [2, 2, 2, 2, 1]
    assert SchemeParams("grh", m=20, n=20, k=10, t_pub=4).hiding_rank == 1
    assert SchemeParams("grh", m=28, n=28, k=14, t_pub=3).hiding_rank == 4
    assert DESK["gab08"].length == 16 and DESK["grh"].length == 16


@pytest.mark.parametrize("kwargs", [
    dict(variant="classic", m=12, n=12, k=4, t_pub=4),  # t_X = 0
    dict(variant="classic", m=12, n=12, k=4, t_pub=2, ell=1),
    dict(variant="go", m=12, n=12, k=4, t_pub=-1),
    dict(variant="gab08", m=14, n=14, k=4, t_pub=2, ell=2),  # s = 3 > ell
    dict(variant="grh", m=12, n=12, k=4, t_pub=4),  # a = 0
    dict(variant="tp", m=16, n=16, k=6, t_pub=5, ell=1),  # s < 0
    dict(variant="tp", m=16, n=16, k=6, t_pub=0, ell=2),
    dict(variant="grh", m=10, n=12, k=4, t_pub=2),  # n > m
    dict(variant="nope", m=12, n=12, k=4, t_pub=2),
])
def test_invalid_parameters(kwargs):
    with pytest.raises(ParameterError):
        SchemeParams(**kwargs)


def test_variant_parse():
    assert Variant.parse("GRH") is Variant.GRH


@pytest.mark.parametrize("name", list(DESK))
def test_key_structure(name, rng):
    p = DESK[name]
    F = p.field
    pk, sk = keygen(p, rng)
    N = p.length
    assert pk.G_pub.shape == (p.k, N)
    assert la.rank(F, pk.G_pub) == p.k
    assert np.array_equal(la.matmul(F, sk.P, sk.P_inv), la.identity(N))
    assert np.array_equal(la.matmul(F, sk.S, sk.S_inv), la.identity(p.k))
    h = p.hiding_rank
    if name == "classic":
        assert la.rank_weight_matrix(F, sk.blocks["X"]) == h
    elif name == "go":
        assert np.all(sk.P < 2)
        assert la.rank_weight_matrix(F, sk.blocks["X2"]) == h
    elif name in ("gab08", "tp"):
        Q = sk.P_inv
        ell = p.ell
        assert np.all(Q[ell:, ell:] < 2)
        assert la.rank_weight_matrix(F, Q[:ell, ell:]) == h
        if name == "tp":
            T = sk.blocks["T"]
            assert np.all(T < 2)
            assert np.array_equal(la.matmul(F, T, sk.blocks["T_inv"]), la.identity(N))
    elif name == "grh":
        assert np.all(sk.P_inv[:, h:] < 2)


@pytest.mark.parametrize("name", list(DESK))
def test_roundtrip(name, rng):
    p = DESK[name]
    F = p.field
    for _ in range(10):
        pk, sk = keygen(p, rng)
        for _ in range(10):
            msg = F.random(rng, p.k)
            assert np.array_equal(decrypt(sk, encrypt(pk, msg, rng)), msg)
        msg = F.random(rng, p.k)
        zero = np.zeros(p.length, dtype=np.int64)
        assert np.array_equal(decrypt(sk, encrypt(pk, msg, rng, error=zero)), msg)


def test_encrypt_error_rank(rng):
    p = DESK["grh"]
    F = p.field
    pk, _ = keygen(p, rng)
    for _ in range(20):
        c = encrypt(pk, np.zeros(p.k, dtype=np.int64), rng)
        assert la.rank_weight(F, c) == p.t_pub
    msg = F.random(rng, p.k)
    c1 = encrypt(pk, msg, np.random.default_rng(9))
    c2 = encrypt(pk, msg, np.random.default_rng(9))
    assert np.array_equal(c1, c2)
    with pytest.raises(ParameterError):
        encrypt(pk, msg[:-1], rng)


def test_decrypt_signals_failure(rng):
    p = DESK["tp"]
    pk, sk = keygen(p, rng)
    with pytest.raises(DecryptionError):
        decrypt(sk, p.field.random(rng, p.length))
    with pytest.raises(ParameterError):
        decrypt(sk, np.zeros(3, dtype=np.int64))


@pytest.mark.parametrize("name,bound", [("gab08", lambda p: p.hiding_rank + p.t_pub),
                                        ("grh", lambda p: p.t),
                                        ("tp", lambda p: p.ell + p.hiding_rank + p.t_pub)])
def test_effective_error_bounds(name, bound, rng):
    p = DESK[name]
    F = p.field
    worst = 0
    for _ in range(10):
        pk, sk = keygen(p, rng)
        for _ in range(20):
            e = la.sample_rank_error(F, p.length, p.t_pub, rng)
            worst = max(worst, la.rank_weight(F, effective_error(sk, e)))
    assert worst <= bound(p) <= p.t


def test_gab08_without_margin(rng):
    p = SchemeParams("gab08", m=12, n=12, k=4, t_pub=4, ell=2)
    assert p.hiding_rank == 0
    F = p.field
    pk, sk = keygen(p, rng)
    assert not np.any(sk.P_inv[:2, 2:])
    for _ in range(10):
        msg = F.random(rng, p.k)
        assert np.array_equal(decrypt(sk, encrypt(pk, msg, rng)), msg)


@pytest.mark.parametrize("row", [(20, 10, 4, 1), (28, 14, 3, 4)])
def test_grh_benchmark_keygen(row, rng):
    m, k, t_pub, a = row
    p = SchemeParams("grh", m=m, n=m, k=k, t_pub=t_pub)
    assert p.hiding_rank == a
    pk, sk = keygen(p, rng)
    assert pk.G_pub.shape == (k, m)
    msg = p.field.random(rng, k)
    assert np.array_equal(decrypt(sk, encrypt(pk, msg, rng)), msg)


def _check_normalized(p, pk, sk):
    F = p.field
    dec = go_decomposition(sk)
    nk = x2_normalize(F, dec, p.k)
    t2 = p.hiding_rank
    assert nk.X_star.shape == (p.k, p.ell + t2)
    assert nk.G_star.shape == (p.k, p.n - t2)
    assert np.all(nk.P_star < 2) and la.is_invertible(F.base, nk.P_star)
    lhs = la.matmul(F, la.matmul(F, nk.S, np.hstack([nk.X_star, nk.G_star])), nk.P_star)
    rhs = la.matmul(F, la.matmul(F, dec.S, np.hstack([dec.X1, F.add(dec.G, dec.X2)])), dec.P)
    assert np.array_equal(lhs, rhs) and np.array_equal(lhs, pk.G_pub)
    assert nk.t_star == (p.n - t2 - p.k) // 2
    assert recover_generator(F, nk.G_star, p.n - t2, p.k).row_space_equal(nk.G_star)
    return dec, nk


@pytest.mark.parametrize("t2", [1, 2, 3])
def test_x2_normalize(t2, rng):
    p = SchemeParams("go", m=12, n=12, k=4, t_pub=4 - t2, ell=2)
    for _ in range(5):
        pk, sk = keygen(p, rng)
        _, nk = _check_normalized(p, pk, sk)
        assert nk.t_star == p.t - (t2 + 1) // 2
        # flooring makes t2 = 1 a tie with t_pub; larger t2 leaves a strict margin
        assert nk.t_star >= p.t_pub
        assert nk.t_star > p.t_pub or t2 == 1


def test_x2_normalize_identity(rng):
    p = SchemeParams("go", m=12, n=12, k=4, t_pub=4, ell=2)
    pk, sk = keygen(p, rng)
    dec, nk = _check_normalized(p, pk, sk)
    assert np.array_equal(nk.X_star, dec.X1)
    assert np.array_equal(nk.G_star, dec.G)
    assert np.array_equal(nk.P_star, dec.P)


def test_go_decomposition_rejects_other_variants(rng):
    _, sk = keygen(DESK["grh"], rng)
    with pytest.raises(ParameterError):
        go_decomposition(sk)
