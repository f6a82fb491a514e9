import numpy as np
import pytest

from rankforge import serialize as ser
from rankforge.attack import attack, oracle_decrypt
from rankforge.errors import CompatibilityError, ParseError
from rankforge.schemes import SchemeParams, decrypt, encrypt, keygen

from desk import DESK


def test_grh_key_roundtrip_m28(rng):
    p = SchemeParams("grh", m=28, n=28, k=14, t_pub=3)
    pk, sk = keygen(p, rng)
    text = ser.dump_public_key(pk)
    assert ser.dump_public_key(ser.load_public_key(text)) == text
    stext = ser.dump_private_key(pk, sk)
    pk2, sk2 = ser.load_private_key(stext)
    assert ser.dump_private_key(pk2, sk2) == stext
    assert np.array_equal(pk2.G_pub, pk.G_pub)
    msg = p.field.random(rng, p.k)
    assert np.array_equal(decrypt(sk2, encrypt(pk, msg, rng)), msg)


@pytest.mark.parametrize("name", list(DESK))
def test_private_key_roundtrip_all_variants(name, rng):
    p = DESK[name]
    pk, sk = keygen(p, rng)
    pk2, sk2 = ser.load_private_key(ser.dump_private_key(pk, sk))
    msg = p.field.random(rng, p.k)
    assert np.array_equal(decrypt(sk2, encrypt(pk2, msg, rng)), msg)
    assert sk2.blocks.keys() == sk.blocks.keys()


def test_header_layout(rng):
    p = SchemeParams("grh", m=20, n=20, k=10, t_pub=4)
    pk, _ = keygen(p, rng)
    lines = ser.dump_public_key(pk).splitlines()
    assert lines[:5] == ["rankforge v1", "kind public-key", "field 2 20 1048585",
                         "scheme grh n=20 k=10 ell=0 t_pub=4", "section G_pub 10 20"]
    assert lines[-1] == "end" and len(lines) == 16


def test_ciphertext_file_contents(rng):
    p = SchemeParams("grh", m=20, n=20, k=10, t_pub=4)
    pk, _ = keygen(p, rng)
    c = encrypt(pk, p.field.random(rng, p.k), rng)
    text = ser.dump_vector("ciphertext", pk.field, p, c)
    body = text.splitlines()[text.splitlines().index("section ciphertext 1 20") + 1]
    values = [int(x) for x in body.split()]
    assert len(values) == 20 and all(0 <= v < 2 ** 20 for v in values)
    _, c2 = ser.load_vector(text, "ciphertext", p)
    assert np.array_equal(c2, c)


def test_attack_result_roundtrip(rng):
    p = DESK["tp"]
    pk, _ = keygen(p, rng)
    res = attack(pk)
    text = ser.dump_attack_result(res, p)
    res2 = ser.load_attack_result(text)
    assert ser.dump_attack_result(res2, p) == text
    msg = p.field.random(rng, p.k)
    assert np.array_equal(oracle_decrypt(res2, encrypt(pk, msg, rng)), msg)


def _pub_text(rng):
    pk, _ = keygen(DESK["grh"], rng)
    return ser.dump_public_key(pk)


@pytest.mark.parametrize("mutate,section,match", [
    (lambda t: t.replace("rankforge v1", "rankforge v2"), "header", "version"),
    (lambda t: t.replace("rankforge v1", "something v1"), "header", "not a rankforge"),
    (lambda t: "\n".join(t.splitlines()[:8]), "G_pub", "truncated"),
    (lambda t: t.replace("section G_pub 6 16\n", "section G_pub 6 16\n70000 "), "G_pub", "entries"),
    (lambda t: t.replace("section G_pub 6 16\n", "section G_pub 6 16\nx"), "G_pub", "non-integer"),
])
def test_parse_errors(mutate, section, match, rng):
    with pytest.raises(ParseError, match=match) as info:
        ser.load_public_key(mutate(_pub_text(rng)))
    assert info.value.section == section
    assert info.value.line is not None


def test_out_of_range_entry(rng):
    lines = _pub_text(rng).splitlines()
    row = lines[5].split()
    row[0] = str(2 ** 16)
    lines[5] = " ".join(row)
    with pytest.raises(ParseError, match="out of range") as info:
        ser.load_public_key("\n".join(lines))
    assert info.value.section == "G_pub" and info.value.line == 6


def test_compatibility_error(rng):
    pk, _ = keygen(DESK["grh"], rng)
    p = DESK["grh"]
    c = encrypt(pk, p.field.random(rng, p.k), rng)
    text = ser.dump_vector("ciphertext", p.field, p, c)
    with pytest.raises(CompatibilityError):
        ser.load_vector(text, "ciphertext", SchemeParams("grh", m=16, n=16, k=6, t_pub=4))


def test_wrong_kind(rng):
    with pytest.raises(ParseError):
        ser.load_private_key(_pub_text(rng))
