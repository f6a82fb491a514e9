import json

import pytest

from rankforge.cli import run

GRH = ["--scheme", "grh", "--m", "16", "--k", "6", "--tpub", "3"]


def _keygen(tmp_path, seed=1, extra=()):
    prefix = str(tmp_path / "key")
    assert run(["keygen", *GRH, "--seed", str(seed), "--out", prefix, *extra]) == 0
    return prefix


def test_file_roundtrip(tmp_path):
    key = _keygen(tmp_path)
    msg, ct, out = (str(tmp_path / n) for n in ("msg", "ct", "dec"))
    assert run(["encrypt", "--pub", f"{key}.pub", "--seed", "5", "--out", ct, "--msg-out", msg]) == 0
    assert run(["decrypt", "--key", f"{key}.sec", "--ct", ct, "--out", out]) == 0
    assert (tmp_path / "dec").read_bytes() == (tmp_path / "msg").read_bytes()
    # encrypting a given message file
    ct2 = str(tmp_path / "ct2")
    assert run(["encrypt", "--pub", f"{key}.pub", "--msg", msg, "--seed", "6", "--out", ct2]) == 0
    assert run(["decrypt", "--key", f"{key}.sec", "--ct", ct2, "--out", out]) == 0
    assert (tmp_path / "dec").read_bytes() == (tmp_path / "msg").read_bytes()


def test_attack_and_oracle(tmp_path):
    key = _keygen(tmp_path)
    msg, ct = str(tmp_path / "msg"), str(tmp_path / "ct")
    run(["encrypt", "--pub", f"{key}.pub", "--seed", "5", "--out", ct, "--msg-out", msg])
    res, tr, rec = (str(tmp_path / n) for n in ("res", "tr.json", "rec"))
    assert run(["attack", "--pub", f"{key}.pub", "--out", res, "--transcript", tr,
                "--ct", ct, "--msg-out", rec]) == 0
    assert (tmp_path / "rec").read_bytes() == (tmp_path / "msg").read_bytes()
    transcript = json.loads((tmp_path / "tr.json").read_text())
    assert transcript["n_prime"] == 14 and transcript["t_star"] == 4
    rec2 = str(tmp_path / "rec2")
    assert run(["oracle-decrypt", "--result", res, "--pub", f"{key}.pub", "--ct", ct, "--out", rec2]) == 0
    assert (tmp_path / "rec2").read_bytes() == (tmp_path / "msg").read_bytes()


def test_keygen_is_deterministic(tmp_path):
    (tmp_path / "a").mkdir()
    (tmp_path / "b").mkdir()
    a, b = _keygen(tmp_path / "a"), _keygen(tmp_path / "b")
    for ext in (".pub", ".sec"):
        with open(a + ext, "rb") as fa, open(b + ext, "rb") as fb:
            assert fa.read() == fb.read()


def test_env_overrides(tmp_path, monkeypatch):
    monkeypatch.setenv("RANKFORGE_SEED", "1")
    monkeypatch.setenv("RANKFORGE_TPUB", "3")
    prefix = str(tmp_path / "env")
    assert run(["keygen", "--scheme", "grh", "--m", "16", "--k", "6", "--out", prefix]) == 0
    ref = _keygen(tmp_path)
    assert (tmp_path / "env.pub").read_bytes() == open(f"{ref}.pub", "rb").read()


def test_exit_codes(tmp_path):
    key = _keygen(tmp_path)
    # parameter error: a = t - t_pub = 0
    assert run(["keygen", "--scheme", "grh", "--m", "16", "--k", "6", "--tpub", "5",
                "--seed", "1", "--out", str(tmp_path / "bad")]) == 4
    # parse error: tampered version line
    pub = tmp_path / "key.pub"
    tampered = tmp_path / "tampered.pub"
    tampered.write_text(pub.read_text().replace("rankforge v1", "rankforge v9"))
    assert run(["encrypt", "--pub", str(tampered), "--seed", "1", "--out", str(tmp_path / "x")]) == 2
    # compatibility error: ciphertext made for a different key size
    other = str(tmp_path / "other")
    run(["keygen", "--scheme", "grh", "--m", "20", "--k", "10", "--tpub", "4", "--seed", "1", "--out", other])
    ct = str(tmp_path / "ct20")
    run(["encrypt", "--pub", f"{other}.pub", "--seed", "1", "--out", ct])
    assert run(["decrypt", "--key", f"{key}.sec", "--ct", ct, "--out", str(tmp_path / "y")]) == 2
    # decryption failure: a ciphertext of the right shape that is far from the code
    ct_text = (tmp_path / "ct20").read_text()
    assert run(["decrypt", "--key", f"{other}.sec", "--ct", ct, "--out", str(tmp_path / "z")]) == 0
    lines = ct_text.splitlines()
    idx = lines.index("section ciphertext 1 20") + 1
    lines[idx] = " ".join(str((i * 2654435761) % (1 << 20)) for i in range(1, 21))
    (tmp_path / "noise").write_text("\n".join(lines) + "\n")
    assert run(["decrypt", "--key", f"{other}.sec", "--ct", str(tmp_path / "noise"),
                "--out", str(tmp_path / "z")]) == 3
    # missing file
    assert run(["encrypt", "--pub", str(tmp_path / "missing"), "--seed", "1", "--out", "x"]) != 0


def test_bench_requires_table1(tmp_path):
    assert run(["bench", "--seed", "1"]) == 2


def test_bench_small(tmp_path, capsys):
    out = tmp_path / "bench.csv"
    args = ["bench", "--table1", "--seed", "7", "--keys", "1", "--messages", "2", "--timing-runs", "1"]
    assert run([*args, "--no-timings", "--out", str(out)]) == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "m,k,t,t_pub,attack_success_rate,oracle_accuracy,keys,messages"
    tuples = [tuple(int(x) for x in line.split(",")[:4]) for line in lines[1:]]
    assert tuples == [(20, 10, 5, 4), (28, 14, 7, 3), (28, 14, 7, 4), (28, 14, 7, 5), (28, 14, 7, 6), (20, 10, 5, 4)]
    assert all(line.split(",")[4:6] == ["1.0000", "1.0000"] for line in lines[1:])
    capsys.readouterr()
    assert run(args) == 0
    assert "median_attack_seconds" in capsys.readouterr().out


def test_census_command(tmp_path):
    out = tmp_path / "census.json"
    assert run(["census", "--m", "12", "--k", "4", "--ell", "2", "--trials", "10",
                "--seed", "3", "--out", str(out)]) == 0
    data = json.loads(out.read_text())
    assert data["rates"]["gabidulin_exact"] == 1.0
    assert data["rates"]["padded_violation"] == 0.0


@pytest.mark.parametrize("cmd", ["keygen", "encrypt", "decrypt", "attack", "oracle-decrypt", "bench", "census"])
def test_help(cmd, capsys):
    assert run([cmd, "--help"]) == 0
    assert "RANKFORGE_" in capsys.readouterr().out
