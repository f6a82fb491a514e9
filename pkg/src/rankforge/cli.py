"""Command-line front end.

Every option can also be set through ``RANKFORGE_<OPTION>`` (upper case,
dashes as underscores), e.g. ``RANKFORGE_SEED=7``.

Exit codes: 0 success, 2 parse/compatibility error, 3 cryptographic or
attack failure, 4 parameter error.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click
import numpy as np

from . import serialize as ser
from .attack import attack as run_attack
from .attack import dimension_census, oracle_decrypt
from .bench import TABLE1, format_rows, run_table1, trial_rng
from .errors import (
    AttackError,
    CompatibilityError,
    DecodingError,
    DecryptionError,
    ParameterError,
    ParseError,
    RankforgeError,
)
from .schemes import SchemeParams, _field, decrypt, encrypt, keygen

EXIT_PARSE, EXIT_CRYPTO, EXIT_PARAM = 2, 3, 4


def _opt(*names, **kw):
    flag = names[0].lstrip("-").replace("-", "_").upper()
    return click.option(*names, envvar=f"RANKFORGE_{flag}", show_envvar=True, **kw)


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise click.FileError(path, hint=str(exc)) from None


def _write(path: str, text: str) -> None:
    Path(path).write_text(text, encoding="utf-8")


def _scheme_options(f):
    for opt in reversed([
        _opt("--scheme", required=True, type=click.Choice(["classic", "go", "gab08", "grh", "tp"])),
        _opt("--q", default=2, show_default=True, type=int),
        _opt("--m", required=True, type=int),
        _opt("--n", type=int, help="code length (defaults to m)"),
        _opt("--k", required=True, type=int),
        _opt("--ell", default=0, show_default=True, type=int),
        _opt("--tpub", required=True, type=int),
    ]):
        f = opt(f)
    return f


@click.group()
def main():
    """Rank-metric GPT schemes and their structural attack."""


@main.command("keygen")
@_scheme_options
@_opt("--seed", required=True, type=int)
@_opt("--out", required=True, help="output prefix; writes PREFIX.pub and PREFIX.sec")
def keygen_cmd(scheme, q, m, n, k, ell, tpub, seed, out):
    """Generate a key pair."""
    params = SchemeParams(scheme, m=m, n=n or m, k=k, t_pub=tpub, ell=ell, q=q)
    pk, sk = keygen(params, np.random.default_rng(seed))
    _write(f"{out}.pub", ser.dump_public_key(pk))
    _write(f"{out}.sec", ser.dump_private_key(pk, sk))
    click.echo(f"wrote {out}.pub and {out}.sec")


@main.command("encrypt")
@_opt("--pub", "pub_path", required=True)
@_opt("--msg", "msg_path", help="message file; a random message is drawn when omitted")
@_opt("--msg-out", help="where to store the random message")
@_opt("--seed", required=True, type=int)
@_opt("--out", required=True)
def encrypt_cmd(pub_path, msg_path, msg_out, seed, out):
    """Encrypt a message under a public key."""
    pk = ser.load_public_key(_read(pub_path))
    rng = np.random.default_rng(seed)
    if msg_path:
        _, msg = ser.load_vector(_read(msg_path), "message", pk.params)
    else:
        msg = pk.field.random(rng, pk.params.k)
        if msg_out:
            _write(msg_out, ser.dump_vector("message", pk.field, pk.params, msg))
    c = encrypt(pk, msg, rng)
    _write(out, ser.dump_vector("ciphertext", pk.field, pk.params, c))


@main.command("decrypt")
@_opt("--key", "key_path", required=True)
@_opt("--ct", "ct_path", required=True)
@_opt("--out", required=True)
def decrypt_cmd(key_path, ct_path, out):
    """Decrypt a ciphertext with the private key."""
    _, sk = ser.load_private_key(_read(key_path))
    _, c = ser.load_vector(_read(ct_path), "ciphertext", sk.params)
    _write(out, ser.dump_vector("message", sk.field, sk.params, decrypt(sk, c)))


@main.command("attack")
@_opt("--pub", "pub_path", required=True)
@_opt("--out", required=True, help="attack result file")
@_opt("--transcript", help="JSON transcript of the attack")
@_opt("--ct", "ct_path", help="ciphertext to decrypt with the recovered key")
@_opt("--msg-out", help="where to store the recovered message")
def attack_cmd(pub_path, out, transcript, ct_path, msg_out):
    """Recover an alternative private key from a public key."""
    pk = ser.load_public_key(_read(pub_path))
    res = run_attack(pk, pk.params)
    _write(out, ser.dump_attack_result(res, pk.params))
    if transcript:
        _write(transcript, json.dumps(res.transcript(), indent=2, sort_keys=True) + "\n")
    if ct_path:
        _, c = ser.load_vector(_read(ct_path), "ciphertext", pk.params)
        msg = oracle_decrypt(res, c)
        if msg_out:
            _write(msg_out, ser.dump_vector("message", pk.field, pk.params, msg))
        else:
            click.echo(" ".join(str(int(x)) for x in msg))
    click.echo(f"recovered degraded code n'={res.n_prime} k={res.degraded_code.k} t*={res.t_star}")


@main.command("oracle-decrypt")
@_opt("--result", "result_path", required=True)
@_opt("--pub", "pub_path", required=True)
@_opt("--ct", "ct_path", required=True)
@_opt("--out", required=True)
def oracle_cmd(result_path, pub_path, ct_path, out):
    """Decrypt with a stored attack result."""
    pk = ser.load_public_key(_read(pub_path))
    res = ser.load_attack_result(_read(result_path))
    if res.field != pk.field:
        raise CompatibilityError("attack result and public key use different fields")
    _, c = ser.load_vector(_read(ct_path), "ciphertext", pk.params)
    _write(out, ser.dump_vector("message", pk.field, pk.params, oracle_decrypt(res, c)))


@main.command("bench")
@_opt("--table1", is_flag=True, help="reproduce the GRH parameter table (required)")
@_opt("--seed", required=True, type=int)
@_opt("--keys", default=50, show_default=True, type=int)
@_opt("--messages", default=100, show_default=True, type=int)
@_opt("--timing-runs", default=5, show_default=True, type=int)
@_opt("--no-timings", is_flag=True, help="omit wall-clock columns (byte-stable output)")
@_opt("--out", help="CSV output; stdout when omitted")
def bench_cmd(table1, seed, keys, messages, timing_runs, no_timings, out):
    """Attack freshly generated GRH keys for every table row."""
    if not table1:
        raise click.UsageError("only --table1 benchmarks are available")
    rows = run_table1(seed, keys=keys, messages=messages, timing_runs=timing_runs, rows=TABLE1)
    text = format_rows(rows, timings=not no_timings)
    if out:
        _write(out, text)
    click.echo(text, nl=False)


@main.command("census")
@_opt("--q", default=2, show_default=True, type=int)
@_opt("--m", required=True, type=int)
@_opt("--n", type=int)
@_opt("--k", required=True, type=int)
@_opt("--ell", default=2, show_default=True, type=int)
@_opt("--trials", default=200, show_default=True, type=int)
@_opt("--seed", required=True, type=int)
@_opt("--out", help="JSON output; stdout when omitted")
def census_cmd(q, m, n, k, ell, trials, seed, out):
    """Tabulate Frobenius-expansion dimensions of Gabidulin, random and padded codes."""
    F = _field(q, m)
    table = dimension_census(F, n or m, k, ell, trials, trial_rng(seed, 0))
    text = json.dumps({"n": table.n, "k": table.k, "ell": table.ell, "trials": trials,
                       "rates": table.rates(), "rows": table.rows()}, indent=2) + "\n"
    if out:
        _write(out, text)
    click.echo(text, nl=False)


def run(argv=None) -> int:
    """Entry point mapping library errors to exit codes."""
    try:
        main.main(args=argv, standalone_mode=False)
    except (ParseError, CompatibilityError) as exc:
        click.echo(f"error: {exc}", err=True)
        return EXIT_PARSE
    except (AttackError, DecryptionError, DecodingError) as exc:
        click.echo(f"error: {exc}", err=True)
        return EXIT_CRYPTO
    except ParameterError as exc:
        click.echo(f"error: {exc}", err=True)
        return EXIT_PARAM
    except RankforgeError as exc:
        click.echo(f"error: {exc}", err=True)
        return EXIT_CRYPTO
    except click.exceptions.Abort:
        return 1
    except click.ClickException as exc:
        exc.show()
        return exc.exit_code
    return 0


def entry() -> None:
    sys.exit(run())


if __name__ == "__main__":
    entry()
