"""Seeded benchmark harness: attack success, timing and oracle accuracy per parameter set."""

from __future__ import annotations

import statistics
import time
from dataclasses import asdict, dataclass

import numpy as np

from .attack import attack, oracle_decrypt
from .errors import AttackError
from .schemes import SchemeParams, encrypt, keygen

# (m = n, k, t, t_pub); the repeated first row is kept as published
TABLE1 = [
    (20, 10, 5, 4),
    (28, 14, 7, 3),
    (28, 14, 7, 4),
    (28, 14, 7, 5),
    (28, 14, 7, 6),
    (20, 10, 5, 4),
]


@dataclass
class BenchRow:
    m: int
    k: int
    t: int
    t_pub: int
    attack_success_rate: float
    median_attack_seconds: float
    oracle_accuracy: float
    keys: int = 0
    messages: int = 0


def trial_rng(seed: int, *index: int) -> np.random.Generator:
    """Independent stream for one trial, fixed by the run seed and trial index."""
    return np.random.default_rng(np.random.SeedSequence([seed, *index]))


def bench_params(params: SchemeParams, seed: int, keys: int = 50, messages: int = 100,
                 timing_runs: int = 5, row: int = 0) -> BenchRow:
    """Attack ``keys`` fresh key pairs and oracle-decrypt ``messages`` ciphertexts each.

    Timing is the median wall-clock of ``timing_runs`` attacks on the first
    key; key generation and encryption are excluded.  Oracle accuracy is
    measured over the keys whose attack succeeded.
    """
    F = params.field
    successes = correct = total = 0
    times: list[float] = []
    for key_index in range(keys):
        rng = trial_rng(seed, row, key_index)
        pk, _ = keygen(params, rng)
        try:
            runs = timing_runs if key_index == 0 else 1
            for _ in range(runs):
                start = time.perf_counter()
                res = attack(pk, params)
                if key_index == 0:
                    times.append(time.perf_counter() - start)
        except AttackError:
            continue
        successes += 1
        for _ in range(messages):
            msg = F.random(rng, params.k)
            c = encrypt(pk, msg, rng)
            try:
                correct += bool(np.array_equal(oracle_decrypt(res, c), msg))
            except AttackError:
                pass
            total += 1
    return BenchRow(params.m, params.k, params.t, params.t_pub,
                    successes / keys if keys else 0.0,
                    statistics.median(times) if times else float("nan"),
                    correct / total if total else 0.0, keys, messages)


def run_table1(seed: int, keys: int = 50, messages: int = 100, timing_runs: int = 5,
               rows=TABLE1) -> list[BenchRow]:
    out = []
    for r, (m, k, t, t_pub) in enumerate(rows):
        params = SchemeParams("grh", m=m, n=m, k=k, t_pub=t_pub)
        assert params.t == t
        out.append(bench_params(params, seed, keys, messages, timing_runs, row=r))
    return out


def format_rows(rows: list[BenchRow], timings: bool = True) -> str:
    cols = ["m", "k", "t", "t_pub", "attack_success_rate", "oracle_accuracy", "keys", "messages"]
    if timings:
        cols.insert(5, "median_attack_seconds")
    lines = [",".join(cols)]
    for row in rows:
        d = asdict(row)
        lines.append(",".join(
            f"{d[c]:.4f}" if isinstance(d[c], float) else str(d[c]) for c in cols))
    return "\n".join(lines) + "\n"
