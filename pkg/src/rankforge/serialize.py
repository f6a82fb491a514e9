"""Line-oriented text format for keys, ciphertexts, messages and attack results.

::

    rankforge v1
    kind public-key
    field 2 20 1048585
    scheme grh n=20 k=10 ell=0 t_pub=4
    section G_pub 10 20
    <one matrix row per line, canonical element integers in decimal>
    end

``field`` carries q, m and the canonical integer of the modulus.  A
``meta key=value ...`` line may follow the scheme line.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .attack import AttackResult
from .errors import CompatibilityError, ParameterError, ParseError, SingularMatrixError
from .field import GF
from . import linalg as la
from .gabidulin import GabidulinCode
from .schemes import PrivateKey, PublicKey, SchemeParams, Variant, _field

MAGIC = "rankforge"
VERSION = "v1"

_PRIVATE_BLOCKS = ("X", "X1", "X2", "T", "T_inv")


@dataclass
class Document:
    kind: str
    field: GF
    params: SchemeParams | None = None
    meta: dict[str, int] = field(default_factory=dict)
    sections: dict[str, np.ndarray] = field(default_factory=dict)


def dumps(doc: Document) -> str:
    F = doc.field
    lines = [f"{MAGIC} {VERSION}", f"kind {doc.kind}", f"field {F.q} {F.m} {F.modulus_int}"]
    if doc.params is not None:
        p = doc.params
        lines.append(f"scheme {p.variant.value} n={p.n} k={p.k} ell={p.ell} t_pub={p.t_pub}")
    if doc.meta:
        lines.append("meta " + " ".join(f"{k}={v}" for k, v in doc.meta.items()))
    for name, arr in doc.sections.items():
        arr = np.asarray(arr, dtype=np.int64)
        if arr.ndim == 1:
            arr = arr.reshape(1, -1)
        rows, cols = arr.shape
        lines.append(f"section {name} {rows} {cols}")
        for row in arr:
            lines.append(" ".join(str(int(x)) for x in row))
    lines.append("end")
    return "\n".join(lines) + "\n"


def _kv(tokens: list[str], lineno: int, what: str) -> dict[str, int]:
    out = {}
    for tok in tokens:
        key, sep, val = tok.partition("=")
        if not sep:
            raise ParseError(f"expected key=value in {what} line, got {tok!r}", line=lineno)
        try:
            out[key] = int(val)
        except ValueError:
            raise ParseError(f"non-integer value {val!r} for {key}", line=lineno) from None
    return out


def loads(text: str) -> Document:
    lines = text.splitlines()
    pos = 0

    def next_line(section=None) -> tuple[int, list[str]]:
        nonlocal pos
        while pos < len(lines):
            pos += 1
            stripped = lines[pos - 1].strip()
            if stripped and not stripped.startswith("#"):
                return pos, stripped.split()
        raise ParseError("unexpected end of file (truncated?)", line=pos, section=section)

    ln, tok = next_line()
    if tok[:1] != [MAGIC]:
        raise ParseError(f"not a {MAGIC} file", line=ln, section="header")
    if tok[1:] != [VERSION]:
        raise ParseError(f"unsupported format version {' '.join(tok[1:])!r}, expected {VERSION}",
                         line=ln, section="header")
    ln, tok = next_line("header")
    if len(tok) != 2 or tok[0] != "kind":
        raise ParseError("expected 'kind <name>'", line=ln, section="header")
    kind = tok[1]
    ln, tok = next_line("header")
    if len(tok) != 4 or tok[0] != "field":
        raise ParseError("expected 'field q m modulus'", line=ln, section="header")
    try:
        q, m, mod = (int(x) for x in tok[1:])
        F = _field(q, m)
        if F.modulus_int != mod:
            F = GF(q, m, mod)
    except (ValueError, ParameterError) as exc:
        raise ParseError(f"bad field line: {exc}", line=ln, section="header") from None
    doc = Document(kind, F)

    ln, tok = next_line("header")
    if tok[0] == "scheme":
        if len(tok) < 2:
            raise ParseError("scheme line needs a variant", line=ln, section="header")
        kv = _kv(tok[2:], ln, "scheme")
        try:
            doc.params = SchemeParams(Variant.parse(tok[1]), m=m, n=kv["n"], k=kv["k"],
                                      t_pub=kv["t_pub"], ell=kv.get("ell", 0), q=q)
        except (KeyError, ParameterError) as exc:
            raise ParseError(f"bad scheme line: {exc}", line=ln, section="header") from None
        if doc.params.field != F:
            raise ParseError("scheme files must use the default modulus", line=ln, section="header")
        ln, tok = next_line("header")
    if tok[0] == "meta":
        doc.meta = _kv(tok[1:], ln, "meta")
        ln, tok = next_line("header")

    while tok != ["end"]:
        if tok[0] != "section" or len(tok) != 4:
            raise ParseError(f"expected 'section name rows cols' or 'end', got {' '.join(tok)!r}", line=ln)
        name = tok[1]
        try:
            rows, cols = int(tok[2]), int(tok[3])
        except ValueError:
            raise ParseError("bad section dimensions", line=ln, section=name) from None
        arr = np.zeros((rows, cols), dtype=np.int64)
        for r in range(rows):
            ln, tok = next_line(name)
            if len(tok) != cols:
                raise ParseError(f"row {r} has {len(tok)} entries, expected {cols}", line=ln, section=name)
            for c, x in enumerate(tok):
                try:
                    v = int(x)
                except ValueError:
                    raise ParseError(f"non-integer entry {x!r}", line=ln, section=name) from None
                if not 0 <= v < F.order:
                    raise ParseError(f"entry {v} out of range [0, {F.order})", line=ln, section=name)
                arr[r, c] = v
        doc.sections[name] = arr
        ln, tok = next_line()
    return doc


def _expect(doc: Document, kind: str, *names: str) -> None:
    if doc.kind != kind:
        raise ParseError(f"expected a {kind} file, got {doc.kind}", section="header")
    for name in names:
        if name not in doc.sections:
            raise ParseError(f"missing section {name!r}", section=name)


def _shape(doc: Document, name: str, shape: tuple[int, int]) -> np.ndarray:
    arr = doc.sections[name]
    if arr.shape != shape:
        raise ParseError(f"expected shape {shape}, got {arr.shape}", section=name)
    return arr


# -- typed helpers -------------------------------------------------------------

def dump_public_key(pk: PublicKey) -> str:
    return dumps(Document("public-key", pk.field, pk.params, sections={"G_pub": pk.G_pub}))


def load_public_key(text: str) -> PublicKey:
    doc = loads(text)
    _expect(doc, "public-key", "G_pub")
    if doc.params is None:
        raise ParseError("public key lacks a scheme line", section="header")
    p = doc.params
    return PublicKey(p, _shape(doc, "G_pub", (p.k, p.length)))


def dump_private_key(pk: PublicKey, sk: PrivateKey) -> str:
    sections = {"G_pub": pk.G_pub, "S": sk.S, "S_inv": sk.S_inv, "g": sk.code.g, "P": sk.P, "P_inv": sk.P_inv}
    for name in _PRIVATE_BLOCKS:
        if name in sk.blocks:
            sections[name] = sk.blocks[name]
    return dumps(Document("private-key", sk.field, sk.params, sections=sections))


def load_private_key(text: str) -> tuple[PublicKey, PrivateKey]:
    doc = loads(text)
    _expect(doc, "private-key", "G_pub", "S", "S_inv", "g", "P", "P_inv")
    if doc.params is None:
        raise ParseError("private key lacks a scheme line", section="header")
    p, F = doc.params, doc.field
    g = _shape(doc, "g", (1, p.n))[0]
    try:
        code = GabidulinCode(F, g, p.k)
    except ParameterError as exc:
        raise ParseError(f"invalid Gabidulin support: {exc}", section="g") from None
    blocks = {name: doc.sections[name] for name in _PRIVATE_BLOCKS if name in doc.sections}
    N = p.length
    sk = PrivateKey(p, _shape(doc, "S", (p.k, p.k)), _shape(doc, "S_inv", (p.k, p.k)), code,
                    _shape(doc, "P", (N, N)), _shape(doc, "P_inv", (N, N)), blocks)
    if p.variant is Variant.TP and "T_inv" not in blocks:
        raise ParseError("TP private key needs T_inv", section="T_inv")
    return PublicKey(p, _shape(doc, "G_pub", (p.k, N))), sk


def dump_vector(kind: str, F: GF, params: SchemeParams, v) -> str:
    return dumps(Document(kind, F, params, sections={kind: np.asarray(v).reshape(1, -1)}))


def load_vector(text: str, kind: str, params: SchemeParams | None = None) -> tuple[SchemeParams, np.ndarray]:
    """Read a ``message`` or ``ciphertext`` file, checking it against ``params``."""
    doc = loads(text)
    _expect(doc, kind, kind)
    if doc.params is None:
        raise ParseError(f"{kind} lacks a scheme line", section="header")
    if params is not None and (doc.params != params or doc.field != params.field):
        raise CompatibilityError(f"{kind} was made for {doc.params}, key is {params}")
    p = doc.params
    length = p.k if kind == "message" else p.length
    return p, _shape(doc, kind, (1, length))[0]


def dump_attack_result(res: AttackResult, params: SchemeParams | None = None) -> str:
    meta = {"pad_width": res.pad_width, "n_prime": res.n_prime, "k": res.degraded_code.k,
            "t_star": res.t_star, "lambda_index": res.lambda_index}
    sections = {"T_star": res.T_star, "g_star": res.degraded_code.g, "B": res.B}
    return dumps(Document("attack-result", res.field, params, meta, sections))


def load_attack_result(text: str) -> AttackResult:
    doc = loads(text)
    _expect(doc, "attack-result", "T_star", "g_star", "B")
    F = doc.field
    try:
        ell, n_prime, k = doc.meta["pad_width"], doc.meta["n_prime"], doc.meta["k"]
        t_star, idx = doc.meta["t_star"], doc.meta["lambda_index"]
    except KeyError as exc:
        raise ParseError(f"missing meta field {exc}", section="header") from None
    N = ell + n_prime
    T = _shape(doc, "T_star", (N, N))
    if np.any(T >= F.q):
        raise ParseError("T_star must have entries in the base field", section="T_star")
    try:
        T_inv = la.inverse(F.base, T)
    except SingularMatrixError:
        raise ParseError("T_star is singular", section="T_star") from None
    try:
        code = GabidulinCode(F, _shape(doc, "g_star", (1, n_prime))[0], k)
    except ParameterError as exc:
        raise ParseError(f"invalid Gabidulin support: {exc}", section="g_star") from None
    return AttackResult(T, T_inv, ell, code, _shape(doc, "B", (k, n_prime)), t_star, idx)
