"""Gabidulin codes, GPT-style rank-metric encryption and its structural attack."""

from .attack import AttackResult, attack, distinguish, oracle_decrypt, overbeck_core
from .field import GF, FieldElement
from .gabidulin import GabidulinCode, moore_matrix, recover_generator
from .schemes import PrivateKey, PublicKey, SchemeParams, Variant, decrypt, encrypt, keygen

__all__ = [
    "AttackResult",
    "FieldElement",
    "GF",
    "GabidulinCode",
    "PrivateKey",
    "PublicKey",
    "SchemeParams",
    "Variant",
    "attack",
    "decrypt",
    "distinguish",
    "encrypt",
    "keygen",
    "moore_matrix",
    "oracle_decrypt",
    "overbeck_core",
    "recover_generator",
]
