"""Exact arithmetic for the twistor projective line.

Local-global number theory (p-adic arithmetic, Hilbert symbols, quaternion
algebras, conics), quadratic-form invariants, Clifford algebra
classification, the fibration CP^3 -> HP^1, the Hodge <-> twistor
dictionary, and finite-model canonical quantization, all in exact
arithmetic with a single CLI entry point (``twistorp1``).
"""

__version__ = "1.0.0"

from .errors import (
    DomainError,
    NoLiftError,
    ParseError,
    PrecisionError,
    ResourceError,
    TwistorError,
)

__all__ = [
    "DomainError",
    "NoLiftError",
    "ParseError",
    "PrecisionError",
    "ResourceError",
    "TwistorError",
    "__version__",
]
