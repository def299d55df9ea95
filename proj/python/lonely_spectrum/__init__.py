"""Exact maximum loneliness of integer speed sets.

Values are returned as fractions.Fraction; ints and Fractions are accepted
wherever a rational argument is expected.
"""

from ._core import (
    ArithmeticOverflow,
    DomainError,
    IoError,
    LonelinessResult,
    SpectrumClass,
    __version__,
    classify,
    enumerate_primitive,
    lemma3_min_speed,
    lemma4_condition,
    loneliness_at,
    ml,
    normalize,
    oracle_ml,
    prejump_invariant,
    scan,
    shifted_ml,
    spectrum_value,
    verify_family,
    verify_theorem,
)

__all__ = [
    "ArithmeticOverflow",
    "DomainError",
    "IoError",
    "LonelinessResult",
    "SpectrumClass",
    "__version__",
    "classify",
    "enumerate_primitive",
    "lemma3_min_speed",
    "lemma4_condition",
    "loneliness_at",
    "ml",
    "normalize",
    "oracle_ml",
    "prejump_invariant",
    "scan",
    "shifted_ml",
    "spectrum_value",
    "verify_family",
    "verify_theorem",
]
