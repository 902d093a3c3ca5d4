"""
LFSR core: GF(2) characteristic polynomials and the Fibonacci shift register.
"""

from .factor import factor, is_prime
from .polynomial import (
    DEFAULT_POLYNOMIAL_32,
    KNOWN_PRIMITIVE,
    GF2Polynomial,
    format_caret,
    format_hex,
    is_irreducible,
    is_primitive,
    parse_polynomial,
)
from .register import (
    LfsrState,
    advance,
    lfsr_sequence,
    new_lfsr,
    output_sequence,
    period,
    step,
)

__all__ = [
    "DEFAULT_POLYNOMIAL_32",
    "KNOWN_PRIMITIVE",
    "GF2Polynomial",
    "LfsrState",
    "advance",
    "factor",
    "format_caret",
    "format_hex",
    "is_irreducible",
    "is_primitive",
    "is_prime",
    "lfsr_sequence",
    "new_lfsr",
    "output_sequence",
    "parse_polynomial",
    "period",
    "step",
]
