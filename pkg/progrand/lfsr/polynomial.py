"""
Characteristic polynomials over GF(2).

A polynomial P(x) = x^n + a_{n-1}x^{n-1} + ... + a_1x + 1 is stored as an
integer coefficient mask: bit i is a_i. Arithmetic helpers operate on raw masks
so intermediate products and factors need not be valid characteristic
polynomials.

Text forms:
    caret:  "x^32+x^22+x^2+x+1"
    hex:    "0x100400007"   (bit i = a_i)
"""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable

from ..errors import DegreeTooLarge, PolynomialParseError
from .factor import distinct_prime_factors

logger = logging.getLogger("progrand.lfsr.polynomial")

MAX_ARITHMETIC_DEGREE = 64

_TERM_PATTERN = re.compile(r"^(?:1|x|x\^(\d+))$")


@dataclass(frozen=True)
class GF2Polynomial:
    """
    Monic characteristic polynomial with constant term 1.

    Invariants: degree >= 2, bit 0 and bit `degree` of `mask` are set.
    """

    mask: int

    def __post_init__(self) -> None:
        if self.mask <= 0 or self.mask.bit_length() - 1 < 2:
            raise PolynomialParseError(
                f"characteristic polynomial needs degree >= 2, got mask {self.mask:#x}"
            )
        if not self.mask & 1:
            raise PolynomialParseError(
                f"characteristic polynomial needs constant term 1: {format_caret(self.mask)}"
            )

    @classmethod
    def from_exponents(cls, exponents: Iterable[int]) -> GF2Polynomial:
        """Build from the set of exponents i with a_i = 1."""
        mask = 0
        for e in exponents:
            if e < 0:
                raise PolynomialParseError(f"negative exponent {e}")
            mask |= 1 << e
        return cls(mask)

    @property
    def degree(self) -> int:
        return self.mask.bit_length() - 1

    @cached_property
    def coefficients(self) -> frozenset[int]:
        """Exponents i with a_i = 1 (always contains 0 and degree)."""
        return frozenset(i for i in range(self.degree + 1) if self.mask >> i & 1)

    @cached_property
    def feedback_taps(self) -> tuple[int, ...]:
        """Flip-flops XORed into the feedback: every exponent except 0, ascending."""
        return tuple(sorted(self.coefficients - {0}))

    @property
    def feedback_mask(self) -> int:
        """State mask of the feedback taps (flip-flop i is bit i - 1)."""
        return self.mask >> 1

    def to_caret(self) -> str:
        return format_caret(self.mask)

    def to_hex(self) -> str:
        return format_hex(self.mask)

    def __str__(self) -> str:
        return self.to_caret()


# --- Text Formats ---


def format_caret(mask: int) -> str:
    """Render a coefficient mask in caret notation, highest power first."""
    if mask == 0:
        return "0"
    terms: list[str] = []
    for i in range(mask.bit_length() - 1, -1, -1):
        if not mask >> i & 1:
            continue
        if i == 0:
            terms.append("1")
        elif i == 1:
            terms.append("x")
        else:
            terms.append(f"x^{i}")
    return "+".join(terms)


def format_hex(mask: int) -> str:
    return f"{mask:#x}"


def parse_polynomial(text: str) -> GF2Polynomial:
    """
    Parse caret notation or a hexadecimal coefficient mask.

    Raises:
        PolynomialParseError: on malformed text, repeated terms, missing
            constant term, or degree < 2.
    """
    cleaned = "".join(text.split()).lower()
    if not cleaned:
        raise PolynomialParseError("empty polynomial text")

    if cleaned.startswith("0x"):
        try:
            mask = int(cleaned, 16)
        except ValueError as e:
            raise PolynomialParseError(f"invalid hex coefficient mask {text!r}") from e
        return GF2Polynomial(mask)

    mask = 0
    for term in cleaned.split("+"):
        match = _TERM_PATTERN.match(term)
        if match is None:
            raise PolynomialParseError(f"invalid term {term!r} in {text!r}")
        if term == "1":
            exponent = 0
        elif term == "x":
            exponent = 1
        else:
            exponent = int(match.group(1))
        if mask >> exponent & 1:
            raise PolynomialParseError(f"repeated term x^{exponent} in {text!r}")
        mask |= 1 << exponent

    if not mask & 1:
        raise PolynomialParseError(f"no constant term in {text!r}")
    return GF2Polynomial(mask)


# --- GF(2)[x] Arithmetic on Masks ---


def gf2_mod(a: int, m: int) -> int:
    """Remainder of a modulo m."""
    dm = m.bit_length()
    while a.bit_length() >= dm:
        a ^= m << (a.bit_length() - dm)
    return a


def gf2_mulmod(a: int, b: int, m: int) -> int:
    """(a * b) mod m, carry-less."""
    dm = m.bit_length() - 1
    a = gf2_mod(a, m)
    result = 0
    while b:
        if b & 1:
            result ^= a
        b >>= 1
        a <<= 1
        if a >> dm & 1:
            a ^= m
    return result


def gf2_powmod(base: int, exponent: int, m: int) -> int:
    """base^exponent mod m by square-and-multiply."""
    result = 1
    base = gf2_mod(base, m)
    while exponent:
        if exponent & 1:
            result = gf2_mulmod(result, base, m)
        base = gf2_mulmod(base, base, m)
        exponent >>= 1
    return gf2_mod(result, m)


def gf2_gcd(a: int, b: int) -> int:
    while b:
        a, b = b, gf2_mod(a, b)
    return a


def _x_pow_2k(k: int, m: int) -> int:
    """x^(2^k) mod m by k squarings."""
    r = gf2_mod(0b10, m)
    for _ in range(k):
        r = gf2_mulmod(r, r, m)
    return r


def _check_degree(poly: GF2Polynomial, cap: int) -> None:
    if poly.degree > cap:
        raise DegreeTooLarge(f"degree {poly.degree} exceeds cap {cap} for {poly}")


def is_irreducible(poly: GF2Polynomial) -> bool:
    """
    Rabin's irreducibility test over GF(2).

    P of degree n is irreducible iff x^(2^n) = x (mod P) and
    gcd(x^(2^(n/q)) - x, P) = 1 for every prime q dividing n.
    """
    _check_degree(poly, MAX_ARITHMETIC_DEGREE)
    n = poly.degree
    m = poly.mask

    if _x_pow_2k(n, m) != 0b10:
        return False
    for q in distinct_prime_factors(n):
        h = _x_pow_2k(n // q, m) ^ 0b10
        if gf2_gcd(m, h) != 1:
            return False
    return True


def multiplicative_order_is_maximal(poly: GF2Polynomial) -> bool:
    """For irreducible P: True iff x has order exactly 2^n - 1 modulo P."""
    n = poly.degree
    group_order = (1 << n) - 1
    for r in distinct_prime_factors(group_order):
        if gf2_powmod(0b10, group_order // r, poly.mask) == 1:
            logger.debug(f"{poly}: x^((2^{n}-1)/{r}) = 1, order is not maximal")
            return False
    return True


def is_primitive(poly: GF2Polynomial) -> bool:
    """
    True primitivity: irreducible AND x generates the multiplicative group.

    Raises:
        DegreeTooLarge: degree > 64.
    """
    _check_degree(poly, MAX_ARITHMETIC_DEGREE)
    if not is_irreducible(poly):
        return False
    return multiplicative_order_is_maximal(poly)


# Verified by the test-suite through is_primitive; used as the production default.
DEFAULT_POLYNOMIAL_32 = GF2Polynomial.from_exponents((32, 22, 2, 1, 0))

# Small primitive polynomials keyed by degree, used by tests and examples.
KNOWN_PRIMITIVE: dict[int, GF2Polynomial] = {
    3: GF2Polynomial.from_exponents((3, 2, 0)),
    4: GF2Polynomial.from_exponents((4, 3, 0)),
    7: GF2Polynomial.from_exponents((7, 6, 0)),
    8: GF2Polynomial.from_exponents((8, 6, 5, 4, 0)),
    10: GF2Polynomial.from_exponents((10, 7, 0)),
    11: GF2Polynomial.from_exponents((11, 9, 0)),
    16: GF2Polynomial.from_exponents((16, 15, 13, 4, 0)),
    32: DEFAULT_POLYNOMIAL_32,
}
