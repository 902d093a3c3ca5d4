"""
Exception hierarchy for progrand.

Every error derives from PrograndError and from ValueError, so callers that
only care about "bad input" can catch ValueError. Messages always name the
violated precondition and the offending value.
"""

from __future__ import annotations


class PrograndError(ValueError):
    """Base class for all progrand errors."""


# --- lfsr ---


class PolynomialParseError(PrograndError):
    """Polynomial text could not be parsed into a valid characteristic polynomial."""


class ZeroSeed(PrograndError):
    """The all-zero seed is the LFSR's absorbing state and is rejected."""


class WidthMismatch(PrograndError):
    """Seed width does not match the polynomial degree."""


class DegreeTooLarge(PrograndError):
    """Polynomial degree exceeds the cap of the requested operation."""


# --- taps ---


class InvalidTapSet(PrograndError):
    """Tap positions are empty, unsorted, duplicated or non-positive."""


class TapOutOfRange(PrograndError):
    """A tap position exceeds the LFSR degree."""


class CapacityExceeded(PrograndError):
    """More non-shift-equivalent tap sets requested than C(n-1, k-1) allows."""


class ShiftEquivalentTaps(PrograndError):
    """Two tap sets share a gap pattern, so their streams are time shifts."""


# --- threshold ---


class ThresholdOutOfRange(PrograndError):
    """Threshold outside [0, 2^m - 1]."""


class InvalidSchedule(PrograndError):
    """Threshold schedule violates its invariants."""


# --- stats ---


class ZeroVariance(PrograndError):
    """A constant sequence has no defined correlation."""


class LagOutOfRange(PrograndError):
    """Lag magnitude exceeds N - 2."""


class NoOnes(PrograndError):
    """An all-zero bit sequence cannot be normalized into a cumulative count."""


class DegenerateDesign(PrograndError):
    """Fewer than three distinct abscissae for a quadratic fit."""


# --- cli / config ---


class ConfigError(PrograndError):
    """Configuration file is malformed or violates a GeneratorConfig invariant."""


class UsageError(PrograndError):
    """Command-line arguments are missing or inconsistent."""


class ReplayMismatch(PrograndError):
    """A replayed run produced outputs that differ from its manifest."""
