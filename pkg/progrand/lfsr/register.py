"""
Fibonacci (external-XOR) LFSR.

Flip-flops are numbered 1..n to match the exponents of the characteristic
polynomial. Each step XORs every tapped flip-flop (every exponent except 0,
flip-flop n included) into a feedback bit, shifts the register one position
away from the input, inserts the feedback at flip-flop 1 and emits the bit
shifted out of flip-flop n.

The state is held as an integer: bit (i - 1) is flip-flop i.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, replace

import numpy as np
import numpy.typing as npt

from ..errors import DegreeTooLarge, WidthMismatch, ZeroSeed
from .polynomial import GF2Polynomial

logger = logging.getLogger("progrand.lfsr")

MAX_PERIOD_DEGREE = 24

BitArray = npt.NDArray[np.uint8]


@dataclass(frozen=True)
class LfsrState:
    """
    Register contents plus the number of steps taken.

    Invariants: value is nonzero and fits in `polynomial.degree` bits.
    """

    polynomial: GF2Polynomial
    value: int
    step_count: int = 0

    @property
    def degree(self) -> int:
        return self.polynomial.degree

    @property
    def bits(self) -> tuple[int, ...]:
        """Flip-flop contents in order 1..n."""
        return tuple((self.value >> i) & 1 for i in range(self.degree))

    def bit(self, position: int) -> int:
        """Content of flip-flop `position` (1-based)."""
        return (self.value >> (position - 1)) & 1


def new_lfsr(poly: GF2Polynomial, seed: int | str = 1) -> LfsrState:
    """
    Create a register loaded with `seed`.

    Args:
        poly: Characteristic polynomial
        seed: n-bit value (bit i-1 -> flip-flop i), or a binary string of
            exactly n digits written flip-flop n first ("0b011" style prefix
            allowed). A string fixes the width explicitly.

    Raises:
        ZeroSeed: seed is zero
        WidthMismatch: seed does not have exactly n bits
    """
    n = poly.degree
    if isinstance(seed, str):
        digits = seed.lower().removeprefix("0b")
        if not digits or any(c not in "01" for c in digits):
            raise WidthMismatch(f"seed {seed!r} is not a binary string")
        if len(digits) != n:
            raise WidthMismatch(f"seed {seed!r} has {len(digits)} bits, polynomial degree is {n}")
        value = int(digits, 2)
    else:
        value = seed
        if value < 0 or value.bit_length() > n:
            raise WidthMismatch(f"seed {seed:#x} does not fit in {n} bits")

    if value == 0:
        raise ZeroSeed(f"all-zero seed is the absorbing state of {poly}")
    return LfsrState(polynomial=poly, value=value, step_count=0)


def step(state: LfsrState) -> tuple[LfsrState, int]:
    """Advance one clock. Returns the new state and the bit shifted out of flip-flop n."""
    n = state.degree
    feedback = (state.value & state.polynomial.feedback_mask).bit_count() & 1
    output = (state.value >> (n - 1)) & 1
    value = ((state.value << 1) & ((1 << n) - 1)) | feedback
    return replace(state, value=value, step_count=state.step_count + 1), output


def period(poly: GF2Polynomial) -> int:
    """
    Brute-force period of the register started from seed 1.

    Raises:
        DegreeTooLarge: degree > 24
    """
    n = poly.degree
    if n > MAX_PERIOD_DEGREE:
        raise DegreeTooLarge(
            f"brute-force period is capped at degree {MAX_PERIOD_DEGREE}, got {n}"
        )

    # Plain integer loop; dataclass stepping is too slow at 2^24 states
    full = (1 << n) - 1
    taps = poly.feedback_mask
    start = 1
    value = start
    count = 0
    while True:
        value = ((value << 1) & full) | ((value & taps).bit_count() & 1)
        count += 1
        if value == start:
            break
    logger.debug(f"period({poly}) = {count}")
    return count


# --- Bulk Sequence Generation ---


def _block_stride(n: int, length: int) -> int:
    """Largest power-of-two decimation whose warm-up stays small against `length`."""
    stride = 1
    while stride < 4096 and n * stride * 2 * 8 <= length:
        stride *= 2
    return stride


def lfsr_sequence(state: LfsrState, steps: int) -> BitArray:
    """
    Register history as a flat bit sequence.

    Returns u of length n + steps such that, after t steps from `state`,
    flip-flop i holds u[t + n - i]. The bit output at step t + 1 is u[t].

    u obeys u[j] = XOR_{i in taps} u[j - i]. Squaring the characteristic
    polynomial k times gives P(x)^(2^k) = P(x^(2^k)) over GF(2), so u also obeys
    u[j] = XOR_{i in taps} u[j - i * 2^k]; with stride 2^k the recurrence
    fills whole blocks of min(taps) * 2^k entries at once.
    """
    n = state.degree
    total = n + steps
    taps = state.polynomial.feedback_taps

    u = np.zeros(total, dtype=np.uint8)
    for i in range(1, n + 1):
        u[n - i] = state.bit(i)

    stride = _block_stride(n, steps)
    warm = min(total, n * stride)

    # Scalar warm-up on a Python list
    seq = u[:n].tolist()
    for j in range(n, warm):
        acc = 0
        for i in taps:
            acc ^= seq[j - i]
        seq.append(acc)
    u[:warm] = seq

    block = taps[0] * stride
    j = warm
    while j < total:
        end = min(j + block, total)
        width = end - j
        acc_block = u[j - taps[0] * stride : j - taps[0] * stride + width].copy()
        for i in taps[1:]:
            lo = j - i * stride
            acc_block ^= u[lo : lo + width]
        u[j:end] = acc_block
        j = end

    logger.debug(f"Generated {steps} steps of {state.polynomial} (stride {stride})")
    return u


def advance(state: LfsrState, steps: int) -> LfsrState:
    """State after `steps` clocks, computed through lfsr_sequence."""
    if steps == 0:
        return state
    u = lfsr_sequence(state, steps)
    n = state.degree
    value = 0
    for i in range(1, n + 1):
        value |= int(u[steps + n - i]) << (i - 1)
    return LfsrState(state.polynomial, value, state.step_count + steps)


def output_sequence(state: LfsrState, steps: int) -> BitArray:
    """The `steps` bits emitted from flip-flop n, in order."""
    return lfsr_sequence(state, steps)[:steps]
