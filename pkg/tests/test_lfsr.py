"""
Tests for the Fibonacci LFSR: the 3-bit golden orbit, seeding rules and
agreement between single stepping and bulk sequence generation.
"""

from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from progrand.errors import WidthMismatch, ZeroSeed
from progrand.lfsr import (
    DEFAULT_POLYNOMIAL_32,
    KNOWN_PRIMITIVE,
    LfsrState,
    advance,
    lfsr_sequence,
    new_lfsr,
    output_sequence,
    parse_polynomial,
    period,
    step,
)

FIG_TWO = parse_polynomial("x^3+x^2+1")

# State values (bit i-1 = flip-flop i) and emitted bits from seed 0b111
GOLDEN_STATES = [6, 4, 1, 2, 5, 3, 7]
GOLDEN_OUTPUTS = [1, 1, 1, 0, 0, 1, 0]


def step_many(state: LfsrState, steps: int) -> tuple[LfsrState, list[int]]:
    outputs: list[int] = []
    for _ in range(steps):
        state, out = step(state)
        outputs.append(out)
    return state, outputs


class TestSeeding:
    """new_lfsr validation."""

    def test_default_seed(self) -> None:
        """Default seed is the single-bit state 0...01 (flip-flop 1 set)."""
        state = new_lfsr(FIG_TWO)
        assert state.value == 1
        assert state.bits == (1, 0, 0)
        assert state.step_count == 0

    def test_binary_string_seed(self) -> None:
        """A binary string gives the width explicitly, flip-flop n first."""
        assert new_lfsr(FIG_TWO, "111").value == 7
        assert new_lfsr(FIG_TWO, "0b100").bits == (0, 0, 1)

    def test_zero_seed(self) -> None:
        """The all-zero state is absorbing and rejected."""
        with pytest.raises(ZeroSeed):
            new_lfsr(FIG_TWO, 0)
        with pytest.raises(ZeroSeed):
            new_lfsr(FIG_TWO, "000")

    @pytest.mark.parametrize("seed", [8, -1, "0101", "11", "1x1"])
    def test_width_mismatch(self, seed: int | str) -> None:
        """Seeds must have exactly n bits."""
        with pytest.raises(WidthMismatch):
            new_lfsr(FIG_TWO, seed)


class TestStep:
    """Single-step semantics."""

    def test_golden_orbit(self) -> None:
        """The 3-bit register from 111 visits all 7 nonzero states."""
        state = new_lfsr(FIG_TWO, 0b111)
        states: list[int] = []
        outputs: list[int] = []
        for _ in range(7):
            state, out = step(state)
            states.append(state.value)
            outputs.append(out)
        assert states == GOLDEN_STATES
        assert outputs == GOLDEN_OUTPUTS
        assert sorted(states) == list(range(1, 8))
        assert state.step_count == 7

    def test_never_reaches_zero(self) -> None:
        """Primitive registers never step into the zero state."""
        state = new_lfsr(KNOWN_PRIMITIVE[8], 0x5A)
        for _ in range(300):
            state, _ = step(state)
            assert state.value != 0

    def test_full_period_balance(self) -> None:
        """One period of a degree-10 register: every state once, 512 ones, 511 zeros."""
        poly = KNOWN_PRIMITIVE[10]
        state = new_lfsr(poly)
        seen: set[int] = set()
        ones = 0
        for _ in range(1023):
            state, out = step(state)
            seen.add(state.value)
            ones += out
        assert len(seen) == 1023
        assert ones == 512

    @pytest.mark.parametrize("degree", [3, 4, 7, 8, 10, 11, 16])
    def test_known_periods(self, degree: int) -> None:
        """Primitive polynomials have period 2^n - 1."""
        assert period(KNOWN_PRIMITIVE[degree]) == (1 << degree) - 1


class TestBulkSequence:
    """lfsr_sequence against repeated step."""

    @pytest.mark.parametrize("degree,steps", [(3, 50), (10, 3000), (16, 5000), (32, 20000)])
    def test_outputs_match_step(self, degree: int, steps: int) -> None:
        """Output bits from bulk generation equal the stepped outputs."""
        state = new_lfsr(KNOWN_PRIMITIVE[degree], 1)
        _, expected = step_many(state, steps)
        np.testing.assert_array_equal(output_sequence(state, steps), np.array(expected, dtype=np.uint8))

    def test_history_holds_register(self) -> None:
        """Flip-flop i after t steps is u[t + n - i]."""
        poly = KNOWN_PRIMITIVE[16]
        state = new_lfsr(poly, 0xACE1)
        u = lfsr_sequence(state, 2000)
        n = poly.degree
        current = state
        for t in range(2000):
            if t % 97 == 0:
                assert current.bits == tuple(int(u[t + n - i]) for i in range(1, n + 1))
            current, _ = step(current)

    def test_advance_matches_step(self) -> None:
        """advance(k) lands on the same state as k single steps."""
        state = new_lfsr(DEFAULT_POLYNOMIAL_32, 0xDEADBEEF)
        stepped, _ = step_many(state, 12345)
        jumped = advance(state, 12345)
        assert jumped.value == stepped.value
        assert jumped.step_count == 12345

    def test_advance_zero(self) -> None:
        """advance(0) is the identity."""
        state = new_lfsr(FIG_TWO)
        assert advance(state, 0) is state

    @given(seed=st.integers(min_value=1, max_value=(1 << 16) - 1), steps=st.integers(min_value=1, max_value=700))
    @settings(max_examples=40, deadline=None)
    def test_deterministic(self, seed: int, steps: int) -> None:
        """Same polynomial, seed and length always give the same bits."""
        state = new_lfsr(KNOWN_PRIMITIVE[16], seed)
        first = lfsr_sequence(state, steps)
        second = lfsr_sequence(state, steps)
        np.testing.assert_array_equal(first, second)
        _, expected = step_many(state, steps)
        assert first[:steps].tolist() == expected


class TestShiftAndAdd:
    """XOR of an m-sequence with a cyclic shift of itself is another shift."""

    @pytest.mark.parametrize("degree", [4, 7, 10])
    def test_shift_and_add(self, degree: int) -> None:
        """Exhaustive over one period for small primitive registers."""
        n_period = (1 << degree) - 1
        seq = output_sequence(new_lfsr(KNOWN_PRIMITIVE[degree]), n_period)
        rotations = {np.roll(seq, k).tobytes() for k in range(n_period)}
        assert len(rotations) == n_period
        for k in range(1, n_period):
            assert (seq ^ np.roll(seq, k)).tobytes() in rotations
