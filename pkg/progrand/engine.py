"""
Bitstream engine: shared LFSR + per-stream tap networks + shared threshold
controller + strict comparators.

Per step, in order:
1. the LFSR steps once
2. every stream samples its m-bit value A from the new register contents
3. every stream emits 1 iff A > B, with B the controller's current threshold
4. the controller advances once

All streams observe the same register state and the same threshold within a
step; per-stream logic only reads shared state.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Protocol, Sequence

import numpy as np
import numpy.typing as npt
from scipy import stats as sp_stats

from .errors import ConfigError, ShiftEquivalentTaps, TapOutOfRange
from .lfsr import GF2Polynomial, LfsrState, lfsr_sequence, new_lfsr, step
from .taps import (
    StreamConfig,
    TapSet,
    find_shift_equivalent,
    gf2_rank,
    sample_bits,
    sample_values_from_history,
)
from .threshold import (
    ControllerState,
    ThresholdSchedule,
    advance,
    advance_by,
    check_threshold,
    new_controller,
    threshold_trace,
)

logger = logging.getLogger("progrand.engine")

MAX_SAMPLE_WIDTH = 32

ValueArray = npt.NDArray[np.int64]
BitMatrix = npt.NDArray[np.uint8]


# --- Configuration ---


@dataclass(frozen=True)
class GeneratorConfig:
    """
    Complete, validated description of a generator.

    Invariants: every stream has exactly m tap sets, all within the LFSR
    degree, and no two tap sets anywhere in `streams` are shift-equivalent.
    """

    polynomial: GF2Polynomial
    seed: int
    m: int
    streams: tuple[StreamConfig, ...]
    schedule: ThresholdSchedule

    def __post_init__(self) -> None:
        if not 1 <= self.m <= MAX_SAMPLE_WIDTH:
            raise ConfigError(f"sample width m must be in [1, {MAX_SAMPLE_WIDTH}], got {self.m}")
        if not self.streams:
            raise ConfigError("generator needs at least one stream")

        degree = self.polynomial.degree
        ids: set[str] = set()
        for s in self.streams:
            if s.stream_id in ids:
                raise ConfigError(f"duplicate stream id {s.stream_id!r}")
            ids.add(s.stream_id)
            if s.m != self.m:
                raise ConfigError(f"stream {s.stream_id!r} has {s.m} tap sets, m is {self.m}")
            if s.max_position > degree:
                raise TapOutOfRange(
                    f"stream {s.stream_id!r} taps flip-flop {s.max_position}, LFSR degree is {degree}"
                )
            if gf2_rank(s.tap_sets) < s.m:
                logger.warning(
                    f"stream {s.stream_id!r}: tap sets are linearly dependent, "
                    f"its {s.m}-bit sample is not uniform"
                )

        owners: dict[TapSet, str] = {}
        all_sets: list[TapSet] = []
        for s in self.streams:
            for t in s.tap_sets:
                owners.setdefault(t, s.stream_id)
                all_sets.append(t)
        pair = find_shift_equivalent(all_sets)
        if pair is not None:
            a, b = pair
            raise ShiftEquivalentTaps(
                f"tap sets {a} (stream {owners[a]!r}) and {b} (stream {owners[b]!r}) "
                f"are shift-equivalent"
            )

        self.schedule.validate(self.m)
        new_lfsr(self.polynomial, self.seed)

    @property
    def stream_ids(self) -> tuple[str, ...]:
        return tuple(s.stream_id for s in self.streams)


@dataclass(frozen=True)
class MultiStreamOutput:
    """Per-stream bits (streams x N) and the threshold used at each step."""

    bits: BitMatrix
    thresholds: ValueArray
    stream_ids: tuple[str, ...] = field(default=())

    def __post_init__(self) -> None:
        if self.bits.ndim != 2 or self.bits.shape[1] != self.thresholds.shape[0]:
            raise ValueError(
                f"bits {self.bits.shape} and thresholds {self.thresholds.shape} disagree on N"
            )

    @property
    def n(self) -> int:
        return int(self.thresholds.shape[0])

    def stream(self, index: int) -> BitMatrix:
        return self.bits[index]


# --- Comparator ---


def compare(a: ValueArray | int, b: ValueArray | int) -> BitMatrix:
    """Strict comparator: 1 iff A > B."""
    return np.greater(a, b).astype(np.uint8)


def theoretical_p1(threshold: int, m: int) -> Fraction:
    """Exact P(1) = ((2^m - 1) - threshold) / 2^m for uniform m-bit A."""
    check_threshold(threshold, m)
    return Fraction((1 << m) - 1 - threshold, 1 << m)


def empirical_p1(bits: BitMatrix) -> float:
    """Fraction of ones across every stream and step."""
    return float(np.count_nonzero(bits)) / bits.size


def p1_confidence_interval(bits: BitMatrix, confidence: float = 0.997) -> tuple[float, float]:
    """Clopper-Pearson interval on the pooled fraction of ones."""
    ones = int(np.count_nonzero(bits))
    result = sp_stats.binomtest(ones, int(bits.size))
    ci = result.proportion_ci(confidence_level=confidence)
    return float(ci.low), float(ci.high)


# --- Sample Sources ---


class SampleSource(Protocol):
    """Produces the comparator's left operand A for every stream."""

    def next_values(self) -> list[int]:
        """Advance one step and return one A per stream."""
        ...

    def values(self, count: int) -> ValueArray:
        """Advance `count` steps and return A as a (streams x count) array."""
        ...


class LfsrSource:
    """Production source: one shared register, one tap network per stream."""

    def __init__(self, polynomial: GF2Polynomial, seed: int, streams: Sequence[StreamConfig]) -> None:
        self._streams = tuple(streams)
        self._state = new_lfsr(polynomial, seed)

    def next_values(self) -> list[int]:
        self._state, _ = step(self._state)
        return [sample_bits(self._state, s) for s in self._streams]

    def values(self, count: int) -> ValueArray:
        n = self._state.degree
        history = lfsr_sequence(self._state, count)
        out = np.empty((len(self._streams), count), dtype=np.int64)
        for row, s in enumerate(self._streams):
            out[row] = sample_values_from_history(history, n, s, count, offset=1)

        value = 0
        for i in range(1, n + 1):
            value |= int(history[count + n - i]) << (i - 1)
        self._state = LfsrState(self._state.polynomial, value, self._state.step_count + count)
        return out


class ExhaustiveSweepSource:
    """
    Test hook replacing the LFSR: every stream sees A = 0, 1, ..., 2^m - 1
    cyclically, so comparator counts can be checked exactly.
    """

    def __init__(self, m: int, stream_count: int = 1) -> None:
        self._modulus = 1 << m
        self._stream_count = stream_count
        self._position = 0

    def next_values(self) -> list[int]:
        value = self._position % self._modulus
        self._position += 1
        return [value] * self._stream_count

    def values(self, count: int) -> ValueArray:
        row = (self._position + np.arange(count, dtype=np.int64)) % self._modulus
        self._position += count
        return np.tile(row, (self._stream_count, 1))


# --- Engine ---


class BitstreamEngine:
    """
    Stateful multi-stream generator.

    `next_sample` and `run` advance the same register and controller, so they
    can be interleaved freely. Single-writer: do not step one engine from two
    threads.
    """

    def __init__(self, config: GeneratorConfig, source: SampleSource | None = None) -> None:
        self._config = config
        self._source: SampleSource = source or LfsrSource(config.polynomial, config.seed, config.streams)
        self._controller = new_controller(config.schedule, config.m)

    @property
    def config(self) -> GeneratorConfig:
        return self._config

    @property
    def controller(self) -> ControllerState:
        return self._controller

    def next_sample(self) -> tuple[int, ...]:
        """One step: one bit per stream."""
        values = self._source.next_values()
        b = self._controller.current
        bits = tuple(1 if a > b else 0 for a in values)
        self._controller = advance(self._controller)
        return bits

    def sample_values(self, count: int) -> tuple[ValueArray, ValueArray]:
        """A values (streams x count) and the matching threshold trace; advances state."""
        values = self._source.values(count)
        thresholds = threshold_trace(self._controller, count)
        self._controller = advance_by(self._controller, count)
        return values, thresholds

    def run(self, count: int) -> MultiStreamOutput:
        """`count` steps in one vectorized batch."""
        if count < 1:
            raise ConfigError(f"sample count must be >= 1, got {count}")
        values, thresholds = self.sample_values(count)
        bits = compare(values, thresholds[np.newaxis, :])
        logger.debug(f"Ran {count} steps over {len(self._config.streams)} streams")
        return MultiStreamOutput(bits=bits, thresholds=thresholds, stream_ids=self._config.stream_ids)


def run(config: GeneratorConfig, count: int, source: SampleSource | None = None) -> MultiStreamOutput:
    """Fresh engine, `count` steps."""
    return BitstreamEngine(config, source).run(count)


def sample_values(config: GeneratorConfig, count: int) -> ValueArray:
    """Fresh engine's A values for `count` steps (streams x count)."""
    values, _ = BitstreamEngine(config).sample_values(count)
    return values
