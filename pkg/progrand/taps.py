"""
Tap network: per-bit XOR tap sets over the shared LFSR.

Each output bit of an m-bit sample is the XOR of a set of flip-flops. Two tap
sets with the same gap pattern produce streams that are time shifts of each
other, so a stream configuration must never contain two shift-equivalent sets.
Shifts are linear only: taps cannot wrap around the register.
"""

from __future__ import annotations

import functools
import itertools
import json
import logging
import math
import re
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np
import numpy.typing as npt

from .errors import CapacityExceeded, InvalidTapSet, ShiftEquivalentTaps, TapOutOfRange
from .lfsr import LfsrState

logger = logging.getLogger("progrand.taps")

_TAP_SET_PATTERN = re.compile(r"^\{\s*(\d+(?:\s*,\s*\d+)*)\s*\}$")


# --- Types ---


@dataclass(frozen=True)
class TapSet:
    """Strictly increasing flip-flop positions (1-based) XORed into one bit."""

    positions: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.positions:
            raise InvalidTapSet("tap set needs at least one position")
        if self.positions[0] < 1:
            raise InvalidTapSet(f"tap positions start at 1, got {self.positions}")
        if any(b <= a for a, b in zip(self.positions, self.positions[1:])):
            raise InvalidTapSet(f"tap positions must be strictly increasing: {self.positions}")

    @classmethod
    def of(cls, positions: Iterable[int]) -> TapSet:
        """Build from any iterable of positions, sorting them."""
        return cls(tuple(sorted(positions)))

    @property
    def k(self) -> int:
        return len(self.positions)

    @property
    def mask(self) -> int:
        """State functional as a mask (flip-flop i is bit i - 1)."""
        result = 0
        for p in self.positions:
            result |= 1 << (p - 1)
        return result

    def __str__(self) -> str:
        return format_tap_set(self)


@dataclass(frozen=True)
class StreamConfig:
    """The m tap sets of one output stream; tap_sets[0] drives the sample's MSB."""

    tap_sets: tuple[TapSet, ...]
    stream_id: str = "s0"

    def __post_init__(self) -> None:
        if not self.tap_sets:
            raise InvalidTapSet(f"stream {self.stream_id!r} has no tap sets")
        pair = find_shift_equivalent(self.tap_sets)
        if pair is not None:
            a, b = pair
            raise ShiftEquivalentTaps(
                f"stream {self.stream_id!r}: tap sets {a} and {b} are shift-equivalent"
            )

    @property
    def m(self) -> int:
        return len(self.tap_sets)

    @property
    def max_position(self) -> int:
        return max(t.positions[-1] for t in self.tap_sets)

    def to_json(self) -> str:
        return json.dumps([list(t.positions) for t in self.tap_sets])

    @classmethod
    def from_json(cls, text: str, stream_id: str = "s0") -> StreamConfig:
        raw = json.loads(text)
        if not isinstance(raw, list):
            raise InvalidTapSet("stream config JSON must be an array of tap lists")
        return cls(tuple(TapSet.of(int(p) for p in taps) for taps in raw), stream_id)


# --- Text Form ---


def format_tap_set(tap_set: TapSet) -> str:
    return "{" + ",".join(str(p) for p in tap_set.positions) + "}"


def parse_tap_set(text: str) -> TapSet:
    match = _TAP_SET_PATTERN.match(text.strip())
    if match is None:
        raise InvalidTapSet(f"expected a tap set like '{{2,11,19}}', got {text!r}")
    return TapSet(tuple(int(p) for p in match.group(1).split(",")))


# --- Shift Equivalence ---


def normalize(tap_set: TapSet) -> TapSet:
    """Re-anchor the smallest position at 1, keeping the gap pattern."""
    offset = tap_set.positions[0] - 1
    return TapSet(tuple(p - offset for p in tap_set.positions))


def is_shift_equivalent(a: TapSet, b: TapSet) -> bool:
    return normalize(a) == normalize(b)


def find_shift_equivalent(tap_sets: Sequence[TapSet]) -> tuple[TapSet, TapSet] | None:
    """First pair (in input order) of shift-equivalent tap sets, or None."""
    seen: dict[TapSet, TapSet] = {}
    for t in tap_sets:
        key = normalize(t)
        if key in seen:
            return seen[key], t
        seen[key] = t
    return None


def capacity(n: int, k: int, m: int) -> int:
    """Number of mutually non-shift-equivalent m-bit streams with k taps per XOR."""
    if not 1 <= k <= n:
        raise InvalidTapSet(f"capacity needs 1 <= k <= n, got n={n}, k={k}")
    if m < 1:
        raise InvalidTapSet(f"capacity needs m >= 1, got {m}")
    return math.comb(n - 1, k - 1) // m


def normalized_patterns(n: int, k: int) -> Iterable[TapSet]:
    """All gap patterns of k taps within n flip-flops, anchored at 1, lexicographic."""
    for rest in itertools.combinations(range(2, n + 1), k - 1):
        yield TapSet((1, *rest))


# --- Linear Structure ---


class _Span:
    """Incremental GF(2) echelon basis over integer bit vectors."""

    __slots__ = ("rows",)

    def __init__(self, vectors: Iterable[int] = ()) -> None:
        self.rows: list[int] = []
        for v in vectors:
            self.add(v)

    def reduce(self, v: int) -> int:
        # rows are sorted by leading bit, descending
        for r in self.rows:
            v = min(v, v ^ r)
        return v

    def add(self, v: int) -> bool:
        v = self.reduce(v)
        if not v:
            return False
        self.rows.append(v)
        self.rows.sort(reverse=True)
        return True


def gf2_mask_rank(masks: Iterable[int]) -> int:
    """Rank over GF(2) of integer bit vectors."""
    return len(_Span(masks).rows)


def gf2_rank(tap_sets: Sequence[TapSet]) -> int:
    """Rank over GF(2) of the tap sets viewed as linear functionals of the state."""
    return gf2_mask_rank(t.mask for t in tap_sets)


def lagged_mask(tap_set: TapSet, lag: int, n: int) -> int:
    """
    Tap set read `lag` steps later, as a vector over register-history indices.

    Flip-flop p after `lag` more steps holds what flip-flop p - lag holds now
    (positions <= 0 are bits not yet fed back), so the vector is the tap mask
    moved by -lag. Valid for |lag| < n.
    """
    return tap_set.mask << (n - lag)


def _fits(
    candidate: TapSet,
    n: int,
    own: dict[int, _Span],
    others: list[dict[int, _Span]],
) -> bool:
    now = lagged_mask(candidate, 0, n)
    for lag, span in own.items():
        r0 = span.reduce(now)
        if not r0:
            return False
        if lag:
            rd = span.reduce(lagged_mask(candidate, lag, n))
            rd = min(rd, rd ^ r0)
            if not rd:
                return False
    for spans in others:
        for span in spans.values():
            if not span.reduce(now):
                return False
    return True


@functools.lru_cache(maxsize=32)
def _lag_independent_selection(n: int, k: int, m: int, count: int) -> tuple[tuple[TapSet, ...], ...] | None:
    """
    Greedy pick over the lexicographic patterns: a pattern joins the stream
    being filled only if, for every lag |d| < n, the stream's bits stay
    linearly independent of its own bits d steps away and of every earlier
    stream's bits d steps away. Returns None when the patterns run out.
    """
    patterns = list(normalized_patterns(n, k))
    used: set[TapSet] = set()
    streams: list[tuple[TapSet, ...]] = []

    for _ in range(count):
        own = {lag: _Span() for lag in range(n)}
        others = [
            {lag: _Span(lagged_mask(t, lag, n) for t in stream) for lag in range(-(n - 1), n)}
            for stream in streams
        ]
        chosen: list[TapSet] = []
        for candidate in patterns:
            if candidate in used or not _fits(candidate, n, own, others):
                continue
            now = lagged_mask(candidate, 0, n)
            for lag, span in own.items():
                span.add(now)
                if lag:
                    span.add(lagged_mask(candidate, lag, n))
            for spans in others:
                for span in spans.values():
                    span.add(now)
            chosen.append(candidate)
            used.add(candidate)
            if len(chosen) == m:
                break
        if len(chosen) < m:
            return None
        streams.append(tuple(chosen))
    return tuple(streams)


def generate_stream_configs(n: int, k: int, m: int, count: int) -> list[StreamConfig]:
    """
    Deterministically pick `count` streams of m tap sets each, all pairwise
    non-shift-equivalent across every returned stream.

    Patterns are visited in lexicographic order. A pattern is skipped when it
    would make a stream's sample linearly dependent on a time shift of itself
    or of an earlier stream (lexicographic neighbours such as {1,2,3},{1,2,4},
    {1,2,5} do exactly that, which correlates thresholded outputs). When no
    such selection exists, for instance k = 2, the first count * m patterns are
    used as they come.

    Raises:
        CapacityExceeded: count * m > C(n - 1, k - 1)
    """
    if not 1 <= k <= n or m < 1 or count < 0:
        raise InvalidTapSet(f"invalid parameters n={n}, k={k}, m={m}, count={count}")

    available = math.comb(n - 1, k - 1)
    needed = count * m
    if needed > available:
        raise CapacityExceeded(
            f"{count} streams x {m} bits need {needed} distinct gap patterns, "
            f"but C({n - 1}, {k - 1}) = {available}"
        )

    selection = _lag_independent_selection(n, k, m, count)
    if selection is None:
        logger.warning(
            f"no lag-independent tap selection for n={n}, k={k}, m={m}, count={count}; "
            f"using the first {needed} patterns in lexicographic order"
        )
        patterns = list(itertools.islice(normalized_patterns(n, k), needed))
        selection = tuple(tuple(patterns[i * m : (i + 1) * m]) for i in range(count))

    configs = [StreamConfig(tap_sets, stream_id=f"s{i}") for i, tap_sets in enumerate(selection)]
    logger.debug(f"Generated {count} stream configs (n={n}, k={k}, m={m})")
    return configs


# --- Sampling ---


def _tap_sets_of(config: StreamConfig | Sequence[TapSet]) -> Sequence[TapSet]:
    return config.tap_sets if isinstance(config, StreamConfig) else config


def check_positions(config: StreamConfig | Sequence[TapSet], degree: int) -> None:
    """Raise TapOutOfRange if any tap position exceeds `degree`."""
    for t in _tap_sets_of(config):
        if t.positions[-1] > degree:
            raise TapOutOfRange(f"tap set {t} exceeds LFSR degree {degree}")


def sample_bits(state: LfsrState, config: StreamConfig | Sequence[TapSet]) -> int:
    """
    m-bit sample from the current register contents.

    Bit j of the result (counting from the MSB) is the XOR of the flip-flops in
    tap_sets[j].
    """
    tap_sets = _tap_sets_of(config)
    check_positions(tap_sets, state.degree)
    value = 0
    for t in tap_sets:
        value = (value << 1) | ((state.value & t.mask).bit_count() & 1)
    return value


def sample_values_from_history(
    history: npt.NDArray[np.uint8],
    degree: int,
    config: StreamConfig | Sequence[TapSet],
    steps: int,
    offset: int = 1,
) -> npt.NDArray[np.int64]:
    """
    Vectorized sample_bits over a register history from `lfsr_sequence`.

    Entry t is the sample taken after `t + offset` steps; flip-flop i then holds
    history[t + offset + degree - i].
    """
    tap_sets = _tap_sets_of(config)
    check_positions(tap_sets, degree)
    values = np.zeros(steps, dtype=np.int64)
    for t in tap_sets:
        bit = np.zeros(steps, dtype=np.uint8)
        for p in t.positions:
            lo = offset + degree - p
            bit ^= history[lo : lo + steps]
        values = (values << 1) | bit
    return values
