"""
progrand: programmable-statistics pseudo-random bitstreams.

One shared LFSR feeds per-stream XOR tap networks; each stream packs m tap
outputs into an integer A and a strict comparator emits 1 iff A > B, where
the threshold B comes from a fixed, counter-ramp or custom schedule. With a
primitive polynomial and linearly independent tap sets, P(1) is
((2^m - 1) - B) / 2^m.

The `stats` subpackage holds the evaluation harness; `progrand.cli` is the
command-line front end.
"""

from .engine import (
    BitstreamEngine,
    ExhaustiveSweepSource,
    GeneratorConfig,
    LfsrSource,
    MultiStreamOutput,
    compare,
    empirical_p1,
    run,
    sample_values,
    theoretical_p1,
)
from .errors import PrograndError
from .lfsr import GF2Polynomial, LfsrState, is_primitive, new_lfsr, parse_polynomial, step
from .taps import StreamConfig, TapSet, capacity, generate_stream_configs, is_shift_equivalent, sample_bits
from .threshold import Custom, CounterRamp, Fixed, ThresholdSchedule, new_controller

__version__ = "0.1.0"

__all__ = [
    "BitstreamEngine",
    "CounterRamp",
    "Custom",
    "ExhaustiveSweepSource",
    "Fixed",
    "GF2Polynomial",
    "GeneratorConfig",
    "LfsrSource",
    "LfsrState",
    "MultiStreamOutput",
    "PrograndError",
    "StreamConfig",
    "TapSet",
    "ThresholdSchedule",
    "capacity",
    "compare",
    "empirical_p1",
    "generate_stream_configs",
    "is_primitive",
    "is_shift_equivalent",
    "new_controller",
    "new_lfsr",
    "parse_polynomial",
    "run",
    "sample_bits",
    "sample_values",
    "step",
    "theoretical_p1",
]
