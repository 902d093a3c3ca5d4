"""
Threshold controller: the m-bit comparison value B(t).

Schedules:
    Fixed        constant threshold
    CounterRamp  counter that increments once per sample and holds at 2^m - 1
    Custom       step-and-hold table of (step, value) pairs

The controller advances once per generated sample.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Literal

import numpy as np
import numpy.typing as npt
import pandas as pd

from .errors import InvalidSchedule, ThresholdOutOfRange

logger = logging.getLogger("progrand.threshold")

ThresholdArray = npt.NDArray[np.int64]


def _max_value(m: int) -> int:
    return (1 << m) - 1


def check_threshold(value: int, m: int) -> None:
    if not 0 <= value <= _max_value(m):
        raise ThresholdOutOfRange(f"threshold {value} outside [0, {_max_value(m)}] for m={m}")


# --- Schedules ---


@dataclass(frozen=True)
class Fixed:
    value: int
    kind: Literal["fixed"] = "fixed"

    def validate(self, m: int) -> None:
        check_threshold(self.value, m)

    def first_value(self) -> int:
        return self.value


@dataclass(frozen=True)
class CounterRamp:
    initial: int = 0
    kind: Literal["counter_ramp"] = "counter_ramp"

    def validate(self, m: int) -> None:
        check_threshold(self.initial, m)

    def first_value(self) -> int:
        return self.initial


@dataclass(frozen=True)
class Custom:
    """Table of (step, value); steps strictly increasing from 0."""

    table: tuple[tuple[int, int], ...]
    kind: Literal["custom"] = "custom"

    def validate(self, m: int) -> None:
        if not self.table:
            raise InvalidSchedule("custom schedule table is empty")
        if self.table[0][0] != 0:
            raise InvalidSchedule(f"custom schedule must start at step 0, got {self.table[0][0]}")
        for (s0, _), (s1, _) in zip(self.table, self.table[1:]):
            if s1 <= s0:
                raise InvalidSchedule(f"custom schedule steps not strictly increasing at {s0} -> {s1}")
        for _, value in self.table:
            check_threshold(value, m)

    def first_value(self) -> int:
        return self.table[0][1]

    def value_at(self, step: int) -> int:
        """Step-and-hold lookup."""
        steps = [s for s, _ in self.table]
        idx = int(np.searchsorted(steps, step, side="right")) - 1
        return self.table[max(idx, 0)][1]


ThresholdSchedule = Fixed | CounterRamp | Custom


def linear_schedule(start: int, stop: int, steps: int, m: int) -> Custom:
    """
    Custom schedule moving from `start` to `stop` over `steps` samples.

    Either direction is allowed; a decreasing schedule anneals toward more
    uniform output. Values are rounded, and consecutive duplicates dropped.
    """
    check_threshold(start, m)
    check_threshold(stop, m)
    if steps < 1:
        raise InvalidSchedule(f"linear schedule needs steps >= 1, got {steps}")

    values = np.rint(np.linspace(start, stop, steps + 1)).astype(np.int64)
    table: list[tuple[int, int]] = []
    for s, v in enumerate(values.tolist()):
        if not table or table[-1][1] != v:
            table.append((s, int(v)))
    return Custom(tuple(table))


def load_schedule_csv(path: str | Path) -> Custom:
    """Read a "step,threshold" CSV into a Custom schedule (not yet range-checked)."""
    try:
        frame = pd.read_csv(path, dtype="int64")
    except (ValueError, pd.errors.ParserError) as e:
        raise InvalidSchedule(f"{path}: schedule CSV must hold integer columns: {e}") from e
    if list(frame.columns) != ["step", "threshold"]:
        raise InvalidSchedule(f"{path}: expected header 'step,threshold', got {list(frame.columns)}")
    steps = frame["step"].tolist()
    thresholds = frame["threshold"].tolist()
    return Custom(tuple((int(s), int(t)) for s, t in zip(steps, thresholds)))


def save_schedule_csv(schedule: Custom, path: str | Path) -> None:
    frame = pd.DataFrame(list(schedule.table), columns=["step", "threshold"])
    frame.to_csv(path, index=False, lineterminator="\n")


# --- Controller ---


@dataclass(frozen=True)
class ControllerState:
    """
    Controller output plus bookkeeping.

    Invariant: saturated implies current == 2^m - 1, and a saturated
    controller never changes again.
    """

    schedule: ThresholdSchedule
    m: int
    current: int
    saturated: bool = False
    step: int = 0


def new_controller(schedule: ThresholdSchedule, m: int) -> ControllerState:
    schedule.validate(m)
    current = schedule.first_value()
    saturated = isinstance(schedule, CounterRamp) and current == _max_value(m)
    return ControllerState(schedule=schedule, m=m, current=current, saturated=saturated)


def current_threshold(state: ControllerState) -> int:
    return state.current


def advance(state: ControllerState) -> ControllerState:
    """One controller clock."""
    schedule = state.schedule
    next_step = state.step + 1
    match schedule:
        case Fixed():
            return replace(state, step=next_step)
        case CounterRamp():
            if state.saturated:
                return replace(state, step=next_step)
            top = _max_value(state.m)
            current = min(state.current + 1, top)
            return replace(state, current=current, saturated=current == top, step=next_step)
        case Custom():
            return replace(state, current=schedule.value_at(next_step), step=next_step)


def advance_by(state: ControllerState, count: int) -> ControllerState:
    """`count` advances in closed form."""
    if count == 0:
        return state
    schedule = state.schedule
    next_step = state.step + count
    match schedule:
        case Fixed():
            return replace(state, step=next_step)
        case CounterRamp():
            top = _max_value(state.m)
            current = min(state.current + count, top)
            return replace(state, current=current, saturated=current == top, step=next_step)
        case Custom():
            return replace(state, current=schedule.value_at(next_step), step=next_step)


def threshold_trace(state: ControllerState, count: int) -> ThresholdArray:
    """The next `count` thresholds: current, then after 1, 2, ... advances."""
    schedule = state.schedule
    match schedule:
        case Fixed():
            return np.full(count, schedule.value, dtype=np.int64)
        case CounterRamp():
            ramp = state.current + np.arange(count, dtype=np.int64)
            return np.minimum(ramp, _max_value(state.m))
        case Custom():
            steps = np.array([s for s, _ in schedule.table], dtype=np.int64)
            values = np.array([v for _, v in schedule.table], dtype=np.int64)
            at = state.step + np.arange(count, dtype=np.int64)
            idx = np.searchsorted(steps, at, side="right") - 1
            return values[np.maximum(idx, 0)]


def saturation_index(thresholds: ThresholdArray, m: int) -> int | None:
    """First index from which the trace stays at 2^m - 1, or None if it never settles there."""
    top = _max_value(m)
    not_top = np.flatnonzero(thresholds != top)
    if not_top.size == 0:
        return 0
    last = int(not_top[-1])
    return last + 1 if last + 1 < thresholds.size else None
