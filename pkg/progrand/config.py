"""
Generator configuration files and defaults.

Config files are JSON validated by pydantic models, then converted into the
frozen domain GeneratorConfig (which enforces the tap-network invariants).
`config_to_dict` is the canonical serialization written into run manifests;
it inlines custom schedule tables so a manifest needs no other file.
"""

from __future__ import annotations

import json
import logging
import os
from pathlib import Path
from typing import Annotated, Any, Literal

from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from .engine import GeneratorConfig
from .errors import ConfigError, PrograndError
from .lfsr import DEFAULT_POLYNOMIAL_32, parse_polynomial
from .taps import StreamConfig, TapSet, generate_stream_configs
from .threshold import CounterRamp, Custom, Fixed, ThresholdSchedule, load_schedule_csv

logger = logging.getLogger("progrand.config")

# --- Settings ---

OUT_DIR_ENV = "PROGRAND_OUT_DIR"
DEFAULT_OUT_DIR = Path(os.environ.get(OUT_DIR_ENV, "progrand-out"))

DEFAULT_M = 8
DEFAULT_K = 3
DEFAULT_STREAM_COUNT = 4
DEFAULT_SEED = 1
DEFAULT_THRESHOLD = 127


# --- File Models ---


class FixedScheduleModel(BaseModel):
    model_config = ConfigDict(extra="forbid")

    kind: Literal["fixed"]
    value: int = Field(..., description="Constant threshold")


class CounterRampScheduleModel(BaseModel):
    model_config = ConfigDict(extra="forbid")

    kind: Literal["counter_ramp"]
    initial: int = Field(default=0, description="Counter start value")


class CustomScheduleModel(BaseModel):
    model_config = ConfigDict(extra="forbid")

    kind: Literal["custom"]
    table: list[tuple[int, int]] | None = Field(default=None, description="(step, threshold) pairs")
    csv: str | None = Field(default=None, description="Path of a 'step,threshold' CSV")

    @model_validator(mode="after")
    def _one_source(self) -> CustomScheduleModel:
        if (self.table is None) == (self.csv is None):
            raise ValueError("custom schedule needs exactly one of 'table' or 'csv'")
        return self


ScheduleModel = Annotated[
    FixedScheduleModel | CounterRampScheduleModel | CustomScheduleModel,
    Field(discriminator="kind"),
]


class StreamModel(BaseModel):
    model_config = ConfigDict(extra="forbid")

    id: str | None = None
    taps: list[list[int]]


def _default_schedule() -> ScheduleModel:
    return FixedScheduleModel(kind="fixed", value=DEFAULT_THRESHOLD)


class ConfigFile(BaseModel):
    """JSON config file. Omitted streams are generated from (k, stream_count)."""

    model_config = ConfigDict(extra="forbid")

    polynomial: str = Field(default=DEFAULT_POLYNOMIAL_32.to_caret())
    seed: int | str = Field(default=DEFAULT_SEED, description="Integer, or '0x'/'0b' string")
    m: int = Field(default=DEFAULT_M, ge=1)
    streams: list[StreamModel] | list[list[list[int]]] | None = None
    k: int = Field(default=DEFAULT_K, ge=1, description="Taps per XOR for generated streams")
    stream_count: int = Field(default=DEFAULT_STREAM_COUNT, ge=1)
    schedule: ScheduleModel = Field(default_factory=_default_schedule)


# --- Conversion ---


def parse_seed(seed: int | str) -> int:
    if isinstance(seed, int):
        return seed
    try:
        return int(seed.strip(), 0)
    except ValueError as e:
        raise ConfigError(f"seed {seed!r} is not an integer literal") from e


def _schedule_from_model(model: ScheduleModel, base_dir: Path) -> ThresholdSchedule:
    match model:
        case FixedScheduleModel():
            return Fixed(model.value)
        case CounterRampScheduleModel():
            return CounterRamp(model.initial)
        case CustomScheduleModel():
            if model.csv is not None:
                path = Path(model.csv)
                return load_schedule_csv(path if path.is_absolute() else base_dir / path)
            return Custom(tuple((int(s), int(v)) for s, v in model.table or ()))


def _streams_from_model(file: ConfigFile, degree: int) -> tuple[StreamConfig, ...]:
    if file.streams is None:
        return tuple(generate_stream_configs(degree, file.k, file.m, file.stream_count))

    streams: list[StreamConfig] = []
    for index, raw in enumerate(file.streams):
        if isinstance(raw, StreamModel):
            stream_id = raw.id or f"s{index}"
            taps = raw.taps
        else:
            stream_id = f"s{index}"
            taps = raw
        streams.append(StreamConfig(tuple(TapSet.of(t) for t in taps), stream_id))
    return tuple(streams)


def build_config(file: ConfigFile, base_dir: Path | None = None) -> GeneratorConfig:
    """Validated GeneratorConfig from a parsed config file."""
    polynomial = parse_polynomial(file.polynomial)
    return GeneratorConfig(
        polynomial=polynomial,
        seed=parse_seed(file.seed),
        m=file.m,
        streams=_streams_from_model(file, polynomial.degree),
        schedule=_schedule_from_model(file.schedule, base_dir or Path.cwd()),
    )


def config_from_dict(data: dict[str, Any], base_dir: Path | None = None) -> GeneratorConfig:
    try:
        file = ConfigFile.model_validate(data)
    except ValidationError as e:
        raise ConfigError(f"invalid config: {e}") from e
    return build_config(file, base_dir)


def load_config(path: str | Path) -> GeneratorConfig:
    """Read and validate a JSON config file."""
    path = Path(path)
    try:
        data = json.loads(path.read_text())
    except (OSError, json.JSONDecodeError) as e:
        raise ConfigError(f"{path}: cannot read config: {e}") from e
    try:
        config = config_from_dict(data, path.parent)
    except PrograndError as e:
        raise type(e)(f"{path}: {e}") from e
    logger.info(f"Loaded config {path}: {config.polynomial}, {len(config.streams)} streams, m={config.m}")
    return config


def default_config() -> GeneratorConfig:
    """32-bit LFSR, m = 8, four k = 3 streams, seed 1, Fixed{127}."""
    return build_config(ConfigFile())


def schedule_to_dict(schedule: ThresholdSchedule) -> dict[str, Any]:
    match schedule:
        case Fixed():
            return {"kind": "fixed", "value": schedule.value}
        case CounterRamp():
            return {"kind": "counter_ramp", "initial": schedule.initial}
        case Custom():
            return {"kind": "custom", "table": [list(row) for row in schedule.table]}


def config_to_dict(config: GeneratorConfig) -> dict[str, Any]:
    """Canonical, self-contained JSON form of a GeneratorConfig."""
    return {
        "polynomial": config.polynomial.to_caret(),
        "seed": config.seed,
        "m": config.m,
        "streams": [
            {"id": s.stream_id, "taps": [list(t.positions) for t in s.tap_sets]}
            for s in config.streams
        ],
        "schedule": schedule_to_dict(config.schedule),
    }
