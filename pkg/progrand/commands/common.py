"""
Argument helpers shared by the generator-driven subcommands.
"""

from __future__ import annotations

import dataclasses
from pathlib import Path
from typing import Any

from .. import config as config_module
from ..config import config_from_dict, default_config, load_config, parse_seed
from ..engine import GeneratorConfig
from ..errors import UsageError
from ..threshold import Fixed
from .base import ArgumentSpec, arg


def int_list(text: str) -> list[int]:
    """argparse type for '27,127,227'."""
    items = [part.strip() for part in text.split(",") if part.strip()]
    try:
        return [int(item, 0) for item in items]
    except ValueError as e:
        raise UsageError(f"expected a comma-separated integer list, got {text!r}") from e


CONFIG_ARGUMENTS: tuple[ArgumentSpec, ...] = (
    arg("--config", "-c", help="Generator config JSON (default: built-in 32-bit config)"),
    arg("--seed", help="Override the config seed (integer literal)"),
    arg("--threshold", type=int, help="Replace the schedule with Fixed{threshold}"),
)

OUT_DIR_ARGUMENT = arg(
    "--out-dir", "-o", help="Output directory (default: $PROGRAND_OUT_DIR or ./progrand-out)"
)

SAMPLES_ARGUMENT = arg("--samples", "-N", type=int, default=10_000, help="Samples per stream")


def resolve_config(
    config: str | None,
    config_data: dict[str, Any] | None,
    seed: str | int | None,
    threshold: int | None,
) -> GeneratorConfig:
    """Config file / manifest data / built-in default, then CLI overrides."""
    if config is not None and config_data is not None:
        raise UsageError("pass either a config file or inline config data, not both")
    if config_data is not None:
        resolved = config_from_dict(config_data)
    elif config is not None:
        resolved = load_config(config)
    else:
        resolved = default_config()

    if seed is not None:
        resolved = dataclasses.replace(resolved, seed=parse_seed(seed))
    if threshold is not None:
        resolved = dataclasses.replace(resolved, schedule=Fixed(threshold))
    return resolved


def resolve_out_dir(out_dir: str | None) -> Path:
    path = Path(out_dir) if out_dir is not None else config_module.DEFAULT_OUT_DIR
    path.mkdir(parents=True, exist_ok=True)
    return path


def check_samples(samples: int) -> None:
    if samples < 1:
        raise UsageError(f"--samples must be >= 1, got {samples}")
