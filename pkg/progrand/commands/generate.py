"""
generate: run the generator and write one bit file per stream, the threshold
trace and a run manifest.
"""

from __future__ import annotations

import logging
from pathlib import Path
from typing import Any, Literal

import pandas as pd

from ..artifacts import (
    BitFormat,
    bit_file_name,
    packed_info_path,
    write_bits,
    write_csv,
    write_manifest,
)
from ..config import config_to_dict
from ..engine import run
from ..errors import UsageError
from .base import CommandResult, arg, command
from .common import CONFIG_ARGUMENTS, OUT_DIR_ARGUMENT, SAMPLES_ARGUMENT, check_samples, resolve_config, resolve_out_dir

logger = logging.getLogger("progrand.commands.generate")

FORMATS: dict[str, tuple[BitFormat, ...]] = {
    "packed": ("packed",),
    "ascii": ("ascii",),
    "both": ("packed", "ascii"),
}


@command(
    name="generate",
    description="Generate N bits per stream; write bit files, threshold trace and manifest.",
    arguments=(
        *CONFIG_ARGUMENTS,
        SAMPLES_ARGUMENT,
        arg("--format", "-f", dest="format", choices=sorted(FORMATS), default="packed", help="Bit file format"),
        OUT_DIR_ARGUMENT,
    ),
)
def generate(
    samples: int = 10_000,
    format: Literal["packed", "ascii", "both"] = "packed",
    config: str | None = None,
    config_data: dict[str, Any] | None = None,
    seed: str | None = None,
    threshold: int | None = None,
    out_dir: str | None = None,
) -> CommandResult:
    check_samples(samples)
    if format not in FORMATS:
        raise UsageError(f"unknown format {format!r}; expected one of {sorted(FORMATS)}")
    resolved = resolve_config(config, config_data, seed, threshold)
    directory = resolve_out_dir(out_dir)

    output = run(resolved, samples)

    outputs: list[Path] = []
    for fmt in FORMATS[format]:
        for index, stream_id in enumerate(resolved.stream_ids):
            path = write_bits(output.stream(index), directory / bit_file_name(stream_id, fmt), fmt)
            outputs.append(path)
            if fmt == "packed":
                outputs.append(packed_info_path(path))
    trace = pd.DataFrame({"step": range(output.n), "threshold": output.thresholds})
    outputs.append(write_csv(trace, directory / "thresholds.csv"))

    manifest = write_manifest(
        directory,
        "generate",
        {"samples": samples, "format": format},
        outputs,
        config=config_to_dict(resolved),
        samples=samples,
    )
    logger.info(f"Generated {samples} samples x {len(resolved.streams)} streams into {directory}")

    data = {
        "samples": samples,
        "streams": list(resolved.stream_ids),
        "ones": [int(row.sum()) for row in output.bits],
        "outputs": [p.name for p in outputs],
    }
    text = "\n".join(f"{p}" for p in outputs)
    return CommandResult(text=text, data=data, outputs=tuple(outputs), manifest=manifest)


COMMAND = generate
