"""
sweep: empirical P(1) against the exact theoretical value for a list of
fixed thresholds.

One pass of comparator inputs A is generated and compared against every
threshold, so each row sees the same LFSR samples.
"""

from __future__ import annotations

import logging
from typing import Any

import pandas as pd

from ..artifacts import write_csv, write_manifest
from ..config import config_to_dict
from ..engine import compare, empirical_p1, p1_confidence_interval, sample_values, theoretical_p1
from ..errors import UsageError
from ..threshold import Fixed, check_threshold
from .base import CommandResult, arg, command
from .common import (
    CONFIG_ARGUMENTS,
    OUT_DIR_ARGUMENT,
    SAMPLES_ARGUMENT,
    check_samples,
    int_list,
    resolve_config,
    resolve_out_dir,
)

logger = logging.getLogger("progrand.commands.sweep")

CONFIDENCE = 0.997


@command(
    name="sweep",
    description="Measure P(1) for each fixed threshold and compare with ((2^m-1)-B)/2^m.",
    arguments=(
        *CONFIG_ARGUMENTS,
        arg("--thresholds", "-t", type=int_list, required=True, help="Comma-separated thresholds, e.g. 27,127,227"),
        SAMPLES_ARGUMENT,
        OUT_DIR_ARGUMENT,
    ),
)
def sweep(
    thresholds: list[int],
    samples: int = 10_000,
    config: str | None = None,
    config_data: dict[str, Any] | None = None,
    seed: str | None = None,
    threshold: int | None = None,
    out_dir: str | None = None,
) -> CommandResult:
    if not thresholds:
        raise UsageError("--thresholds needs at least one value")
    check_samples(samples)
    resolved = resolve_config(config, config_data, seed, threshold)
    if not isinstance(resolved.schedule, Fixed):
        raise UsageError(f"sweep needs a fixed-threshold base config, got {resolved.schedule.kind}")
    for b in thresholds:
        check_threshold(b, resolved.m)
    directory = resolve_out_dir(out_dir)

    values = sample_values(resolved, samples)
    rows: list[dict[str, Any]] = []
    for b in thresholds:
        bits = compare(values, b)
        low, high = p1_confidence_interval(bits, CONFIDENCE)
        rows.append(
            {
                "threshold": b,
                "empirical_p1": empirical_p1(bits),
                "theoretical_p1": float(theoretical_p1(b, resolved.m)),
                "ci_low": low,
                "ci_high": high,
            }
        )
        logger.debug(f"threshold {b}: empirical {rows[-1]['empirical_p1']:.6f}")

    frame = pd.DataFrame(rows, columns=["threshold", "empirical_p1", "theoretical_p1", "ci_low", "ci_high"])
    outputs = [write_csv(frame, directory / "sweep.csv")]
    manifest = write_manifest(
        directory,
        "sweep",
        {"thresholds": list(thresholds), "samples": samples},
        outputs,
        config=config_to_dict(resolved),
        samples=samples,
    )

    text = "\n".join(
        f"B={r['threshold']:>4}  empirical={r['empirical_p1']:.6f}  theoretical={r['theoretical_p1']:.6f}"
        for r in rows
    )
    return CommandResult(text=text, data={"rows": rows}, outputs=tuple(outputs), manifest=manifest)


COMMAND = sweep
