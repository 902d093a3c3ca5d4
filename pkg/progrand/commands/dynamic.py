"""
dynamic: cumulative count of 1's under a ramping threshold, with a quadratic
fit over the ramp phase and its derivative.
"""

from __future__ import annotations

import dataclasses
import logging
from typing import Any

import numpy as np
import pandas as pd

from ..artifacts import write_csv, write_json, write_manifest
from ..config import config_to_dict
from ..engine import run
from ..errors import UsageError
from ..stats import fit_derivative, ramp_phase_fit
from ..threshold import CounterRamp, Fixed
from .base import CommandResult, arg, command
from .common import (
    CONFIG_ARGUMENTS,
    OUT_DIR_ARGUMENT,
    SAMPLES_ARGUMENT,
    check_samples,
    resolve_config,
    resolve_out_dir,
)

logger = logging.getLogger("progrand.commands.dynamic")


@command(
    name="dynamic",
    description="Cumulative count of 1's under a CounterRamp/Custom schedule plus ramp-phase quadratic fit.",
    arguments=(
        *CONFIG_ARGUMENTS,
        arg("--ramp-from", type=int, help="Replace the schedule with CounterRamp{initial}"),
        arg("--stream", type=int, default=0, help="Index of the stream to analyse"),
        SAMPLES_ARGUMENT,
        OUT_DIR_ARGUMENT,
    ),
)
def dynamic(
    samples: int = 10_000,
    stream: int = 0,
    ramp_from: int | None = None,
    config: str | None = None,
    config_data: dict[str, Any] | None = None,
    seed: str | None = None,
    threshold: int | None = None,
    out_dir: str | None = None,
) -> CommandResult:
    check_samples(samples)
    resolved = resolve_config(config, config_data, seed, threshold)
    if ramp_from is not None:
        resolved = dataclasses.replace(resolved, schedule=CounterRamp(ramp_from))
    if isinstance(resolved.schedule, Fixed):
        raise UsageError("dynamic needs a counter_ramp or custom schedule (try --ramp-from 0)")
    if not 0 <= stream < len(resolved.streams):
        raise UsageError(f"--stream {stream} out of range; config has {len(resolved.streams)} streams")
    directory = resolve_out_dir(out_dir)

    output = run(resolved, samples)
    bits = output.stream(stream)
    ramp = ramp_phase_fit(bits, output.thresholds, resolved.m)
    slope, intercept = fit_derivative(ramp.fit)
    ones_after = (
        int(np.count_nonzero(bits[ramp.saturation_step + 1 :])) if ramp.saturation_step is not None else None
    )

    curve = pd.DataFrame(
        {
            "step": np.arange(output.n),
            "t": ramp.curve.t,
            "cumulative_count": ramp.curve.values,
            "threshold": output.thresholds,
        }
    )
    report: dict[str, Any] = {
        "stream": resolved.stream_ids[stream],
        "samples": samples,
        "fit": ramp.fit.to_dict(),
        "derivative": {"slope": slope, "intercept": intercept},
        "window_end": ramp.window_end,
        "saturation_step": ramp.saturation_step,
        "ones_after_saturation": ones_after,
    }
    outputs = [
        write_csv(curve, directory / "dynamic_curve.csv"),
        write_json(report, directory / "dynamic_fit.json"),
    ]
    manifest = write_manifest(
        directory,
        "dynamic",
        {"samples": samples, "stream": stream},
        outputs,
        config=config_to_dict(resolved),
        samples=samples,
    )
    logger.info(
        f"Ramp fit on {report['stream']}: c2={ramp.fit.c2:.4f} c1={ramp.fit.c1:.4f} r2={ramp.fit.r_squared:.5f}"
    )

    text = (
        f"fit: {ramp.fit.c2:+.4f} t^2 {ramp.fit.c1:+.4f} t {ramp.fit.c0:+.4f}  (r^2 {ramp.fit.r_squared:.5f})\n"
        f"derivative: {slope:+.4f} t {intercept:+.4f}\n"
        f"window: steps 0..{ramp.window_end}"
    )
    return CommandResult(text=text, data=report, outputs=tuple(outputs), manifest=manifest)


COMMAND = dynamic
