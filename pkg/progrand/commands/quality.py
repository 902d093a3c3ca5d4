"""
quality: worst-case cross- and auto-correlation of the configured streams as
the fixed threshold varies.
"""

from __future__ import annotations

import itertools
import logging
from typing import Any, Literal

import numpy as np
import pandas as pd

from ..artifacts import write_csv, write_json, write_manifest
from ..config import config_to_dict
from ..engine import compare, sample_values
from ..errors import UsageError
from ..stats import correlation_report, default_max_lag
from ..threshold import check_threshold
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

logger = logging.getLogger("progrand.commands.quality")


def _worst(values: list[float]) -> float | None:
    return max(values) if values else None


@command(
    name="quality",
    description="Per threshold: max |cross-correlation| over stream pairs, max non-zero-lag |auto-correlation|.",
    arguments=(
        *CONFIG_ARGUMENTS,
        arg("--thresholds", "-t", type=int_list, required=True, help="Comma-separated thresholds"),
        SAMPLES_ARGUMENT,
        arg("--max-lag", type=int, help="Largest |f| scanned (default: min(1000, N/10))"),
        arg("--method", choices=["direct", "fft"], default="direct", help="Per-lag dot products or FFT"),
        OUT_DIR_ARGUMENT,
    ),
)
def quality(
    thresholds: list[int],
    samples: int = 10_000,
    max_lag: int | None = None,
    method: Literal["direct", "fft"] = "direct",
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
    for b in thresholds:
        check_threshold(b, resolved.m)
    lag_limit = default_max_lag(samples) if max_lag is None else max_lag
    directory = resolve_out_dir(out_dir)

    ids = resolved.stream_ids
    values = sample_values(resolved, samples)
    rows: list[dict[str, Any]] = []
    detail: list[dict[str, Any]] = []

    for b in thresholds:
        bits = compare(values, b)
        constant = [ids[i] for i in range(len(ids)) if np.all(bits[i] == bits[i, 0])]
        if constant:
            # R is undefined for a constant stream; the row stays empty
            logger.warning(f"threshold {b}: constant streams {constant}; skipping correlation")
            rows.append({"threshold": b, "max_abs_cross": None, "max_abs_auto": None})
            detail.append({"threshold": b, "constant_streams": constant, "cross": [], "auto": []})
            continue

        cross: list[dict[str, Any]] = []
        for i, j in itertools.combinations(range(len(ids)), 2):
            r = correlation_report(bits[i], bits[j], lag_limit, False, method)
            cross.append({"a": ids[i], "b": ids[j], "lag": r.max_abs_lag, "value": r.max_abs_value})
        auto: list[dict[str, Any]] = []
        for i in range(len(ids)):
            row = bits[i]
            r = correlation_report(row, row, lag_limit, True, method)
            auto.append({"stream": ids[i], "lag": r.max_abs_lag, "value": r.max_abs_value})

        rows.append(
            {
                "threshold": b,
                "max_abs_cross": _worst([abs(c["value"]) for c in cross]),
                "max_abs_auto": _worst([abs(a["value"]) for a in auto]),
            }
        )
        detail.append({"threshold": b, "constant_streams": [], "cross": cross, "auto": auto})
        logger.debug(f"threshold {b}: {rows[-1]}")

    frame = pd.DataFrame(rows, columns=["threshold", "max_abs_cross", "max_abs_auto"])
    report: dict[str, Any] = {
        "samples": samples,
        "max_lag": lag_limit,
        "method": method,
        "streams": list(ids),
        "thresholds": detail,
    }
    outputs = [
        write_csv(frame, directory / "quality.csv"),
        write_json(report, directory / "quality.json"),
    ]
    manifest = write_manifest(
        directory,
        "quality",
        {"thresholds": list(thresholds), "samples": samples, "max_lag": max_lag, "method": method},
        outputs,
        config=config_to_dict(resolved),
        samples=samples,
    )

    def fmt(v: float | None) -> str:
        return "n/a" if v is None else f"{v:.6f}"

    text = "\n".join(
        f"B={r['threshold']:>4}  max|cross|={fmt(r['max_abs_cross'])}  max|auto|={fmt(r['max_abs_auto'])}"
        for r in rows
    )
    return CommandResult(text=text, data={"rows": rows, **report}, outputs=tuple(outputs), manifest=manifest)


COMMAND = quality
