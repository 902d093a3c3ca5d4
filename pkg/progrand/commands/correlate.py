"""
correlate: pairwise maximum |cross-correlation| and per-file maximum
non-zero-lag |auto-correlation| of bit files.
"""

from __future__ import annotations

import itertools
import logging
from pathlib import Path
from typing import Any, Literal

import numpy as np
import numpy.typing as npt
import pandas as pd

from ..artifacts import read_bits, write_csv, write_json, write_manifest
from ..errors import UsageError, ZeroVariance
from ..stats import CorrelationReport, correlation_report, default_max_lag
from .base import CommandResult, arg, command
from .common import OUT_DIR_ARGUMENT, resolve_out_dir

logger = logging.getLogger("progrand.commands.correlate")


def _check_variance(bits: npt.NDArray[np.uint8], path: str) -> None:
    if bits.size and np.all(bits == bits[0]):
        raise ZeroVariance(f"{path}: every bit is {int(bits[0])}; correlation is undefined")


def _row(kind: str, a: str, b: str, report: CorrelationReport) -> dict[str, Any]:
    return {
        "kind": kind,
        "a": a,
        "b": b,
        "max_abs_lag": report.max_abs_lag,
        "max_abs_value": report.max_abs_value,
    }


@command(
    name="correlate",
    description="Max |R| cross-correlation for every file pair and non-zero-lag auto-correlation per file.",
    arguments=(
        arg("files", nargs="+", help="Bit files (.bin packed, otherwise ASCII)"),
        arg("--max-lag", type=int, help="Largest |f| scanned (default: min(1000, N/10))"),
        arg("--samples", "-N", type=int, help="Use the first N bits of each file (trims packed padding)"),
        arg("--method", choices=["direct", "fft"], default="direct", help="Per-lag dot products or FFT"),
        OUT_DIR_ARGUMENT,
    ),
)
def correlate(
    files: list[str],
    max_lag: int | None = None,
    samples: int | None = None,
    method: Literal["direct", "fft"] = "direct",
    out_dir: str | None = None,
) -> CommandResult:
    if not files:
        raise UsageError("correlate needs at least one bit file")
    # recorded absolute in the manifest
    sources = [Path(f).resolve() for f in files]
    sequences = [read_bits(p, samples) for p in sources]
    lengths = {s.size for s in sequences}
    if len(lengths) != 1:
        detail = ", ".join(f"{f}={s.size}" for f, s in zip(files, sequences))
        raise UsageError(f"bit files differ in length: {detail}")
    for f, s in zip(files, sequences):
        _check_variance(s, f)

    n = sequences[0].size
    lag_limit = default_max_lag(n) if max_lag is None else max_lag
    names = [Path(f).name for f in files]

    cross: list[dict[str, Any]] = []
    auto: list[dict[str, Any]] = []
    lag_rows: list[pd.DataFrame] = []

    for i, j in itertools.combinations(range(len(files)), 2):
        report = correlation_report(sequences[i], sequences[j], lag_limit, False, method)
        cross.append({**_row("cross", names[i], names[j], report), **report.to_dict()})
        lag_rows.append(report.to_frame().assign(kind="cross", a=names[i], b=names[j]))
        logger.debug(f"cross {names[i]} x {names[j]}: {report.max_abs_value:+.6f} at {report.max_abs_lag}")

    for i, s in enumerate(sequences):
        report = correlation_report(s, s, lag_limit, True, method)
        auto.append({**_row("auto", names[i], names[i], report), **report.to_dict()})
        lag_rows.append(report.to_frame().assign(kind="auto", a=names[i], b=names[i]))

    summary = pd.DataFrame(
        [{k: r[k] for k in ("kind", "a", "b", "max_abs_lag", "max_abs_value")} for r in cross + auto]
    )
    lags = pd.concat(lag_rows, ignore_index=True)[["kind", "a", "b", "lag", "value"]]
    report_json: dict[str, Any] = {
        "files": names,
        "samples": n,
        "max_lag": lag_limit,
        "method": method,
        "cross": cross,
        "auto": auto,
    }

    directory = resolve_out_dir(out_dir)
    outputs = [
        write_json(report_json, directory / "correlate.json"),
        write_csv(summary, directory / "correlate.csv"),
        write_csv(lags, directory / "correlate_lags.csv"),
    ]
    manifest = write_manifest(
        directory,
        "correlate",
        {"files": [str(p) for p in sources], "max_lag": max_lag, "samples": samples, "method": method},
        outputs,
        samples=n,
        inputs=sources,
    )

    text = "\n".join(
        f"{r['kind']:<5} {r['a']} {r['b']}: max |R| = {abs(r['max_abs_value']):.6f} at f = {r['max_abs_lag']}"
        for r in cross + auto
    )
    return CommandResult(text=text, data=report_json, outputs=tuple(outputs), manifest=manifest)


COMMAND = correlate
