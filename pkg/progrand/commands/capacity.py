"""
capacity: number of mutually non-shift-equivalent m-bit streams.
"""

from __future__ import annotations

from ..artifacts import write_json, write_manifest
from ..taps import capacity as tap_capacity
from .base import CommandResult, arg, command
from .common import OUT_DIR_ARGUMENT, resolve_out_dir


@command(
    name="capacity",
    description="Print floor(C(n-1, k-1) / m): streams available with k taps per XOR.",
    arguments=(
        arg("n", type=int, help="LFSR degree"),
        arg("k", type=int, help="Taps per XOR"),
        arg("m", type=int, help="Bits per sample"),
        OUT_DIR_ARGUMENT,
    ),
)
def capacity(n: int, k: int, m: int, out_dir: str | None = None) -> CommandResult:
    value = tap_capacity(n, k, m)
    data = {"n": n, "k": k, "m": m, "capacity": value}

    directory = resolve_out_dir(out_dir)
    outputs = [write_json(data, directory / "capacity.json")]
    manifest = write_manifest(directory, "capacity", {"n": n, "k": k, "m": m}, outputs)
    return CommandResult(text=str(value), data=data, outputs=tuple(outputs), manifest=manifest)


COMMAND = capacity
