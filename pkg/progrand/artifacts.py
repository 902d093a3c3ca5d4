"""
Output files: bitstreams, CSV tables, JSON reports and run manifests.

Formats:
    packed  <stream>.bin   8 bits per byte, first bit in the MSB, zero-padded;
                           <stream>.bin.json holds the sample count
    ascii   <stream>.txt   '0'/'1' characters, 64 per line
    csv     headers, '.' decimal point, '\\n' line endings
    json    2-space indent, fields in a fixed order

Every file is written to a temporary sibling and renamed into place, so
concurrent runs in one directory never see partial files.
"""

from __future__ import annotations

import hashlib
import json
import logging
import os
import tempfile
from pathlib import Path
from typing import Any, Literal

import numpy as np
import numpy.typing as npt
import pandas as pd
from pydantic import BaseModel, Field

from .errors import UsageError

logger = logging.getLogger("progrand.artifacts")

BitFormat = Literal["packed", "ascii"]

ASCII_LINE_WIDTH = 64
MANIFEST_VERSION = 1


# --- Atomic Writes ---


def atomic_write_bytes(path: Path, data: bytes) -> Path:
    """Write via temp file + rename in the target directory."""
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp_name = tempfile.mkstemp(prefix=f".{path.name}.", suffix=".tmp", dir=path.parent)
    try:
        with os.fdopen(fd, "wb") as f:
            f.write(data)
        os.replace(tmp_name, path)
    except BaseException:
        Path(tmp_name).unlink(missing_ok=True)
        raise
    logger.debug(f"Wrote {path} ({len(data)} bytes)")
    return path


def atomic_write_text(path: Path, text: str) -> Path:
    return atomic_write_bytes(path, text.encode("utf-8"))


def write_csv(frame: pd.DataFrame, path: Path) -> Path:
    return atomic_write_text(path, frame.to_csv(index=False, lineterminator="\n"))


def write_json(data: Any, path: Path) -> Path:
    return atomic_write_text(path, json.dumps(data, indent=2) + "\n")


# --- Bitstreams ---


class PackedBitsInfo(BaseModel):
    """Sidecar of a packed bit file: the byte count alone cannot tell padding from samples."""

    samples: int = Field(..., ge=0, description="Bits stored, excluding the zero padding")


def encode_bits(bits: npt.NDArray[np.uint8], fmt: BitFormat) -> bytes:
    if fmt == "packed":
        return np.packbits(bits.astype(np.uint8)).tobytes()
    chars = np.where(bits != 0, ord("1"), ord("0")).astype(np.uint8).tobytes().decode("ascii")
    lines = [chars[i : i + ASCII_LINE_WIDTH] for i in range(0, len(chars), ASCII_LINE_WIDTH)]
    return ("\n".join(lines) + "\n").encode("ascii")


def bit_file_name(stream_id: str, fmt: BitFormat) -> str:
    return f"{stream_id}.bin" if fmt == "packed" else f"{stream_id}.txt"


def packed_info_path(path: Path) -> Path:
    return path.with_name(path.name + ".json")


def write_bits(bits: npt.NDArray[np.uint8], path: Path, fmt: BitFormat) -> Path:
    """Write a bit file; packed files also get a `<name>.json` sample-count sidecar."""
    if fmt == "packed":
        info = PackedBitsInfo(samples=int(bits.size))
        atomic_write_text(packed_info_path(path), info.model_dump_json(indent=2) + "\n")
    return atomic_write_bytes(path, encode_bits(bits, fmt))


def _packed_count(path: Path, size: int) -> int | None:
    info_path = packed_info_path(path)
    if not info_path.exists():
        return None
    try:
        count = PackedBitsInfo.model_validate_json(info_path.read_text()).samples
    except (OSError, ValueError) as e:
        raise UsageError(f"cannot load sample count {info_path}: {e}") from e
    if (count + 7) // 8 != size:
        raise UsageError(f"{path}: {size} bytes cannot hold the {count} samples named in {info_path.name}")
    return count


def read_bits(path: str | Path, samples: int | None = None) -> npt.NDArray[np.uint8]:
    """
    Read a bit file; `.bin` is packed, anything else is ASCII.

    Packed files are trimmed to the count in their sidecar. Without one,
    `samples` must say how many bits are real.
    """
    path = Path(path)
    try:
        raw = path.read_bytes()
    except OSError as e:
        raise UsageError(f"cannot read bit file {path}: {e}") from e

    if path.suffix == ".bin":
        bits = np.unpackbits(np.frombuffer(raw, dtype=np.uint8))
        count = _packed_count(path, len(raw))
        if count is None and samples is None:
            raise UsageError(
                f"{path}: sample count unknown (no {packed_info_path(path).name}); pass the sample count explicitly"
            )
        if count is not None:
            bits = bits[:count]
    else:
        text = "".join(raw.decode("ascii", errors="replace").split())
        if any(c not in "01" for c in text):
            raise UsageError(f"{path}: ASCII bit file may only hold '0' and '1'")
        bits = (np.frombuffer(text.encode("ascii"), dtype=np.uint8) - ord("0")).astype(np.uint8)

    if samples is not None:
        if samples > bits.size:
            raise UsageError(f"{path}: holds {bits.size} bits, {samples} requested")
        bits = bits[:samples]
    return bits


def sha256_file(path: Path) -> str:
    return hashlib.sha256(path.read_bytes()).hexdigest()


# --- Run Manifests ---


class FileRecord(BaseModel):
    """One file produced or consumed by a run."""

    path: str = Field(..., description="Relative to the output directory for outputs")
    sha256: str
    size: int


def _empty_records() -> list[FileRecord]:
    return []


class RunManifest(BaseModel):
    """Everything needed to reproduce a run's outputs bit-exactly."""

    version: int = MANIFEST_VERSION
    command: str
    arguments: dict[str, Any]
    config: dict[str, Any] | None = None
    samples: int | None = None
    inputs: list[FileRecord] = Field(default_factory=_empty_records)
    outputs: list[FileRecord] = Field(default_factory=_empty_records)


def manifest_name(command: str) -> str:
    return f"{command.replace('-', '_')}.manifest.json"


def record_file(path: Path, relative_to: Path | None = None) -> FileRecord:
    shown = path.relative_to(relative_to) if relative_to is not None else path
    return FileRecord(path=shown.as_posix(), sha256=sha256_file(path), size=path.stat().st_size)


def write_manifest(
    out_dir: Path,
    command: str,
    arguments: dict[str, Any],
    outputs: list[Path],
    config: dict[str, Any] | None = None,
    samples: int | None = None,
    inputs: list[Path] | None = None,
) -> Path:
    """Write `<command>.manifest.json` into out_dir; output paths are stored relative to it."""
    manifest = RunManifest(
        command=command,
        arguments=arguments,
        config=config,
        samples=samples,
        inputs=[record_file(p) for p in inputs or []],
        outputs=[record_file(p, out_dir) for p in outputs],
    )
    path = out_dir / manifest_name(command)
    atomic_write_text(path, manifest.model_dump_json(indent=2) + "\n")
    logger.info(f"Wrote manifest {path} ({len(outputs)} outputs)")
    return path


def load_manifest(path: str | Path) -> RunManifest:
    path = Path(path)
    try:
        return RunManifest.model_validate_json(path.read_text())
    except (OSError, ValueError) as e:
        raise UsageError(f"cannot load manifest {path}: {e}") from e
