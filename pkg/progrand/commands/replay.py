"""
replay: re-run the command recorded in a manifest and check that every
output is byte-identical.
"""

from __future__ import annotations

import logging
from pathlib import Path
from typing import Any

from ..artifacts import load_manifest, sha256_file, write_manifest
from ..errors import ReplayMismatch, UsageError
from .base import CommandResult, arg, command
from .common import OUT_DIR_ARGUMENT, resolve_out_dir
from .registry import get_registry

logger = logging.getLogger("progrand.commands.replay")


@command(
    name="replay",
    description="Re-run a recorded command from its manifest and verify byte-identical outputs.",
    arguments=(
        arg("manifest", help="Path to a <command>.manifest.json"),
        OUT_DIR_ARGUMENT,
    ),
)
def replay(manifest: str, out_dir: str | None = None) -> CommandResult:
    recorded = load_manifest(manifest)
    if recorded.command == "replay":
        raise UsageError("a replay manifest cannot itself be replayed")
    directory = resolve_out_dir(out_dir)

    for record in recorded.inputs:
        source = Path(record.path)
        if not source.exists():
            raise UsageError(f"input {record.path} named in {manifest} no longer exists")
        if sha256_file(source) != record.sha256:
            raise ReplayMismatch(f"input {record.path} changed since {recorded.command} ran")

    arguments: dict[str, Any] = dict(recorded.arguments)
    if recorded.config is not None:
        arguments["config_data"] = recorded.config
    arguments["out_dir"] = str(directory)
    logger.info(f"Replaying {recorded.command} into {directory}")
    get_registry().execute(recorded.command, arguments)

    mismatched: list[str] = []
    for record in recorded.outputs:
        path = directory / record.path
        if not path.exists() or sha256_file(path) != record.sha256:
            mismatched.append(record.path)
    if mismatched:
        raise ReplayMismatch(f"replay of {recorded.command} differs in: {', '.join(mismatched)}")

    outputs = [directory / r.path for r in recorded.outputs]
    written = write_manifest(
        directory,
        "replay",
        {"manifest": manifest},
        outputs,
        inputs=[Path(manifest).resolve()],
    )
    data = {"command": recorded.command, "verified": [r.path for r in recorded.outputs]}
    text = f"replayed {recorded.command}: {len(outputs)} outputs byte-identical"
    return CommandResult(text=text, data=data, outputs=tuple(outputs), manifest=written)


COMMAND = replay
