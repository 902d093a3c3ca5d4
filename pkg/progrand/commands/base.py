"""
Base types for the subcommand system.

Each subcommand is a self-contained module exporting a `COMMAND` object that
bundles its argument schema (for the argparse front end) with its
implementation (for execution and manifest replay).

Commands take keyword arguments only and return a CommandResult; they raise
PrograndError subclasses on bad input.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable


@dataclass(frozen=True)
class ArgumentSpec:
    """One argparse argument: flags plus add_argument keyword options."""

    flags: tuple[str, ...]
    options: dict[str, Any] = field(default_factory=lambda: {})

    @property
    def dest(self) -> str:
        if "dest" in self.options:
            return str(self.options["dest"])
        longest = max(self.flags, key=len)
        return longest.lstrip("-").replace("-", "_")


def arg(*flags: str, **options: Any) -> ArgumentSpec:
    return ArgumentSpec(flags=flags, options=options)


@dataclass(frozen=True)
class CommandSpec:
    """Immutable command schema."""

    name: str
    description: str
    arguments: tuple[ArgumentSpec, ...]


@dataclass(frozen=True)
class CommandResult:
    """What a command reports: printable text, JSON payload, files written."""

    text: str
    data: dict[str, Any]
    outputs: tuple[Path, ...] = ()
    manifest: Path | None = None


CommandFunction = Callable[..., CommandResult]


@dataclass(frozen=True)
class Command:
    """Complete command: schema + implementation."""

    spec: CommandSpec
    execute: CommandFunction

    @property
    def name(self) -> str:
        return self.spec.name

    @property
    def description(self) -> str:
        return self.spec.description


def command(
    name: str,
    description: str,
    arguments: tuple[ArgumentSpec, ...] = (),
) -> Callable[[CommandFunction], Command]:
    """
    Decorator to create a Command from a function.

    Usage:
        @command(
            name="capacity",
            description="Count available streams",
            arguments=(arg("n", type=int), ...),
        )
        def capacity(n: int, ...) -> CommandResult:
            ...

        COMMAND = capacity
    """

    def decorator(fn: CommandFunction) -> Command:
        return Command(spec=CommandSpec(name=name, description=description, arguments=arguments), execute=fn)

    return decorator
