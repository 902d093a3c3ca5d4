"""
Commands package: one module per progrand subcommand.

Architecture:
- Each subcommand is a module exporting a COMMAND constant (base.Command instance)
- The registry imports modules lazily by name
- cli.py builds argparse from the registered specs; replay re-executes them

Public API:
- Command, CommandSpec, CommandResult: Core types
- command, arg: Decorator and argument helper
- get_registry: Access the global command registry
- CommandRegistry: Registry class for custom registries
"""

from .base import ArgumentSpec, Command, CommandFunction, CommandResult, CommandSpec, arg, command
from .registry import CommandRegistry, get_registry

__all__ = [
    "ArgumentSpec",
    "Command",
    "CommandSpec",
    "CommandResult",
    "CommandFunction",
    "arg",
    "command",
    "CommandRegistry",
    "get_registry",
]
