"""
Command registry: discovers, loads, and executes subcommands.

Commands live in dedicated modules (one per subcommand) and are imported on
first use.
"""

from __future__ import annotations

import importlib
import logging
from typing import Any

from ..errors import PrograndError, UsageError
from .base import Command, CommandResult, CommandSpec

logger = logging.getLogger("progrand.commands")

# Subcommand name -> module under progrand.commands
COMMAND_MODULES: dict[str, str] = {
    "check-poly": "check_poly",
    "generate": "generate",
    "sweep": "sweep",
    "dynamic": "dynamic",
    "correlate": "correlate",
    "capacity": "capacity",
    "quality": "quality",
    "replay": "replay",
}


class CommandRegistry:
    """
    Central registry for subcommands.

    Provides:
    - Lazy registration
    - Lookup by name
    - Execution with keyword arguments
    """

    def __init__(self) -> None:
        self._commands: dict[str, Command] = {}
        self._lazy_loaders: dict[str, tuple[str, str]] = {}  # name -> (module_path, attr)

    def register_lazy(self, name: str, module_path: str, attr: str = "COMMAND") -> None:
        """Register a loader; the module is imported on first use."""
        self._lazy_loaders[name] = (module_path, attr)

    def _load_lazy(self, name: str) -> Command | None:
        if name not in self._lazy_loaders:
            return None

        module_path, attr = self._lazy_loaders[name]
        module = importlib.import_module(module_path)
        cmd = getattr(module, attr)
        if not isinstance(cmd, Command):
            logger.error(f"Command {name} at {module_path}.{attr} is not a Command instance")
            return None
        self._commands[name] = cmd
        del self._lazy_loaders[name]
        logger.debug(f"Lazy-loaded command: {name}")
        return cmd

    def get(self, name: str) -> Command | None:
        if name in self._commands:
            return self._commands[name]
        return self._load_lazy(name)

    def get_spec(self, name: str) -> CommandSpec | None:
        cmd = self.get(name)
        return cmd.spec if cmd else None

    def execute(self, name: str, arguments: dict[str, Any]) -> CommandResult:
        """
        Run a command by name.

        Raises:
            UsageError: unknown command
            PrograndError: whatever the command raises for bad input
        """
        cmd = self.get(name)
        if cmd is None:
            raise UsageError(f"unknown command: {name}")
        try:
            return cmd.execute(**arguments)
        except PrograndError:
            raise
        except Exception:
            logger.exception(f"Command {name} failed")
            raise

    @property
    def available_commands(self) -> list[str]:
        """All registered names (including lazy), in registration order."""
        names = list(self._commands)
        names.extend(n for n in self._lazy_loaders if n not in self._commands)
        return names


# --- Global Registry Instance ---

_registry: CommandRegistry | None = None


def get_registry() -> CommandRegistry:
    """Get or create the global command registry."""
    global _registry
    if _registry is None:
        _registry = CommandRegistry()
        for name, module in COMMAND_MODULES.items():
            _registry.register_lazy(name, f"progrand.commands.{module}")
        logger.debug(f"Registry populated with {len(_registry.available_commands)} commands (lazy)")
    return _registry
