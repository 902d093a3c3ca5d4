"""
Command-line front end.

The argparse tree is built from the command registry: every subcommand
module contributes its own argument specs, so adding a command never touches
this file.

Exit status:
    0  success
    1  domain error (invalid polynomial, shift-equivalent taps, NoOnes, ...)
    2  usage error (bad flags, empty threshold list, unknown subcommand)
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from typing import Any, Sequence

from .commands import CommandResult, get_registry
from .errors import PrograndError, UsageError

logger = logging.getLogger("progrand.cli")

GLOBAL_DESTS = frozenset({"command", "verbose", "json"})


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="progrand",
        description="Programmable-statistics LFSR bitstream generator and evaluation harness.",
    )
    parser.add_argument("--verbose", "-v", action="store_true", help="Debug logging on stderr")
    parser.add_argument("--json", action="store_true", help="Print the command result as JSON")
    subparsers = parser.add_subparsers(dest="command", metavar="COMMAND", required=True)

    registry = get_registry()
    for name in registry.available_commands:
        spec = registry.get_spec(name)
        if spec is None:
            continue
        sub = subparsers.add_parser(spec.name, help=spec.description, description=spec.description)
        for argument in spec.arguments:
            sub.add_argument(*argument.flags, **argument.options)
    return parser


def configure_logging(verbose: bool) -> None:
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.INFO,
        format="%(asctime)s [%(levelname)s] %(name)s: %(message)s",
        datefmt="%H:%M:%S",
        stream=sys.stderr,
        force=True,
    )


def _print_result(result: CommandResult, as_json: bool) -> None:
    if as_json:
        print(json.dumps(result.data, indent=2, default=str))
    elif result.text:
        print(result.text)


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        # argparse exits 2 on bad usage and 0 for --help
        return e.code if isinstance(e.code, int) else 2

    configure_logging(args.verbose)
    namespace: dict[str, Any] = vars(args)
    arguments = {k: v for k, v in namespace.items() if k not in GLOBAL_DESTS}

    try:
        result = get_registry().execute(args.command, arguments)
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except PrograndError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1

    _print_result(result, args.json)
    if result.manifest is not None:
        logger.info(f"Manifest: {result.manifest}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
