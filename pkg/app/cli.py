"""Command-line entry point: ``python -m app.cli <command> ...``."""

from __future__ import annotations

import argparse
import logging
import sys
from typing import Optional, Sequence

from app.core.errors import InvalidComplexError, ToolkitError
from app.core.settings import get_settings
from app.plugins.registry import command_registry, discover_plugins

logger = logging.getLogger("app.cli")

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_USAGE = 2


def build_parser() -> argparse.ArgumentParser:
    # ── Plugin auto-discovery (populates the registries) ─────────
    discover_plugins()

    parser = argparse.ArgumentParser(
        prog="surfcx",
        description=(
            "Ideal triangulations and cubulations of 3-manifolds, their dual "
            "filling Dehn surfaces, complexity bounds and the 2D loop case."
        ),
    )
    parser.add_argument("--json", action="store_true", help="machine-readable output")
    parser.add_argument("-v", "--verbose", action="count", default=0, help="-v info, -vv debug")
    parser.add_argument("--workers", type=int, default=None, help="parallel workers (overrides SURFCX_WORKERS)")
    commands = parser.add_subparsers(dest="command", required=True)
    for key in command_registry.available_types:
        command = command_registry.get(key)
        sub = commands.add_parser(key.lower(), help=command.help)
        command.configure(sub)
    return parser


def _configure_logging(verbosity: int) -> None:
    level = get_settings().log_level
    if verbosity == 1:
        level = "INFO"
    elif verbosity >= 2:
        level = "DEBUG"
    logging.basicConfig(
        level=level,
        format="%(asctime)s | %(levelname)-8s | %(name)s | %(message)s",
        stream=sys.stderr,
        force=True,
    )


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    _configure_logging(args.verbose)

    command = command_registry.get(args.command)
    try:
        return command.run(args)
    except InvalidComplexError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (ToolkitError, ValueError, KeyError, OSError) as exc:
        message = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"error: {message}", file=sys.stderr)
        logger.debug("Command %s failed", args.command, exc_info=True)
        return EXIT_USAGE
    except Exception:
        logger.exception("Unexpected error in %s", args.command)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
