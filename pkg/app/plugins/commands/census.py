"""``census``: enumerate ideal cubulations with one or two cubes."""

from __future__ import annotations

import argparse

from app.core.census import CENSUS_FILTERS, census_report, enumerate_cubulations, write_census
from app.plugins.commands._output import emit
from app.plugins.registry import Command, command_registry


@command_registry.register("CENSUS")
class CensusCommand(Command):
    help = "list ideal cubulations with k cubes up to isomorphism"

    def configure(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("--cubes", type=int, required=True)
        parser.add_argument(
            "--filter",
            action="append",
            default=[],
            choices=sorted(CENSUS_FILTERS),
            help="keep only matching entries (repeatable)",
        )
        parser.add_argument("--orientable-only", action="store_true")
        parser.add_argument("--seed", type=int, default=None, help="shuffle the generation order")
        parser.add_argument("--out", help="directory for one gluing file per class")

    def run(self, args: argparse.Namespace) -> int:
        result = enumerate_cubulations(
            args.cubes,
            filters=args.filter,
            orientable_only=args.orientable_only,
            shuffle_seed=args.seed,
            workers=args.workers,
        )
        if args.out:
            write_census(result, args.out)
        lines = [f"{len(result.entries)} classes with {result.cubes} cube(s)"]
        report = census_report(result.entries)
        if report:
            lines.append(report)
        lines += [entry.signature for entry in result.entries]
        emit(args, result, "\n".join(lines))
        return 0
