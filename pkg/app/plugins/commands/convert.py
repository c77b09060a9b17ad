"""``convert``: triangulation to cubulation and back."""

from __future__ import annotations

import argparse
import logging

from app.core.conversions import (
    count_mismatches,
    cubulation_to_triangulation,
    optimize_orientations,
    round_trip,
    triangulation_to_cubulation,
)
from app.core.errors import ToolkitError
from app.core.formats import format_gluing_text, read_complex, write_complex
from app.models.base import IdealCubulation, IdealTriangulation
from app.plugins.commands._output import emit
from app.plugins.registry import Command, command_registry

logger = logging.getLogger(__name__)


def _parse_bits(text: str, k: int) -> tuple[int, ...]:
    if len(text) != k or set(text) - {"0", "1"}:
        raise ToolkitError(f"--bits needs a string of {k} characters 0/1, got {text!r}")
    return tuple(int(ch) for ch in text)


@command_registry.register("CONVERT")
class ConvertCommand(Command):
    help = "convert between ideal triangulations and ideal cubulations"

    def configure(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("direction", choices=["tri2cub", "cub2tri", "roundtrip"])
        parser.add_argument("path", help="input gluing table")
        parser.add_argument("out", nargs="?", help="output gluing table (default: stdout)")
        parser.add_argument("-o", "--out", dest="out_option", help="same as the positional output path")
        parser.add_argument(
            "--bits",
            default="auto",
            help="cube choices for cub2tri: 'auto' to optimise, 'zeros', or a 0/1 string",
        )
        parser.add_argument("--exhaustive-max", type=int, default=None)
        parser.add_argument("--seed", type=int, default=None)

    def _write(self, args: argparse.Namespace, x, summary: str) -> None:
        """Write the table, then the size summary on stdout.

        When the table itself goes to stdout the summary is a comment line,
        so the output still parses as a gluing table.
        """
        out = args.out or args.out_option
        if out:
            write_complex(x, out)
            if not args.json:
                print(f"{summary}; wrote {out}")
        elif not args.json:
            print(format_gluing_text(x), end="")
            print(f"# {summary}")

    def run(self, args: argparse.Namespace) -> int:
        x = read_complex(args.path)

        if args.direction == "tri2cub":
            if not isinstance(x, IdealTriangulation):
                raise ToolkitError("tri2cub expects a triangulation")
            c = triangulation_to_cubulation(x)
            self._write(args, c, f"n={x.n} k={c.k}")
            if args.json:
                emit(args, c, "")
            return 0

        if not isinstance(x, IdealCubulation) and args.direction == "cub2tri":
            raise ToolkitError("cub2tri expects a cubulation")

        if args.direction == "roundtrip":
            if not isinstance(x, IdealTriangulation):
                raise ToolkitError("roundtrip expects a triangulation")
            report = round_trip(x)
            emit(
                args,
                report,
                f"n={x.n} -> k={report.cubulation.k} -> n'={report.result.tetrahedra} "
                f"(insertions={report.result.insertions}); chi preserved: {report.euler_preserved}; "
                f"ideal links preserved: {report.ideal_links_preserved}",
            )
            return 0 if report.euler_preserved and report.ideal_links_preserved else 1

        if args.bits == "auto":
            choice = optimize_orientations(
                x, exhaustive_max=args.exhaustive_max, seed=args.seed, workers=args.workers
            )
            bits = choice.bits
            logger.info(
                "Chose %s by %s search: %d insertions (all zeros: %d)",
                "".join(map(str, bits)), choice.mode, choice.mismatches, choice.baseline,
            )
        elif args.bits == "zeros":
            bits = tuple([0] * x.k)  # type: ignore[union-attr]
        else:
            bits = _parse_bits(args.bits, x.k)  # type: ignore[union-attr]
        result = cubulation_to_triangulation(x, bits)  # type: ignore[arg-type]
        self._write(args, result.triangulation, f"k={result.cubes} n={result.tetrahedra} m={result.insertions}")
        if args.json:
            emit(args, result, "")
        else:
            logger.info("%d mismatched faces under bits %s", count_mismatches(x, bits), "".join(map(str, bits)))  # type: ignore[arg-type]
        return 0
