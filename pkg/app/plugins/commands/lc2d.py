"""``lc2d``: Dehn loops on surfaces and loop-complexity."""

from __future__ import annotations

import argparse
import logging

from app.core.surface2d import (
    brute_force_lc,
    diagram_to_square_cubulation,
    is_filling,
    loop_complexity,
    quasi_filled_surfaces,
    read_diagram,
    ribbon_completions,
    square_cubulation_surface,
    strand_count,
    thicken,
)
from app.core.surfaces import surface_from_label
from app.core.tables import table
from app.plugins.commands._output import emit
from app.plugins.registry import Command, command_registry

logger = logging.getLogger(__name__)


@command_registry.register("LC2D")
class Lc2dCommand(Command):
    help = "thicken Dehn loop diagrams and compute loop-complexity of surfaces"

    def configure(self, parser: argparse.ArgumentParser) -> None:
        actions = parser.add_subparsers(dest="action", required=True)
        thick = actions.add_parser("thicken", help="surface obtained by thickening a diagram")
        thick.add_argument("path", help="diagram file")

        lc = actions.add_parser("lc", help="loop-complexity from the closed formula")
        lc.add_argument("surface", help="surface label, e.g. T2, K, RP2, S2,1, N3")

        search = actions.add_parser("search", help="loop-complexity by exhaustive enumeration")
        search.add_argument("surface")
        search.add_argument("--max-crossings", type=int, default=2)

        dual = actions.add_parser("dual", help="square cubulation dual to a diagram")
        dual.add_argument("path")

        completions = actions.add_parser("completions", help="surfaces of every twist choice")
        completions.add_argument("path")

    def run(self, args: argparse.Namespace) -> int:
        if args.action == "thicken":
            d = read_diagram(args.path)
            surface = thicken(d)
            filled = quasi_filled_surfaces(d)
            payload = {
                "surface": surface,
                "label": surface.label,
                "strands": strand_count(d),
                "filling": is_filling(d),
                "quasi_fills": [s.label for s in filled],
            }
            emit(
                args,
                payload,
                f"{surface.label}: chi={surface.euler_characteristic} "
                f"boundary={surface.boundary_components} orientable={surface.orientable}\n"
                f"strands={payload['strands']} filling={payload['filling']}\n"
                f"quasi-fills: {' '.join(payload['quasi_fills'])}",
            )
            return 0

        if args.action == "lc":
            surface = surface_from_label(args.surface)
            value = loop_complexity(surface)
            emit(args, {"surface": surface.label, "lc": value}, f"lc({surface.label}) = {value}")
            return 0

        if args.action == "search":
            surface = surface_from_label(args.surface)
            found = brute_force_lc(surface, args.max_crossings, workers=args.workers)
            formula = loop_complexity(surface)
            text = (
                f"no quasi-filling loop with at most {args.max_crossings} crossings"
                if found is None
                else f"lc({surface.label}) = {found} by enumeration"
            )
            emit(args, {"surface": surface.label, "found": found, "formula": formula}, f"{text} (formula: {formula})")
            return 0 if found is None or found == formula else 1

        d = read_diagram(args.path)
        if args.action == "completions":
            rows = ribbon_completions(d)
            emit(
                args,
                [{"twists": bits, "surface": s.label} for bits, s in rows],
                table([("twists", "surface")] + [("".join(map(str, bits)), s.label) for bits, s in rows]),
            )
            return 0

        q = diagram_to_square_cubulation(d)
        closed = square_cubulation_surface(q)
        lines = [f"{q.squares} squares presenting {closed.label}"]
        for square, row in enumerate(q.gluings):
            for side, record in enumerate(row):
                lines.append(f"  {square}.{side} -> {record.square}.{record.side} flip={record.flip}")  # type: ignore[union-attr]
        emit(args, {"cubulation": q, "surface": closed.label}, "\n".join(lines))
        return 0
