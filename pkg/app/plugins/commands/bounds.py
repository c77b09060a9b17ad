"""``bounds``: run a ledger script or a single construction bound."""

from __future__ import annotations

import argparse

from app.core.bounds import apply_rule, ledger_rows, read_ledger_script
from app.core.tables import table
from app.models.bounds import BoundLedger
from app.plugins.commands._output import emit
from app.plugins.registry import Command, command_registry


@command_registry.register("BOUNDS")
class BoundsCommand(Command):
    help = "derive bounds on surface-complexity and Matveev complexity"

    def configure(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("script", nargs="?", help=".ledger script, one rule per line")
        parser.add_argument("--manifold", default="M", help="manifold tag for --tri-size/--cubes")
        parser.add_argument("--tri-size", type=int, help="tetrahedra of an ideal triangulation")
        parser.add_argument("--cubes", type=int, help="cubes of an ideal cubulation")
        parser.add_argument(
            "--hypotheses",
            action="store_true",
            help="assert the manifold satisfies the hypotheses of the sc/c relations",
        )

    def run(self, args: argparse.Namespace) -> int:
        if args.script is None and args.tri_size is None and args.cubes is None:
            raise ValueError("give a ledger script, --tri-size or --cubes")
        ledger = read_ledger_script(args.script) if args.script else BoundLedger()
        if args.hypotheses:
            ledger = apply_rule(ledger, "hypotheses", args.manifold)
        if args.tri_size is not None:
            ledger = apply_rule(ledger, "triangulation", args.manifold, {"n": args.tri_size})
            if args.hypotheses:
                ledger = apply_rule(ledger, "triangulation_c", args.manifold, {"n": args.tri_size})
        if args.cubes is not None:
            ledger = apply_rule(ledger, "cubulation", args.manifold, {"k": args.cubes})
        if args.hypotheses:
            ledger = apply_rule(ledger, "matveev", args.manifold)

        rows = ledger_rows(ledger)
        emit(args, ledger, table([("manifold", "quantity", "interval", "provenance")] + rows))
        return 0
