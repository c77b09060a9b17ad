"""``qfs``: statistics and moves on quasi-filling surface expressions."""

from __future__ import annotations

import argparse
from pathlib import Path

from app.core.quasi_filling import (
    boundary_connected_sum,
    bubble_move,
    connected_sum,
    format_qfs_text,
    inverse_bubble_move,
    parse_qfs_text,
    read_qfs,
    stats,
)
from app.models.qfs import QuasiFillingSurface
from app.plugins.commands._output import emit
from app.plugins.registry import Command, command_registry


def _load(source: str) -> QuasiFillingSurface:
    path = Path(source)
    if path.is_file():
        return read_qfs(path)
    return parse_qfs_text(source)


def _describe(q: QuasiFillingSurface) -> str:
    s = stats(q)
    balls = "-" if s.complement_balls is None else str(s.complement_balls)
    chi = "-" if s.euler_abstract is None else str(s.euler_abstract)
    sheets = "-" if s.sheets is None else " ".join(sheet.label for sheet in s.sheets)
    return "\n".join(
        [
            format_qfs_text(q),
            f"  manifold: {s.manifold}",
            f"  triple points: {s.triple_points}  regions: {s.regions}  filling: {s.is_filling}",
            f"  complement balls: {balls}  chi(S): {chi}  sheets: {sheets}",
        ]
    )


@command_registry.register("QFS")
class QfsCommand(Command):
    help = "inspect quasi-filling surfaces and apply bubble moves and sums"

    def configure(self, parser: argparse.ArgumentParser) -> None:
        actions = parser.add_subparsers(dest="action", required=True)
        show = actions.add_parser("stats", help="print statistics of an expression")
        show.add_argument("expr", help=".qfs file, gluing file or inline expression")

        bubble = actions.add_parser("bubble", help="apply a bubble move")
        bubble.add_argument("expr")
        bubble.add_argument("--region", type=int, required=True)
        bubble.add_argument("-o", "--out")

        unbubble = actions.add_parser("unbubble", help="undo the outermost bubble move")
        unbubble.add_argument("expr")
        unbubble.add_argument("-o", "--out")

        add = actions.add_parser("sum", help="connected sum of two expressions")
        add.add_argument("left")
        add.add_argument("right")
        add.add_argument("--boundary", action="store_true", help="boundary connected sum")
        add.add_argument("-o", "--out")

    def run(self, args: argparse.Namespace) -> int:
        if args.action == "stats":
            q = _load(args.expr)
            emit(args, {"expression": format_qfs_text(q), "stats": stats(q)}, _describe(q))
            return 0

        if args.action == "bubble":
            q = bubble_move(_load(args.expr), args.region)
        elif args.action == "unbubble":
            q = inverse_bubble_move(_load(args.expr))
        elif args.boundary:
            q = boundary_connected_sum(_load(args.left), _load(args.right))
        else:
            q = connected_sum(_load(args.left), _load(args.right))

        if args.out:
            Path(args.out).write_text(format_qfs_text(q) + "\n", encoding="utf-8")
        emit(args, {"expression": format_qfs_text(q), "stats": stats(q)}, _describe(q))
        return 0
