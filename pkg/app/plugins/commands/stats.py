"""``stats``: vertex links and, for cubulations, the dual Dehn surface."""

from __future__ import annotations

import argparse

from app.core.dual_surface import dual_surface_stats
from app.core.formats import read_complex
from app.core.signature import isomorphism_signature
from app.core.tables import table
from app.core.validation import euler_identity_check, require_valid, vertex_links
from app.models.base import IdealCubulation
from app.plugins.commands._output import emit
from app.plugins.registry import Command, command_registry


@command_registry.register("STATS")
class StatsCommand(Command):
    help = "print invariants of a valid complex and its dual surface"

    def configure(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("path", help="gluing table (.tri or .cub)")

    def run(self, args: argparse.Namespace) -> int:
        x = read_complex(args.path)
        orbits = require_valid(x)
        links = vertex_links(x)
        payload = {
            "kind": x.kind,
            "signature": isomorphism_signature(x),
            "orbits": orbits,
            "links": links,
            "euler_identity": euler_identity_check(x),
        }
        lines = [
            f"{x.kind} {payload['signature']}",
            f"V={orbits.vertices} E={orbits.edges} F={orbits.faces} cells={orbits.cells} "
            f"chi={orbits.euler_characteristic} orientable={orbits.orientable}",
            "vertex links:",
            table([("vertex", "link", "kind", "corners")] + [
                (str(l.vertex), l.link.label, l.classification, str(l.corners)) for l in links
            ]),
        ]
        if isinstance(x, IdealCubulation):
            dual = dual_surface_stats(x)
            payload["surface"] = dual
            lines += [
                f"Dehn surface: T={dual.triple_points} E={dual.singular_edges} R={dual.regions} "
                f"chi(S)={dual.euler_abstract} balls={dual.complement_balls}",
                "sheets:",
                table([("label", "chi", "orientable", "two-sided", "squares")] + [
                    (s.label, str(s.euler_characteristic), str(s.orientable), str(s.two_sided), str(s.squares))
                    for s in dual.sheets
                ]),
            ]
        emit(args, payload, "\n".join(lines))
        return 0
