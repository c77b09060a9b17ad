"""``validate``: check a gluing table and print its orbit counts or violations."""

from __future__ import annotations

import argparse
import logging

from app.core.formats import read_complex
from app.core.signature import isomorphism_signature
from app.core.validation import euler_identity_check, validate
from app.plugins.commands._output import emit
from app.plugins.registry import Command, command_registry

logger = logging.getLogger(__name__)


@command_registry.register("VALIDATE")
class ValidateCommand(Command):
    help = "validate an ideal triangulation or cubulation file"

    def configure(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("path", help="gluing table (.tri or .cub)")

    def run(self, args: argparse.Namespace) -> int:
        x = read_complex(args.path)
        report = validate(x)
        if not report.ok:
            lines = [f"INVALID {x.kind} ({len(report.violations)} violations)"]
            lines += [f"  {v.kind}: {v.message}" for v in report.violations]
            emit(args, report, "\n".join(lines))
            logger.warning("%s failed validation", args.path)
            return 1

        o = report.orbits
        signature = isomorphism_signature(x)
        lines = [
            f"OK {x.kind} with {o.cells} cells",  # type: ignore[union-attr]
            f"  V={o.vertices} E={o.edges} F={o.faces} chi={o.euler_characteristic}",  # type: ignore[union-attr]
            f"  ideal vertices: {o.ideal_vertices}, finite vertices: {o.finite_vertices}",  # type: ignore[union-attr]
            f"  orientable: {o.orientable}",  # type: ignore[union-attr]
            f"  euler identity: {euler_identity_check(x)}",
            f"  signature: {signature}",
        ]
        emit(args, {"report": report, "signature": signature}, "\n".join(lines))
        return 0
