"""Bounds read off explicit ideal decompositions.

``TRIANGULATION``   sc <= 4n from an n-tetrahedron ideal triangulation.
``CUBULATION``      sc <= k from a k-cube ideal cubulation.
``TRIANGULATION_C`` c <= n, for manifolds flagged as satisfying the
                    hypotheses under which c is realised by tetrahedra.
"""

from __future__ import annotations

from typing import Mapping

from app.core.bounds import sc_upper_from_triangulation
from app.core.errors import MissingInputError, RuleRefusedError
from app.models.bounds import ArgValue, BoundLedger, BoundUpdate, Provenance, RuleOutcome
from app.plugins.registry import BoundRule, rule_registry


def _size(args: Mapping[str, ArgValue], key: str) -> int:
    if key not in args:
        raise MissingInputError(f"missing argument {key}=<int>")
    try:
        return int(args[key])
    except ValueError as exc:
        raise RuleRefusedError(f"{key} must be an integer, got {args[key]!r}") from exc


@rule_registry.register("TRIANGULATION")
class TriangulationRule(BoundRule):
    def apply(self, ledger: BoundLedger, manifold: str, args: Mapping[str, ArgValue]) -> RuleOutcome:
        bound = sc_upper_from_triangulation(_size(args, "n"), manifold)
        return RuleOutcome(
            updates=[
                BoundUpdate(
                    manifold=manifold,
                    quantity="sc",
                    side="upper",
                    value=bound.value,
                    provenance=bound.provenance,
                )
            ]
        )


@rule_registry.register("CUBULATION")
class CubulationRule(BoundRule):
    def apply(self, ledger: BoundLedger, manifold: str, args: Mapping[str, ArgValue]) -> RuleOutcome:
        k = _size(args, "k")
        if k < 1:
            raise RuleRefusedError(f"an ideal cubulation has at least one cube, got k={k}")
        return RuleOutcome(
            updates=[
                BoundUpdate(
                    manifold=manifold,
                    quantity="sc",
                    side="upper",
                    value=k,
                    provenance=Provenance(rule="cubulation", manifold=manifold, detail=f"k={k}"),
                )
            ]
        )


@rule_registry.register("TRIANGULATION_C")
class TriangulationComplexityRule(BoundRule):
    def apply(self, ledger: BoundLedger, manifold: str, args: Mapping[str, ArgValue]) -> RuleOutcome:
        n = _size(args, "n")
        if n < 1:
            raise RuleRefusedError(f"an ideal triangulation has at least one tetrahedron, got n={n}")
        if not ledger.bounds(manifold).hypotheses:
            raise RuleRefusedError(
                f"c <= n needs {manifold} flagged with 'hypotheses' before it can be applied"
            )
        return RuleOutcome(
            updates=[
                BoundUpdate(
                    manifold=manifold,
                    quantity="c",
                    side="upper",
                    value=n,
                    provenance=Provenance(rule="triangulation_c", manifold=manifold, detail=f"n={n}"),
                )
            ]
        )
