"""Rules combining bounds already in the ledger."""

from __future__ import annotations

from typing import Mapping

from app.core.bounds import matveev_updates, subadditivity
from app.core.errors import MissingInputError, RuleRefusedError
from app.models.bounds import ArgValue, BoundLedger, BoundUpdate, Provenance, RuleOutcome
from app.plugins.registry import BoundRule, rule_registry


@rule_registry.register("HYPOTHESES")
class HypothesesRule(BoundRule):
    """Record the caller's claim that the manifold meets the complexity-relation hypotheses."""

    def apply(self, ledger: BoundLedger, manifold: str, args: Mapping[str, ArgValue]) -> RuleOutcome:
        return RuleOutcome(hypotheses=[manifold])


@rule_registry.register("MATVEEV")
class MatveevRule(BoundRule):
    """sc <= 4c and c <= 8sc, refused for L(3,1) and L(4,1)."""

    def apply(self, ledger: BoundLedger, manifold: str, args: Mapping[str, ArgValue]) -> RuleOutcome:
        return RuleOutcome(updates=matveev_updates(ledger.bounds(manifold)))


@rule_registry.register("SUBADDITIVITY")
class SubadditivityRule(BoundRule):
    """sc(A # B) <= sc(A) + sc(B), also for the boundary connected sum."""

    def apply(self, ledger: BoundLedger, manifold: str, args: Mapping[str, ArgValue]) -> RuleOutcome:
        if "left" not in args or "right" not in args:
            raise MissingInputError("subadditivity needs left=<manifold> right=<manifold>")
        left = ledger.bounds(str(args["left"]))
        right = ledger.bounds(str(args["right"]))
        result = subadditivity(left, right, str(args.get("kind", "#")), manifold)
        bound = result.sc_upper
        return RuleOutcome(
            updates=[
                BoundUpdate(
                    manifold=manifold,
                    quantity="sc",
                    side="upper",
                    value=bound.value,  # type: ignore[union-attr]
                    provenance=bound.provenance,  # type: ignore[union-attr]
                )
            ]
        )


@rule_registry.register("ASSERT")
class AssertRule(BoundRule):
    """A caller-supplied known value or bound."""

    def apply(self, ledger: BoundLedger, manifold: str, args: Mapping[str, ArgValue]) -> RuleOutcome:
        quantity = str(args.get("quantity", ""))
        relation = str(args.get("relation", "="))
        if quantity not in ("sc", "c") or "value" not in args:
            raise MissingInputError("assert needs quantity=sc|c, relation and value")
        if relation not in ("<=", ">=", "="):
            raise RuleRefusedError(f"unknown relation {relation!r}")
        value = int(args["value"])
        provenance = Provenance(rule="assert", manifold=manifold, detail=f"{quantity}{relation}{value}")
        sides = {"<=": ("upper",), ">=": ("lower",), "=": ("lower", "upper")}[relation]
        return RuleOutcome(
            updates=[
                BoundUpdate(
                    manifold=manifold,
                    quantity=quantity,  # type: ignore[arg-type]
                    side=side,  # type: ignore[arg-type]
                    value=value,
                    provenance=provenance,
                )
                for side in sides
            ]
        )
