"""Known values: sc = 0 for S3, B3, RP3, L(4,1); c = 0 for S3, B3, RP3, L(3,1)."""

from __future__ import annotations

import logging
from typing import List, Mapping

from app.core.bounds import catalog_lookup
from app.models.bounds import ArgValue, BoundLedger, BoundUpdate, Provenance, RuleOutcome
from app.plugins.registry import BoundRule, rule_registry

logger = logging.getLogger(__name__)


@rule_registry.register("CATALOG")
class CatalogRule(BoundRule):
    def apply(self, ledger: BoundLedger, manifold: str, args: Mapping[str, ArgValue]) -> RuleOutcome:
        known = catalog_lookup(manifold)
        if known.empty:
            logger.warning("No catalog entry for %s", manifold)
            return RuleOutcome()

        provenance = Provenance(rule="catalog", manifold=manifold)
        updates: List[BoundUpdate] = []
        for quantity, exact, lower in (("sc", known.sc, known.sc_lower), ("c", known.c, known.c_lower)):
            if exact is not None:
                for side in ("lower", "upper"):
                    updates.append(
                        BoundUpdate(
                            manifold=manifold,
                            quantity=quantity,  # type: ignore[arg-type]
                            side=side,  # type: ignore[arg-type]
                            value=exact,
                            provenance=provenance,
                        )
                    )
            if lower is not None:
                updates.append(
                    BoundUpdate(
                        manifold=manifold,
                        quantity=quantity,  # type: ignore[arg-type]
                        side="lower",
                        value=lower,
                        provenance=provenance,
                    )
                )
        return RuleOutcome(updates=updates)
