"""Bound ledger schemas: integer bounds on sc and c with provenance."""

from __future__ import annotations

from typing import Dict, List, Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field

Quantity = Literal["sc", "c"]
Side = Literal["lower", "upper"]
ArgValue = Union[int, str]


class Provenance(BaseModel):
    """Which rule produced a bound, from which earlier bounds."""

    model_config = ConfigDict(frozen=True)

    rule: str
    manifold: str
    detail: str = ""
    inputs: List["Provenance"] = Field(default_factory=list)

    def chain(self) -> str:
        head = f"{self.rule}({self.manifold}{': ' + self.detail if self.detail else ''})"
        if not self.inputs:
            return head
        return f"{head} <- " + "; ".join(p.chain() for p in self.inputs)


class Bound(BaseModel):
    model_config = ConfigDict(frozen=True)

    value: int = Field(..., ge=0)
    provenance: Provenance


class ManifoldBounds(BaseModel):
    """Lower and upper bounds for one manifold expression."""

    model_config = ConfigDict(frozen=True)

    manifold: str
    hypotheses: bool = Field(
        default=False,
        description="Caller asserts P2-irreducible, boundary-irreducible, no essential annuli or Moebius strips",
    )
    sc_lower: Optional[Bound] = None
    sc_upper: Optional[Bound] = None
    c_lower: Optional[Bound] = None
    c_upper: Optional[Bound] = None

    def get(self, quantity: Quantity, side: Side) -> Optional[Bound]:
        return getattr(self, f"{quantity}_{side}")


class BoundUpdate(BaseModel):
    model_config = ConfigDict(frozen=True)

    manifold: str
    quantity: Quantity
    side: Side
    value: int = Field(..., ge=0)
    provenance: Provenance


class RuleApplication(BaseModel):
    """One line of the rule log; replaying the log rebuilds the ledger."""

    model_config = ConfigDict(frozen=True)

    rule: str
    manifold: str
    args: Dict[str, ArgValue] = Field(default_factory=dict)


class RuleOutcome(BaseModel):
    updates: List[BoundUpdate] = Field(default_factory=list)
    hypotheses: List[str] = Field(default_factory=list)


class BoundLedger(BaseModel):
    model_config = ConfigDict(frozen=True)

    entries: Dict[str, ManifoldBounds] = Field(default_factory=dict)
    history: List[RuleApplication] = Field(default_factory=list)

    def bounds(self, manifold: str) -> ManifoldBounds:
        return self.entries.get(manifold) or ManifoldBounds(manifold=manifold)


class KnownValues(BaseModel):
    """Catalog data for one manifold tag; ``None`` means nothing is known."""

    sc: Optional[int] = None
    c: Optional[int] = None
    sc_lower: Optional[int] = None
    c_lower: Optional[int] = None

    @property
    def empty(self) -> bool:
        return all(v is None for v in (self.sc, self.c, self.sc_lower, self.c_lower))
