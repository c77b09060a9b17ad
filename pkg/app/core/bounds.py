"""Provenance-carrying ledger of surface-complexity and Matveev-complexity bounds.

The ledger is a value: every rule application returns a new ledger whose
intervals are at least as tight as before.  Rules live in the
``rule_registry`` (see :mod:`app.plugins.rules`); the rule log kept in
``history`` replays to the same ledger.

Script form (``.ledger``)::

    hypotheses M
    triangulation M n=2
    catalog S3
    assert M sc<=3
    matveev M
    subadditivity R left=A right=B kind=#
"""

from __future__ import annotations

import logging
import re
from pathlib import Path
from typing import Dict, Iterable, List, Mapping, Optional, Tuple, Union

from app.core.errors import (
    BoundContradictionError,
    ExpressionFormatError,
    MissingInputError,
    RuleRefusedError,
)
from app.models.bounds import (
    ArgValue,
    Bound,
    BoundLedger,
    BoundUpdate,
    KnownValues,
    ManifoldBounds,
    Provenance,
    Quantity,
    RuleApplication,
    RuleOutcome,
)
from app.plugins.registry import discover_rules, rule_registry

logger = logging.getLogger(__name__)

# ── Catalog ─────────────────────────────────────────────────────

_SC_ZERO = {"S3", "B3", "RP3", "L(4,1)"}
_C_ZERO = {"S3", "B3", "RP3", "L(3,1)"}
MATVEEV_EXCEPTIONS = frozenset({"L(3,1)", "L(4,1)"})


def catalog_lookup(tag: str) -> KnownValues:
    """Exact values known for the manifolds with surface-complexity or Matveev complexity zero."""
    known = KnownValues()
    if tag in _SC_ZERO:
        known.sc = 0
    if tag in _C_ZERO:
        known.c = 0
    if tag == "L(3,1)":
        known.sc_lower = 1
    if tag == "L(4,1)":
        known.c_lower = 1
    return known


def sc_upper_from_triangulation(n: int, manifold: str = "M") -> Bound:
    """An n-tetrahedron ideal triangulation gives a filling surface with 4n triple points."""
    if n < 1:
        raise RuleRefusedError(f"an ideal triangulation has at least one tetrahedron, got n={n}")
    return Bound(
        value=4 * n,
        provenance=Provenance(rule="triangulation", manifold=manifold, detail=f"n={n}"),
    )


def ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def matveev_updates(bounds: ManifoldBounds) -> List[BoundUpdate]:
    """``sc <= 4c`` and ``c <= 8sc`` in both directions, integer ceilings for lower bounds."""
    name = bounds.manifold
    if bounds.manifold in MATVEEV_EXCEPTIONS:
        raise RuleRefusedError(
            f"the relations between sc and c fail for {bounds.manifold}; use the catalog instead"
        )
    if not bounds.hypotheses:
        raise RuleRefusedError(f"{name} is not flagged as satisfying the hypotheses of the relations")

    def derived(quantity: Quantity, side: str, value: int, source: Bound, detail: str) -> BoundUpdate:
        return BoundUpdate(
            manifold=name,
            quantity=quantity,
            side=side,  # type: ignore[arg-type]
            value=value,
            provenance=Provenance(
                rule="matveev", manifold=name, detail=detail, inputs=[source.provenance]
            ),
        )

    updates: List[BoundUpdate] = []
    if bounds.c_upper is not None:
        updates.append(derived("sc", "upper", 4 * bounds.c_upper.value, bounds.c_upper, "sc <= 4c"))
    if bounds.c_lower is not None:
        updates.append(
            derived("sc", "lower", ceil_div(bounds.c_lower.value, 8), bounds.c_lower, "sc >= c/8")
        )
    if bounds.sc_upper is not None:
        updates.append(derived("c", "upper", 8 * bounds.sc_upper.value, bounds.sc_upper, "c <= 8sc"))
    if bounds.sc_lower is not None:
        updates.append(
            derived("c", "lower", ceil_div(bounds.sc_lower.value, 4), bounds.sc_lower, "c >= sc/4")
        )
    return updates


def subadditivity(a: ManifoldBounds, b: ManifoldBounds, kind: str = "#", result: Optional[str] = None) -> ManifoldBounds:
    """Upper bound for a (boundary) connected sum from the summands' upper bounds."""
    if kind not in ("#", "#∂", "#d"):
        raise RuleRefusedError(f"unknown sum kind {kind!r}; expected '#' or '#∂'")
    symbol = "#" if kind == "#" else "#∂"
    name = result or f"({a.manifold} {symbol} {b.manifold})"
    missing = [m.manifold for m in (a, b) if m.sc_upper is None]
    if missing:
        raise MissingInputError(f"subadditivity needs sc upper bounds for {', '.join(missing)}")
    return ManifoldBounds(
        manifold=name,
        sc_upper=Bound(
            value=a.sc_upper.value + b.sc_upper.value,  # type: ignore[union-attr]
            provenance=Provenance(
                rule="subadditivity",
                manifold=name,
                detail=f"sc({a.manifold} {symbol} {b.manifold}) <= sc({a.manifold}) + sc({b.manifold})",
                inputs=[a.sc_upper.provenance, b.sc_upper.provenance],  # type: ignore[union-attr]
            ),
        ),
    )


# ── Ledger mechanics ────────────────────────────────────────────

def _tighter(side: str, new: int, old: Optional[Bound]) -> bool:
    if old is None:
        return True
    return new > old.value if side == "lower" else new < old.value


def _check(bounds: ManifoldBounds) -> None:
    for quantity in ("sc", "c"):
        lower, upper = bounds.get(quantity, "lower"), bounds.get(quantity, "upper")  # type: ignore[arg-type]
        if lower is not None and upper is not None and lower.value > upper.value:
            raise BoundContradictionError(
                bounds.manifold, quantity, lower.provenance.chain(), upper.provenance.chain()
            )


def _apply_outcome(ledger: BoundLedger, outcome: RuleOutcome) -> Dict[str, ManifoldBounds]:
    entries = dict(ledger.entries)
    for name in outcome.hypotheses:
        entries[name] = ledger.bounds(name).model_copy(update={"hypotheses": True})
    for update in outcome.updates:
        current = entries.get(update.manifold) or ManifoldBounds(manifold=update.manifold)
        field = f"{update.quantity}_{update.side}"
        if not _tighter(update.side, update.value, getattr(current, field)):
            logger.debug("Ignored non-tightening %s %s=%d", update.manifold, field, update.value)
            continue
        current = current.model_copy(
            update={field: Bound(value=update.value, provenance=update.provenance)}
        )
        _check(current)
        entries[update.manifold] = current
    return entries


def apply_rule(
    ledger: BoundLedger, rule: str, manifold: str, args: Optional[Mapping[str, ArgValue]] = None
) -> BoundLedger:
    """Apply one registered rule and log it; only tightening updates are kept."""
    discover_rules()
    args = dict(args or {})
    outcome = rule_registry.get(rule).apply(ledger, manifold, args)
    entries = _apply_outcome(ledger, outcome)
    application = RuleApplication(rule=rule.lower(), manifold=manifold, args=args)
    logger.info("Applied %s to %s (%d updates)", rule, manifold, len(outcome.updates))
    return BoundLedger(entries=entries, history=[*ledger.history, application])


def apply_matveev_relations(ledger: BoundLedger, manifold: str) -> BoundLedger:
    return apply_rule(ledger, "matveev", manifold)


def replay(history: Iterable[RuleApplication]) -> BoundLedger:
    ledger = BoundLedger()
    for application in history:
        ledger = apply_rule(ledger, application.rule, application.manifold, application.args)
    return ledger


def _pick(side: str, a: Optional[Bound], b: Optional[Bound]) -> Optional[Bound]:
    if a is None or b is None:
        return a or b
    key_a = (a.value, a.provenance.model_dump_json())
    key_b = (b.value, b.provenance.model_dump_json())
    if side == "lower":
        return a if key_a >= key_b else b
    return a if key_a <= key_b else b


def merge(a: BoundLedger, b: BoundLedger) -> BoundLedger:
    """Interval intersection of two ledgers, manifold by manifold."""
    entries: Dict[str, ManifoldBounds] = {}
    for name in sorted(set(a.entries) | set(b.entries)):
        left, right = a.bounds(name), b.bounds(name)
        merged = ManifoldBounds(
            manifold=name,
            hypotheses=left.hypotheses or right.hypotheses,
            sc_lower=_pick("lower", left.sc_lower, right.sc_lower),
            sc_upper=_pick("upper", left.sc_upper, right.sc_upper),
            c_lower=_pick("lower", left.c_lower, right.c_lower),
            c_upper=_pick("upper", left.c_upper, right.c_upper),
        )
        _check(merged)
        entries[name] = merged
    return BoundLedger(entries=entries, history=[*a.history, *b.history])


# ── Script form ─────────────────────────────────────────────────

_ASSERTION = re.compile(r"^(sc|c)\s*(<=|>=|=)\s*(\d+)$")


def parse_ledger_script(text: str) -> List[RuleApplication]:
    applications: List[RuleApplication] = []
    for number, raw in enumerate(text.splitlines(), start=1):
        line = re.sub(r"(^|\s)#\s.*$|^#.*$", "", raw).strip()
        if not line:
            continue
        tokens = line.split()
        if len(tokens) < 2:
            raise ExpressionFormatError("expected '<rule> <manifold> [key=value ...]'", line=number)
        rule, manifold, rest = tokens[0].lower(), tokens[1], tokens[2:]
        args: Dict[str, ArgValue] = {}
        if rule == "assert":
            match = _ASSERTION.match("".join(rest))
            if match is None:
                raise ExpressionFormatError("expected 'assert <manifold> sc<=N'", line=number)
            args = {"quantity": match.group(1), "relation": match.group(2), "value": int(match.group(3))}
        else:
            for token in rest:
                key, sep, value = token.partition("=")
                if not sep:
                    raise ExpressionFormatError(f"expected key=value, got {token!r}", line=number)
                args[key] = int(value) if value.isdigit() else value
        applications.append(RuleApplication(rule=rule, manifold=manifold, args=args))
    return applications


def run_ledger_script(text: str) -> BoundLedger:
    return replay(parse_ledger_script(text))


def read_ledger_script(path: Union[str, Path]) -> BoundLedger:
    return run_ledger_script(Path(path).read_text(encoding="utf-8"))


def ledger_rows(ledger: BoundLedger) -> List[Tuple[str, str, str, str]]:
    """(manifold, quantity, interval, provenance) rows for reports."""
    rows: List[Tuple[str, str, str, str]] = []
    for name in sorted(ledger.entries):
        bounds = ledger.entries[name]
        for quantity in ("sc", "c"):
            lower = bounds.get(quantity, "lower")  # type: ignore[arg-type]
            upper = bounds.get(quantity, "upper")  # type: ignore[arg-type]
            if lower is None and upper is None:
                continue
            lo = str(lower.value) if lower else "0"
            hi = str(upper.value) if upper else "inf"
            why = "; ".join(b.provenance.chain() for b in (lower, upper) if b is not None)
            rows.append((name, quantity, f"[{lo}, {hi}]", why))
    return rows
