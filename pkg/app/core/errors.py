"""Exception hierarchy shared by every module of the toolkit."""

from __future__ import annotations

from typing import TYPE_CHECKING, Optional

if TYPE_CHECKING:
    from app.models.base import ValidationReport


class ToolkitError(Exception):
    """Root of all errors raised on purpose by the toolkit."""


class GluingFormatError(ToolkitError, ValueError):
    """A text file could not be parsed; carries the offending line number."""

    def __init__(self, message: str, line: Optional[int] = None) -> None:
        self.line = line
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(f"{prefix}{message}")


class InvalidComplexError(ToolkitError, ValueError):
    """A construction received a complex that does not validate."""

    def __init__(self, report: "ValidationReport", what: str = "complex") -> None:
        self.report = report
        details = "; ".join(v.message for v in report.violations[:5])
        more = len(report.violations) - 5
        if more > 0:
            details += f" (+{more} more)"
        super().__init__(f"invalid {what}: {details}")


class UnknownRegionError(ToolkitError, KeyError):
    def __init__(self, region: int, available: int) -> None:
        self.region = region
        super().__init__(
            f"region {region} does not exist (surface has {available} addressable regions)"
        )

    def __str__(self) -> str:
        return str(self.args[0])


class InverseBubbleError(ToolkitError):
    """Raised when an inverse bubble move cannot be certified."""


class RuleRefusedError(ToolkitError):
    """A bound rule does not apply to the given manifold."""


class MissingInputError(ToolkitError):
    """A bound rule needs ledger entries that are not present."""


class BoundContradictionError(ToolkitError):
    """A lower bound exceeds the matching upper bound."""

    def __init__(self, manifold: str, quantity: str, lower_chain: str, upper_chain: str) -> None:
        self.manifold = manifold
        self.quantity = quantity
        super().__init__(
            f"contradiction for {quantity}({manifold}): "
            f"lower bound [{lower_chain}] exceeds upper bound [{upper_chain}]"
        )


class MissingRibbonDataError(ToolkitError):
    """A bare loop carries no twist data, so two square gluings are possible per edge."""


class DescriptorError(ToolkitError, ValueError):
    """A surface descriptor names no compact connected surface."""


class CensusRangeError(ToolkitError, ValueError):
    """Census size outside the supported range."""


class ExpressionFormatError(ToolkitError, ValueError):
    """A quasi-filling expression or ledger script could not be parsed."""

    def __init__(
        self, message: str, position: Optional[int] = None, line: Optional[int] = None
    ) -> None:
        self.position = position
        self.line = line
        prefix = f"line {line}: " if line is not None else ""
        where = f" at offset {position}" if position is not None else ""
        super().__init__(f"{prefix}{message}{where}")


class CatalogError(ToolkitError, ValueError):
    """An exceptional surface was requested with unsupported parameters."""


class DiagramError(ToolkitError, ValueError):
    """A Dehn loop diagram or square cubulation is malformed."""
