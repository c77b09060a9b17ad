"""Dehn loop diagrams (4-valent ribbon graphs) and 2D square cubulations."""

from __future__ import annotations

from typing import Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field

Slot = Tuple[int, int]  # (crossing, slot 0..3)


class DiagramEdge(BaseModel):
    """An arc between two crossing slots; ``twist`` is ``None`` on a bare diagram."""

    model_config = ConfigDict(frozen=True)

    a: Slot
    b: Slot
    twist: Optional[int] = Field(default=0, ge=0, le=1)


class FreeLoop(BaseModel):
    """An embedded circle without crossings."""

    model_config = ConfigDict(frozen=True)

    twist: Optional[int] = Field(default=0, ge=0, le=1)


class DehnLoopDiagram(BaseModel):
    """Crossings have four slots in cyclic order; opposite slots lie on one strand."""

    model_config = ConfigDict(frozen=True)

    crossings: int = Field(default=0, ge=0)
    edges: Tuple[DiagramEdge, ...] = ()
    loops: Tuple[FreeLoop, ...] = ()

    @property
    def bare(self) -> bool:
        return any(e.twist is None for e in self.edges) or any(l.twist is None for l in self.loops)


class SquareSide(BaseModel):
    """Where a square side goes; ``flip`` 0 extends the squares' orientations."""

    model_config = ConfigDict(frozen=True)

    square: int = Field(..., ge=0)
    side: int = Field(..., ge=0, le=3)
    flip: int = Field(..., ge=0, le=1)


class SquareCubulation2D(BaseModel):
    """Squares glued along sides; side ``j`` joins corners ``j`` and ``j + 1``."""

    model_config = ConfigDict(frozen=True)

    gluings: Tuple[Tuple[Optional[SquareSide], ...], ...] = Field(..., min_length=1)

    @property
    def squares(self) -> int:
        return len(self.gluings)
