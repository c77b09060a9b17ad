"""Results of the triangulation/cubulation constructions."""

from __future__ import annotations

from typing import Literal, Tuple

from pydantic import BaseModel, ConfigDict, Field

from app.models.base import IdealCubulation, IdealTriangulation


class OrientationChoice(BaseModel):
    """A per-cube choice of central tetrahedron and the insertions it costs."""

    model_config = ConfigDict(frozen=True)

    bits: Tuple[int, ...]
    mismatches: int = Field(..., ge=0)
    baseline: int = Field(..., ge=0, description="Mismatches of the all-zeros choice")
    mode: Literal["exhaustive", "heuristic", "given"]


class TriangulationResult(BaseModel):
    """Output of splitting every cube into five tetrahedra."""

    triangulation: IdealTriangulation
    cubes: int
    insertions: int = Field(..., ge=0)
    bits: Tuple[int, ...]

    @property
    def tetrahedra(self) -> int:
        return self.triangulation.n


class RoundTripReport(BaseModel):
    """t -> c -> t' and the invariants compared along the way."""

    original: IdealTriangulation
    cubulation: IdealCubulation
    result: TriangulationResult
    euler_characteristic: int
    euler_preserved: bool
    ideal_links_preserved: bool
