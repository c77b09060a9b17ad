"""Census entries: one canonical cubulation per isomorphism class with its invariants."""

from __future__ import annotations

from typing import List, Tuple

from pydantic import BaseModel, ConfigDict

from app.models.base import IdealCubulation
from app.models.surfaces import DehnSurfaceStats


class CensusEntry(BaseModel):
    model_config = ConfigDict(frozen=True)

    signature: str
    cubulation: IdealCubulation
    vertices: int
    edges: int
    faces: int
    euler_characteristic: int
    orientable: bool
    links: Tuple[str, ...]
    euler_identity: bool
    surface: DehnSurfaceStats

    @property
    def sheet_profile(self) -> Tuple[str, ...]:
        return tuple(sorted(sheet.label for sheet in self.surface.sheets))


class CensusResult(BaseModel):
    cubes: int
    filters: List[str]
    orientable_only: bool = False
    entries: List[CensusEntry]
