"""Pydantic v2 schemas for glued 3-complexes and their validation reports.

Both complexes store the full involutive gluing table: row ``c`` lists the
records of the faces of cell ``c`` in face-label order, ``None`` marking an
unglued face.  Record contents are only checked for shape here; semantic
checks (involution, permutations, square symmetries, edge orientation,
connectivity) are the job of :mod:`app.core.validation`, which reports
them as violations instead of raising.
"""

from __future__ import annotations

from typing import List, Literal, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_validator


# ── Gluing records ────────────────────────────────────────────────

class FaceGluing(BaseModel):
    """Where one face goes: target cell, target face and a 4-entry map.

    For a triangulation ``perm`` lists the images of vertices ``0..3``; for
    a cubulation it is the corner map on canonical corner positions.
    """

    model_config = ConfigDict(frozen=True)

    cell: int = Field(..., ge=0)
    face: int = Field(..., ge=0)
    perm: Tuple[int, int, int, int]


GluingRow = Tuple[Optional[FaceGluing], ...]


class IdealTriangulation(BaseModel):
    """Tetrahedra with face pairings; presents the coned-off manifold."""

    model_config = ConfigDict(frozen=True)

    kind: Literal["triangulation"] = "triangulation"
    gluings: Tuple[GluingRow, ...] = Field(..., min_length=1)

    @field_validator("gluings")
    @classmethod
    def _four_faces(cls, rows: Tuple[GluingRow, ...]) -> Tuple[GluingRow, ...]:
        for index, row in enumerate(rows):
            if len(row) != 4:
                raise ValueError(f"tetrahedron {index} has {len(row)} face records, expected 4")
        return rows

    @property
    def n(self) -> int:
        return len(self.gluings)

    @property
    def size(self) -> int:
        return self.n


class IdealCubulation(BaseModel):
    """Cubes with square-face pairings; dual to a filling Dehn surface."""

    model_config = ConfigDict(frozen=True)

    kind: Literal["cubulation"] = "cubulation"
    gluings: Tuple[GluingRow, ...] = Field(..., min_length=1)

    @field_validator("gluings")
    @classmethod
    def _six_faces(cls, rows: Tuple[GluingRow, ...]) -> Tuple[GluingRow, ...]:
        for index, row in enumerate(rows):
            if len(row) != 6:
                raise ValueError(f"cube {index} has {len(row)} face records, expected 6")
        return rows

    @property
    def k(self) -> int:
        return len(self.gluings)

    @property
    def size(self) -> int:
        return self.k


# ── Validation reports ───────────────────────────────────────────

ViolationKind = Literal[
    "non_total",
    "index_out_of_range",
    "invalid_permutation",
    "face_mismatch",
    "not_dihedral",
    "self_glued_face",
    "non_involutive",
    "reversed_edge",
    "disconnected",
]


class Violation(BaseModel):
    kind: ViolationKind
    cell: int
    face: Optional[int] = None
    edge: Optional[Tuple[int, int]] = None
    message: str


class OrbitReport(BaseModel):
    """Counts and representatives of the cell orbits of a valid complex."""

    cells: int
    vertices: int
    edges: int
    faces: int = Field(..., description="Glued face pairs")
    euler_characteristic: int
    vertex_representatives: List[Tuple[int, int]]
    edge_representatives: List[Tuple[int, int]]
    face_representatives: List[Tuple[int, int]]
    edge_degrees: List[int]
    ideal_vertices: int
    finite_vertices: int
    orientable: bool


class ValidationReport(BaseModel):
    ok: bool
    violations: List[Violation] = Field(default_factory=list)
    orbits: Optional[OrbitReport] = None
