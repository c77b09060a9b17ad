"""Quasi-filling Dehn surfaces as expression trees.

A surface is either a filling base (an ideal cubulation read through
duality), an item of the exceptional catalog, or is built from those by
bubble moves and (boundary) connected sums.
"""

from __future__ import annotations

from typing import Annotated, List, Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Discriminator, Field, Tag

from app.models.base import IdealCubulation
from app.models.surfaces import SurfaceDescriptor


ExceptionalKind = Literal[
    "sphere",
    "projective_plane",
    "surface_bundle",
    "double_projective_plane",
    "four_hat",
    "two_spheres_along_circle",
    "sphere_torus_loop",
    "sphere_klein_loop",
    "self_intersecting_sphere",
]


class ExceptionalSurface(BaseModel):
    """A quasi-filling surface without triple points.

    ``punctures`` counts the balls removed from the closed model manifold;
    ``base`` is the fibre surface of a ``surface_bundle``; ``orientable``
    picks the solid torus (True) or solid Klein bottle for a
    ``self_intersecting_sphere``.
    """

    model_config = ConfigDict(frozen=True)

    kind: ExceptionalKind
    punctures: int = Field(default=0, ge=0)
    base: Optional[SurfaceDescriptor] = None
    orientable: bool = True


# ── Expression nodes ─────────────────────────────────────────────

class FillingBase(BaseModel):
    model_config = ConfigDict(frozen=True)

    node: Literal["base"] = "base"
    cubulation: IdealCubulation
    name: Optional[str] = Field(default=None, description="Manifold tag, e.g. the source file")


class Exceptional(BaseModel):
    model_config = ConfigDict(frozen=True)

    node: Literal["exceptional"] = "exceptional"
    surface: ExceptionalSurface


class Bubble(BaseModel):
    model_config = ConfigDict(frozen=True)

    node: Literal["bubble"] = "bubble"
    child: "QuasiFillingSurface"
    region: int = Field(..., ge=0)


class ConnSum(BaseModel):
    model_config = ConfigDict(frozen=True)

    node: Literal["csum"] = "csum"
    left: "QuasiFillingSurface"
    right: "QuasiFillingSurface"


class BoundaryConnSum(BaseModel):
    model_config = ConfigDict(frozen=True)

    node: Literal["bcsum"] = "bcsum"
    left: "QuasiFillingSurface"
    right: "QuasiFillingSurface"


def _get_node_type(v) -> str:
    """Extract the ``node`` key for discriminator routing."""
    if isinstance(v, dict):
        return v.get("node", "")
    return getattr(v, "node", "")


QuasiFillingSurface = Annotated[
    Union[
        Annotated[FillingBase, Tag("base")],
        Annotated[Exceptional, Tag("exceptional")],
        Annotated[Bubble, Tag("bubble")],
        Annotated[ConnSum, Tag("csum")],
        Annotated[BoundaryConnSum, Tag("bcsum")],
    ],
    Discriminator(_get_node_type),
]

Bubble.model_rebuild()
ConnSum.model_rebuild()
BoundaryConnSum.model_rebuild()


class QfsStats(BaseModel):
    """Derived data of an expression; ``None`` marks values not tracked under sums."""

    triple_points: int
    complement_balls: Optional[int] = None
    euler_abstract: Optional[int] = None
    sheets: Optional[List[SurfaceDescriptor]] = None
    regions: int
    is_filling: bool
    manifold: str
