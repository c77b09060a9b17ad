"""Surface descriptors, vertex links and dual-surface statistics."""

from __future__ import annotations

from typing import List, Literal

from pydantic import BaseModel, ConfigDict, Field


class SurfaceDescriptor(BaseModel):
    """A compact connected surface up to homeomorphism.

    Orientability, Euler characteristic and the number of boundary
    components determine the surface; ``label`` names it.
    """

    model_config = ConfigDict(frozen=True)

    orientable: bool
    euler_characteristic: int
    boundary_components: int = Field(default=0, ge=0)

    @property
    def closed(self) -> bool:
        return self.boundary_components == 0

    @property
    def is_sphere(self) -> bool:
        return self.orientable and self.closed and self.euler_characteristic == 2

    @property
    def genus(self) -> int:
        """Orientable genus, or number of cross-caps for non-orientable surfaces."""
        deficit = 2 - self.boundary_components - self.euler_characteristic
        return deficit // 2 if self.orientable else deficit

    @property
    def label(self) -> str:
        named = {
            (True, 2, 0): "S2",
            (True, 1, 1): "B2",
            (True, 0, 2): "A",
            (True, 0, 0): "T2",
            (False, 1, 0): "RP2",
            (False, 0, 1): "Mb",
            (False, 0, 0): "K",
        }
        key = (self.orientable, self.euler_characteristic, self.boundary_components)
        if key in named:
            return named[key]
        base = f"S{self.genus}" if self.orientable else f"N{self.genus}"
        return f"{base},{self.boundary_components}" if self.boundary_components else base

    def punctured(self, discs: int) -> "SurfaceDescriptor":
        return SurfaceDescriptor(
            orientable=self.orientable,
            euler_characteristic=self.euler_characteristic - discs,
            boundary_components=self.boundary_components + discs,
        )


SPHERE = SurfaceDescriptor(orientable=True, euler_characteristic=2)
PROJECTIVE_PLANE = SurfaceDescriptor(orientable=False, euler_characteristic=1)
TORUS = SurfaceDescriptor(orientable=True, euler_characteristic=0)
KLEIN_BOTTLE = SurfaceDescriptor(orientable=False, euler_characteristic=0)
DISC = SurfaceDescriptor(orientable=True, euler_characteristic=1, boundary_components=1)
ANNULUS = SurfaceDescriptor(orientable=True, euler_characteristic=0, boundary_components=2)
MOEBIUS_STRIP = SurfaceDescriptor(orientable=False, euler_characteristic=0, boundary_components=1)


class SheetDescriptor(SurfaceDescriptor):
    """A component of the abstract surface of a Dehn surface."""

    two_sided: bool = Field(default=True, description="Transversely co-orientable in M")
    squares: int = Field(default=0, ge=0)


class VertexLink(BaseModel):
    """Link of one vertex class; ideal vertices are the non-sphere links."""

    vertex: int
    link: SurfaceDescriptor
    classification: Literal["finite", "ideal"]
    corners: int


class DehnSurfaceStats(BaseModel):
    """Counts read off an ideal cubulation through duality."""

    triple_points: int
    singular_edges: int
    regions: int
    sheets: List[SheetDescriptor]
    complement: List[VertexLink]
    euler_sigma: int = Field(..., description="T - E + R of the singular cell complex")
    euler_abstract: int = Field(..., description="3T - 2E + R, the Euler characteristic of S")
    complement_balls: int
    boundary_collars: int
    filling: bool = True
