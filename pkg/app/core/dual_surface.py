"""The filling Dehn surface dual to an ideal cubulation.

Each cube holds one triple point and three mid-squares, one perpendicular
to each axis.  The mid-square perpendicular to axis ``i`` has a corner on
every cube edge parallel to ``i``; such an edge is named by its endpoint
with ``b_i = 0``.  Across a glued face the square continues into the
neighbouring cube along the image of that edge, which fixes both the
sheet structure of the abstract surface S and its co-orientation.
"""

from __future__ import annotations

import logging
from typing import Dict, List, Tuple

from app.core.complexes import vertex_table
from app.core.surfaces import SideGluing, classify_closed_surfaces
from app.core.symmetry import FACE_CORNERS, bit, face_axis
from app.core.validation import require_valid, vertex_links
from app.models.base import IdealCubulation
from app.models.surfaces import DehnSurfaceStats, SheetDescriptor

logger = logging.getLogger(__name__)

Square = Tuple[int, int]  # (cube, axis)


def _axis_of(u: int, w: int) -> int:
    return {4: 0, 2: 1, 1: 2}[u ^ w]


def _edge_name(u: int, w: int) -> int:
    """Endpoint of the edge ``{u, w}`` with the smaller id (the ``b = 0`` end)."""
    return min(u, w)


def _square_cycle(axis: int) -> Tuple[int, ...]:
    j, l = [a for a in range(3) if a != axis]
    corners = []
    for bj, bl in ((0, 0), (0, 1), (1, 1), (1, 0)):
        v = (bj << (2 - j)) | (bl << (2 - l))
        corners.append(v)
    return tuple(corners)


def _mid_squares(c: IdealCubulation) -> Tuple[Dict[Square, Tuple[int, ...]], List[SideGluing], List[int]]:
    _, table, _ = vertex_table(c)
    polygons = {(cube, axis): _square_cycle(axis) for cube in range(c.k) for axis in range(3)}
    gluings: List[SideGluing] = []
    coorientation: List[int] = []
    for cube, row in enumerate(table):
        for face, record in enumerate(row):
            target, target_face, vmap = record  # type: ignore[misc]
            if (target, target_face) <= (cube, face):
                continue
            corners = FACE_CORNERS[face]
            for axis in range(3):
                if axis == face_axis(face):
                    continue
                # the two face edges parallel to ``axis``, as (b=0 end, b=1 end)
                edges = sorted(
                    (u, w) for u in corners for w in corners if u < w and u ^ w == 1 << (2 - axis)
                )
                images = [(vmap[u], vmap[w]) for u, w in edges]
                target_axis = _axis_of(*images[0])
                gluings.append(
                    SideGluing(
                        a=(cube, axis),
                        side_a=(edges[0][0], edges[1][0]),
                        b=(target, target_axis),
                        side_b=(_edge_name(*images[0]), _edge_name(*images[1])),
                    )
                )
                # positive normal of the square runs from b=0 to b=1 along ``axis``
                coorientation.append(bit(images[0][0], target_axis))
    return polygons, gluings, coorientation


def trace_sheets(c: IdealCubulation) -> List[SheetDescriptor]:
    """Components of the abstract surface S, each a closed surface."""
    require_valid(c)
    polygons, gluings, coorientation = _mid_squares(c)
    components = classify_closed_surfaces(polygons, gluings, coorientation)
    return [
        SheetDescriptor(
            orientable=comp.surface.orientable,
            euler_characteristic=comp.surface.euler_characteristic,
            two_sided=comp.two_sided,
            squares=len(comp.cells),
        )
        for comp in components
    ]


def dual_surface_stats(c: IdealCubulation) -> DehnSurfaceStats:
    """Triple points, singular edges, regions, sheets and complement of the dual surface."""
    orbits = require_valid(c)
    triple = c.k
    singular = orbits.faces
    regions = orbits.edges
    complement = vertex_links(c)
    stats = DehnSurfaceStats(
        triple_points=triple,
        singular_edges=singular,
        regions=regions,
        sheets=trace_sheets(c),
        complement=complement,
        euler_sigma=triple - singular + regions,
        euler_abstract=3 * triple - 2 * singular + regions,
        complement_balls=orbits.finite_vertices,
        boundary_collars=orbits.ideal_vertices,
    )
    logger.debug(
        "Dual surface of k=%d: T=%d E=%d R=%d sheets=%d",
        c.k,
        triple,
        singular,
        regions,
        len(stats.sheets),
    )
    return stats


def manifold_boundary_components(c: IdealCubulation) -> int:
    """Boundary components of M, one per ideal vertex."""
    return require_valid(c).ideal_vertices


def spherical_boundary(c: IdealCubulation) -> int:
    """Balls removed from M to reach the punctured manifold, one per finite vertex."""
    return require_valid(c).finite_vertices
