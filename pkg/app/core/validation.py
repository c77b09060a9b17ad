"""Validation, orbit tracing and vertex links for glued 3-complexes.

Triangulations and cubulations go through the same code path: the gluing
table is decoded into a vertex table (see :mod:`app.core.complexes`) and
every check below works on vertex bijections between faces.
"""

from __future__ import annotations

import logging
from functools import lru_cache
from typing import Dict, List, Literal, Optional, Set, Tuple

import networkx as nx

from app.core.complexes import Complex, VertexTable, vertex_table
from app.core.errors import InvalidComplexError
from app.core.surfaces import SideGluing, SurfaceComponent, classify_closed_surfaces, two_colour
from app.core.symmetry import (
    CellShape,
    corner_map_from_vertices,
    cube_gluing_reverses,
    perm_sign,
)
from app.models.base import (
    IdealCubulation,
    IdealTriangulation,
    OrbitReport,
    ValidationReport,
    Violation,
)
from app.models.surfaces import VertexLink

logger = logging.getLogger(__name__)

EdgeStatus = Literal["closed", "reversed", "open"]
Occurrence = Tuple[int, int]  # (cell, edge index)


# ── Edge orbits ───────────────────────────────────────────────────

def walk_edge(
    shape: CellShape, table: VertexTable, cell: int, u: int, v: int
) -> Tuple[EdgeStatus, List[Occurrence]]:
    """Trace the edge ``(u, v)`` of ``cell`` around its class.

    Leave the cell through one face containing the edge, follow the gluing
    and leave the next cell through the other face containing the image
    edge.  The walk ends on returning to the starting state or on reaching
    an unglued face (``"open"``).  Meeting an occurrence in both directions
    means the edge is identified with itself reversed.
    """
    start_face = shape.faces_of_edge(u, v)[0]
    start = (cell, u, v, start_face)
    direction: Dict[Occurrence, Tuple[int, int]] = {(cell, shape.edge_index(u, v)): (u, v)}
    order: List[Occurrence] = [(cell, shape.edge_index(u, v))]
    reversed_seen = False

    c, a, b, f = start
    limit = 2 * len(table) * len(shape.edges) * 2 + 2
    for _ in range(limit):
        record = table[c][f]
        if record is None:
            return ("reversed" if reversed_seen else "open"), order
        c, g, vmap = record
        a, b = vmap[a], vmap[b]
        f = shape.other_face(a, b, g)
        if (c, a, b, f) == start:
            return ("reversed" if reversed_seen else "closed"), order
        key = (c, shape.edge_index(a, b))
        seen = direction.get(key)
        if seen is None:
            direction[key] = (a, b)
            order.append(key)
        elif seen != (a, b):
            reversed_seen = True
    raise RuntimeError("edge walk did not terminate; gluing table is not involutive")


def edge_classes(
    shape: CellShape, table: VertexTable
) -> Tuple[List[List[Occurrence]], List[Tuple[Occurrence, EdgeStatus]]]:
    """Partition edge occurrences into classes; also return the bad ones."""
    assigned: Set[Occurrence] = set()
    classes: List[List[Occurrence]] = []
    problems: List[Tuple[Occurrence, EdgeStatus]] = []
    for cell in range(len(table)):
        for index, (u, v) in enumerate(shape.edges):
            if (cell, index) in assigned:
                continue
            status, members = walk_edge(shape, table, cell, u, v)
            assigned.update(members)
            classes.append(members)
            if status != "closed":
                problems.append(((cell, index), status))
    return classes, problems


def has_reversed_edge(shape: CellShape, table: VertexTable) -> bool:
    """Partial-table check used while enumerating: any reversed edge so far?"""
    _, problems = edge_classes(shape, table)
    return any(status == "reversed" for _, status in problems)


# ── Vertex links ─────────────────────────────────────────────────

def _link_components(shape: CellShape, table: VertexTable) -> List[SurfaceComponent]:
    polygons: Dict[Tuple[int, int], Tuple[int, ...]] = {
        (cell, v): shape.neighbours(v)
        for cell in range(len(table))
        for v in range(shape.vertex_count)
    }
    gluings: List[SideGluing] = []
    for cell, row in enumerate(table):
        for face, record in enumerate(row):
            if record is None:
                continue
            target, target_face, vmap = record
            if (target, target_face) <= (cell, face):
                continue
            corners = shape.faces[face]
            for v in corners:
                side = tuple(w for w in shape.neighbours(v) if w in corners)
                gluings.append(
                    SideGluing(
                        a=(cell, v),
                        side_a=side,  # type: ignore[arg-type]
                        b=(target, vmap[v]),
                        side_b=(vmap[side[0]], vmap[side[1]]),
                    )
                )
    return classify_closed_surfaces(polygons, gluings)


# ── Orientability ────────────────────────────────────────────────

def _orientable(x: Complex, table: VertexTable) -> bool:
    cubical = isinstance(x, IdealCubulation)
    edges: Dict[int, List[Tuple[int, int]]] = {}
    for cell, row in enumerate(table):
        for face, record in enumerate(row):
            target, target_face, vmap = record  # type: ignore[misc]
            if cubical:
                corner_map = corner_map_from_vertices(face, target_face, vmap)
                compatible = cube_gluing_reverses(face, target_face, corner_map)
            else:
                compatible = perm_sign(x.gluings[cell][face].perm) == -1  # type: ignore[union-attr]
            edges.setdefault(cell, []).append((target, 0 if compatible else 1))
    return two_colour(range(len(table)), edges)


# ── Full analysis ────────────────────────────────────────────────

def _structural_violations(x: Complex, table: VertexTable) -> List[Violation]:
    violations: List[Violation] = []
    name = "cube" if isinstance(x, IdealCubulation) else "tetrahedron"
    for cell, row in enumerate(table):
        for face, record in enumerate(row):
            if record is None:
                continue
            target, target_face, vmap = record
            if (target, target_face) == (cell, face):
                violations.append(
                    Violation(
                        kind="self_glued_face",
                        cell=cell,
                        face=face,
                        message=f"{name} {cell} face {face} is glued to itself",
                    )
                )
                continue
            raw_partner = x.gluings[target][target_face]
            partner = table[target][target_face]
            if raw_partner is None or partner is None:
                continue
            back = partner is not None and partner[0] == cell and partner[1] == face
            if not back or any(partner[2][w] != v for v, w in vmap.items()):  # type: ignore[index]
                violations.append(
                    Violation(
                        kind="non_involutive",
                        cell=cell,
                        face=face,
                        message=f"record of {name} {cell} face {face} is not inverted by "
                        f"the record of {name} {target} face {target_face}",
                    )
                )
    return violations


def _connectivity(x: Complex) -> Optional[Violation]:
    graph = nx.Graph()
    graph.add_nodes_from(range(x.size))
    for cell, row in enumerate(x.gluings):
        for record in row:
            if record is not None and record.cell < x.size:
                graph.add_edge(cell, record.cell)
    if nx.is_connected(graph):
        return None
    parts = nx.number_connected_components(graph)
    return Violation(kind="disconnected", cell=0, message=f"complex has {parts} connected components")


@lru_cache(maxsize=256)
def _analyse(x: Complex) -> Tuple[ValidationReport, Tuple[SurfaceComponent, ...]]:
    shape, table, violations = vertex_table(x)
    violations.extend(_structural_violations(x, table))
    disconnected = _connectivity(x)
    if disconnected is not None:
        violations.append(disconnected)
    if violations:
        return ValidationReport(ok=False, violations=violations), ()

    classes, problems = edge_classes(shape, table)
    for (cell, index), _status in problems:
        u, v = shape.edges[index]
        violations.append(
            Violation(
                kind="reversed_edge",
                cell=cell,
                edge=(u, v),
                message=f"edge {u}-{v} of {shape.name} {cell} is identified with itself reversed",
            )
        )
    if violations:
        return ValidationReport(ok=False, violations=violations), ()

    links = _link_components(shape, table)
    face_reps = [
        (cell, face)
        for cell, row in enumerate(table)
        for face, record in enumerate(row)
        if (record[0], record[1]) > (cell, face)  # type: ignore[index]
    ]
    vertex_count, edge_count, face_count = len(links), len(classes), len(face_reps)
    finite = sum(1 for comp in links if comp.surface.is_sphere)
    orbits = OrbitReport(
        cells=x.size,
        vertices=vertex_count,
        edges=edge_count,
        faces=face_count,
        euler_characteristic=vertex_count - edge_count + face_count - x.size,
        vertex_representatives=[comp.cells[0] for comp in links],  # type: ignore[misc]
        edge_representatives=[members[0] for members in classes],
        face_representatives=face_reps,
        edge_degrees=[len(members) for members in classes],
        ideal_vertices=vertex_count - finite,
        finite_vertices=finite,
        orientable=_orientable(x, table),
    )
    return ValidationReport(ok=True, orbits=orbits), tuple(links)


def validate_triangulation(t: IdealTriangulation) -> ValidationReport:
    report, _ = _analyse(t)
    logger.debug("Validated triangulation n=%d: ok=%s", t.n, report.ok)
    return report.model_copy(deep=True)


def validate_cubulation(c: IdealCubulation) -> ValidationReport:
    report, _ = _analyse(c)
    logger.debug("Validated cubulation k=%d: ok=%s", c.k, report.ok)
    return report.model_copy(deep=True)


def validate(x: Complex) -> ValidationReport:
    if isinstance(x, IdealCubulation):
        return validate_cubulation(x)
    return validate_triangulation(x)


def require_valid(x: Complex) -> OrbitReport:
    """Return the orbit report of ``x`` or raise :class:`InvalidComplexError`."""
    report, _ = _analyse(x)
    if not report.ok:
        raise InvalidComplexError(report, x.kind)
    return report.orbits  # type: ignore[return-value]


def vertex_links(x: Complex) -> List[VertexLink]:
    """One closed link surface per vertex class; spheres are finite vertices."""
    require_valid(x)
    _, links = _analyse(x)
    return [
        VertexLink(
            vertex=index,
            link=comp.surface,
            classification="finite" if comp.surface.is_sphere else "ideal",
            corners=len(comp.cells),
        )
        for index, comp in enumerate(links)
    ]


def euler_identity_check(x: Complex) -> bool:
    """``V - E + F - cells`` against ``V - (sum of link characteristics) / 2``."""
    orbits = require_valid(x)
    link_total = sum(link.link.euler_characteristic for link in vertex_links(x))
    return 2 * orbits.euler_characteristic == 2 * orbits.vertices - link_total


def non_sphere_links(x: Complex) -> List[Tuple[bool, int]]:
    """Sorted (orientable, chi) of the ideal vertex links."""
    return sorted(
        (link.link.orientable, link.link.euler_characteristic)
        for link in vertex_links(x)
        if link.classification == "ideal"
    )


def vertex_classes_of(x: Complex) -> Dict[Tuple[int, int], int]:
    """Map every (cell, vertex) corner to its vertex class index."""
    require_valid(x)
    _, links = _analyse(x)
    return {corner: index for index, comp in enumerate(links) for corner in comp.cells}  # type: ignore[misc]


def edge_class_of(x: Complex) -> Dict[Occurrence, int]:
    """Map every (cell, edge index) occurrence to its edge class index."""
    require_valid(x)
    shape, table, _ = vertex_table(x)
    classes, _ = edge_classes(shape, table)
    return {occ: index for index, members in enumerate(classes) for occ in members}

