"""Classification of closed surfaces assembled from glued polygons.

Vertex links (triangles), the sheets of a dual Dehn surface (squares) and
the closed surface presented by a 2D square cubulation are all built the
same way: polygons with a cyclic corner order, glued in pairs along sides.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass
from typing import Dict, Hashable, List, Mapping, Sequence, Tuple

import networkx as nx

from app.core.errors import DescriptorError
from app.models.surfaces import SurfaceDescriptor

CellKey = Hashable
Corner = Hashable


@dataclass(frozen=True)
class SideGluing:
    """Side ``(p, q)`` of polygon ``a`` glued to side ``(p2, q2)`` of ``b``, ``p -> p2``."""

    a: CellKey
    side_a: Tuple[Corner, Corner]
    b: CellKey
    side_b: Tuple[Corner, Corner]


@dataclass(frozen=True)
class SurfaceComponent:
    cells: Tuple[CellKey, ...]
    surface: SurfaceDescriptor
    two_sided: bool = True


def _direction(cycle: Sequence[Corner], p: Corner, q: Corner) -> int:
    i = cycle.index(p)
    if cycle[(i + 1) % len(cycle)] == q:
        return 1
    if cycle[(i - 1) % len(cycle)] == q:
        return -1
    raise ValueError(f"{p!r} and {q!r} are not consecutive corners of {cycle!r}")


def two_colour(
    cells: Sequence[CellKey], edges: Mapping[CellKey, List[Tuple[CellKey, int]]]
) -> bool:
    """Try to assign 0/1 to cells so every edge parity is the xor of its ends."""
    colour: Dict[CellKey, int] = {}
    for start in cells:
        if start in colour:
            continue
        colour[start] = 0
        queue = deque([start])
        while queue:
            cell = queue.popleft()
            for other, flip in edges.get(cell, ()):
                wanted = colour[cell] ^ flip
                if other not in colour:
                    colour[other] = wanted
                    queue.append(other)
                elif colour[other] != wanted:
                    return False
    return True


def classify_closed_surfaces(
    polygons: Mapping[CellKey, Sequence[Corner]],
    gluings: Sequence[SideGluing],
    coorientation: Sequence[int] | None = None,
) -> List[SurfaceComponent]:
    """Split the glued polygons into closed surfaces and classify each.

    ``coorientation`` optionally gives one flip bit per gluing for a
    second, transverse 2-colouring (two-sidedness of a sheet).
    """
    side_total = sum(len(corners) for corners in polygons.values())
    if 2 * len(gluings) != side_total:
        raise ValueError(
            f"surface is not closed: {side_total} polygon sides but {len(gluings)} gluings"
        )

    cell_graph = nx.MultiGraph()
    cell_graph.add_nodes_from(polygons)
    corner_graph = nx.Graph()
    corner_graph.add_nodes_from((cell, c) for cell, corners in polygons.items() for c in corners)
    orient_edges: Dict[CellKey, List[Tuple[CellKey, int]]] = {}
    side_edges: Dict[CellKey, List[Tuple[CellKey, int]]] = {}

    for index, g in enumerate(gluings):
        cell_graph.add_edge(g.a, g.b)
        corner_graph.add_edge((g.a, g.side_a[0]), (g.b, g.side_b[0]))
        corner_graph.add_edge((g.a, g.side_a[1]), (g.b, g.side_b[1]))
        same = _direction(polygons[g.a], *g.side_a) == _direction(polygons[g.b], *g.side_b)
        flip = 1 if same else 0
        orient_edges.setdefault(g.a, []).append((g.b, flip))
        orient_edges.setdefault(g.b, []).append((g.a, flip))
        if coorientation is not None:
            side_flip = coorientation[index]
            side_edges.setdefault(g.a, []).append((g.b, side_flip))
            side_edges.setdefault(g.b, []).append((g.a, side_flip))

    components: List[SurfaceComponent] = []
    for cells in nx.connected_components(cell_graph):
        ordered = sorted(cells)
        corners = corner_graph.subgraph(
            (cell, c) for cell in ordered for c in polygons[cell]
        )
        vertex_count = nx.number_connected_components(corners)
        side_count = sum(len(polygons[cell]) for cell in ordered) // 2
        surface = SurfaceDescriptor(
            orientable=two_colour(ordered, orient_edges),
            euler_characteristic=vertex_count - side_count + len(ordered),
        )
        two_sided = two_colour(ordered, side_edges) if coorientation is not None else True
        components.append(SurfaceComponent(tuple(ordered), surface, two_sided))

    components.sort(key=lambda comp: comp.cells[0])
    return components


_NAMED = {
    "S2": (True, 2, 0),
    "B2": (True, 1, 1),
    "A": (True, 0, 2),
    "T2": (True, 0, 0),
    "RP2": (False, 1, 0),
    "Mb": (False, 0, 1),
    "K": (False, 0, 0),
}
_GENERIC = re.compile(r"^([SN])(\d+)(?:,(\d+))?$")


def surface_from_label(label: str) -> SurfaceDescriptor:
    """Inverse of :attr:`SurfaceDescriptor.label`."""
    label = label.strip()
    if label in _NAMED:
        orientable, chi, boundary = _NAMED[label]
        return SurfaceDescriptor(
            orientable=orientable, euler_characteristic=chi, boundary_components=boundary
        )
    match = _GENERIC.match(label)
    if match is None:
        raise DescriptorError(f"unknown surface label {label!r}")
    orientable = match.group(1) == "S"
    genus = int(match.group(2))
    boundary = int(match.group(3) or 0)
    if not orientable and genus == 0:
        raise DescriptorError("a non-orientable surface needs at least one cross-cap")
    chi = (2 - 2 * genus if orientable else 2 - genus) - boundary
    return SurfaceDescriptor(
        orientable=orientable, euler_characteristic=chi, boundary_components=boundary
    )
