"""Dehn loops on compact surfaces, read as 4-valent ribbon graphs.

A diagram thickens to a surface with boundary; capping some boundary
components with discs recovers the surfaces the loop quasi-fills.  The
dual picture is a 2D ideal cubulation: one square per crossing, glued
along sides as prescribed by the arcs and their twist bits.

Diagram text form::

    crossings=1; edge 0.0 0.2 twist=0; edge 0.1 0.3 twist=0
    crossings=0; loop twist=1
"""

from __future__ import annotations

import itertools
import logging
import re
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Dict, Iterator, List, Optional, Sequence, Tuple, Union

import networkx as nx

from app.core.errors import DescriptorError, DiagramError, MissingRibbonDataError
from app.core.settings import get_settings
from app.core.surfaces import SideGluing, classify_closed_surfaces, two_colour
from app.models.loops import (
    DehnLoopDiagram,
    DiagramEdge,
    FreeLoop,
    Slot,
    SquareCubulation2D,
    SquareSide,
)
from app.models.surfaces import SurfaceDescriptor

logger = logging.getLogger(__name__)

Partners = Dict[Slot, Tuple[Slot, int]]


# ── Well-formedness ─────────────────────────────────────────────

def check_diagram(d: DehnLoopDiagram) -> None:
    """Raise :class:`DiagramError` unless every slot is used once and the diagram is connected."""
    if d.crossings == 0:
        if d.edges:
            raise DiagramError("a diagram without crossings has no slots to join")
        if len(d.loops) != 1:
            raise DiagramError(f"expected exactly one free loop, got {len(d.loops)}")
        return
    if d.loops:
        raise DiagramError("free loops next to crossings make the diagram disconnected")

    used: Dict[Slot, int] = {}
    graph = nx.MultiGraph()
    graph.add_nodes_from(range(d.crossings))
    for index, edge in enumerate(d.edges):
        for v, s in (edge.a, edge.b):
            if not (0 <= v < d.crossings and 0 <= s < 4):
                raise DiagramError(f"edge {index}: slot {v}.{s} does not exist")
        if edge.a == edge.b:
            raise DiagramError(f"edge {index}: joins slot {edge.a[0]}.{edge.a[1]} to itself")
        for slot in (edge.a, edge.b):
            if slot in used:
                raise DiagramError(
                    f"slot {slot[0]}.{slot[1]} used by edges {used[slot]} and {index}"
                )
            used[slot] = index
        graph.add_edge(edge.a[0], edge.b[0])
    if len(used) != 4 * d.crossings:
        free = sorted({(v, s) for v in range(d.crossings) for s in range(4)} - set(used))
        raise DiagramError("unused slots: " + ", ".join(f"{v}.{s}" for v, s in free))
    if not nx.is_connected(graph):
        raise DiagramError("diagram is not connected")


def _twist(value: Optional[int]) -> int:
    if value is None:
        raise MissingRibbonDataError(
            "a bare loop does not say which of the two gluings to use along its arcs; "
            "give a twist bit for every edge"
        )
    return value


def _partners(d: DehnLoopDiagram) -> Partners:
    partner: Partners = {}
    for edge in d.edges:
        twist = _twist(edge.twist)
        partner[edge.a] = (edge.b, twist)
        partner[edge.b] = (edge.a, twist)
    return partner


# ── Thickening ──────────────────────────────────────────────────

def _boundary_orbits(crossings: int, partner: Partners) -> int:
    """Orbits of the corner walk; every boundary circle shows up once per direction."""
    seen = set()
    orbits = 0
    for start in itertools.product(range(crossings), range(4), (1, -1)):
        if start in seen:
            continue
        orbits += 1
        state = start
        while state not in seen:
            seen.add(state)
            v, s, o = state
            (w, t), twist = partner[(v, s)]
            o = -o if twist else o
            state = (w, (t + o) % 4, o)
    return orbits


def thicken(d: DehnLoopDiagram) -> SurfaceDescriptor:
    """The regular neighbourhood of the loop, built from its ribbon structure."""
    check_diagram(d)
    if d.crossings == 0:
        twisted = _twist(d.loops[0].twist)
        return SurfaceDescriptor(
            orientable=not twisted,
            euler_characteristic=0,
            boundary_components=1 if twisted else 2,
        )
    partner = _partners(d)
    flips: Dict[int, List[Tuple[int, int]]] = {}
    for edge in d.edges:
        flips.setdefault(edge.a[0], []).append((edge.b[0], edge.twist))  # type: ignore[arg-type]
        flips.setdefault(edge.b[0], []).append((edge.a[0], edge.twist))  # type: ignore[arg-type]
    return SurfaceDescriptor(
        orientable=two_colour(range(d.crossings), flips),
        euler_characteristic=d.crossings - len(d.edges),
        boundary_components=_boundary_orbits(d.crossings, partner) // 2,
    )


def strand_count(d: DehnLoopDiagram) -> int:
    """Number of immersed circles: enter a crossing, leave through the opposite slot."""
    check_diagram(d)
    partner = {e.a: e.b for e in d.edges} | {e.b: e.a for e in d.edges}
    seen = set()
    strands = len(d.loops)
    for start in sorted(partner):
        if start in seen:
            continue
        strands += 1
        slot = start
        while slot not in seen:
            far = partner[slot]
            seen.update((slot, far))
            slot = (far[0], (far[1] + 2) % 4)
    return strands


def mirror(d: DehnLoopDiagram) -> DehnLoopDiagram:
    """Reverse the cyclic order at every crossing."""

    def flipped(slot: Slot) -> Slot:
        return slot[0], (-slot[1]) % 4

    return DehnLoopDiagram(
        crossings=d.crossings,
        edges=tuple(e.model_copy(update={"a": flipped(e.a), "b": flipped(e.b)}) for e in d.edges),
        loops=d.loops,
    )


def ribbon_completions(d: DehnLoopDiagram) -> List[Tuple[Tuple[int, ...], SurfaceDescriptor]]:
    """Thicken every twist assignment of ``d``; existing twist bits are ignored.

    The abstract loop alone does not pick one of these surfaces.
    """
    completions = []
    slots = len(d.edges) if d.crossings else len(d.loops)
    for bits in itertools.product((0, 1), repeat=slots):
        if d.crossings:
            candidate = d.model_copy(
                update={"edges": tuple(e.model_copy(update={"twist": b}) for e, b in zip(d.edges, bits))}
            )
        else:
            candidate = d.model_copy(update={"loops": tuple(FreeLoop(twist=b) for b in bits)})
        completions.append((bits, thicken(candidate)))
    return completions


# ── Loop complexity ─────────────────────────────────────────────

def check_descriptor(s: SurfaceDescriptor) -> None:
    deficit = 2 - s.boundary_components - s.euler_characteristic
    if s.orientable and (deficit < 0 or deficit % 2):
        raise DescriptorError(
            f"no orientable surface has chi={s.euler_characteristic} "
            f"with {s.boundary_components} boundary components"
        )
    if not s.orientable and deficit < 1:
        raise DescriptorError(
            f"no non-orientable surface has chi={s.euler_characteristic} "
            f"with {s.boundary_components} boundary components"
        )


def loop_complexity(s: SurfaceDescriptor) -> int:
    """Minimal crossing count of a quasi-filling loop."""
    check_descriptor(s)
    chi = s.euler_characteristic
    if s.closed:
        return 0 if s.is_sphere else 1 - chi
    if s.orientable and chi == 1:
        return 0
    return -chi


def is_quasi_filling(d: DehnLoopDiagram, target: SurfaceDescriptor) -> bool:
    thick = thicken(d)
    punctures = thick.boundary_components - target.boundary_components
    if punctures < 0 or (target.closed and punctures == 0):
        return False
    return thick == target.punctured(punctures)


def is_filling(d: DehnLoopDiagram) -> bool:
    check_diagram(d)
    return d.crossings > 0


def quasi_filled_surfaces(d: DehnLoopDiagram) -> List[SurfaceDescriptor]:
    """Every surface the diagram quasi-fills, by number of capped boundary circles."""
    thick = thicken(d)
    surfaces = []
    for capped in range(thick.boundary_components + 1):
        surfaces.append(thick.punctured(-capped))
    return surfaces


# ── Enumeration ─────────────────────────────────────────────────

def _rotation_code(crossings: int, partner: Partners, v0: int, r0: int, f0: int) -> Tuple:
    label = {v0: 0}
    frame = {v0: (r0, f0)}
    order = [v0]
    code = []
    i = 0
    while i < len(order):
        v = order[i]
        r, f = frame[v]
        step = -1 if f else 1
        for j in range(4):
            (w, t), twist = partner[(v, (r + step * j) % 4)]
            if w not in label:
                label[w] = len(order)
                order.append(w)
                frame[w] = (t, twist ^ f)
            rw, fw = frame[w]
            code.append((label[w], ((t - rw) * (-1 if fw else 1)) % 4, twist ^ f ^ fw))
        i += 1
    return tuple(code)


def canonical_key(d: DehnLoopDiagram) -> Tuple:
    """Equal exactly for isomorphic ribbon graphs (vertex flips included)."""
    check_diagram(d)
    if d.crossings == 0:
        return (0, (_twist(d.loops[0].twist),))
    partner = _partners(d)
    best = min(
        _rotation_code(d.crossings, partner, v0, r0, f0)
        for v0 in range(d.crossings)
        for r0 in range(4)
        for f0 in (0, 1)
    )
    return (d.crossings, best)


def _matchings(slots: Sequence[Slot]) -> Iterator[Tuple[Tuple[Slot, Slot], ...]]:
    if not slots:
        yield ()
        return
    first, rest = slots[0], slots[1:]
    for i, other in enumerate(rest):
        for tail in _matchings(rest[:i] + rest[i + 1 :]):
            yield ((first, other),) + tail


def _diagrams_with_first_pair(crossings: int, first: Tuple[Slot, Slot]) -> Dict[Tuple, DehnLoopDiagram]:
    slots = [(v, s) for v in range(crossings) for s in range(4)]
    rest = [slot for slot in slots if slot not in first]
    found: Dict[Tuple, DehnLoopDiagram] = {}
    for tail in _matchings(rest):
        pairs = (first,) + tail
        graph = nx.MultiGraph()
        graph.add_nodes_from(range(crossings))
        graph.add_edges_from((a[0], b[0]) for a, b in pairs)
        if not nx.is_connected(graph):
            continue
        # Vertex flips untwist any spanning tree, so only the other arcs get free bits.
        tree = {frozenset((u, v)) for u, v in nx.minimum_spanning_edges(nx.Graph(graph), data=False)}
        tree_edges = set()
        for index, (a, b) in enumerate(pairs):
            key = frozenset((a[0], b[0]))
            if key in tree:
                tree.discard(key)
                tree_edges.add(index)
        free = [i for i in range(len(pairs)) if i not in tree_edges]
        for bits in itertools.product((0, 1), repeat=len(free)):
            twists = dict(zip(free, bits))
            d = DehnLoopDiagram(
                crossings=crossings,
                edges=tuple(
                    DiagramEdge(a=a, b=b, twist=twists.get(i, 0)) for i, (a, b) in enumerate(pairs)
                ),
            )
            found.setdefault(canonical_key(d), d)
    return found


def enumerate_diagrams(crossings: int, workers: Optional[int] = None) -> List[DehnLoopDiagram]:
    """All connected diagrams with ``crossings`` crossings, one per isomorphism class."""
    if crossings < 0:
        raise DiagramError(f"crossing count must be non-negative, got {crossings}")
    if crossings == 0:
        return [DehnLoopDiagram(loops=(FreeLoop(twist=t),)) for t in (0, 1)]
    workers = get_settings().workers if workers is None else workers
    head: Slot = (0, 0)
    firsts = [(head, (v, s)) for v in range(crossings) for s in range(4) if (v, s) != head]
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(lambda first: _diagrams_with_first_pair(crossings, first), firsts))
    else:
        parts = [_diagrams_with_first_pair(crossings, first) for first in firsts]
    merged: Dict[Tuple, DehnLoopDiagram] = {}
    for part in parts:
        for key, d in part.items():
            merged.setdefault(key, d)
    logger.info("Enumerated %d diagram classes with %d crossings", len(merged), crossings)
    return [merged[key] for key in sorted(merged)]


def brute_force_lc(
    target: SurfaceDescriptor, max_crossings: int = 2, workers: Optional[int] = None
) -> Optional[int]:
    """Smallest crossing count of an enumerated diagram quasi-filling ``target``."""
    check_descriptor(target)
    for crossings in range(max_crossings + 1):
        if any(is_quasi_filling(d, target) for d in enumerate_diagrams(crossings, workers)):
            return crossings
    return None


def filling_sizes(max_crossings: int = 1) -> Dict[str, List[int]]:
    """For each surface label, the crossing counts of diagrams quasi-filling it."""
    sizes: Dict[str, set] = {}
    for crossings in range(max_crossings + 1):
        for d in enumerate_diagrams(crossings):
            for surface in quasi_filled_surfaces(d):
                sizes.setdefault(surface.label, set()).add(crossings)
    return {label: sorted(counts) for label, counts in sorted(sizes.items())}


def non_filling_targets() -> List[str]:
    """Labels of the surfaces quasi-filled by a loop without crossings."""
    return sorted(label for label, counts in filling_sizes(0).items() if 0 in counts)


# ── Square cubulations ──────────────────────────────────────────

def check_square_cubulation(q: SquareCubulation2D) -> None:
    graph = nx.MultiGraph()
    graph.add_nodes_from(range(q.squares))
    for square, row in enumerate(q.gluings):
        if len(row) != 4:
            raise DiagramError(f"square {square} has {len(row)} sides, expected 4")
        for side, record in enumerate(row):
            if record is None:
                raise DiagramError(f"side {square}.{side} is not glued")
            if record.square >= q.squares:
                raise DiagramError(f"side {square}.{side} points at missing square {record.square}")
            if (record.square, record.side) == (square, side):
                raise DiagramError(f"side {square}.{side} is glued to itself")
            back = q.gluings[record.square][record.side]
            if back is None or (back.square, back.side, back.flip) != (square, side, record.flip):
                raise DiagramError(f"gluing of side {square}.{side} is not involutive")
            graph.add_edge(square, record.square)
    if not nx.is_connected(graph):
        raise DiagramError("square cubulation is not connected")


def diagram_to_square_cubulation(d: DehnLoopDiagram) -> SquareCubulation2D:
    """One square per crossing; each arc glues two sides, its twist picks the identification."""
    check_diagram(d)
    if d.crossings == 0:
        raise DiagramError("a loop without crossings has no dual squares")
    partner = _partners(d)
    gluings = tuple(
        tuple(
            SquareSide(square=partner[(v, s)][0][0], side=partner[(v, s)][0][1], flip=partner[(v, s)][1])
            for s in range(4)
        )
        for v in range(d.crossings)
    )
    return SquareCubulation2D(gluings=gluings)


def square_cubulation_to_diagram(q: SquareCubulation2D) -> DehnLoopDiagram:
    check_square_cubulation(q)
    edges = []
    for square, row in enumerate(q.gluings):
        for side, record in enumerate(row):
            if (record.square, record.side) >= (square, side):  # type: ignore[union-attr]
                edges.append(
                    DiagramEdge(a=(square, side), b=(record.square, record.side), twist=record.flip)  # type: ignore[union-attr]
                )
    return DehnLoopDiagram(crossings=q.squares, edges=tuple(edges))


def square_cubulation_surface(q: SquareCubulation2D) -> SurfaceDescriptor:
    """The closed surface the squares present."""
    check_square_cubulation(q)
    polygons = {square: (0, 1, 2, 3) for square in range(q.squares)}
    gluings = []
    for square, row in enumerate(q.gluings):
        for side, record in enumerate(row):
            if (record.square, record.side) < (square, side):  # type: ignore[union-attr]
                continue
            t = record.side  # type: ignore[union-attr]
            # flip 0 reverses the side so the two square orientations agree
            far = ((t + 1) % 4, t) if record.flip == 0 else (t, (t + 1) % 4)  # type: ignore[union-attr]
            gluings.append(SideGluing(square, (side, (side + 1) % 4), record.square, far))  # type: ignore[union-attr]
    return classify_closed_surfaces(polygons, gluings)[0].surface


# ── Text form ───────────────────────────────────────────────────

_CROSSINGS = re.compile(r"^crossings\s*=\s*(\d+)$")
_EDGE = re.compile(r"^edge\s+(\d+)\.([0-3])\s+(\d+)\.([0-3])(?:\s+twist\s*=\s*([01]))?$")
_LOOP = re.compile(r"^loop(?:\s+twist\s*=\s*([01]))?$")


def parse_diagram_text(text: str) -> DehnLoopDiagram:
    """Parse the ``;``/newline separated diagram form; a missing twist makes the edge bare."""
    crossings: Optional[int] = None
    edges: List[DiagramEdge] = []
    loops: List[FreeLoop] = []
    for number, raw in enumerate(text.splitlines(), start=1):
        for item in raw.split("#", 1)[0].split(";"):
            item = " ".join(item.split())
            if not item:
                continue
            if (m := _CROSSINGS.match(item)) is not None:
                if crossings is not None:
                    raise DiagramError(f"line {number}: crossings given twice")
                crossings = int(m.group(1))
            elif (m := _EDGE.match(item)) is not None:
                twist = None if m.group(5) is None else int(m.group(5))
                edges.append(
                    DiagramEdge(a=(int(m.group(1)), int(m.group(2))), b=(int(m.group(3)), int(m.group(4))), twist=twist)
                )
            elif (m := _LOOP.match(item)) is not None:
                loops.append(FreeLoop(twist=None if m.group(1) is None else int(m.group(1))))
            else:
                raise DiagramError(f"line {number}: cannot parse {item!r}")
    if crossings is None:
        raise DiagramError("missing 'crossings=<n>'")
    d = DehnLoopDiagram(crossings=crossings, edges=tuple(edges), loops=tuple(loops))
    check_diagram(d)
    return d


def format_diagram_text(d: DehnLoopDiagram) -> str:
    def twist(value: Optional[int]) -> str:
        return "" if value is None else f" twist={value}"

    items = [f"crossings={d.crossings}"]
    items += [f"edge {e.a[0]}.{e.a[1]} {e.b[0]}.{e.b[1]}{twist(e.twist)}" for e in d.edges]
    items += [f"loop{twist(l.twist)}" for l in d.loops]
    return "; ".join(items) + "\n"


def read_diagram(path: Union[str, Path]) -> DehnLoopDiagram:
    return parse_diagram_text(Path(path).read_text(encoding="utf-8"))
