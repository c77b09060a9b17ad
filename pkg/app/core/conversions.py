"""Ideal triangulations to ideal cubulations and back.

Triangulation -> cubulation
    Every tetrahedron is cut into four cubes, one at each corner ``v``.
    The cube at ``v`` has a vertex for every subset ``S`` of the
    tetrahedron's vertices containing ``v`` (corner, edge midpoints, face
    barycentres, centre); with ``w_0 < w_1 < w_2`` the other vertices,
    bit ``i`` of the cube vertex is ``[w_i in S]``.  Face ``2i + 1`` is
    interior and meets the cube at ``w_i``; face ``2i`` lies on the
    tetrahedron face opposite ``w_i`` and follows its gluing.

Cubulation -> triangulation
    A cube with bit ``x`` is split into the central tetrahedron on its
    parity-``x`` vertices and four corner tetrahedra, one at each vertex
    of the other parity.  Each square face is then cut along the diagonal
    joining its parity-``x`` corners.  When the two sides of a glued face
    pair are cut along different diagonals a flat tetrahedron whose two
    opposite edges are the two diagonals is inserted between them.
    Tetrahedron vertex ``i`` is the ``i``-th smallest cube vertex.
"""

from __future__ import annotations

import logging
import random
from concurrent.futures import ThreadPoolExecutor
from typing import Dict, List, Optional, Sequence, Tuple

import networkx as nx
import numpy as np

from app.core.complexes import CubulationBuilder, TriangulationBuilder, vertex_table
from app.core.settings import get_settings
from app.core.symmetry import (
    CORNER_POSITION,
    FACE_CORNERS,
    CUBE,
    face_side,
    parity,
    swaps_diagonals,
)
from app.core.validation import non_sphere_links, require_valid
from app.models.base import IdealCubulation, IdealTriangulation
from app.models.conversions import OrientationChoice, RoundTripReport, TriangulationResult

logger = logging.getLogger(__name__)

_SWEEP_CHUNK = 1 << 16


# ── Triangulation -> cubulation ─────────────────────────────────

def _others(v: int) -> List[int]:
    return [w for w in range(4) if w != v]


def _subset_vertex(v: int, subset: frozenset) -> int:
    """Cube vertex id of ``subset`` in the corner cube at ``v``."""
    b0, b1, b2 = (int(w in subset) for w in _others(v))
    return 4 * b0 + 2 * b1 + b2


def _vertex_subset(v: int, vertex: int) -> frozenset:
    others = _others(v)
    return frozenset([v] + [others[i] for i in range(3) if (vertex >> (2 - i)) & 1])


def triangulation_to_cubulation(t: IdealTriangulation) -> IdealCubulation:
    """Four cubes per tetrahedron; ``k = 4n``."""
    require_valid(t)
    builder = CubulationBuilder(4 * t.n)

    def cube(tet: int, v: int) -> int:
        return 4 * tet + v

    for tet in range(t.n):
        # interior squares between the corner cubes at v and w
        for v in range(4):
            for w in range(v + 1, 4):
                face_v = 2 * _others(v).index(w) + 1
                face_w = 2 * _others(w).index(v) + 1
                vmap = {
                    vertex: _subset_vertex(w, _vertex_subset(v, vertex))
                    for vertex in FACE_CORNERS[face_v]
                }
                builder.join_vertices(cube(tet, v), face_v, cube(tet, w), face_w, vmap)

        # squares on the tetrahedron's faces, carried across its gluings
        for face, record in enumerate(t.gluings[tet]):
            if (record.cell, record.face) < (tet, face):
                continue
            perm = record.perm
            for v in _others(face):
                image = perm[v]
                source_face = 2 * _others(v).index(face)
                target_face = 2 * _others(image).index(perm[face])
                vmap = {
                    vertex: _subset_vertex(
                        image, frozenset(perm[s] for s in _vertex_subset(v, vertex))
                    )
                    for vertex in FACE_CORNERS[source_face]
                }
                builder.join_vertices(
                    cube(tet, v), source_face, cube(record.cell, image), target_face, vmap
                )

    result = builder.build()
    logger.info("Cut %d tetrahedra into %d cubes", t.n, result.k)
    return result


# ── Diagonal mismatches ─────────────────────────────────────────

FacePair = Tuple[int, int, int, int, int]  # (cube a, face, cube b, face, constant)


def face_pair_constants(c: IdealCubulation) -> List[FacePair]:
    """One entry per glued face pair; mismatch is ``x_a ^ x_b ^ constant``.

    The constant is ``s ^ s' ^ swap`` where ``s, s'`` are the face sides
    and ``swap`` says whether the corner map exchanges the diagonals.
    """
    require_valid(c)
    pairs: List[FacePair] = []
    for a, row in enumerate(c.gluings):
        for face, record in enumerate(row):
            if (record.cell, record.face) < (a, face):
                continue
            constant = face_side(face) ^ face_side(record.face) ^ int(swaps_diagonals(record.perm))
            pairs.append((a, face, record.cell, record.face, constant))
    return pairs


def mismatch_indicators(c: IdealCubulation, bits: Sequence[int]) -> List[int]:
    return [bits[a] ^ bits[b] ^ k for a, _, b, _, k in face_pair_constants(c)]


def count_mismatches(c: IdealCubulation, bits: Sequence[int]) -> int:
    return sum(mismatch_indicators(c, bits))


def _split_constraints(c: IdealCubulation) -> Tuple[int, List[Tuple[int, int, int]]]:
    constant = 0
    edges: List[Tuple[int, int, int]] = []
    for a, _, b, _, k in face_pair_constants(c):
        if a == b:
            constant += k
        else:
            edges.append((a, b, k))
    return constant, edges


def _sweep_chunk(
    k: int, edges: Sequence[Tuple[int, int, int]], start: int, stop: int
) -> Tuple[int, int]:
    values = np.arange(start, stop, dtype=np.int64)
    cost = np.zeros(values.shape, dtype=np.int32)
    for a, b, constant in edges:
        xa = (values >> (k - 1 - a)) & 1
        xb = (values >> (k - 1 - b)) & 1
        cost += (xa ^ xb ^ constant).astype(np.int32)
    best = int(np.argmin(cost))
    return int(cost[best]), int(values[best])


def _exhaustive(k: int, edges: Sequence[Tuple[int, int, int]], workers: int) -> Tuple[int, Tuple[int, ...]]:
    total = 1 << k
    bounds = [(lo, min(lo + _SWEEP_CHUNK, total)) for lo in range(0, total, _SWEEP_CHUNK)]
    if workers > 1 and len(bounds) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(lambda r: _sweep_chunk(k, edges, *r), bounds))
    else:
        results = [_sweep_chunk(k, edges, lo, hi) for lo, hi in bounds]
    cost, value = min(results)
    return cost, tuple((value >> (k - 1 - a)) & 1 for a in range(k))


def _local_search(k: int, edges: Sequence[Tuple[int, int, int]], bits: List[int]) -> List[int]:
    incident: Dict[int, List[Tuple[int, int]]] = {i: [] for i in range(k)}
    for a, b, constant in edges:
        incident[a].append((b, constant))
        incident[b].append((a, constant))
    improved = True
    while improved:
        improved = False
        for i in range(k):
            # flipping x_i toggles every indicator at i
            bad = sum(bits[i] ^ bits[j] ^ constant for j, constant in incident[i])
            if 2 * bad > len(incident[i]):
                bits[i] ^= 1
                improved = True
    return bits


def _greedy(k: int, edges: Sequence[Tuple[int, int, int]]) -> List[int]:
    graph = nx.Graph()
    graph.add_nodes_from(range(k))
    for a, b, constant in edges:
        if not graph.has_edge(a, b):
            graph.add_edge(a, b, constant=constant)
    bits = [0] * k
    for root in sorted(min(comp) for comp in nx.connected_components(graph)):
        for parent, child in nx.bfs_edges(graph, root):
            bits[child] = bits[parent] ^ graph.edges[parent, child]["constant"]
    return bits


def local_search_orientations(
    c: IdealCubulation, seed: Optional[int] = None, restarts: Optional[int] = None
) -> OrientationChoice:
    """Greedy spanning-tree start, then single-bit flips to a fixpoint, with restarts."""
    settings = get_settings()
    seed = settings.seed if seed is None else seed
    restarts = settings.restarts if restarts is None else restarts
    constant, edges = _split_constraints(c)

    def cost(bits: Sequence[int]) -> int:
        return constant + sum(bits[a] ^ bits[b] ^ k for a, b, k in edges)

    rng = random.Random(seed)
    best = _local_search(c.k, edges, _greedy(c.k, edges))
    for _ in range(restarts):
        candidate = _local_search(c.k, edges, [rng.randint(0, 1) for _ in range(c.k)])
        if (cost(candidate), candidate) < (cost(best), best):
            best = candidate
    return OrientationChoice(
        bits=tuple(best),
        mismatches=cost(best),
        baseline=cost([0] * c.k),
        mode="heuristic",
    )


def optimize_orientations(
    c: IdealCubulation,
    exhaustive_max: Optional[int] = None,
    seed: Optional[int] = None,
    workers: Optional[int] = None,
) -> OrientationChoice:
    """Minimise the number of inserted tetrahedra over the cube bits.

    Exhaustive over all ``2^k`` choices up to ``exhaustive_max`` cubes, ties
    broken by the lexicographically smallest bit string; local search above.
    """
    settings = get_settings()
    limit = settings.exhaustive_max if exhaustive_max is None else exhaustive_max
    workers = settings.workers if workers is None else workers
    constant, edges = _split_constraints(c)
    baseline = constant + sum(k for _, _, k in edges)

    if c.k <= limit:
        logger.info("Sweeping all %d orientation choices", 1 << c.k)
        cost, bits = _exhaustive(c.k, edges, workers)
        return OrientationChoice(
            bits=bits, mismatches=constant + cost, baseline=baseline, mode="exhaustive"
        )

    logger.info("k=%d exceeds exhaustive limit %d; using local search", c.k, limit)
    choice = local_search_orientations(c, seed=seed)
    if choice.mismatches > baseline:
        zeros = tuple([0] * c.k)
        return OrientationChoice(bits=zeros, mismatches=baseline, baseline=baseline, mode="heuristic")
    return choice


# ── Cubulation -> triangulation ─────────────────────────────────

class _TetTable:
    """Tetrahedra whose vertices are named by cube vertices or face positions."""

    def __init__(self) -> None:
        self.builder = TriangulationBuilder()
        self.vertices: List[List[int]] = []

    def add(self, names: Sequence[int]) -> int:
        self.vertices.append(sorted(names))
        return self.builder.add()

    def glue(self, a: int, names_a: Sequence[int], b: int, names_b: Sequence[int]) -> None:
        local_a = [self.vertices[a].index(x) for x in names_a]
        local_b = [self.vertices[b].index(x) for x in names_b]
        self.builder.join_vertices(a, local_a, b, local_b)


def cubulation_to_triangulation(
    c: IdealCubulation, bits: Optional[Sequence[int]] = None
) -> TriangulationResult:
    """Five tetrahedra per cube plus one flat tetrahedron per mismatched face pair."""
    require_valid(c)
    bits = tuple(bits) if bits is not None else tuple([0] * c.k)
    if len(bits) != c.k or any(b not in (0, 1) for b in bits):
        raise ValueError(f"expected {c.k} bits, got {bits!r}")
    _, table, _ = vertex_table(c)

    tets = _TetTable()
    corner_tet: Dict[Tuple[int, int], int] = {}
    for cube in range(c.k):
        x = bits[cube]
        central = tets.add([v for v in range(8) if parity(v) == x])
        for u in (v for v in range(8) if parity(v) != x):
            neighbours = CUBE.neighbours(u)
            tet = tets.add([u, *neighbours])
            corner_tet[(cube, u)] = tet
            tets.glue(tet, neighbours, central, neighbours)

    insertions = 0
    for a, row in enumerate(table):
        for face, record in enumerate(row):
            b, target_face, vmap = record  # type: ignore[misc]
            if (b, target_face) < (a, face):
                continue
            corners = FACE_CORNERS[face]
            diagonal_a = [v for v in corners if parity(v) == bits[a]]
            off_a = [v for v in corners if parity(v) != bits[a]]
            diagonal_b = {v for v in FACE_CORNERS[target_face] if parity(v) == bits[b]}

            if {vmap[v] for v in diagonal_a} == diagonal_b:
                for u in off_a:
                    names = [u, *diagonal_a]
                    tets.glue(
                        corner_tet[(a, u)],
                        names,
                        corner_tet[(b, vmap[u])],
                        [vmap[v] for v in names],
                    )
                continue

            insertions += 1
            position = CORNER_POSITION[face]
            flat = tets.add(range(4))
            for u in off_a:
                names = [u, *diagonal_a]
                tets.glue(corner_tet[(a, u)], names, flat, [position[v] for v in names])
            back = {w: v for v, w in vmap.items()}
            for u in FACE_CORNERS[target_face]:
                if u in diagonal_b:
                    continue
                names = [u, *sorted(diagonal_b)]
                tets.glue(corner_tet[(b, u)], names, flat, [position[back[w]] for w in names])

    result = TriangulationResult(
        triangulation=tets.builder.build(), cubes=c.k, insertions=insertions, bits=bits
    )
    logger.info(
        "Split %d cubes into %d tetrahedra (%d inserted)", c.k, result.tetrahedra, insertions
    )
    return result


def cubulation_upper_bound(c: IdealCubulation) -> int:
    """A k-cube ideal cubulation is dual to a filling surface with k triple points."""
    require_valid(c)
    return c.k


def round_trip(t: IdealTriangulation, bits: Optional[Sequence[int]] = None) -> RoundTripReport:
    """Run t -> c -> t' and compare Euler characteristic and ideal vertex links."""
    orbits = require_valid(t)
    cubulation = triangulation_to_cubulation(t)
    if bits is None:
        bits = optimize_orientations(cubulation).bits
    result = cubulation_to_triangulation(cubulation, bits)
    after = require_valid(result.triangulation)
    return RoundTripReport(
        original=t,
        cubulation=cubulation,
        result=result,
        euler_characteristic=orbits.euler_characteristic,
        euler_preserved=after.euler_characteristic == orbits.euler_characteristic,
        ideal_links_preserved=non_sphere_links(result.triangulation) == non_sphere_links(t),
    )
