"""Exhaustive enumeration of small ideal cubulations up to isomorphism.

Generation fixes the face-pairing pattern first.  The perfect matchings of
the ``6k`` faces are reduced to one representative per orbit of cube
relabellings (a permutation of the cubes and a symmetry of each cube), and
each representative keeps the relabellings that fix it.  The square maps
of a pattern are then chosen pair by pair, in the pattern's pair order:

* a partial table is dropped as soon as an edge cycle through the newly
  glued faces meets one of its edges in both directions;
* a prefix of maps is dropped when a relabelling fixing the pattern and
  the prefix positions turns it into a lexicographically smaller prefix.

A complete table therefore survives only as the smallest member of its
orbit, so each isomorphism class is produced once.  Survivors are still
keyed by isomorphism signature when the per-pattern results are merged.
"""

from __future__ import annotations

import logging
import random
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations, product
from pathlib import Path
from typing import Callable, Dict, Iterator, List, Optional, Sequence, Tuple, Union

import networkx as nx
from networkx.utils import UnionFind

from app.core.dual_surface import dual_surface_stats
from app.core.errors import CensusRangeError
from app.core.formats import write_complex
from app.core.settings import get_settings
from app.core.signature import isomorphism_signature, parse_signature
from app.core.symmetry import (
    CORNER_POSITION,
    CUBE,
    CUBE_SYMMETRIES,
    DIHEDRAL_MAPS,
    FACE_CORNERS,
    ORIENTATION_REVERSING,
    Perm,
    compose,
    face_vertex_map,
    inverse,
)
from app.core.tables import table
from app.core.validation import euler_identity_check, require_valid, validate, vertex_links
from app.models.base import FaceGluing, IdealCubulation
from app.models.census import CensusEntry, CensusResult

logger = logging.getLogger(__name__)

SUPPORTED_SIZES = (1, 2)

FaceSlot = Tuple[int, int]
FacePair = Tuple[FaceSlot, FaceSlot]
FacePairing = Sequence[FacePair]
Relabelling = Tuple[Tuple[int, ...], Tuple[int, ...]]  # (new position, symmetry index) per cube
RawGluing = Tuple[int, int, Tuple[int, ...]]  # (cube, face, vertex images; -1 off the face)


# ── Lookup tables ───────────────────────────────────────────────

_MAP_INDEX: Dict[Perm, int] = {m: i for i, m in enumerate(DIHEDRAL_MAPS)}
_MAP_INVERSE: Tuple[int, ...] = tuple(_MAP_INDEX[inverse(m)] for m in DIHEDRAL_MAPS)
_COMPATIBLE: Dict[Tuple[int, int], frozenset] = {
    pair: frozenset(_MAP_INDEX[m] for m in maps) for pair, maps in ORIENTATION_REVERSING.items()
}


def _raw_vertex_map(face: int, target_face: int, corner_map: Perm) -> Tuple[int, ...]:
    images = [-1] * 8
    for v, w in face_vertex_map(face, target_face, corner_map).items():
        images[v] = w
    return tuple(images)


_VERTEX_MAPS: Tuple[Tuple[Tuple[Tuple[int, ...], ...], ...], ...] = tuple(
    tuple(tuple(_raw_vertex_map(f, g, m) for m in DIHEDRAL_MAPS) for g in range(6)) for f in range(6)
)

_EDGE_ID: List[List[int]] = [[-1] * 8 for _ in range(8)]
for _index, (_u, _v) in enumerate(CUBE.edges):
    _EDGE_ID[_u][_v] = _EDGE_ID[_v][_u] = _index
_EDGE_FACES: Tuple[Tuple[int, int], ...] = tuple(CUBE.faces_of_edge(u, v) for u, v in CUBE.edges)
_EDGE_AXIS: Tuple[int, ...] = tuple({4: 0, 2: 1, 1: 2}[u ^ v] for u, v in CUBE.edges)
_FACE_EDGES: Tuple[Tuple[Tuple[int, int], ...], ...] = tuple(
    tuple(e for e in CUBE.edges if e[0] in corners and e[1] in corners) for corners in FACE_CORNERS
)


def _square_targets(face: int, target_face: int, code: int) -> Tuple[Tuple[int, int], ...]:
    """(axis, target axis) of the two mid-squares crossing ``face``."""
    vmap = _VERTEX_MAPS[face][target_face][code]
    targets = []
    for u, v in _FACE_EDGES[face]:
        axis = _EDGE_AXIS[_EDGE_ID[u][v]]
        if axis not in (a for a, _ in targets):
            targets.append((axis, _EDGE_AXIS[_EDGE_ID[vmap[u]][vmap[v]]]))
    return tuple(sorted(targets))


_SQUARE_TARGETS = tuple(
    tuple(tuple(_square_targets(f, g, code) for code in range(8)) for g in range(6)) for f in range(6)
)

_IDENTITY_SYMMETRY = next(i for i, s in enumerate(CUBE_SYMMETRIES) if s.images == tuple(range(8)))
_FACE_IMAGE: Tuple[Tuple[int, ...], ...] = tuple(tuple(s.face(f) for f in range(6)) for s in CUBE_SYMMETRIES)
# corner positions of face f carried to positions of s.face(f)
_CORNER_ACTION: Tuple[Tuple[Perm, ...], ...] = tuple(
    tuple(
        tuple(CORNER_POSITION[s.face(f)][s.vertex(v)] for v in FACE_CORNERS[f]) for f in range(6)
    )
    for s in CUBE_SYMMETRIES
)


# ── Filters ─────────────────────────────────────────────────────

CENSUS_FILTERS: Dict[str, Callable[[CensusEntry], bool]] = {
    "sheets-all-spheres": lambda e: all(s.is_sphere for s in e.surface.sheets),
    "orientable": lambda e: e.orientable,
    "all-finite": lambda e: all(label == "S2" for label in e.links),
    "ideal": lambda e: any(label != "S2" for label in e.links),
    "one-sided-sheet": lambda e: any(not s.two_sided for s in e.surface.sheets),
}


# ── Face-pairing patterns ───────────────────────────────────────

@dataclass(frozen=True)
class _Action:
    """A relabelling fixing a pattern, as it acts on the map of each pair."""

    positions: Tuple[int, ...]
    values: Tuple[Tuple[int, ...], ...]


@dataclass(frozen=True)
class PairingPattern:
    cubes: int
    pairs: Tuple[FacePair, ...]
    stabiliser: Tuple[Relabelling, ...]
    prefix_actions: Tuple[Tuple[_Action, ...], ...]

    @property
    def symmetry_count(self) -> int:
        return len(self.stabiliser) + 1


def _relabellings(k: int) -> List[Relabelling]:
    return [
        (order, symmetries)
        for order in permutations(range(k))
        for symmetries in product(range(len(CUBE_SYMMETRIES)), repeat=k)
    ]


def _is_identity(h: Relabelling) -> bool:
    order, symmetries = h
    return order == tuple(range(len(order))) and all(s == _IDENTITY_SYMMETRY for s in symmetries)


def _move(h: Relabelling, slot: FaceSlot) -> FaceSlot:
    order, symmetries = h
    a, f = slot
    return order[a], _FACE_IMAGE[symmetries[a]][f]


def _pairing_key(pairs: FacePairing) -> Tuple[FacePair, ...]:
    return tuple(sorted(tuple(sorted(pair)) for pair in pairs))  # type: ignore[misc]


def _image(h: Relabelling, pairs: Sequence[FacePair]) -> Tuple[FacePair, ...]:
    return _pairing_key([(_move(h, p), _move(h, q)) for p, q in pairs])


def _connected(k: int, pairs: Sequence[FacePair]) -> bool:
    graph = nx.Graph()
    graph.add_nodes_from(range(k))
    graph.add_edges_from((p[0], q[0]) for p, q in pairs)
    return nx.is_connected(graph)


def _matchings(slots: Sequence[FaceSlot]) -> Iterator[List[FacePair]]:
    if not slots:
        yield []
        return
    first, rest = slots[0], slots[1:]
    for i, other in enumerate(rest):
        for tail in _matchings(rest[:i] + rest[i + 1:]):
            yield [(first, other), *tail]


def _action(h: Relabelling, pairs: Tuple[FacePair, ...]) -> _Action:
    _, symmetries = h
    index = {pair: t for t, pair in enumerate(pairs)}
    positions: List[int] = []
    values: List[Tuple[int, ...]] = []
    for (a, f), (b, g) in pairs:
        left, right = _move(h, (a, f)), _move(h, (b, g))
        flipped = right < left
        positions.append(index[(right, left) if flipped else (left, right)])
        before = inverse(_CORNER_ACTION[symmetries[a]][f])
        after = _CORNER_ACTION[symmetries[b]][g]
        row = []
        for m in DIHEDRAL_MAPS:
            moved = compose(after, compose(m, before))
            row.append(_MAP_INDEX[inverse(moved) if flipped else moved])
        values.append(tuple(row))
    return _Action(positions=tuple(positions), values=tuple(values))


def _pattern(k: int, pairs: Tuple[FacePair, ...], stabiliser: Sequence[Relabelling]) -> PairingPattern:
    actions = [_action(h, pairs) for h in stabiliser]
    prefix_actions = tuple(
        tuple(a for a in actions if all(p < depth for p in a.positions[:depth]))
        for depth in range(len(pairs) + 1)
    )
    return PairingPattern(cubes=k, pairs=pairs, stabiliser=tuple(stabiliser), prefix_actions=prefix_actions)


@lru_cache(maxsize=None)
def face_pairing_patterns(k: int) -> Tuple[PairingPattern, ...]:
    """Connected face pairings of ``k`` cubes, one per relabelling orbit."""
    slots = [(a, f) for a in range(k) for f in range(6)]
    group = _relabellings(k)
    seen = set()
    patterns: List[PairingPattern] = []
    for matching in _matchings(slots):
        key = _pairing_key(matching)
        if key in seen or not _connected(k, key):
            continue
        stabiliser = []
        for h in group:
            image = _image(h, key)
            seen.add(image)
            if image == key and not _is_identity(h):
                stabiliser.append(h)
        patterns.append(_pattern(k, key, stabiliser))
    logger.debug("%d face-pairing patterns for k=%d", len(patterns), k)
    return tuple(patterns)


def _fixed_pattern(k: int, pairs: Tuple[FacePair, ...]) -> PairingPattern:
    stabiliser = [h for h in _relabellings(k) if not _is_identity(h) and _image(h, pairs) == pairs]
    return _pattern(k, pairs, stabiliser)


# ── Partial tables ──────────────────────────────────────────────

def _chain_reversed(rows: List[List[Optional[RawGluing]]], cube: int, u: int, v: int) -> bool:
    """Walk the edge cycle through ``(u, v)`` both ways; True if it meets an edge reversed."""
    start = _EDGE_ID[u][v]
    first_end: Dict[Tuple[int, int], int] = {(cube, start): u}
    for face in _EDGE_FACES[start]:
        c, a, b, f = cube, u, v, face
        while True:
            record = rows[c][f]
            if record is None:
                break
            c, g, vmap = record
            a, b = vmap[a], vmap[b]
            edge = _EDGE_ID[a][b]
            seen = first_end.get((c, edge))
            if seen is None:
                first_end[(c, edge)] = a
            elif seen != a:
                return True
            else:
                break
            fa, fb = _EDGE_FACES[edge]
            f = fb if fa == g else fa
    return False


def _edge_classes(rows: List[List[Optional[RawGluing]]]) -> Dict[Tuple[int, int], int]:
    label: Dict[Tuple[int, int], int] = {}
    count = 0
    for cube in range(len(rows)):
        for edge, (u, v) in enumerate(CUBE.edges):
            if (cube, edge) in label:
                continue
            c, a, b, f = cube, u, v, _EDGE_FACES[edge][0]
            while (c, _EDGE_ID[a][b]) not in label:
                label[(c, _EDGE_ID[a][b])] = count
                c, g, vmap = rows[c][f]  # type: ignore[misc]
                a, b = vmap[a], vmap[b]
                fa, fb = _EDGE_FACES[_EDGE_ID[a][b]]
                f = fb if fa == g else fa
            count += 1
    return label


def _sheets_all_spheres(rows: List[List[Optional[RawGluing]]], codes: List[List[int]]) -> bool:
    """Every sheet of the dual surface is a sphere.

    A sheet of ``F`` mid-squares has ``2F`` sides and one corner per edge
    class it meets, so it is a sphere iff it meets ``F + 2`` edge classes.
    """
    squares = UnionFind((c, axis) for c in range(len(rows)) for axis in range(3))
    for a, row in enumerate(rows):
        for f, record in enumerate(row):
            b, g, _ = record  # type: ignore[misc]
            if (b, g) < (a, f):
                continue
            for axis, target_axis in _SQUARE_TARGETS[f][g][codes[a][f]]:
                squares.union((a, axis), (b, target_axis))
    corners: Dict[Tuple[int, int], set] = {}
    for (c, edge), cls in _edge_classes(rows).items():
        corners.setdefault(squares[(c, _EDGE_AXIS[edge])], set()).add(cls)
    sizes = Counter(squares[(c, axis)] for c in range(len(rows)) for axis in range(3))
    return all(len(corners[root]) == size + 2 for root, size in sizes.items())


def _smaller_image(actions: Sequence[_Action], values: List[int]) -> bool:
    depth = len(values)
    for action in actions:
        image = [0] * depth
        for t in range(depth):
            image[action.positions[t]] = action.values[t][values[t]]
        if image < values:
            return True
    return False


# ── Search ──────────────────────────────────────────────────────

class _PatternSearch:
    """Depth-first choice of square maps for one face-pairing pattern."""

    def __init__(
        self,
        pattern: PairingPattern,
        orientable_only: bool,
        spheres_only: bool,
        rng: Optional[random.Random],
    ) -> None:
        k = pattern.cubes
        self.pattern = pattern
        self.orientable_only = orientable_only
        self.spheres_only = spheres_only
        self.rng = rng
        self.rows: List[List[Optional[RawGluing]]] = [[None] * 6 for _ in range(k)]
        self.codes: List[List[int]] = [[-1] * 6 for _ in range(k)]
        self.values: List[int] = []
        self.sides: Optional[Tuple[int, ...]] = None
        self.found: List[IdealCubulation] = []

    def run(self) -> List[IdealCubulation]:
        k = self.pattern.cubes
        if self.orientable_only:
            # one side per cube, fixed on cube 0; a gluing must be compatible iff the sides agree
            for rest in product((0, 1), repeat=k - 1):
                self.sides = (0, *rest)
                self._descend(0)
        else:
            self._descend(0)
        return self.found

    def _options(self, t: int) -> List[int]:
        (a, f), (b, g) = self.pattern.pairs[t]
        if self.sides is None:
            options = list(range(len(DIHEDRAL_MAPS)))
        else:
            agree = self.sides[a] == self.sides[b]
            options = [code for code in range(len(DIHEDRAL_MAPS)) if (code in _COMPATIBLE[(f, g)]) == agree]
        if self.rng is not None:
            self.rng.shuffle(options)
        return options

    def _set(self, a: int, f: int, b: int, g: int, code: int) -> None:
        back = _MAP_INVERSE[code]
        self.rows[a][f] = (b, g, _VERTEX_MAPS[f][g][code])
        self.rows[b][g] = (a, f, _VERTEX_MAPS[g][f][back])
        self.codes[a][f], self.codes[b][g] = code, back

    def _reversed(self, a: int, f: int) -> bool:
        return any(_chain_reversed(self.rows, a, u, v) for u, v in _FACE_EDGES[f])

    def _descend(self, t: int) -> None:
        pairs = self.pattern.pairs
        if t == len(pairs):
            self._leaf()
            return
        (a, f), (b, g) = pairs[t]
        for code in self._options(t):
            self._set(a, f, b, g, code)
            self.values.append(code)
            if not self._reversed(a, f) and not _smaller_image(self.pattern.prefix_actions[t + 1], self.values):
                self._descend(t + 1)
            self.values.pop()
        self.rows[a][f] = self.rows[b][g] = None
        self.codes[a][f] = self.codes[b][g] = -1

    def _leaf(self) -> None:
        if self.spheres_only and not _sheets_all_spheres(self.rows, self.codes):
            return
        c = IdealCubulation(
            gluings=tuple(
                tuple(
                    FaceGluing(cell=record[0], face=record[1], perm=DIHEDRAL_MAPS[self.codes[a][f]])
                    for f, record in enumerate(row)  # type: ignore[index]
                )
                for a, row in enumerate(self.rows)
            )
        )
        if validate(c).ok:
            self.found.append(c)
        else:
            logger.debug("Dropping a complete table that fails validation: %s", c)


# ── Public API ──────────────────────────────────────────────────

def census_entry(c: IdealCubulation) -> CensusEntry:
    orbits = require_valid(c)
    return CensusEntry(
        signature=isomorphism_signature(c),
        cubulation=c,
        vertices=orbits.vertices,
        edges=orbits.edges,
        faces=orbits.faces,
        euler_characteristic=orbits.euler_characteristic,
        orientable=orbits.orientable,
        links=tuple(sorted(link.link.label for link in vertex_links(c))),
        euler_identity=euler_identity_check(c),
        surface=dual_surface_stats(c),
    )


def enumerate_cubulations(
    k: int,
    filters: Sequence[str] = (),
    orientable_only: bool = False,
    pairing: Optional[FacePairing] = None,
    shuffle_seed: Optional[int] = None,
    workers: Optional[int] = None,
) -> CensusResult:
    """Every valid ideal cubulation with ``k`` cubes, one per isomorphism class.

    ``pairing`` restricts the search to the gluing maps of one face pairing
    (as given, without relabelling cubes); ``orientable_only`` keeps the
    orientable classes.  The ``orientable`` and ``sheets-all-spheres``
    filters are applied during the search as well.  Entries are sorted by
    signature.
    """
    if k not in SUPPORTED_SIZES:
        raise CensusRangeError(f"census supports {SUPPORTED_SIZES} cubes, got k={k}")
    unknown = [name for name in filters if name not in CENSUS_FILTERS]
    if unknown:
        raise CensusRangeError(
            f"unknown census filter(s) {', '.join(unknown)}; available: {', '.join(sorted(CENSUS_FILTERS))}"
        )
    if pairing is not None:
        key = _pairing_key([(tuple(p), tuple(q)) for p, q in pairing])  # type: ignore[misc]
        faces = sorted(slot for pair in key for slot in pair)
        if faces != [(a, f) for a in range(k) for f in range(6)]:
            raise CensusRangeError(f"pairing must use each of the {6 * k} faces exactly once")
        patterns = [_fixed_pattern(k, key)] if _connected(k, key) else []
    else:
        patterns = list(face_pairing_patterns(k))

    search_orientable = orientable_only or "orientable" in filters
    spheres_only = "sheets-all-spheres" in filters
    order = list(range(len(patterns)))
    if shuffle_seed is not None:
        random.Random(shuffle_seed).shuffle(order)

    def task(index: int) -> List[IdealCubulation]:
        rng = None if shuffle_seed is None else random.Random(shuffle_seed + index)
        return _PatternSearch(patterns[index], search_orientable, spheres_only, rng).run()

    workers = get_settings().workers if workers is None else workers
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(task, order))
    else:
        parts = [task(i) for i in order]

    found: Dict[str, IdealCubulation] = {}
    for part in parts:
        for c in part:
            signature = isomorphism_signature(c)
            if signature not in found:
                found[signature] = parse_signature(signature)  # type: ignore[assignment]
    entries = [census_entry(found[s]) for s in sorted(found)]
    for name in filters:
        entries = [e for e in entries if CENSUS_FILTERS[name](e)]
    logger.info(
        "Census k=%d: %d patterns, %d classes, %d after filters", k, len(patterns), len(found), len(entries)
    )
    return CensusResult(cubes=k, filters=list(filters), orientable_only=orientable_only, entries=entries)


def census_report(entries: Sequence[CensusEntry]) -> str:
    """Counts grouped by (vertex links, sheet profile), one row per group."""
    if not entries:
        return ""
    groups = Counter((entry.links, entry.sheet_profile) for entry in entries)
    rows = [("count", "vertex links", "sheets")]
    rows += [(str(n), " ".join(links), " ".join(sheets)) for (links, sheets), n in sorted(groups.items())]
    return table(rows) + "\n"


def write_census(result: CensusResult, out_dir: Union[str, Path]) -> List[Path]:
    """One gluing file per class plus ``summary.txt``."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    paths = []
    for index, entry in enumerate(result.entries):
        path = out / f"k{result.cubes}_{index:04d}.cub"
        write_complex(entry.cubulation, path)
        paths.append(path)
    lines = [f"{p.name}  {e.signature}" for p, e in zip(paths, result.entries)]
    summary = out / "summary.txt"
    summary.write_text(census_report(result.entries) + "\n" + "\n".join(lines) + "\n", encoding="utf-8")
    paths.append(summary)
    return paths
