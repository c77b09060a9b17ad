"""Combinatorial tables for tetrahedra, cubes and squares.

Conventions
-----------
Tetrahedron vertices are ``0..3``; face ``f`` is the face opposite vertex
``f``.  A gluing permutation lists the images of vertices ``0..3``.

Cube vertices are the bitstrings ``(b0, b1, b2)`` encoded as the integer
``4*b0 + 2*b1 + b2``, so integer order is lexicographic order.  Face
``2*i + s`` is ``{v : b_i(v) = s}``.  The canonical corner order of a face
is the increasing order of its four vertex ids; a corner map permutes the
canonical positions ``0..3``.  Positions ``p`` and ``q`` are adjacent iff
``p ^ q`` is 1 or 2, so the diagonals are ``{0, 3}`` and ``{1, 2}``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations, product
from typing import Dict, Mapping, Sequence, Tuple

import numpy as np

Perm = Tuple[int, ...]


# ── Permutations ──────────────────────────────────────────────────

def compose(p: Sequence[int], q: Sequence[int]) -> Perm:
    """Return ``p ∘ q`` (apply ``q`` first)."""
    return tuple(p[i] for i in q)


def inverse(p: Sequence[int]) -> Perm:
    inv = [0] * len(p)
    for i, image in enumerate(p):
        inv[image] = i
    return tuple(inv)


def is_permutation(p: Sequence[int], size: int) -> bool:
    return len(p) == size and sorted(p) == list(range(size))


def perm_sign(p: Sequence[int]) -> int:
    sign = 1
    seen = [False] * len(p)
    for start in range(len(p)):
        if seen[start]:
            continue
        length = 0
        i = start
        while not seen[i]:
            seen[i] = True
            i = p[i]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


S4: Tuple[Perm, ...] = tuple(permutations(range(4)))


# ── Cell shapes ───────────────────────────────────────────────────

@dataclass(frozen=True)
class CellShape:
    """Vertex/face/edge incidence of one 3-cell type."""

    name: str
    vertex_count: int
    faces: Tuple[Tuple[int, ...], ...]
    edges: Tuple[Tuple[int, int], ...]

    def faces_of_edge(self, u: int, v: int) -> Tuple[int, int]:
        found = tuple(f for f, verts in enumerate(self.faces) if u in verts and v in verts)
        assert len(found) == 2, (self.name, u, v, found)
        return found  # type: ignore[return-value]

    def other_face(self, u: int, v: int, face: int) -> int:
        a, b = _FACES_OF_EDGE[self.name][frozenset((u, v))]
        return b if a == face else a

    def edge_index(self, u: int, v: int) -> int:
        return _EDGE_INDEX[self.name][frozenset((u, v))]

    def neighbours(self, v: int) -> Tuple[int, ...]:
        return tuple(sorted(w for e in self.edges if v in e for w in e if w != v))


def bit(v: int, axis: int) -> int:
    return (v >> (2 - axis)) & 1


def face_label(axis: int, side: int) -> int:
    return 2 * axis + side


def face_axis(face: int) -> int:
    return face // 2


def face_side(face: int) -> int:
    return face % 2


TETRAHEDRON = CellShape(
    name="tetrahedron",
    vertex_count=4,
    faces=tuple(tuple(x for x in range(4) if x != f) for f in range(4)),
    edges=tuple((u, v) for u in range(4) for v in range(u + 1, 4)),
)

CUBE = CellShape(
    name="cube",
    vertex_count=8,
    faces=tuple(
        tuple(v for v in range(8) if bit(v, face_axis(f)) == face_side(f)) for f in range(6)
    ),
    edges=tuple(
        (u, v) for u in range(8) for v in range(u + 1, 8) if bin(u ^ v).count("1") == 1
    ),
)

_FACES_OF_EDGE: Dict[str, Dict[frozenset, Tuple[int, int]]] = {}
_EDGE_INDEX: Dict[str, Dict[frozenset, int]] = {}
for _shape in (TETRAHEDRON, CUBE):
    _FACES_OF_EDGE[_shape.name] = {
        frozenset(e): tuple(  # type: ignore[misc]
            f for f, verts in enumerate(_shape.faces) if e[0] in verts and e[1] in verts
        )
        for e in _shape.edges
    }
    _EDGE_INDEX[_shape.name] = {frozenset(e): i for i, e in enumerate(_shape.edges)}


# ── Cube faces and square symmetries ──────────────────────────────

FACE_CORNERS: Tuple[Tuple[int, ...], ...] = CUBE.faces
CORNER_POSITION: Tuple[Dict[int, int], ...] = tuple(
    {v: p for p, v in enumerate(corners)} for corners in FACE_CORNERS
)

DIHEDRAL_MAPS: Tuple[Perm, ...] = tuple(
    p for p in permutations(range(4)) if all(p[q ^ 3] == p[q] ^ 3 for q in range(4))
)
DIHEDRAL_SET = frozenset(DIHEDRAL_MAPS)
IDENTITY4: Perm = (0, 1, 2, 3)


def is_dihedral(corner_map: Sequence[int]) -> bool:
    return tuple(corner_map) in DIHEDRAL_SET


def swaps_diagonals(corner_map: Sequence[int]) -> bool:
    """True when the map sends the diagonal ``{0, 3}`` onto ``{1, 2}``."""
    return corner_map[0] in (1, 2)


def face_vertex_map(face: int, target_face: int, corner_map: Sequence[int]) -> Dict[int, int]:
    """Vertex-level bijection induced by a corner map between two cube faces."""
    return {
        v: FACE_CORNERS[target_face][corner_map[p]] for p, v in enumerate(FACE_CORNERS[face])
    }


def corner_map_from_vertices(face: int, target_face: int, vmap: Mapping[int, int]) -> Perm:
    return tuple(CORNER_POSITION[target_face][vmap[v]] for v in FACE_CORNERS[face])


def parity(v: int) -> int:
    return bin(v).count("1") % 2


# ── Cube symmetry group (order 48) ────────────────────────────────

@dataclass(frozen=True)
class CubeSymmetry:
    """Axis permutation followed by coordinate flips, acting on vertex ids."""

    axes: Tuple[int, int, int]
    flips: Tuple[int, int, int]
    images: Tuple[int, ...]

    def vertex(self, v: int) -> int:
        return self.images[v]

    def face(self, f: int) -> int:
        axis, side = face_axis(f), face_side(f)
        return face_label(self.axes[axis], side ^ self.flips[axis])


def _make_symmetry(axes: Tuple[int, int, int], flips: Tuple[int, int, int]) -> CubeSymmetry:
    images = []
    for v in range(8):
        bits = [0, 0, 0]
        for i in range(3):
            bits[axes[i]] = bit(v, i) ^ flips[i]
        images.append(4 * bits[0] + 2 * bits[1] + bits[2])
    return CubeSymmetry(axes=axes, flips=flips, images=tuple(images))


CUBE_SYMMETRIES: Tuple[CubeSymmetry, ...] = tuple(
    _make_symmetry(axes, flips)  # type: ignore[arg-type]
    for axes in permutations(range(3))
    for flips in product((0, 1), repeat=3)
)


def symmetry_for_gluing(target_face: int, vmap: Mapping[int, int], face: int) -> CubeSymmetry:
    """The unique cube symmetry ``h`` with ``h(vmap(v)) = v`` on ``face``.

    Relabelling the target cube by ``h`` turns the gluing into the identity
    record ``face -> face``.
    """
    for h in CUBE_SYMMETRIES:
        if h.face(target_face) == face and all(h.vertex(vmap[v]) == v for v in FACE_CORNERS[face]):
            return h
    raise ValueError("vertex map is not induced by a square symmetry")


# ── Orientation of cube face gluings ──────────────────────────────

def _coords(v: int) -> np.ndarray:
    return np.array([bit(v, 0), bit(v, 1), bit(v, 2)], dtype=np.int64)


def _outward_normal(face: int) -> np.ndarray:
    normal = np.zeros(3, dtype=np.int64)
    normal[face_axis(face)] = 1 if face_side(face) else -1
    return normal


def _frame_sign(face: int, corners: Sequence[int]) -> int:
    origin = _coords(corners[0])
    frame = np.stack(
        [_outward_normal(face), _coords(corners[1]) - origin, _coords(corners[2]) - origin]
    )
    return int(round(np.linalg.det(frame)))


def cube_gluing_reverses(face: int, target_face: int, corner_map: Sequence[int]) -> bool:
    """True when the gluing reverses the induced boundary orientations.

    That is the orientation-compatible case: two positively oriented cubes
    glued this way form an oriented union.
    """
    source = _frame_sign(face, FACE_CORNERS[face][:3])
    target_corners = [FACE_CORNERS[target_face][corner_map[p]] for p in range(3)]
    return source != _frame_sign(target_face, target_corners)


def tetrahedron_gluing_reverses(perm: Sequence[int]) -> bool:
    return perm_sign(perm) == -1


ORIENTATION_REVERSING: Dict[Tuple[int, int], Tuple[Perm, ...]] = {
    (f, g): tuple(m for m in DIHEDRAL_MAPS if cube_gluing_reverses(f, g, m))
    for f in range(6)
    for g in range(6)
}
