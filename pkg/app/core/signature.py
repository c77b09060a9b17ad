"""Canonical isomorphism signatures.

A signature is the lexicographically smallest serialized gluing table over
every choice of start cell and relabelling of that cell (48 cube
symmetries, 24 vertex permutations of a tetrahedron).  From the start
cell the cells are numbered breadth first, faces in label order; a cell
reached for the first time is relabelled so that the gluing that reached
it reads as the identity on the same face.  Two complexes are isomorphic
exactly when their signatures agree.
"""

from __future__ import annotations

import re
from collections import deque
from functools import lru_cache
from typing import Dict, List, Sequence, Tuple, Union

from app.core.complexes import (
    Complex,
    CubulationBuilder,
    TriangulationBuilder,
    vertex_table,
)
from app.core.errors import GluingFormatError
from app.core.symmetry import (
    CUBE_SYMMETRIES,
    FACE_CORNERS,
    S4,
    compose,
    corner_map_from_vertices,
    inverse,
)
from app.core.validation import require_valid
from app.models.base import IdealCubulation, IdealTriangulation

Code = Tuple[int, ...]

_FACE_PREIMAGE: Tuple[Tuple[int, ...], ...] = tuple(
    tuple(inverse([g.face(f) for f in range(6)])) for g in CUBE_SYMMETRIES
)


@lru_cache(maxsize=None)
def _aligning_symmetry(target_face: int, face: int, pairs: Tuple[Tuple[int, int], ...]) -> int:
    """Index of the symmetry ``h`` with ``h(target_face) = face`` and ``h(w) = v`` for ``(v, w)``."""
    for index, h in enumerate(CUBE_SYMMETRIES):
        if h.face(target_face) == face and all(h.vertex(w) == v for v, w in pairs):
            return index
    raise ValueError("gluing is not induced by a square symmetry")


# ── Cubulations ──────────────────────────────────────────────────

def _cube_code(table, start: int, start_symmetry: int) -> Code:
    k = len(table)
    label: Dict[int, int] = {start: 0}
    symmetry: Dict[int, int] = {start: start_symmetry}
    queue = deque([start])
    code: List[int] = []
    while queue:
        old = queue.popleft()
        g = CUBE_SYMMETRIES[symmetry[old]]
        preimage = _FACE_PREIMAGE[symmetry[old]]
        for new_face in range(6):
            face = preimage[new_face]
            target, target_face, vmap = table[old][face]
            if target not in label:
                label[target] = len(label)
                pairs = tuple(sorted((g.vertex(v), vmap[v]) for v in FACE_CORNERS[face]))
                symmetry[target] = _aligning_symmetry(target_face, new_face, pairs)
                queue.append(target)
            h = CUBE_SYMMETRIES[symmetry[target]]
            new_target_face = h.face(target_face)
            new_vmap = {g.vertex(v): h.vertex(w) for v, w in vmap.items()}
            code.append(label[target])
            code.append(new_target_face)
            code.extend(corner_map_from_vertices(new_face, new_target_face, new_vmap))
    if len(label) != k:
        raise ValueError("signature requires a connected complex")
    return tuple(code)


def _cubulation_code(c: IdealCubulation) -> Code:
    _, table, _ = vertex_table(c)
    return min(
        _cube_code(table, start, index)
        for start in range(c.k)
        for index in range(len(CUBE_SYMMETRIES))
    )


# ── Triangulations ───────────────────────────────────────────────

def _tet_code(t: IdealTriangulation, start: int, start_perm: Sequence[int]) -> Code:
    label: Dict[int, int] = {start: 0}
    relabel: Dict[int, Tuple[int, ...]] = {start: tuple(start_perm)}
    queue = deque([start])
    code: List[int] = []
    while queue:
        old = queue.popleft()
        g = relabel[old]
        g_inv = inverse(g)
        for new_face in range(4):
            record = t.gluings[old][g_inv[new_face]]
            if record.cell not in label:
                label[record.cell] = len(label)
                relabel[record.cell] = compose(g, inverse(record.perm))
                queue.append(record.cell)
            h = relabel[record.cell]
            code.append(label[record.cell])
            code.extend(compose(h, compose(record.perm, g_inv)))
    if len(label) != t.n:
        raise ValueError("signature requires a connected complex")
    return tuple(code)


def _triangulation_code(t: IdealTriangulation) -> Code:
    return min(_tet_code(t, start, g) for start in range(t.n) for g in S4)


# ── Encoding ─────────────────────────────────────────────────────

def _encode(prefix: str, size: int, code: Code, per_face: int, faces: int) -> str:
    cells = []
    for cell in range(size):
        chunk = code[cell * faces * per_face : (cell + 1) * faces * per_face]
        records = []
        for face in range(faces):
            rec = chunk[face * per_face : (face + 1) * per_face]
            head = ".".join(str(x) for x in rec[: per_face - 4])
            records.append(f"{head}.{''.join(str(x) for x in rec[per_face - 4 :])}")
        cells.append(",".join(records))
    return f"{prefix}{size}:" + "|".join(cells)


def isomorphism_signature(x: Complex) -> str:
    """Canonical string, identical for isomorphic complexes.

    ``C<k>:...`` for cubulations (records ``cell.face.map``), ``T<n>:...``
    for triangulations (records ``tet.perm``).
    """
    require_valid(x)
    if isinstance(x, IdealCubulation):
        return _encode("C", x.k, _cubulation_code(x), 6, 6)
    return _encode("T", x.n, _triangulation_code(x), 5, 4)


_SIGNATURE = re.compile(r"^([CT])(\d+):(.+)$")


def parse_signature(signature: str) -> Complex:
    """Rebuild a complex from :func:`isomorphism_signature` output."""
    match = _SIGNATURE.match(signature.strip())
    if match is None:
        raise GluingFormatError(f"not a signature: {signature!r}")
    kind, size, body = match.group(1), int(match.group(2)), match.group(3)
    cells = body.split("|")
    faces = 6 if kind == "C" else 4
    if len(cells) != size:
        raise GluingFormatError(f"signature lists {len(cells)} cells, header says {size}")

    builder: Union[CubulationBuilder, TriangulationBuilder]
    builder = CubulationBuilder(size) if kind == "C" else TriangulationBuilder(size)
    for cell, chunk in enumerate(cells):
        records = chunk.split(",")
        if len(records) != faces:
            raise GluingFormatError(f"cell {cell} lists {len(records)} faces, expected {faces}")
        for face, record in enumerate(records):
            parts = record.split(".")
            try:
                target = int(parts[0])
                perm = tuple(int(ch) for ch in parts[-1])
                target_face = int(parts[1]) if kind == "C" else perm[face]
            except (ValueError, IndexError) as exc:
                raise GluingFormatError(f"bad record {record!r} in signature") from exc
            if (target, target_face) < (cell, face):
                continue
            try:
                if kind == "C":
                    builder.join(cell, face, target, target_face, perm)
                else:
                    builder.join(cell, face, target, perm)
            except (ValueError, IndexError) as exc:
                raise GluingFormatError(f"inconsistent record {record!r}: {exc}") from exc
    return builder.build()
