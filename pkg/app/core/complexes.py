"""Uniform access to the gluing tables of triangulations and cubulations.

Algorithms that do not care about the cell type work on a *vertex table*:
``table[cell][face] = (target cell, target face, {v: v'})`` where the dict
is the vertex bijection the gluing induces on the face.  The builders set
both halves of an involutive record at once.
"""

from __future__ import annotations

from typing import Dict, List, Optional, Sequence, Tuple, Union

from app.core.symmetry import (
    CUBE,
    TETRAHEDRON,
    CellShape,
    CubeSymmetry,
    Perm,
    compose,
    corner_map_from_vertices,
    face_vertex_map,
    inverse,
    is_dihedral,
    is_permutation,
)
from app.models.base import FaceGluing, IdealCubulation, IdealTriangulation, Violation

Complex = Union[IdealTriangulation, IdealCubulation]
VertexGluing = Tuple[int, int, Dict[int, int]]
VertexTable = List[List[Optional[VertexGluing]]]


def shape_of(x: Complex) -> CellShape:
    return CUBE if isinstance(x, IdealCubulation) else TETRAHEDRON


def _decode(
    x: Complex, shape: CellShape, cell: int, face: int, record: FaceGluing
) -> Tuple[Optional[VertexGluing], Optional[Violation]]:
    where = f"{shape.name} {cell} face {face}"
    if record.cell >= x.size or record.face >= len(shape.faces):
        return None, Violation(
            kind="index_out_of_range",
            cell=cell,
            face=face,
            message=f"{where} points to missing {shape.name} {record.cell} face {record.face}",
        )
    if not is_permutation(record.perm, 4):
        return None, Violation(
            kind="invalid_permutation",
            cell=cell,
            face=face,
            message=f"{where}: {record.perm} is not a permutation of 0..3",
        )
    if shape is TETRAHEDRON:
        if record.perm[face] != record.face:
            return None, Violation(
                kind="face_mismatch",
                cell=cell,
                face=face,
                message=f"{where}: permutation sends {face} to {record.perm[face]}, "
                f"but the target face is {record.face}",
            )
        vmap = {v: record.perm[v] for v in shape.faces[face]}
    else:
        if not is_dihedral(record.perm):
            return None, Violation(
                kind="not_dihedral",
                cell=cell,
                face=face,
                message=f"{where}: corner map {record.perm} is not a square symmetry",
            )
        vmap = face_vertex_map(face, record.face, record.perm)
    return (record.cell, record.face, vmap), None


def vertex_table(x: Complex) -> Tuple[CellShape, VertexTable, List[Violation]]:
    """Decode every record; undecodable or missing records become ``None``."""
    shape = shape_of(x)
    table: VertexTable = []
    violations: List[Violation] = []
    for cell, row in enumerate(x.gluings):
        decoded_row: List[Optional[VertexGluing]] = []
        for face, record in enumerate(row):
            if record is None:
                violations.append(
                    Violation(
                        kind="non_total",
                        cell=cell,
                        face=face,
                        message=f"{shape.name} {cell} face {face} is not glued",
                    )
                )
                decoded_row.append(None)
                continue
            decoded, problem = _decode(x, shape, cell, face, record)
            if problem is not None:
                violations.append(problem)
            decoded_row.append(decoded)
        table.append(decoded_row)
    return shape, table, violations


# ── Builders ──────────────────────────────────────────────────────

class TriangulationBuilder:
    """Accumulates tetrahedra and sets involutive face records pairwise."""

    def __init__(self, size: int = 0) -> None:
        self._rows: List[List[Optional[FaceGluing]]] = [[None] * 4 for _ in range(size)]

    @property
    def size(self) -> int:
        return len(self._rows)

    def add(self) -> int:
        self._rows.append([None] * 4)
        return len(self._rows) - 1

    def is_glued(self, tet: int, face: int) -> bool:
        return self._rows[tet][face] is not None

    def join(self, tet: int, face: int, other: int, perm: Sequence[int]) -> None:
        perm = tuple(perm)
        target_face = perm[face]
        if (tet, face) == (other, target_face):
            raise ValueError(f"cannot glue face {face} of tetrahedron {tet} to itself")
        for t, f in ((tet, face), (other, target_face)):
            if self._rows[t][f] is not None:
                raise ValueError(f"face {f} of tetrahedron {t} is already glued")
        self._rows[tet][face] = FaceGluing(cell=other, face=target_face, perm=perm)
        self._rows[other][target_face] = FaceGluing(cell=tet, face=face, perm=inverse(perm))

    def join_vertices(
        self, tet: int, vertices: Sequence[int], other: int, images: Sequence[int]
    ) -> None:
        """Glue the face spanned by ``vertices`` to the one spanned by ``images``."""
        face = ({0, 1, 2, 3} - set(vertices)).pop()
        target_face = ({0, 1, 2, 3} - set(images)).pop()
        perm = [0] * 4
        for v, w in zip(vertices, images):
            perm[v] = w
        perm[face] = target_face
        self.join(tet, face, other, perm)

    def build(self) -> IdealTriangulation:
        return IdealTriangulation(gluings=tuple(tuple(row) for row in self._rows))


class CubulationBuilder:
    """Accumulates cubes and sets involutive square-face records pairwise."""

    def __init__(self, size: int = 0) -> None:
        self._rows: List[List[Optional[FaceGluing]]] = [[None] * 6 for _ in range(size)]

    @property
    def size(self) -> int:
        return len(self._rows)

    def add(self) -> int:
        self._rows.append([None] * 6)
        return len(self._rows) - 1

    def join(self, cube: int, face: int, other: int, other_face: int, corner_map: Sequence[int]) -> None:
        corner_map = tuple(corner_map)
        if (cube, face) == (other, other_face):
            raise ValueError(f"cannot glue face {face} of cube {cube} to itself")
        for c, f in ((cube, face), (other, other_face)):
            if self._rows[c][f] is not None:
                raise ValueError(f"face {f} of cube {c} is already glued")
        self._rows[cube][face] = FaceGluing(cell=other, face=other_face, perm=corner_map)
        self._rows[other][other_face] = FaceGluing(cell=cube, face=face, perm=inverse(corner_map))

    def join_vertices(
        self, cube: int, face: int, other: int, other_face: int, vmap: Dict[int, int]
    ) -> None:
        self.join(cube, face, other, other_face, corner_map_from_vertices(face, other_face, vmap))

    def build(self) -> IdealCubulation:
        return IdealCubulation(gluings=tuple(tuple(row) for row in self._rows))


# ── Relabelling ──────────────────────────────────────────────────

def relabel_cubulation(
    c: IdealCubulation, order: Sequence[int], symmetries: Sequence[CubeSymmetry]
) -> IdealCubulation:
    """Move cube ``a`` to position ``order[a]``, relabelled by ``symmetries[a]``."""
    _, table, _ = vertex_table(c)
    builder = CubulationBuilder(c.k)
    for a, row in enumerate(table):
        g = symmetries[a]
        for f, record in enumerate(row):
            if record is None:
                continue
            b, f2, vmap = record
            h = symmetries[b]
            if builder._rows[order[a]][g.face(f)] is not None:
                continue
            builder.join_vertices(
                order[a],
                g.face(f),
                order[b],
                h.face(f2),
                {g.vertex(v): h.vertex(w) for v, w in vmap.items()},
            )
    return builder.build()


def relabel_triangulation(
    t: IdealTriangulation, order: Sequence[int], relabellings: Sequence[Perm]
) -> IdealTriangulation:
    """Move tetrahedron ``a`` to ``order[a]`` with vertices renamed by ``relabellings[a]``."""
    builder = TriangulationBuilder(t.n)
    for a, row in enumerate(t.gluings):
        g = relabellings[a]
        for f, record in enumerate(row):
            if record is None or builder.is_glued(order[a], g[f]):
                continue
            h = relabellings[record.cell]
            builder.join(order[a], g[f], order[record.cell], compose(h, compose(record.perm, inverse(g))))
    return builder.build()
