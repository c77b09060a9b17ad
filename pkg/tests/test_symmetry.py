from itertools import permutations

import pytest

from app.core.symmetry import (
    CUBE,
    CUBE_SYMMETRIES,
    DIHEDRAL_MAPS,
    FACE_CORNERS,
    ORIENTATION_REVERSING,
    compose,
    cube_gluing_reverses,
    face_vertex_map,
    inverse,
    is_dihedral,
    perm_sign,
    swaps_diagonals,
    symmetry_for_gluing,
)


def test_group_sizes():
    assert len(DIHEDRAL_MAPS) == 8
    assert len(set(DIHEDRAL_MAPS)) == 8
    assert len({s.images for s in CUBE_SYMMETRIES}) == 48


def test_every_symmetry_preserves_edges_and_faces():
    edges = {frozenset(e) for e in CUBE.edges}
    faces = {frozenset(f) for f in FACE_CORNERS}
    for s in CUBE_SYMMETRIES:
        assert {frozenset(s.vertex(v) for v in e) for e in edges} == edges
        assert {frozenset(s.vertex(v) for v in f) for f in faces} == faces
        for f in range(6):
            assert frozenset(s.vertex(v) for v in FACE_CORNERS[f]) == frozenset(FACE_CORNERS[s.face(f)])


def test_dihedral_maps_keep_diagonals():
    for m in DIHEDRAL_MAPS:
        assert {frozenset((m[0], m[3])), frozenset((m[1], m[2]))} == {frozenset((0, 3)), frozenset((1, 2))}
    assert not is_dihedral((0, 1, 3, 2))
    assert swaps_diagonals((1, 0, 3, 2)) is True
    assert swaps_diagonals((1, 3, 0, 2)) is True
    assert swaps_diagonals((3, 2, 1, 0)) is False
    assert swaps_diagonals((0, 2, 1, 3)) is False
    assert sum(swaps_diagonals(m) for m in DIHEDRAL_MAPS) == 4


@pytest.mark.parametrize("p", list(permutations(range(4))))
def test_inverse_and_sign(p):
    assert compose(p, inverse(p)) == (0, 1, 2, 3)
    assert perm_sign(p) * perm_sign(inverse(p)) == 1


@pytest.mark.parametrize("f, g", [(f, g) for f in range(6) for g in range(6)])
def test_half_of_the_square_maps_are_orientation_compatible(f, g):
    assert len(ORIENTATION_REVERSING[(f, g)]) == 4


def test_translation_across_opposite_faces_is_compatible():
    assert cube_gluing_reverses(0, 1, (0, 1, 2, 3))
    assert not cube_gluing_reverses(0, 0, (0, 1, 2, 3))


def test_symmetry_for_gluing_straightens_the_map():
    for f in range(6):
        for g in range(6):
            for m in DIHEDRAL_MAPS:
                vmap = face_vertex_map(f, g, m)
                h = symmetry_for_gluing(g, vmap, f)
                assert h.face(g) == f
                assert all(h.vertex(vmap[v]) == v for v in FACE_CORNERS[f])
