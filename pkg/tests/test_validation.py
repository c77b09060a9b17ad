import pytest

from app.core.errors import InvalidComplexError
from app.core.formats import parse_gluing_text
from app.core.validation import (
    edge_class_of,
    euler_identity_check,
    require_valid,
    validate,
    vertex_classes_of,
    vertex_links,
)
from app.models.base import FaceGluing, IdealCubulation


def test_coordinate_planes_counts(s3_cubulation):
    report = validate(s3_cubulation)
    assert report.ok, report.violations
    o = report.orbits
    assert (o.vertices, o.edges, o.faces, o.cells) == (8, 12, 6, 2)
    assert o.euler_characteristic == 0
    assert (o.finite_vertices, o.ideal_vertices) == (8, 0)
    assert o.orientable
    assert sorted(o.edge_degrees) == [2] * 12


def test_two_cube_torus_counts(t3_cubulation):
    o = require_valid(t3_cubulation)
    assert (o.vertices, o.edges, o.faces) == (2, 6, 6)
    assert o.euler_characteristic == 0
    assert sorted(o.edge_degrees) == [4] * 6
    assert o.orientable
    assert all(link.classification == "finite" for link in vertex_links(t3_cubulation))


def test_double_tetrahedron(identity_triangulation):
    o = require_valid(identity_triangulation)
    assert (o.vertices, o.edges, o.faces) == (4, 6, 4)
    assert o.euler_characteristic == 0
    assert o.orientable
    assert [link.link.label for link in vertex_links(identity_triangulation)] == ["S2"] * 4


def test_one_tetrahedron_is_valid(one_tetrahedron):
    o = require_valid(one_tetrahedron)
    assert o.cells == 1
    assert o.faces == 2
    assert sum(o.edge_degrees) == 6
    assert euler_identity_check(one_tetrahedron)


@pytest.mark.parametrize("name", ["s3_cubulation", "t3_cubulation", "t3_one_cube", "identity_triangulation"])
def test_euler_identity(name, request):
    assert euler_identity_check(request.getfixturevalue(name))


def test_unglued_face_is_reported():
    c = parse_gluing_text("cubulation k=1\n0 0 -> 0 1 : 0 1 2 3\n0 2 -> 0 3 : 0 1 2 3\n")
    report = validate(c)
    assert not report.ok
    assert {v.kind for v in report.violations} == {"non_total"}
    assert {(v.cell, v.face) for v in report.violations} == {(0, 4), (0, 5)}
    with pytest.raises(InvalidComplexError):
        require_valid(c)


def test_edge_glued_to_itself_reversed():
    t = parse_gluing_text("triangulation n=1\n0 0 -> 0 : 1 0 3 2\n0 2 -> 0 : 0 1 3 2\n")
    report = validate(t)
    assert not report.ok
    assert "reversed_edge" in {v.kind for v in report.violations}


def test_non_involutive_record(s3_cubulation):
    rows = [list(row) for row in s3_cubulation.gluings]
    rows[1][0] = FaceGluing(cell=1, face=1, perm=(0, 1, 2, 3))
    broken = IdealCubulation(gluings=tuple(tuple(row) for row in rows))
    kinds = {v.kind for v in validate(broken).violations}
    assert "non_involutive" in kinds


def test_not_dihedral_corner_map(s3_cubulation):
    rows = [list(row) for row in s3_cubulation.gluings]
    rows[0][0] = FaceGluing(cell=1, face=0, perm=(0, 1, 3, 2))
    rows[1][0] = FaceGluing(cell=0, face=0, perm=(0, 1, 3, 2))
    broken = IdealCubulation(gluings=tuple(tuple(row) for row in rows))
    assert "not_dihedral" in {v.kind for v in validate(broken).violations}


def test_disconnected_complex():
    c = parse_gluing_text(
        "cubulation k=2\n"
        "0 0 -> 0 1 : 0 1 2 3\n0 2 -> 0 3 : 0 1 2 3\n0 4 -> 0 5 : 0 1 2 3\n"
        "1 0 -> 1 1 : 0 1 2 3\n1 2 -> 1 3 : 0 1 2 3\n1 4 -> 1 5 : 0 1 2 3\n"
    )
    assert "disconnected" in {v.kind for v in validate(c).violations}


def test_orbit_maps_cover_every_occurrence(t3_cubulation):
    vertices = vertex_classes_of(t3_cubulation)
    assert len(vertices) == 16
    assert set(vertices.values()) == {0, 1}
    edges = edge_class_of(t3_cubulation)
    assert len(edges) == 24
    assert len(set(edges.values())) == 6
