from app.core.dual_surface import (
    dual_surface_stats,
    manifold_boundary_components,
    spherical_boundary,
    trace_sheets,
)


def test_coordinate_planes_in_the_sphere(s3_cubulation):
    stats = dual_surface_stats(s3_cubulation)
    assert (stats.triple_points, stats.singular_edges, stats.regions) == (2, 6, 12)
    assert stats.euler_sigma == 8
    assert stats.euler_abstract == 6
    assert [s.label for s in stats.sheets] == ["S2", "S2", "S2"]
    assert all(s.two_sided for s in stats.sheets)
    assert stats.complement_balls == 8
    assert stats.boundary_collars == 0
    assert spherical_boundary(s3_cubulation) == 8
    assert manifold_boundary_components(s3_cubulation) == 0


def test_three_torus_sheets_are_tori(t3_cubulation):
    stats = dual_surface_stats(t3_cubulation)
    assert (stats.triple_points, stats.singular_edges, stats.regions) == (2, 6, 6)
    assert stats.euler_abstract == 0
    assert sorted(s.label for s in stats.sheets) == ["T2"] * 4
    assert sorted(s.squares for s in stats.sheets) == [1, 1, 2, 2]
    assert stats.complement_balls == 2


def test_sheets_account_for_every_square(s3_cubulation, t3_cubulation, t3_one_cube):
    for c in (s3_cubulation, t3_cubulation, t3_one_cube):
        sheets = trace_sheets(c)
        assert sum(s.squares for s in sheets) == 3 * c.k
        assert sum(s.euler_characteristic for s in sheets) == dual_surface_stats(c).euler_abstract


def test_one_cube_torus(t3_one_cube):
    stats = dual_surface_stats(t3_one_cube)
    assert stats.triple_points == 1
    assert (stats.singular_edges, stats.regions) == (3, 3)
    assert [s.label for s in stats.sheets] == ["T2"] * 3
