"""Loops on surfaces: thickening, loop complexity, enumeration and the square dual."""

import pytest

from app.core.errors import DescriptorError, DiagramError, MissingRibbonDataError
from app.core.surface2d import (
    brute_force_lc,
    canonical_key,
    check_descriptor,
    check_square_cubulation,
    diagram_to_square_cubulation,
    enumerate_diagrams,
    format_diagram_text,
    is_filling,
    is_quasi_filling,
    loop_complexity,
    mirror,
    non_filling_targets,
    parse_diagram_text,
    quasi_filled_surfaces,
    ribbon_completions,
    square_cubulation_surface,
    square_cubulation_to_diagram,
    strand_count,
    thicken,
)
from app.core.surfaces import surface_from_label
from app.models.loops import DehnLoopDiagram, FreeLoop, SquareCubulation2D, SquareSide
from app.models.surfaces import SurfaceDescriptor

PLANAR = "crossings=1; edge 0.0 0.3 twist=0; edge 0.1 0.2 twist=0"


@pytest.fixture(scope="module")
def small_diagrams():
    return enumerate_diagrams(1) + enumerate_diagrams(2)


def _pillow(flip):
    return SquareCubulation2D(
        gluings=(
            tuple(SquareSide(square=1, side=s, flip=flip) for s in range(4)),
            tuple(SquareSide(square=0, side=s, flip=flip) for s in range(4)),
        )
    )


# ── Thickening ──────────────────────────────────────────────────

def test_free_loops():
    assert thicken(DehnLoopDiagram(loops=(FreeLoop(twist=0),))).label == "A"
    assert thicken(DehnLoopDiagram(loops=(FreeLoop(twist=1),))).label == "Mb"


def test_figure_eight_thickens_to_punctured_torus(figure_eight):
    s = thicken(figure_eight)
    assert (s.orientable, s.euler_characteristic, s.boundary_components) == (True, -1, 1)
    assert s.label == "S1,1"
    assert strand_count(figure_eight) == 2


def test_planar_figure_eight():
    d = parse_diagram_text(PLANAR)
    assert thicken(d).label == "S0,3"
    assert strand_count(d) == 1


def test_euler_characteristic_is_crossings_minus_arcs(small_diagrams):
    for d in small_diagrams:
        s = thicken(d)
        assert s.euler_characteristic == d.crossings - len(d.edges) == -d.crossings
        assert s.boundary_components >= 1


def test_mirror_keeps_the_surface(small_diagrams):
    for d in small_diagrams:
        assert thicken(mirror(d)) == thicken(d)
        assert strand_count(mirror(d)) == strand_count(d)


def test_bare_loop_needs_twists(bouquet):
    assert bouquet.bare
    with pytest.raises(MissingRibbonDataError):
        thicken(bouquet)
    with pytest.raises(MissingRibbonDataError):
        diagram_to_square_cubulation(bouquet)


def test_bare_loop_has_several_completions(bouquet):
    completions = dict(ribbon_completions(bouquet))
    assert len(completions) == 4
    assert completions[(0, 0)].label == "S1,1"
    assert completions[(1, 0)].label == completions[(0, 1)].label == "N2,1"
    assert completions[(1, 1)].label == "N1,2"
    assert len({s for s in completions.values()}) == 3


def test_strands_ignore_twists(bouquet):
    assert strand_count(bouquet) == 2


# ── Loop complexity ─────────────────────────────────────────────

@pytest.mark.parametrize(
    "label, expected",
    [
        ("S2", 0), ("RP2", 0), ("B2", 0), ("A", 0), ("Mb", 0),
        ("T2", 1), ("K", 1), ("N3", 2), ("S2,0", 3),
        ("S1,1", 1), ("S0,3", 1), ("N2,1", 1), ("N1,2", 1), ("S2,2", 4),
    ],
)
def test_loop_complexity_formula(label, expected):
    assert loop_complexity(surface_from_label(label)) == expected


@pytest.mark.parametrize("label", ["S2", "RP2", "B2", "A", "Mb", "T2", "K", "S1,1", "S0,3", "N1,2", "N3"])
def test_enumeration_agrees_with_the_formula(label):
    target = surface_from_label(label)
    assert brute_force_lc(target, max_crossings=2) == loop_complexity(target)


@pytest.mark.parametrize(
    "surface",
    [
        SurfaceDescriptor(orientable=True, euler_characteristic=1),
        SurfaceDescriptor(orientable=True, euler_characteristic=3),
        SurfaceDescriptor(orientable=False, euler_characteristic=2),
        SurfaceDescriptor(orientable=False, euler_characteristic=1, boundary_components=1),
    ],
)
def test_impossible_descriptors(surface):
    with pytest.raises(DescriptorError):
        check_descriptor(surface)
    with pytest.raises(DescriptorError):
        loop_complexity(surface)


def test_quasi_filling(figure_eight):
    annulus = DehnLoopDiagram(loops=(FreeLoop(twist=0),))
    assert is_quasi_filling(annulus, surface_from_label("S2"))
    assert is_quasi_filling(annulus, surface_from_label("B2"))
    assert not is_filling(annulus)
    assert is_quasi_filling(figure_eight, surface_from_label("T2"))
    assert is_quasi_filling(figure_eight, surface_from_label("S1,1"))
    assert not is_quasi_filling(figure_eight, surface_from_label("K"))
    assert is_filling(figure_eight)
    assert [s.label for s in quasi_filled_surfaces(figure_eight)] == ["S1,1", "T2"]


def test_surfaces_without_filling_loops():
    assert non_filling_targets() == ["A", "B2", "Mb", "RP2", "S2"]


# ── Enumeration ─────────────────────────────────────────────────

def test_class_counts():
    assert len(enumerate_diagrams(0)) == 2
    assert len(enumerate_diagrams(1)) == 6
    with pytest.raises(DiagramError):
        enumerate_diagrams(-1)


def test_classes_are_distinct(small_diagrams):
    keys = [canonical_key(d) for d in small_diagrams]
    assert len(keys) == len(set(keys))


def test_key_ignores_rotation_and_flips(figure_eight):
    twisted = parse_diagram_text("crossings=1; edge 0.0 0.2 twist=1; edge 0.1 0.3 twist=0")
    rotated = parse_diagram_text("crossings=1; edge 0.1 0.3 twist=1; edge 0.2 0.0 twist=0")
    assert canonical_key(rotated) == canonical_key(twisted)
    assert canonical_key(twisted) != canonical_key(figure_eight)
    assert canonical_key(mirror(figure_eight)) == canonical_key(figure_eight)
    assert canonical_key(parse_diagram_text(PLANAR)) != canonical_key(figure_eight)


def test_vertex_flip_is_an_isomorphism():
    d = parse_diagram_text(
        "crossings=2; edge 0.0 1.0 twist=0; edge 0.1 1.1 twist=1; edge 0.2 1.2 twist=0; edge 0.3 1.3 twist=1"
    )
    flipped = parse_diagram_text(
        "crossings=2; edge 0.0 1.0 twist=1; edge 0.1 1.3 twist=0; edge 0.2 1.2 twist=1; edge 0.3 1.1 twist=0"
    )
    assert canonical_key(d) == canonical_key(flipped)
    assert thicken(d) == thicken(flipped)


# ── Square cubulations ──────────────────────────────────────────

def test_figure_eight_dual_is_a_torus(figure_eight):
    q = diagram_to_square_cubulation(figure_eight)
    assert q.squares == 1
    assert square_cubulation_surface(q).label == "T2"
    assert square_cubulation_to_diagram(q) == figure_eight


@pytest.mark.parametrize("flip, label", [(1, "S2"), (0, "T2")])
def test_two_square_surfaces(flip, label):
    q = _pillow(flip)
    assert square_cubulation_surface(q).label == label
    d = square_cubulation_to_diagram(q)
    assert d.crossings == 2
    assert diagram_to_square_cubulation(d) == q


def test_dual_surface_caps_the_thickening(small_diagrams):
    for d in small_diagrams:
        thick = thicken(d)
        closed = square_cubulation_surface(diagram_to_square_cubulation(d))
        assert closed.closed
        assert closed.orientable == thick.orientable
        assert closed.euler_characteristic == thick.euler_characteristic + thick.boundary_components
        assert canonical_key(square_cubulation_to_diagram(diagram_to_square_cubulation(d))) == canonical_key(d)


def test_no_squares_without_crossings():
    with pytest.raises(DiagramError):
        diagram_to_square_cubulation(DehnLoopDiagram(loops=(FreeLoop(twist=0),)))


def test_broken_square_cubulations():
    one_way = SquareCubulation2D(
        gluings=(
            (SquareSide(square=0, side=2, flip=0), SquareSide(square=0, side=3, flip=0),
             SquareSide(square=0, side=0, flip=1), SquareSide(square=0, side=1, flip=0)),
        )
    )
    with pytest.raises(DiagramError):
        check_square_cubulation(one_way)
    unglued = SquareCubulation2D(gluings=((None, None, None, None),))
    with pytest.raises(DiagramError):
        check_square_cubulation(unglued)


# ── Text form ───────────────────────────────────────────────────

def test_text_form_reads_back(figure_eight, bouquet):
    for d in (figure_eight, bouquet):
        assert parse_diagram_text(format_diagram_text(d)) == d


@pytest.mark.parametrize(
    "text",
    [
        "edge 0.0 0.2",
        "crossings=1; edge 0.0 0.2",
        "crossings=1; edge 0.0 0.0; edge 0.1 0.2",
        "crossings=1; edge 0.0 0.2; edge 0.2 0.1; edge 0.3 0.1",
        "crossings=1; crossings=1",
        "crossings=1; arc 0.0 0.2",
        "crossings=0",
        "crossings=2; edge 0.0 0.2; edge 0.1 0.3; edge 1.0 1.2; edge 1.1 1.3",
    ],
)
def test_malformed_diagrams(text):
    with pytest.raises(DiagramError):
        parse_diagram_text(text)
