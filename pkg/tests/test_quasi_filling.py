import pytest

from app.core.errors import (
    CatalogError,
    ExpressionFormatError,
    InverseBubbleError,
    UnknownRegionError,
)
from app.core.quasi_filling import (
    boundary_connected_sum,
    bubble_move,
    connected_sum,
    exceptional_manifold,
    format_qfs_text,
    inverse_bubble_move,
    is_derived_from,
    is_filling,
    parse_qfs_text,
    read_qfs,
    stats,
)
from app.models.qfs import Bubble, Exceptional, ExceptionalSurface, FillingBase
from app.models.surfaces import TORUS


@pytest.fixture
def s3_base(fixtures_dir):
    return parse_qfs_text("base(s3_coordinate_planes.cub)", fixtures_dir)


def test_base_stats(s3_base):
    s = stats(s3_base)
    assert s.triple_points == 2
    assert s.complement_balls == 8
    assert s.regions == 12
    assert [x.label for x in s.sheets] == ["S2"] * 3
    assert s.is_filling
    assert s.manifold == "s3_coordinate_planes.cub"


def test_bubble_adds_a_sphere_and_two_balls(s3_base):
    before = stats(s3_base)
    after = stats(bubble_move(s3_base, 0))
    assert after.triple_points == before.triple_points
    assert after.complement_balls == before.complement_balls + 2
    assert after.euler_abstract == before.euler_abstract + 2
    assert after.regions == before.regions + 3
    assert len(after.sheets) == len(before.sheets) + 1
    assert not after.is_filling
    assert after.manifold == before.manifold


def test_inverse_bubble(s3_base):
    assert inverse_bubble_move(bubble_move(s3_base, 4)) == s3_base
    with pytest.raises(InverseBubbleError):
        inverse_bubble_move(s3_base)


def test_unknown_region(s3_base):
    with pytest.raises(UnknownRegionError) as info:
        bubble_move(s3_base, 12)
    assert isinstance(info.value, KeyError)
    assert "12" in str(info.value)


def test_derivation(s3_base):
    twice = bubble_move(bubble_move(s3_base, 0), 13)
    assert is_derived_from(twice, s3_base)
    assert not is_derived_from(s3_base, twice)
    assert is_filling(s3_base) and not is_filling(twice)


def test_catalog_items():
    four_hat = Exceptional(surface=ExceptionalSurface(kind="four_hat", punctures=1))
    s = stats(four_hat)
    assert s.triple_points == 0
    assert s.complement_balls == 0
    assert s.manifold == "L(4,1) minus 1 ball"
    assert exceptional_manifold(ExceptionalSurface(kind="sphere", punctures=1)) == "B3"


def test_catalog_rejects_unsupported_punctures():
    with pytest.raises(CatalogError):
        stats(Exceptional(surface=ExceptionalSurface(kind="projective_plane", punctures=1)))
    with pytest.raises(CatalogError):
        stats(Exceptional(surface=ExceptionalSurface(kind="surface_bundle")))


def test_surface_bundle():
    bundle = Exceptional(surface=ExceptionalSurface(kind="surface_bundle", base=TORUS))
    s = stats(bundle)
    assert s.manifold == "I-bundle(T2)"
    assert s.complement_balls == 0
    assert [x.label for x in s.sheets] == ["T2"]


def test_connected_sum_bubbles_a_summand_without_balls(fixtures_dir):
    q = read_qfs(fixtures_dir / "lens_sum.qfs")
    assert isinstance(q.left, Bubble)
    s = stats(q)
    assert s.manifold == "(L(4,1) minus 1 ball # RP3)"
    assert s.triple_points == 0
    assert s.regions == 5
    assert s.complement_balls is None


def test_sums_add_triple_points(s3_base):
    rp3 = Exceptional(surface=ExceptionalSurface(kind="projective_plane"))
    assert stats(connected_sum(s3_base, rp3)).triple_points == 2
    assert stats(boundary_connected_sum(s3_base, s3_base)).triple_points == 4
    assert stats(boundary_connected_sum(s3_base, rp3)).manifold.startswith("(s3_coordinate_planes.cub #∂")


def test_text_form_reads_back(fixtures_dir):
    q = read_qfs(fixtures_dir / "s3_bubbled.qfs")
    assert isinstance(q, Bubble) and isinstance(q.child, FillingBase)
    assert parse_qfs_text(format_qfs_text(q), fixtures_dir) == q


@pytest.mark.parametrize(
    "text",
    [
        "bubble(3, base(s3_coordinate_planes.cub))",
        "exceptional(four_hat, colour=red)",
        "exceptional(four_hat",
        "csum(exceptional(sphere) exceptional(sphere))",
        "exceptional(sphere) extra",
    ],
)
def test_malformed_expressions(text, fixtures_dir):
    with pytest.raises(ExpressionFormatError):
        parse_qfs_text(text, fixtures_dir)
