import random

import pytest

from app.core.census import (
    CENSUS_FILTERS,
    census_entry,
    census_report,
    enumerate_cubulations,
    face_pairing_patterns,
    write_census,
)
from app.core.complexes import relabel_cubulation
from app.core.conversions import (
    cubulation_to_triangulation,
    local_search_orientations,
    optimize_orientations,
)
from app.core.errors import CensusRangeError
from app.core.formats import parse_gluing_text, read_complex
from app.core.signature import isomorphism_signature
from app.core.symmetry import CUBE_SYMMETRIES, DIHEDRAL_MAPS, ORIENTATION_REVERSING
from app.core.tables import table
from app.core.validation import euler_identity_check, validate

MIRRORED_PAIRING = [
    ((0, 0), (1, 1)),
    ((0, 1), (1, 0)),
    ((0, 2), (1, 2)),
    ((0, 3), (1, 3)),
    ((0, 4), (1, 4)),
    ((0, 5), (1, 5)),
]


@pytest.fixture(scope="module")
def one_cube_census():
    return enumerate_cubulations(1)


@pytest.fixture(scope="module")
def two_cube_spheres():
    return enumerate_cubulations(2, orientable_only=True, filters=["sheets-all-spheres"])


def _random_one_cube(rng):
    faces = list(range(6))
    rng.shuffle(faces)
    lines = ["cubulation k=1"]
    for f, g in zip(faces[::2], faces[1::2]):
        perm = " ".join(str(p) for p in rng.choice(DIHEDRAL_MAPS))
        lines.append(f"0 {f} -> 0 {g} : {perm}")
    return parse_gluing_text("\n".join(lines) + "\n")


def _random_two_cubes(rng, orientable=False):
    slots = [(cube, face) for cube in range(2) for face in range(6)]
    rng.shuffle(slots)
    sides = (0, rng.randint(0, 1))
    lines = ["cubulation k=2"]
    for (a, f), (b, g) in zip(slots[::2], slots[1::2]):
        maps = DIHEDRAL_MAPS
        if orientable:
            compatible = ORIENTATION_REVERSING[(f, g)]
            maps = [m for m in DIHEDRAL_MAPS if (m in compatible) == (sides[a] == sides[b])]
        perm = " ".join(str(p) for p in rng.choice(maps))
        lines.append(f"{a} {f} -> {b} {g} : {perm}")
    return parse_gluing_text("\n".join(lines) + "\n")


def test_sizes_and_filters_are_checked():
    with pytest.raises(CensusRangeError):
        enumerate_cubulations(3)
    with pytest.raises(CensusRangeError):
        enumerate_cubulations(0)
    with pytest.raises(CensusRangeError):
        enumerate_cubulations(1, filters=["round"])
    with pytest.raises(CensusRangeError):
        enumerate_cubulations(2, pairing=MIRRORED_PAIRING[:5])


def test_entries_are_valid_and_distinct(one_cube_census):
    entries = one_cube_census.entries
    assert len(entries) == 198
    signatures = [e.signature for e in entries]
    assert signatures == sorted(set(signatures))
    for entry in entries:
        assert validate(entry.cubulation).ok
        assert isomorphism_signature(entry.cubulation) == entry.signature
        assert entry.euler_identity
        assert entry.surface.triple_points == 1
        assert sum(s.euler_characteristic for s in entry.surface.sheets) == entry.surface.euler_abstract


def test_census_is_exhaustive(one_cube_census, t3_one_cube):
    signatures = {e.signature for e in one_cube_census.entries}
    assert isomorphism_signature(t3_one_cube) in signatures

    rng = random.Random(5)
    for _ in range(50):
        relabelled = relabel_cubulation(t3_one_cube, [0], [rng.choice(CUBE_SYMMETRIES)])
        assert isomorphism_signature(relabelled) in signatures

    checked = 0
    for _ in range(400):
        c = _random_one_cube(rng)
        if validate(c).ok:
            checked += 1
            assert isomorphism_signature(c) in signatures
    assert checked > 0


def test_generation_order_does_not_matter(one_cube_census):
    expected = [e.signature for e in one_cube_census.entries]
    for seed in (0, 1, 7, 23, 101):
        shuffled = enumerate_cubulations(1, shuffle_seed=seed, workers=2 if seed % 2 else 1)
        assert [e.signature for e in shuffled.entries] == expected, seed


def test_filters(one_cube_census):
    orientable = enumerate_cubulations(1, filters=["orientable"])
    expected = [e.signature for e in one_cube_census.entries if e.orientable]
    assert [e.signature for e in orientable.entries] == expected
    assert orientable.filters == ["orientable"]
    for name, keep in CENSUS_FILTERS.items():
        kept = [e for e in one_cube_census.entries if keep(e)]
        assert len(kept) <= len(one_cube_census.entries), name


def test_orientable_only_search(one_cube_census):
    result = enumerate_cubulations(1, orientable_only=True)
    assert result.orientable_only
    assert all(e.orientable for e in result.entries)
    assert [e.signature for e in result.entries] == [e.signature for e in one_cube_census.entries if e.orientable]


def test_face_pairing_patterns():
    one = face_pairing_patterns(1)
    assert sorted(p.symmetry_count for p in one) == [6, 8, 48]
    # orbit sizes add up to every perfect matching of the six faces
    assert sum(48 // p.symmetry_count for p in one) == 15

    two = face_pairing_patterns(2)
    # connected matchings of twelve faces: all 10395 but the 15 * 15 that keep the cubes apart
    assert sum(2 * 48 * 48 // p.symmetry_count for p in two) == 10395 - 225
    for pattern in two:
        cubes = {slot[0] for pair in pattern.pairs for slot in pair}
        assert cubes == {0, 1}
        assert sorted(s for pair in pattern.pairs for s in pair) == [(a, f) for a in range(2) for f in range(6)]


def test_sphere_filter_during_search_matches_filtering_after(one_cube_census):
    pushed = enumerate_cubulations(1, filters=["sheets-all-spheres"])
    keep = CENSUS_FILTERS["sheets-all-spheres"]
    assert [e.signature for e in pushed.entries] == [e.signature for e in one_cube_census.entries if keep(e)]

    mirrored = enumerate_cubulations(2, orientable_only=True, pairing=MIRRORED_PAIRING)
    spheres = enumerate_cubulations(
        2, filters=["sheets-all-spheres"], orientable_only=True, pairing=MIRRORED_PAIRING
    )
    assert [e.signature for e in spheres.entries] == [e.signature for e in mirrored.entries if keep(e)]


def test_fixed_face_pairing_finds_the_sphere(s3_cubulation):
    result = enumerate_cubulations(2, orientable_only=True, pairing=MIRRORED_PAIRING)
    assert isomorphism_signature(s3_cubulation) in {e.signature for e in result.entries}
    assert all(e.orientable for e in result.entries)


def test_two_cube_census_finds_the_sphere(two_cube_spheres, s3_cubulation):
    entries = two_cube_spheres.entries
    signatures = [e.signature for e in entries]
    assert signatures == sorted(set(signatures))
    assert isomorphism_signature(s3_cubulation) in signatures

    rng = random.Random(3)
    for _ in range(20):
        symmetries = [rng.choice(CUBE_SYMMETRIES) for _ in range(2)]
        relabelled = relabel_cubulation(s3_cubulation, rng.sample([0, 1], 2), symmetries)
        assert isomorphism_signature(relabelled) in signatures

    for entry in entries:
        assert entry.orientable
        assert entry.surface.triple_points == 2
        assert all(s.is_sphere for s in entry.surface.sheets)
        assert entry.euler_identity

    mirrored = enumerate_cubulations(
        2, filters=["sheets-all-spheres"], orientable_only=True, pairing=MIRRORED_PAIRING
    )
    assert {e.signature for e in mirrored.entries} <= set(signatures)


def test_two_cube_census_covers_random_tables(two_cube_spheres):
    signatures = {e.signature for e in two_cube_spheres.entries}
    keep = CENSUS_FILTERS["sheets-all-spheres"]
    rng = random.Random(13)
    checked = 0
    for _ in range(3000):
        c = _random_two_cubes(rng, orientable=True)
        if not validate(c).ok:
            continue
        entry = census_entry(c)
        assert entry.orientable
        if keep(entry):
            checked += 1
            assert entry.signature in signatures
    assert checked > 0



def test_census_entry(s3_cubulation):
    entry = census_entry(s3_cubulation)
    assert (entry.vertices, entry.edges, entry.faces) == (8, 12, 6)
    assert entry.links == ("S2",) * 8
    assert entry.sheet_profile == ("S2", "S2", "S2")
    assert CENSUS_FILTERS["all-finite"](entry)
    assert not CENSUS_FILTERS["ideal"](entry)
    assert not CENSUS_FILTERS["one-sided-sheet"](entry)


def test_report(s3_cubulation, t3_cubulation):
    assert census_report([]) == ""
    report = census_report([census_entry(s3_cubulation), census_entry(t3_cubulation)])
    lines = report.splitlines()
    assert lines[0].split() == ["count", "vertex", "links", "sheets"]
    assert len(lines) == 3

    sphere = census_entry(s3_cubulation)
    expected = table(
        [("count", "vertex links", "sheets"), ("2", " ".join(sphere.links), " ".join(sphere.sheet_profile))]
    )
    assert census_report([sphere, sphere]) == expected + "\n"


def test_write_census(one_cube_census, tmp_path):
    paths = write_census(one_cube_census, tmp_path / "census")
    assert len(paths) == len(one_cube_census.entries) + 1
    assert paths[-1].name == "summary.txt"
    first = read_complex(paths[0])
    assert isomorphism_signature(first) == one_cube_census.entries[0].signature
    assert one_cube_census.entries[0].signature in paths[-1].read_text(encoding="utf-8")


def test_conversions_on_census_entries(one_cube_census):
    for entry in one_cube_census.entries:
        c = entry.cubulation
        exhaustive = optimize_orientations(c)
        assert local_search_orientations(c).mismatches == exhaustive.mismatches
        result = cubulation_to_triangulation(c, exhaustive.bits)
        assert result.tetrahedra == 5 + result.insertions
        assert result.insertions <= 3
        assert euler_identity_check(result.triangulation)


def test_local_search_matches_exhaustive_on_two_cubes(two_cube_spheres):
    tables = [e.cubulation for e in two_cube_spheres.entries]
    rng = random.Random(17)
    sampled = 0
    for _ in range(5000):
        c = _random_two_cubes(rng)
        if validate(c).ok:
            tables.append(c)
            sampled += 1
            if sampled == 200:
                break
    assert sampled == 200
    for c in tables:
        exhaustive = optimize_orientations(c)
        assert exhaustive.mode == "exhaustive"
        assert local_search_orientations(c).mismatches == exhaustive.mismatches, c
        result = cubulation_to_triangulation(c, exhaustive.bits)
        assert result.tetrahedra == 10 + result.insertions
