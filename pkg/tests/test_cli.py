import json

import pytest

from app.cli import EXIT_INVALID, EXIT_OK, EXIT_USAGE, main
from tests.conftest import FIXTURES

S3 = str(FIXTURES / "s3_coordinate_planes.cub")


def test_validate_ok(capsys):
    assert main(["validate", S3]) == EXIT_OK
    out = capsys.readouterr().out
    assert out.startswith("OK cubulation with 2 cells")
    assert "V=8 E=12 F=6 chi=0" in out


def test_validate_invalid(tmp_path, capsys):
    path = tmp_path / "open.cub"
    path.write_text("cubulation k=1\n0 0 -> 0 1 : 0 1 2 3\n", encoding="utf-8")
    assert main(["validate", str(path)]) == EXIT_INVALID
    assert "non_total" in capsys.readouterr().out


def test_validate_json(capsys):
    assert main(["--json", "validate", S3]) == EXIT_OK
    payload = json.loads(capsys.readouterr().out)
    assert payload["report"]["ok"] is True
    assert payload["signature"].startswith("C2:")


@pytest.mark.parametrize(
    "argv",
    [
        ["validate", "does/not/exist.cub"],
        ["frobnicate"],
        ["census", "--cubes", "3"],
        ["bounds"],
        ["lc2d", "lc", "Q7"],
    ],
)
def test_usage_errors(argv, capsys):
    assert main(argv) == EXIT_USAGE


def test_malformed_file(tmp_path, capsys):
    path = tmp_path / "bad.cub"
    path.write_text("cubulation k=1\n0 0 -> 0 1\n", encoding="utf-8")
    assert main(["validate", str(path)]) == EXIT_USAGE
    assert "line 2" in capsys.readouterr().err


def test_stats_json(capsys):
    assert main(["--json", "stats", S3]) == EXIT_OK
    payload = json.loads(capsys.readouterr().out)
    assert payload["surface"]["triple_points"] == 2
    assert [s["orientable"] for s in payload["surface"]["sheets"]] == [True] * 3


def test_stats_rejects_invalid(tmp_path, capsys):
    path = tmp_path / "open.cub"
    path.write_text("cubulation k=1\n0 0 -> 0 1 : 0 1 2 3\n", encoding="utf-8")
    assert main(["stats", str(path)]) == EXIT_INVALID


def test_convert_cubulation(capsys):
    assert main(["convert", "cub2tri", S3, "--bits", "zeros"]) == EXIT_OK
    out = capsys.readouterr().out
    assert out.startswith("triangulation n=10")
    assert out.splitlines()[-1] == "# k=2 n=10 m=0"
    assert main(["convert", "cub2tri", S3, "--bits", "012"]) == EXIT_USAGE


def test_convert_triangulation(tmp_path, capsys):
    out = tmp_path / "c.cub"
    assert main(["convert", "tri2cub", str(FIXTURES / "s3_double_tetrahedron.tri"), "-o", str(out)]) == EXIT_OK
    assert out.read_text(encoding="utf-8").startswith("cubulation k=8")
    assert capsys.readouterr().out.strip() == f"n=2 k=8; wrote {out}"
    assert main(["convert", "roundtrip", str(FIXTURES / "s3_double_tetrahedron.tri")]) == EXIT_OK
    assert "chi preserved: True" in capsys.readouterr().out
    assert main(["convert", "tri2cub", S3]) == EXIT_USAGE


def test_qfs_commands(tmp_path, capsys):
    assert main(["qfs", "stats", str(FIXTURES / "s3_bubbled.qfs")]) == EXIT_OK
    out = capsys.readouterr().out
    assert "triple points: 2" in out
    assert "complement balls: 10" in out

    target = tmp_path / "twice.qfs"
    assert main(["qfs", "bubble", str(FIXTURES / "s3_bubbled.qfs"), "--region", "1", "-o", str(target)]) == EXIT_OK
    assert target.read_text(encoding="utf-8").startswith("bubble(region=1, bubble(region=0,")

    assert main(["qfs", "bubble", str(FIXTURES / "s3_bubbled.qfs"), "--region", "999"]) == EXIT_USAGE
    assert main(["qfs", "unbubble", "exceptional(projective_plane)"]) == EXIT_USAGE
    assert main(["qfs", "sum", "exceptional(four_hat)", "exceptional(projective_plane)"]) == EXIT_OK
    assert "L(4,1) # RP3" in capsys.readouterr().out


def test_bounds_commands(capsys):
    assert main(["bounds", "--tri-size", "2"]) == EXIT_OK
    assert "[0, 8]" in capsys.readouterr().out
    assert main(["bounds", str(FIXTURES / "s3.ledger")]) == EXIT_OK
    assert "[0, 16]" in capsys.readouterr().out
    assert main(["bounds", "--manifold", "L(3,1)", "--hypotheses", "--tri-size", "2"]) == EXIT_USAGE


def test_lc2d_commands(capsys):
    assert main(["lc2d", "lc", "K"]) == EXIT_OK
    assert "lc(K) = 1" in capsys.readouterr().out
    assert main(["lc2d", "thicken", str(FIXTURES / "figure_eight.dlp")]) == EXIT_OK
    assert capsys.readouterr().out.startswith("S1,1:")
    assert main(["lc2d", "search", "T2"]) == EXIT_OK
    assert "lc(T2) = 1 by enumeration" in capsys.readouterr().out
    assert main(["lc2d", "dual", str(FIXTURES / "figure_eight.dlp")]) == EXIT_OK
    assert "1 squares presenting T2" in capsys.readouterr().out
    assert main(["lc2d", "dual", str(FIXTURES / "bouquet.dlp")]) == EXIT_USAGE
    assert main(["lc2d", "completions", str(FIXTURES / "bouquet.dlp")]) == EXIT_OK
    assert "N1,2" in capsys.readouterr().out


def test_census_command(tmp_path, capsys):
    assert main(["census", "--cubes", "1", "--filter", "orientable", "--out", str(tmp_path)]) == EXIT_OK
    out = capsys.readouterr().out
    assert "cube(s)" in out.splitlines()[0]
    assert (tmp_path / "summary.txt").exists()


def test_convert_positional_output(tmp_path, capsys):
    tri = tmp_path / "s3.tri"
    assert main(["convert", "cub2tri", S3, str(tri), "--bits", "zeros"]) == EXIT_OK
    assert capsys.readouterr().out.strip() == f"k=2 n=10 m=0; wrote {tri}"
    assert tri.read_text(encoding="utf-8").startswith("triangulation n=10")

    cub = tmp_path / "s3.cub"
    assert main(["convert", "tri2cub", str(tri), str(cub)]) == EXIT_OK
    assert capsys.readouterr().out.strip() == f"n=10 k=40; wrote {cub}"
    assert cub.read_text(encoding="utf-8").startswith("cubulation k=40")


def test_convert_stdout_table_still_parses(tmp_path, capsys):
    assert main(["convert", "tri2cub", str(FIXTURES / "s3_double_tetrahedron.tri")]) == EXIT_OK
    out = capsys.readouterr().out
    assert out.splitlines()[-1] == "# n=2 k=8"
    path = tmp_path / "c.cub"
    path.write_text(out, encoding="utf-8")
    assert main(["validate", str(path)]) == EXIT_OK
