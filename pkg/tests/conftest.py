"""Shared fixtures: the gluing tables and diagrams shipped in ``fixtures/``."""

from __future__ import annotations

from pathlib import Path

import pytest

from app.core.formats import read_complex
from app.core.surface2d import read_diagram
from app.models.base import IdealCubulation, IdealTriangulation
from app.models.loops import DehnLoopDiagram

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


@pytest.fixture
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture
def s3_cubulation() -> IdealCubulation:
    c = read_complex(FIXTURES / "s3_coordinate_planes.cub")
    assert isinstance(c, IdealCubulation)
    return c


@pytest.fixture
def t3_cubulation() -> IdealCubulation:
    c = read_complex(FIXTURES / "t3_two_cubes.cub")
    assert isinstance(c, IdealCubulation)
    return c


@pytest.fixture
def t3_one_cube() -> IdealCubulation:
    c = read_complex(FIXTURES / "t3_one_cube.cub")
    assert isinstance(c, IdealCubulation)
    return c


@pytest.fixture
def identity_triangulation() -> IdealTriangulation:
    t = read_complex(FIXTURES / "s3_double_tetrahedron.tri")
    assert isinstance(t, IdealTriangulation)
    return t


@pytest.fixture
def one_tetrahedron() -> IdealTriangulation:
    t = read_complex(FIXTURES / "one_tetrahedron.tri")
    assert isinstance(t, IdealTriangulation)
    return t


@pytest.fixture
def figure_eight() -> DehnLoopDiagram:
    return read_diagram(FIXTURES / "figure_eight.dlp")


@pytest.fixture
def bouquet() -> DehnLoopDiagram:
    return read_diagram(FIXTURES / "bouquet.dlp")
