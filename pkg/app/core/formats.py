"""Text format for gluing tables.

One complex per file::

    # comments start with '#'
    cubulation k=2
    0 0 -> 1 0 : 0 1 2 3        # cube face -> cube face : corner map

    triangulation n=2
    0 0 -> 1 : 0 1 2 3          # tet face -> tet : vertex images

Each glued pair appears once; the involution partner is implied.
Unglued faces are left for the validator to report.
"""

from __future__ import annotations

import logging
import re
from pathlib import Path
from typing import List, Optional, Union

from app.core.errors import GluingFormatError
from app.core.symmetry import inverse, is_permutation
from app.models.base import FaceGluing, IdealCubulation, IdealTriangulation

logger = logging.getLogger(__name__)

Complex = Union[IdealTriangulation, IdealCubulation]

_HEADER = re.compile(r"^(cubulation)\s+k\s*=\s*(\d+)$|^(triangulation)\s+n\s*=\s*(\d+)$")
_CUBE_LINE = re.compile(
    r"^(\d+)\s+(\d+)\s*->\s*(\d+)\s+(\d+)\s*:\s*(\d+)\s+(\d+)\s+(\d+)\s+(\d+)$"
)
_TET_LINE = re.compile(r"^(\d+)\s+(\d+)\s*->\s*(\d+)\s*:\s*(\d+)\s+(\d+)\s+(\d+)\s+(\d+)$")


def _strip(line: str) -> str:
    return line.split("#", 1)[0].strip()


def parse_gluing_text(text: str) -> Complex:
    """Parse a gluing table; raises :class:`GluingFormatError` with the line number."""
    rows: Optional[List[List[Optional[FaceGluing]]]] = None
    cubical = False
    face_count = 0

    for number, raw in enumerate(text.splitlines(), start=1):
        line = _strip(raw)
        if not line:
            continue

        if rows is None:
            header = _HEADER.match(line)
            if header is None:
                raise GluingFormatError(
                    "expected 'cubulation k=<int>' or 'triangulation n=<int>'", number
                )
            cubical = header.group(1) is not None
            size = int(header.group(2) if cubical else header.group(4))
            if size < 1:
                raise GluingFormatError("a complex needs at least one cell", number)
            face_count = 6 if cubical else 4
            rows = [[None] * face_count for _ in range(size)]
            continue

        match = (_CUBE_LINE if cubical else _TET_LINE).match(line)
        if match is None:
            expected = "c f -> c' f' : p0 p1 p2 p3" if cubical else "t f -> t' : q0 q1 q2 q3"
            raise GluingFormatError(f"malformed gluing {line!r}, expected '{expected}'", number)
        values = [int(g) for g in match.groups()]
        if cubical:
            cell, face, target, target_face = values[:4]
            perm = tuple(values[4:])
        else:
            cell, face, target = values[:3]
            perm = tuple(values[3:])

        if not is_permutation(perm, 4):
            raise GluingFormatError(f"{perm} is not a permutation of 0 1 2 3", number)
        if not cubical:
            target_face = perm[face] if face < 4 else face
        for c, f in ((cell, face), (target, target_face)):
            if c >= len(rows):
                raise GluingFormatError(f"cell {c} out of range 0..{len(rows) - 1}", number)
            if f >= face_count:
                raise GluingFormatError(f"face {f} out of range 0..{face_count - 1}", number)
        for c, f in ((cell, face), (target, target_face)):
            if rows[c][f] is not None:
                raise GluingFormatError(f"cell {c} face {f} is glued twice", number)

        rows[cell][face] = FaceGluing(cell=target, face=target_face, perm=perm)
        if (cell, face) != (target, target_face):
            rows[target][target_face] = FaceGluing(cell=cell, face=face, perm=inverse(perm))

    if rows is None:
        raise GluingFormatError("empty gluing table")
    table = tuple(tuple(row) for row in rows)
    return IdealCubulation(gluings=table) if cubical else IdealTriangulation(gluings=table)


def format_gluing_text(x: Complex) -> str:
    """Serialize ``x``; :func:`parse_gluing_text` reads the result back exactly."""
    cubical = isinstance(x, IdealCubulation)
    lines = [f"cubulation k={x.size}" if cubical else f"triangulation n={x.size}"]
    for cell, row in enumerate(x.gluings):
        for face, record in enumerate(row):
            if record is None or (record.cell, record.face) < (cell, face):
                continue
            perm = " ".join(str(p) for p in record.perm)
            if cubical:
                lines.append(f"{cell} {face} -> {record.cell} {record.face} : {perm}")
            else:
                lines.append(f"{cell} {face} -> {record.cell} : {perm}")
    return "\n".join(lines) + "\n"


def read_complex(path: Union[str, Path]) -> Complex:
    path = Path(path)
    logger.debug("Reading gluing table %s", path)
    return parse_gluing_text(path.read_text(encoding="utf-8"))


def write_complex(x: Complex, path: Union[str, Path]) -> Path:
    path = Path(path)
    path.write_text(format_gluing_text(x), encoding="utf-8")
    logger.info("Wrote %s with %d cells to %s", x.kind, x.size, path)
    return path
