"""Quasi-filling Dehn surfaces: catalog, bubble moves and connected sums.

Expressions are immutable pydantic trees (see :mod:`app.models.qfs`).
Regions are addressed by index: for a filling base they are the edge
classes of its cubulation, for a catalog item they follow the catalog,
a bubble appends three regions to its child's and a sum lists the left
summand's regions before the right summand's.

Text form::

    bubble(region=3, base(fixtures/s3_coordinate_planes.cub))
    csum(a.qfs, exceptional(four_hat, punctures=1))
    exceptional(surface_bundle, base=T2)
"""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, FrozenSet, Optional, Tuple, Union

from app.core.dual_surface import dual_surface_stats
from app.core.errors import (
    CatalogError,
    ExpressionFormatError,
    InverseBubbleError,
    UnknownRegionError,
)
from app.core.formats import read_complex
from app.core.signature import isomorphism_signature, parse_signature
from app.core.surfaces import surface_from_label
from app.models.base import IdealCubulation
from app.models.qfs import (
    BoundaryConnSum,
    Bubble,
    ConnSum,
    Exceptional,
    ExceptionalSurface,
    FillingBase,
    QfsStats,
    QuasiFillingSurface,
)
from app.models.surfaces import KLEIN_BOTTLE, PROJECTIVE_PLANE, SPHERE, TORUS, SurfaceDescriptor

logger = logging.getLogger(__name__)


# ── Exceptional catalog ─────────────────────────────────────────

@dataclass(frozen=True)
class CatalogEntry:
    """Closed model of a catalog item.

    ``complement`` counts the ball components of M minus the surface for
    the closed model; each puncture turns one of them into a boundary
    sphere.
    """

    manifold: str
    complement: int
    punctures: FrozenSet[int]
    sheets: Tuple[SurfaceDescriptor, ...]
    regions: int
    names: Tuple[Tuple[int, str], ...] = ()


def catalog_entry(surface: ExceptionalSurface) -> CatalogEntry:
    kind = surface.kind
    if kind == "sphere":
        entry = CatalogEntry("S3", 2, frozenset({0, 1}), (SPHERE,), 1, ((1, "B3"),))
    elif kind == "projective_plane":
        entry = CatalogEntry("RP3", 1, frozenset({0}), (PROJECTIVE_PLANE,), 1)
    elif kind == "surface_bundle":
        if surface.base is None or not surface.base.closed:
            raise CatalogError("surface_bundle needs a closed base surface")
        entry = CatalogEntry(
            f"I-bundle({surface.base.label})", 0, frozenset({0}), (surface.base,), 1
        )
    elif kind == "double_projective_plane":
        entry = CatalogEntry(
            "RP3", 2, frozenset({0, 1, 2}), (PROJECTIVE_PLANE, PROJECTIVE_PLANE), 2
        )
    elif kind == "four_hat":
        entry = CatalogEntry("L(4,1)", 1, frozenset({0, 1}), (PROJECTIVE_PLANE,), 1)
    elif kind == "two_spheres_along_circle":
        entry = CatalogEntry("S3", 4, frozenset({0, 1}), (SPHERE, SPHERE), 4, ((1, "B3"),))
    elif kind == "sphere_torus_loop":
        entry = CatalogEntry("S2xS1", 2, frozenset({0, 1, 2}), (SPHERE, TORUS), 3)
    elif kind == "sphere_klein_loop":
        entry = CatalogEntry("S2~S1", 2, frozenset({0, 1, 2}), (SPHERE, KLEIN_BOTTLE), 3)
    else:
        model = "D2xS1" if surface.orientable else "D2~S1"
        entry = CatalogEntry(model, 2, frozenset({0, 1, 2}), (SPHERE,), 3)

    if surface.punctures not in entry.punctures:
        allowed = ", ".join(str(p) for p in sorted(entry.punctures))
        raise CatalogError(
            f"{kind} admits {allowed} removed balls, not {surface.punctures}"
        )
    return entry


def exceptional_manifold(surface: ExceptionalSurface) -> str:
    entry = catalog_entry(surface)
    names = dict(entry.names)
    if surface.punctures in names:
        return names[surface.punctures]
    if surface.punctures == 0:
        return entry.manifold
    balls = "ball" if surface.punctures == 1 else "balls"
    return f"{entry.manifold} minus {surface.punctures} {balls}"


# ── Stats ───────────────────────────────────────────────────────

def _base_name(node: FillingBase) -> str:
    return node.name or f"M[{isomorphism_signature(node.cubulation)}]"


def stats(q: QuasiFillingSurface) -> QfsStats:
    """Triple points, balls, abstract-surface data, regions and manifold tag."""
    if isinstance(q, FillingBase):
        dual = dual_surface_stats(q.cubulation)
        return QfsStats(
            triple_points=dual.triple_points,
            complement_balls=dual.complement_balls,
            euler_abstract=dual.euler_abstract,
            sheets=[
                SurfaceDescriptor(orientable=s.orientable, euler_characteristic=s.euler_characteristic)
                for s in dual.sheets
            ],
            regions=dual.regions,
            is_filling=True,
            manifold=_base_name(q),
        )
    if isinstance(q, Exceptional):
        entry = catalog_entry(q.surface)
        return QfsStats(
            triple_points=0,
            complement_balls=entry.complement - q.surface.punctures,
            euler_abstract=sum(s.euler_characteristic for s in entry.sheets),
            sheets=list(entry.sheets),
            regions=entry.regions,
            is_filling=False,
            manifold=exceptional_manifold(q.surface),
        )
    if isinstance(q, Bubble):
        child = stats(q.child)
        return QfsStats(
            triple_points=child.triple_points,
            complement_balls=None if child.complement_balls is None else child.complement_balls + 2,
            euler_abstract=None if child.euler_abstract is None else child.euler_abstract + 2,
            sheets=None if child.sheets is None else [*child.sheets, SPHERE],
            regions=child.regions + 3,
            is_filling=False,
            manifold=child.manifold,
        )
    left, right = stats(q.left), stats(q.right)
    symbol = "#" if isinstance(q, ConnSum) else "#∂"
    return QfsStats(
        triple_points=left.triple_points + right.triple_points,
        regions=left.regions + right.regions,
        is_filling=False,
        manifold=f"({left.manifold} {symbol} {right.manifold})",
    )


def triple_count(q: QuasiFillingSurface) -> int:
    return stats(q).triple_points


def is_filling(q: QuasiFillingSurface) -> bool:
    return isinstance(q, FillingBase)


# ── Moves ───────────────────────────────────────────────────────

def bubble_move(q: QuasiFillingSurface, region: int) -> Bubble:
    """Add a small sphere meeting ``region`` in one circle."""
    available = stats(q).regions
    if not 0 <= region < available:
        raise UnknownRegionError(region, available)
    return Bubble(child=q, region=region)


def inverse_bubble_move(q: QuasiFillingSurface) -> QuasiFillingSurface:
    """Undo the outermost bubble move.

    Removing a sphere is only sound when the ball it bounds contains two
    balls of the complement; the expression certifies that only for a
    sphere added by a bubble move.
    """
    if not isinstance(q, Bubble):
        raise InverseBubbleError(
            f"cannot remove a sphere from a {q.node} node: an inverse bubble move needs a "
            "ball containing two complement balls, which only a bubble node certifies"
        )
    return q.child


def _ready_for_sum(q: QuasiFillingSurface) -> QuasiFillingSurface:
    balls = stats(q).complement_balls
    if balls == 0:
        logger.info("Summand has no complement ball; applying a bubble move first")
        return bubble_move(q, 0)
    return q


def connected_sum(a: QuasiFillingSurface, b: QuasiFillingSurface) -> ConnSum:
    """Sum along a complement ball of each summand, bubbling a summand that has none."""
    return ConnSum(left=_ready_for_sum(a), right=_ready_for_sum(b))


def boundary_connected_sum(a: QuasiFillingSurface, b: QuasiFillingSurface) -> BoundaryConnSum:
    return BoundaryConnSum(left=a, right=b)


def is_derived_from(q: QuasiFillingSurface, base: QuasiFillingSurface) -> bool:
    """True when ``q`` is ``base`` after zero or more bubble moves."""
    while isinstance(q, Bubble) and q != base:
        q = q.child
    return q == base


# ── Text form ───────────────────────────────────────────────────

_HEAD = re.compile(r"\s*(base|exceptional|bubble|csum|bcsum)\s*\(")
_PATH = re.compile(r"\s*([^\s,()]+)")
_KEYWORD = re.compile(r"\s*,\s*([a-z_]+)\s*=\s*([^\s,()]+)")
_REGION = re.compile(r"\s*region\s*=\s*(\d+)\s*,")


class _TermParser:
    def __init__(self, text: str, base_dir: Path, seen: FrozenSet[Path]) -> None:
        self.text = text
        self.pos = 0
        self.base_dir = base_dir
        self.seen = seen

    def _expect(self, pattern: str) -> None:
        match = re.compile(r"\s*" + re.escape(pattern)).match(self.text, self.pos)
        if match is None:
            raise ExpressionFormatError(f"expected {pattern!r}", self.pos)
        self.pos = match.end()

    def _resolve(self, name: str) -> Path:
        path = Path(name)
        return path if path.is_absolute() else self.base_dir / path

    def parse(self) -> QuasiFillingSurface:
        expr = self.expression()
        if self.text[self.pos :].strip():
            raise ExpressionFormatError("trailing text after expression", self.pos)
        return expr

    def expression(self) -> QuasiFillingSurface:
        head = _HEAD.match(self.text, self.pos)
        if head is None:
            path = _PATH.match(self.text, self.pos)
            if path is None:
                raise ExpressionFormatError("expected an expression or a file name", self.pos)
            self.pos = path.end()
            return self._load(path.group(1))

        self.pos = head.end()
        kind = head.group(1)
        if kind == "base":
            end = self.text.find(")", self.pos)
            if end < 0:
                raise ExpressionFormatError("unterminated base(...)", self.pos)
            argument = self.text[self.pos : end].strip()
            self.pos = end + 1
            return self._base(argument)
        if kind == "exceptional":
            result = self._exceptional()
        elif kind == "bubble":
            region = _REGION.match(self.text, self.pos)
            if region is None:
                raise ExpressionFormatError("expected 'region=<int>,'", self.pos)
            self.pos = region.end()
            child = self.expression()
            result = bubble_move(child, int(region.group(1)))
        else:
            left = self.expression()
            self._expect(",")
            right = self.expression()
            result = connected_sum(left, right) if kind == "csum" else boundary_connected_sum(left, right)
        self._expect(")")
        return result

    def _base(self, argument: str) -> FillingBase:
        if re.match(r"^C\d+:", argument):
            cubulation = parse_signature(argument)
            return FillingBase(cubulation=cubulation)  # type: ignore[arg-type]
        complex_ = read_complex(self._resolve(argument))
        if not isinstance(complex_, IdealCubulation):
            raise ExpressionFormatError(f"{argument} is not a cubulation", self.pos)
        return FillingBase(cubulation=complex_, name=argument)

    def _exceptional(self) -> Exceptional:
        name = _PATH.match(self.text, self.pos)
        if name is None:
            raise ExpressionFormatError("expected a catalog kind", self.pos)
        self.pos = name.end()
        options: Dict[str, Union[int, bool, SurfaceDescriptor]] = {}
        while True:
            keyword = _KEYWORD.match(self.text, self.pos)
            if keyword is None:
                break
            self.pos = keyword.end()
            key, value = keyword.group(1), keyword.group(2)
            if key == "punctures":
                options["punctures"] = int(value)
            elif key == "orientable":
                options["orientable"] = value not in ("0", "false", "no")
            elif key == "base":
                options["base"] = surface_from_label(value)
            else:
                raise ExpressionFormatError(f"unknown option {key!r}", self.pos)
        try:
            surface = ExceptionalSurface(kind=name.group(1), **options)  # type: ignore[arg-type]
        except ValueError as exc:
            raise ExpressionFormatError(f"bad catalog item: {exc}", self.pos) from exc
        catalog_entry(surface)
        return Exceptional(surface=surface)

    def _load(self, name: str) -> QuasiFillingSurface:
        path = self._resolve(name)
        if path.suffix == ".qfs":
            resolved = path.resolve()
            if resolved in self.seen:
                raise ExpressionFormatError(f"{name} includes itself", self.pos)
            text = path.read_text(encoding="utf-8")
            return _TermParser(_strip_comments(text), path.parent, self.seen | {resolved}).parse()
        return self._base(name)


def _strip_comments(text: str) -> str:
    return "\n".join(line.split("#", 1)[0] for line in text.splitlines())


def parse_qfs_text(text: str, base_dir: Union[str, Path] = ".") -> QuasiFillingSurface:
    """Parse the prefix-term form; file names resolve against ``base_dir``."""
    return _TermParser(_strip_comments(text), Path(base_dir), frozenset()).parse()


def read_qfs(path: Union[str, Path]) -> QuasiFillingSurface:
    path = Path(path)
    if path.suffix != ".qfs":
        return parse_qfs_text(path.name, path.parent)
    return _TermParser(
        _strip_comments(path.read_text(encoding="utf-8")), path.parent, frozenset({path.resolve()})
    ).parse()


def format_qfs_text(q: QuasiFillingSurface) -> str:
    if isinstance(q, FillingBase):
        return f"base({q.name or isomorphism_signature(q.cubulation)})"
    if isinstance(q, Exceptional):
        s = q.surface
        parts = [s.kind]
        if s.punctures:
            parts.append(f"punctures={s.punctures}")
        if s.base is not None:
            parts.append(f"base={s.base.label}")
        if s.kind == "self_intersecting_sphere" and not s.orientable:
            parts.append("orientable=0")
        return f"exceptional({', '.join(parts)})"
    if isinstance(q, Bubble):
        return f"bubble(region={q.region}, {format_qfs_text(q.child)})"
    head = "csum" if isinstance(q, ConnSum) else "bcsum"
    return f"{head}({format_qfs_text(q.left)}, {format_qfs_text(q.right)})"
