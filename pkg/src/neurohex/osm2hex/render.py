"""Deterministic SVG rendering of a world model, one path per primitive."""

from __future__ import annotations

from xml.sax.saxutils import escape

import numpy as np

from .. import shapes as S
from .._kernels import active as _k
from ..hexcore import HexCoord
from ..oracle import hex_to_plane, hexagon_vertices
from .model import Tier

LAYERS = (Tier.IDENTITY, Tier.STRUCTURAL, Tier.CONTEXTUAL)
COLORS = {
    "river": "#2b6cb0",
    "water": "#63b3ed",
    "highway": "#c53030",
    "arterial": "#dd6b20",
    "path": "#a0aec0",
    "building": "#718096",
    "park": "#48bb78",
    "landmark": "#805ad5",
    "other": "#000000",
}
FILLED = ("polygon", "disc", "point")
MARGIN = 2.0


def _fmt(v: float) -> str:
    s = f"{v:.2f}"
    return "0.00" if s == "-0.00" else s


def _xy(cell) -> tuple[float, float]:
    p = hex_to_plane(cell)
    return p.x, -p.y


def _ring(points) -> str:
    head, *rest = points
    return "M" + " L".join(f"{_fmt(x)},{_fmt(y)}" for x, y in [head] + rest) + " Z"


def _hexagon(cell, radius: float):
    c = hex_to_plane(cell)
    return [(v.x, -v.y) for v in hexagon_vertices(c, radius)]


def _is_segment(shape) -> bool:
    return (isinstance(shape, S.SimpleShape) and shape.first.kind == "ray"
            and shape.second.kind == "ray")


def _is_arc(shape) -> bool:
    return (isinstance(shape, S.AO) and isinstance(shape.left, S.SO)
            and isinstance(shape.right, S.FoundationalShape) and shape.right.kind == "wedge")


def _arc_cells(shape) -> list:
    """Cells of an arc primitive in clockwise order, walking only its ring."""
    center = shape.right.anchor
    r = shape.left.left.magnitude
    if r == 0:
        return [center]
    pos = np.column_stack([np.full(6 * r, r), np.repeat(np.arange(6), r), np.tile(np.arange(r), 6)])
    ring = _k.decode_many(pos.astype(np.int64)) + np.array(tuple(center))
    inside = S.mask(shape, ring)
    if not inside.any():
        return []
    if not inside.all():
        # start the walk where the arc begins so a wrap past wedge 0 stays contiguous
        starts = np.flatnonzero(inside & ~np.roll(inside, 1))
        ring, inside = np.roll(ring, -starts[0], axis=0), np.roll(inside, -starts[0])
    return [HexCoord(*row) for row in ring[inside].tolist()]


def primitive_path(shape) -> tuple[str, list[tuple[float, float]], bool]:
    """SVG path data, the points it touches, and whether it is an area."""
    if isinstance(shape, S.HexPolygon):
        pts = [_xy(v) for v in shape.vertices]
        return _ring(pts), pts, True
    if isinstance(shape, S.FoundationalShape) and shape.kind in ("disc", "point"):
        pts = _hexagon(shape.anchor, (shape.magnitude or 0) + 0.5)
        return _ring(pts), pts, True
    if _is_segment(shape):
        pts = [_xy(shape.first.anchor), _xy(shape.second.anchor)]
        return f"M{_fmt(pts[0][0])},{_fmt(pts[0][1])} L{_fmt(pts[1][0])},{_fmt(pts[1][1])}", pts, False
    if _is_arc(shape):
        pts = [_xy(c) for c in _arc_cells(shape)] or [_xy(shape.right.anchor)]
        if len(pts) == 1:
            pts = pts * 2
        return "M" + " L".join(f"{_fmt(x)},{_fmt(y)}" for x, y in pts), pts, False
    center = S.primary_anchor(shape)
    reach = max((f.magnitude or 0) for f in S.iter_foundationals(shape))
    cells = sorted(S.rasterize(shape, reach, center))
    parts, pts = [], []
    for c in cells:
        hx = _hexagon(c, 0.5)
        parts.append(_ring(hx))
        pts.extend(hx)
    return " ".join(parts), pts, True


def render_svg(model, width: int = 1024) -> str:
    layers: dict[Tier, list[str]] = {t: [] for t in LAYERS}
    xs, ys = [], []
    for obj in sorted(model.objects, key=lambda o: o.key):
        if obj.cls.tier not in layers:
            continue
        color = COLORS.get(obj.cls.name, "#000000")
        for idx, (prim, op) in enumerate(zip(obj.primitives, obj.ops)):
            d, pts, area = primitive_path(prim)
            xs.extend(p[0] for p in pts)
            ys.extend(p[1] for p in pts)
            if op == "sub":
                style = f'fill="#ffffff" stroke="{color}" stroke-dasharray="1,1"'
            elif area:
                style = f'fill="{color}" fill-opacity="0.5" stroke="{color}"'
            else:
                style = f'fill="none" stroke="{color}"'
            ident = f"{obj.source_type}/{obj.source_id}/{obj.part}/{idx}"
            layers[obj.cls.tier].append(
                f'<path id="{escape(ident)}" class="{obj.cls.name} {op}" d="{d}" {style}/>'
            )
    if xs:
        x0, x1 = min(xs) - MARGIN, max(xs) + MARGIN
        y0, y1 = min(ys) - MARGIN, max(ys) + MARGIN
    else:
        x0, y0, x1, y1 = 0.0, 0.0, 100.0, 100.0
    w, h = x1 - x0, y1 - y0
    height = max(1, round(width * h / w))
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="{_fmt(x0)} {_fmt(y0)} {_fmt(w)} {_fmt(h)}" stroke-width="0.5">',
    ]
    for tier in LAYERS:
        out.append(f'<g id="{tier.label}">')
        out.extend(layers[tier])
        out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"
