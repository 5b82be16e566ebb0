"""Replacing projected geometry by small sets of lattice primitives.

All geometry here is in plane units (see :mod:`neurohex.oracle`): one unit is
a cell circumradius and neighboring centers are ``sqrt(3)`` apart.

Polygons become an ordered list of primitives combined left to right, each
either added (union) or subtracted.  Polylines become runs, each a straight
segment (two facing rays) or a circular arc (ring band cut by a wedge).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np
import shapely
from shapely.geometry import Polygon

from .. import shapes as S
from ..hexcore import DEFAULT_BITS, HexCoord, direction, distance
from ..oracle import CELL_PITCH, SQRT3, hex_to_plane, hexagon_vertices
from .projection import plane_cell

CELL_AREA = 1.5 * SQRT3
ISOPERIMETRIC_DISC = 0.9
# regions thinner than this (2 * area / perimeter) are lattice rounding noise
MIN_REGION_WIDTH = SQRT3 / 2
MAX_ARC_RADIUS = 1e5


@dataclass
class Fit:
    primitives: list
    ops: list
    error: float
    accurate: bool


# -- primitive geometry ----------------------------------------------------------


def _cell(x: float, y: float) -> HexCoord:
    return plane_cell(float(x), float(y))


def disc_polygon(anchor: HexCoord, magnitude: int) -> Polygon:
    verts = hexagon_vertices(hex_to_plane(anchor), magnitude + 0.5)
    return Polygon([(v.x, v.y) for v in verts])


def hex_polygon_polygon(p: S.HexPolygon) -> Polygon:
    return Polygon([(q.x, q.y) for q in map(hex_to_plane, p.vertices)])


def primitive_polygon(shape) -> Polygon:
    if isinstance(shape, S.HexPolygon):
        return hex_polygon_polygon(shape)
    if isinstance(shape, S.FoundationalShape) and shape.kind in ("disc", "point"):
        return disc_polygon(shape.anchor, shape.magnitude or 0)
    raise TypeError(f"no area geometry for {shape!r}")


def _lattice_polygon(corners, bits: int):
    cells = [_cell(x, y) for x, y in corners]
    try:
        poly = S.HexPolygon(cells, bits)
    except S.ShapeError:
        return None
    return poly


def disc_for(region, bits: int = DEFAULT_BITS):
    c = region.centroid
    m = max(0, round(math.sqrt(region.area / (3 * CELL_AREA)) - 0.5))
    return S.disc(_cell(c.x, c.y), m)


def rectangle_for(region, bits: int = DEFAULT_BITS):
    rect = shapely.minimum_rotated_rectangle(region)
    if rect.geom_type != "Polygon":
        return None
    return _lattice_polygon(list(rect.exterior.coords)[:4], bits)


def triangle_for(region, bits: int = DEFAULT_BITS):
    hull = region.convex_hull
    if hull.geom_type != "Polygon":
        return None
    pts = list(hull.exterior.coords)[:-1]
    if len(pts) > 12:
        pts = list(hull.simplify(math.sqrt(hull.area) * 0.05).exterior.coords)[:-1]
    best, best_area = None, 0.0
    for a, b, c in itertools.combinations(pts, 3):
        area = abs((b[0] - a[0]) * (c[1] - a[1]) - (c[0] - a[0]) * (b[1] - a[1]))
        if area > best_area:
            best, best_area = (a, b, c), area
    return None if best is None else _lattice_polygon(best, bits)


CANDIDATES = (rectangle_for, triangle_for, disc_for)


# -- polygons -------------------------------------------------------------------


def _parts(geom):
    if geom.is_empty:
        return []
    return [g for g in getattr(geom, "geoms", [geom]) if g.geom_type == "Polygon" and g.area > 0]


def _opened(geom) -> list:
    # erode then dilate: strips rounding slivers glued onto real regions
    r = MIN_REGION_WIDTH / 2
    return _parts(geom.buffer(-r, join_style="mitre").buffer(r, join_style="mitre"))


def _width(region) -> float:
    return 2 * region.area / region.length if region.length else 0.0


def isoperimetric_ratio(poly: Polygon) -> float:
    return 4 * math.pi * poly.area / poly.length ** 2 if poly.length else 0.0


def _clean(ring_xy) -> Polygon:
    poly = Polygon(ring_xy)
    if not poly.is_valid:
        fixed = _parts(shapely.make_valid(poly))
        poly = max(fixed, key=lambda g: g.area) if fixed else poly
    return poly


def fit_polygon(ring_xy, budget: int = 8, error_target: float = 0.10,
                bits: int = DEFAULT_BITS) -> Fit:
    """Greedy add/subtract mosaic of rectangles, triangles and discs."""
    src = _clean(ring_xy)
    area = src.area
    if area <= 0:
        c = np.asarray(ring_xy, dtype=float).mean(axis=0)
        return Fit([S.point(_cell(*c))], ["add"], 1.0, False)

    def err(geom) -> float:
        return geom.symmetric_difference(src).area / area

    first = None
    if isoperimetric_ratio(src) > ISOPERIMETRIC_DISC or area < CELL_AREA:
        first = disc_for(src, bits)
    else:
        first = rectangle_for(src, bits) or disc_for(src, bits)
    prims, ops = [first], ["add"]
    cover = primitive_polygon(first)
    error = err(cover)
    if isinstance(first, S.FoundationalShape):
        return Fit(prims, ops, error, error <= error_target)

    while error > error_target and len(prims) < budget:
        regions = [(g, "add") for g in _opened(src.difference(cover))]
        regions += [(g, "sub") for g in _opened(cover.difference(src))]
        regions.sort(key=lambda t: -t[0].area)
        step = None
        for region, op in regions[:4]:
            if _width(region) < MIN_REGION_WIDTH:
                continue
            for make in CANDIDATES:
                cand = make(region, bits)
                if cand is None:
                    continue
                g = primitive_polygon(cand)
                new = cover.union(g) if op == "add" else cover.difference(g)
                e = err(new)
                if e < error - 1e-9 and (step is None or e < step[0]):
                    step = (e, cand, op, new)
            if step is not None:
                break
        if step is None:
            break
        error, cand, op, cover = step
        prims.append(cand)
        ops.append(op)
    return Fit(prims, ops, error, error <= error_target)


# -- polylines -------------------------------------------------------------------


def _densify(pts: np.ndarray, spacing: float) -> np.ndarray:
    out = [pts[:1]]
    for a, b in zip(pts[:-1], pts[1:]):
        n = max(1, int(math.ceil(np.hypot(*(b - a)) / spacing)))
        t = np.arange(1, n + 1)[:, None] / n
        out.append(a + t * (b - a))
    return np.vstack(out)


def _segment_dev(pts: np.ndarray) -> float:
    a, b = pts[0], pts[-1]
    d = b - a
    l2 = float(d @ d)
    if l2 == 0:
        return float(np.hypot(*(pts - a).T).max())
    t = np.clip(((pts - a) @ d) / l2, 0, 1)
    proj = a + t[:, None] * d
    return float(np.hypot(*(pts - proj).T).max())


def circle_through(a, b, c):
    """Center and radius of the circle through three points, or None if collinear."""
    ax, ay = a
    bx, by = b
    cx, cy = c
    d = 2 * (ax * (by - cy) + bx * (cy - ay) + cx * (ay - by))
    if abs(d) < 1e-12:
        return None
    ux = ((ax * ax + ay * ay) * (by - cy) + (bx * bx + by * by) * (cy - ay) + (cx * cx + cy * cy) * (ay - by)) / d
    uy = ((ax * ax + ay * ay) * (cx - bx) + (bx * bx + by * by) * (ax - cx) + (cx * cx + cy * cy) * (bx - ax)) / d
    return (ux, uy), math.hypot(ax - ux, ay - uy)


def _arc_fit(pts: np.ndarray):
    """(center, radius, sweep, deviation) or None when no sensible arc exists."""
    fit = circle_through(pts[0], pts[len(pts) // 2], pts[-1])
    if fit is None:
        return None
    (ux, uy), radius = fit
    if radius > MAX_ARC_RADIUS:
        return None
    ang = np.unwrap(np.arctan2(pts[:, 1] - uy, pts[:, 0] - ux))
    steps = np.diff(ang)
    if not (np.all(steps >= -1e-12) or np.all(steps <= 1e-12)):
        return None
    sweep = float(ang[-1] - ang[0])
    if abs(sweep) >= 2 * math.pi:
        return None
    dev = float(np.abs(np.hypot(pts[:, 0] - ux, pts[:, 1] - uy) - radius).max())
    return (ux, uy), radius, sweep, dev


def _chord_split(run: np.ndarray) -> int:
    a, b = run[0], run[-1]
    d = b - a
    l2 = float(d @ d)
    if l2 == 0:
        dev = np.hypot(*(run - a).T)
    else:
        t = np.clip(((run - a) @ d) / l2, 0, 1)
        dev = np.hypot(*(run - (a + t[:, None] * d)).T)
    k = int(np.argmax(dev[1:-1])) + 1
    return k


def _runs(pts: np.ndarray, tol: float):
    """Top-down: a segment if it fits, else an arc, else split at the
    point farthest from the chord and recurse on both halves."""
    runs = []
    stack = [(0, len(pts) - 1)]
    while stack:
        i, j = stack.pop()
        run = pts[i:j + 1]
        if j - i < 2 or _segment_dev(run) < tol:
            runs.append(("segment", i, j))
            continue
        f = _arc_fit(run)
        if f is not None and f[3] < tol:
            runs.append(("arc", i, j))
            continue
        k = i + _chord_split(run)
        stack.append((k, j))
        stack.append((i, k))
    return runs


def arc_shape(center: HexCoord, start: HexCoord, end: HexCoord, clockwise: bool,
              bits: int = DEFAULT_BITS):
    """Ring band through ``start`` cut by the wedge from ``start`` to ``end``."""
    r = distance(center, start)
    band = S.SO(S.disc(center, r), S.disc(center, r - 1))
    a, b = direction(center, start, bits), direction(center, end, bits)
    if not clockwise:
        a, b = b, a
    return S.AO(band, S.wedge(center, r, a, b))


def _run_primitive(kind: str, run: np.ndarray, bits: int):
    a, b = _cell(*run[0]), _cell(*run[-1])
    if a == b:
        return None
    if kind == "arc":
        (ux, uy), _, sweep, _ = _arc_fit(run)
        c = _cell(ux, uy)
        if c != a and c != b and distance(c, a) >= 1:
            # positive sweep is counter-clockwise in the plane
            return arc_shape(c, a, b, clockwise=sweep < 0, bits=bits)
    return S.segment(a, b, bits)


def fit_polyline(xy, budget: int = 8, bits: int = DEFAULT_BITS) -> Fit:
    """Segments and arcs within one cell of the line; the tolerance grows
    (and the fit is flagged inaccurate) when the budget would be exceeded."""
    pts = np.asarray(xy, dtype=float)
    tol = CELL_PITCH
    dense = _densify(pts, tol / 2)
    while True:
        runs = _runs(dense, tol)
        if len(runs) <= budget:
            break
        tol *= 2
    prims = []
    for kind, i, j in runs:
        p = _run_primitive(kind, dense[i:j + 1], bits)
        if p is not None:
            prims.append(p)
    if not prims:
        prims = [S.point(_cell(*pts[0]))]
    return Fit(prims, ["add"] * len(prims), round(tol / CELL_PITCH, 6), tol == CELL_PITCH)


def fit_point(xy, bits: int = DEFAULT_BITS) -> Fit:
    x, y = np.asarray(xy, dtype=float).reshape(-1, 2)[0]
    return Fit([S.point(_cell(x, y))], ["add"], 0.0, True)
