"""Cartesian counterparts of lattice shapes, for agreement tests.

Membership goes through the predicates in ``neurohex.oracle``; the shapely
geometry is only used to measure how far a cell center is from the boundary.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
import shapely
from shapely.geometry import Polygon

from neurohex import oracle as O
from neurohex import shapes as S
from neurohex.hexcore import HexCoord

FAR = 1e4


@dataclass
class Region:
    contains: Callable[[O.PlanePoint], bool]
    geom: object


def _ball(f: S.FoundationalShape):
    c = O.hex_to_plane(f.anchor)
    radius = f.magnitude + 0.5
    verts = O.hexagon_vertices(c, radius)
    return (lambda p: O.cart_in_hex_ball(p, c, radius)), Polygon([(v.x, v.y) for v in verts])


def _arc(f: S.FoundationalShape):
    """Angular part as plane bearings; a quantum covers [v, v + 1) / Q."""
    q = 1 << f.bits
    span = (f.angle_end.value - f.angle_start.value) % (6 * q)
    if span + 1 >= 6 * q:
        return None
    b1 = O.bearing_of_hex_angle(f.angle_start.value / q)
    b2 = b1 + (O.bearing_of_hex_angle((f.angle_start.value + span + 1) / q) - b1) % (2 * math.pi)
    return b1, b2


def _foundational(f: S.FoundationalShape) -> Region:
    kind = f.kind
    if kind in ("point", "ray"):
        raise ValueError(f"no area oracle for {kind}")
    in_ball, ball = _ball(f)
    if kind == "disc":
        return Region(in_ball, ball)
    arc = _arc(f)
    if arc is None:
        return Region(in_ball, ball)
    b1, b2 = arc
    c = O.hex_to_plane(f.anchor)
    steps = max(2, int((b2 - b1) / 0.01))
    fan = [(c.x, c.y)] + [
        (c.x + FAR * math.sin(b), c.y + FAR * math.cos(b)) for b in np.linspace(b1, b2, steps)
    ]
    t1, t2 = O.bearing_to_math(b2), O.bearing_to_math(b1)

    def inside(p):
        return in_ball(p) and O.cart_in_angle(p, c, t1, t2)

    return Region(inside, ball.intersection(Polygon(fan)))


def region(shape) -> Region:
    if isinstance(shape, S.FoundationalShape):
        return _foundational(shape)
    if isinstance(shape, S.SimpleShape):
        a, b = _foundational(shape.first), _foundational(shape.second)
        return Region(lambda p: a.contains(p) and b.contains(p), a.geom.intersection(b.geom))
    if isinstance(shape, S.HexPolygon):
        verts = [O.hex_to_plane(v) for v in shape.vertices]
        return Region(lambda p: O.cart_in_polygon(p, verts), Polygon([(v.x, v.y) for v in verts]))
    a, b = region(shape.left), region(shape.right)
    if isinstance(shape, S.AO):
        return Region(lambda p: a.contains(p) and b.contains(p), a.geom.intersection(b.geom))
    if isinstance(shape, S.SO):
        return Region(lambda p: a.contains(p) and not b.contains(p), a.geom.difference(b.geom))
    return Region(lambda p: a.contains(p) or b.contains(p), a.geom.union(b.geom))


def disagreements(shape, cells: list[HexCoord], band: float = O.CELL_DIAMETER):
    """Cells farther than ``band`` from the oracle boundary that classify differently.

    Returns ``(mismatches, compared)``.
    """
    reg = region(shape)
    pts = [O.hex_to_plane(c) for c in cells]
    dist = shapely.distance(reg.geom.boundary, shapely.points([(p.x, p.y) for p in pts]))
    bad = []
    compared = 0
    for c, p, d in zip(cells, pts, dist):
        if d <= band:
            continue
        compared += 1
        if S.contains(shape, c) != reg.contains(p):
            bad.append(c)
    return bad, compared
