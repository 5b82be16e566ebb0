"""Random lattice shapes of the families used in the agreement tests."""

from __future__ import annotations

import random

from neurohex import shapes as S
from neurohex.hexcore import DEFAULT_BITS, HexCoord, QuantizedAngle, direction, distance

FULL = 6 << DEFAULT_BITS
HALF = 3 << DEFAULT_BITS
KINDS = ("wedge", "disc", "triangle", "convex", "donut", "teardrop")


def cell(rng: random.Random, lim: int) -> HexCoord:
    while True:
        q, r = rng.randint(-lim, lim), rng.randint(-lim, lim)
        if abs(q + r) <= lim:
            return HexCoord(q, r, -q - r)


def _qa(v: int) -> QuantizedAngle:
    return QuantizedAngle(v % FULL)


def _narrow(d1: int, d2: int):
    """Order two directions so the clockwise arc between them is the short one."""
    return (d1, d2) if (d2 - d1) % FULL <= HALF else (d2, d1)


def wedge(rng, lim=8):
    start = rng.randrange(FULL)
    return S.wedge(cell(rng, lim), rng.randint(4, 22), _qa(start), _qa(start + rng.randint(8, 5 * 64)))


def disc(rng, lim=12):
    return S.disc(cell(rng, lim), rng.randint(1, 18))


def triangle(rng, lim=20):
    while True:
        a, b, c = cell(rng, lim), cell(rng, lim), cell(rng, lim)
        if len({a, b, c}) < 3:
            continue
        # reject slivers; the quantized wedges would not close them
        ab, ac = b - a, c - a
        if abs(ab.q * ac.r - ab.r * ac.q) < 20:
            continue
        m = 2 * max(distance(a, b), distance(a, c), distance(b, c))
        wa = S.wedge(a, m, *map(_qa, _narrow(direction(a, b).value, direction(a, c).value)))
        wb = S.wedge(b, m, *map(_qa, _narrow(direction(b, c).value, direction(b, a).value)))
        return S.SimpleShape(wa, wb)


def convex(rng, lim=20):
    while True:
        n = rng.randint(3, 12)
        pts = {cell(rng, lim) for _ in range(n * 2)}
        hull = _hull(sorted(pts))
        if len(hull) < 3:
            continue
        try:
            poly = S.HexPolygon(hull)
        except S.ShapeError:
            continue
        if poly.convex:
            return poly


def _hull(pts):
    def cross(o, a, b):
        return (a.q - o.q) * (b.r - o.r) - (a.r - o.r) * (b.q - o.q)

    lower, upper = [], []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def donut(rng, lim=10):
    outer = rng.randint(4, 20)
    return S.donut(cell(rng, lim), outer, rng.randint(1, outer - 2))


def teardrop(rng, lim=10):
    c = cell(rng, lim)
    r = rng.randint(3, 9)
    while True:
        apex = cell(rng, lim + 10)
        if distance(apex, c) > r + 3:
            break
    d = direction(apex, c).value
    spread = rng.randint(6, 40)
    cone = S.wedge(apex, distance(apex, c), _qa(d - spread), _qa(d + spread))
    return S.UnionShape(S.disc(c, r), cone)


MAKERS = {k: globals()[k] for k in KINDS}


def random_shapes(n: int, seed: int = 0):
    rng = random.Random(seed)
    return [(KINDS[i % len(KINDS)], MAKERS[KINDS[i % len(KINDS)]](rng)) for i in range(n)]
