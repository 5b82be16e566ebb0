"""Cartesian reference geometry and operation-cost measurement.

Plane convention: 1 unit is one hexagon circumradius, ``y`` points up, and a
cell's center is ``x = 1.5 q``, ``y = sqrt(3) (r + q / 2)``.  Neighbouring
centers are ``sqrt(3)`` apart.  Bearings are clockwise from ``+y``; the
Cartesian formulas themselves use the usual counter-clockwise angle from
``+x``.

The predicates below follow the textbook formulas literally (they are the
comparison column for the lattice operations), so they take plain or
:class:`~neurohex.counting.Tracked` numbers and use the instrumented math
functions.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from . import counting
from .counting import OpCounter, Tracked
from .hexcore import DEFAULT_BITS, HexCoord, make_coord
from ._kernels import _pykernels as P

SQRT3 = math.sqrt(3.0)
CELL_PITCH = SQRT3
CELL_DIAMETER = 2.0
WEDGE = math.pi / 3


class DegenerateGeometry(ValueError):
    pass


@dataclass(frozen=True)
class PlanePoint:
    x: float
    y: float

    def __post_init__(self):
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise ValueError(f"non-finite plane point ({self.x}, {self.y})")

    def __sub__(self, o):
        return PlanePoint(self.x - o.x, self.y - o.y)

    def __add__(self, o):
        return PlanePoint(self.x + o.x, self.y + o.y)


def hex_to_plane(p: HexCoord) -> PlanePoint:
    return PlanePoint(1.5 * p.q, SQRT3 * (p.r + p.q / 2.0))


def cube_round(fq: float, fr: float) -> HexCoord:
    """Nearest cell to fractional axial coordinates."""
    fs = -fq - fr
    q, r, s = round(fq), round(fr), round(fs)
    dq, dr, ds = abs(q - fq), abs(r - fr), abs(s - fs)
    if dq > dr and dq > ds:
        q = -r - s
    elif dr > ds:
        r = -q - s
    else:
        s = -q - r
    return make_coord(q, r, s)


def plane_to_hex(pt: PlanePoint) -> HexCoord:
    fq = pt.x / 1.5
    fr = pt.y / SQRT3 - fq / 2.0
    return cube_round(fq, fr)


# -- angles ------------------------------------------------------------------


def bearing(pt: PlanePoint) -> float:
    """Clockwise angle from +y in [0, 2*pi)."""
    b = math.atan2(pt.x, pt.y)
    return b + 2 * math.pi if b < 0 else b


def hex_angle_of_bearing(b: float) -> float:
    """Continuous lattice angle, in wedges, of the direction ``b``.

    Lattice angles are spaced evenly along the hexagonal ring, so inside a
    wedge the fraction is the chord parameter ``sin a / sin(120deg - a)``.
    """
    b = b % (2 * math.pi)
    w = min(int(b // WEDGE), 5)
    a = b - w * WEDGE
    return w + math.sin(a) / math.sin(2 * WEDGE - a)


def bearing_of_hex_angle(u: float) -> float:
    """Inverse of :func:`hex_angle_of_bearing`."""
    u = u % 6.0
    w = math.floor(u)
    t = u - w
    return w * WEDGE + math.atan2(t * SQRT3 / 2, 1 - t / 2)


def exact_hex_angle(p: HexCoord, anchor: HexCoord | None = None) -> float:
    """Lattice angle of a cell computed through Cartesian ``atan2``."""
    v = hex_to_plane(p) if anchor is None else hex_to_plane(p) - hex_to_plane(anchor)
    return hex_angle_of_bearing(bearing(v))


def bearing_to_math(b: float) -> float:
    return math.pi / 2 - b


# -- Cartesian predicates ----------------------------------------------------


def cart_distance(a: PlanePoint, b: PlanePoint):
    dx = a.x - b.x
    dy = a.y - b.y
    return counting.sqrt(dx * dx + dy * dy)


def cart_radial(p: PlanePoint):
    return counting.sqrt(p.x * p.x + p.y * p.y)


def cart_polar_angle(p: PlanePoint):
    """Bearing of ``p`` via ``atan2(x, y)``."""
    return counting.atan2(p.x, p.y)


def cart_orientation(p: PlanePoint, v0: PlanePoint, v1: PlanePoint) -> int:
    """Sign of det([v1 - v0], [p - v0]): +1 left of v0->v1, -1 right, 0 on."""
    d = (v1.x - v0.x) * (p.y - v0.y) - (v1.y - v0.y) * (p.x - v0.x)
    return (d > 0) - (d < 0)


def cart_rotate(p: PlanePoint, theta) -> PlanePoint:
    """Counter-clockwise rotation about the origin by ``theta`` radians."""
    c = counting.cos(theta)
    s = counting.sin(theta)
    return PlanePoint(p.x * c - p.y * s, p.x * s + p.y * c)


def cart_translate(p: PlanePoint, delta: PlanePoint) -> PlanePoint:
    return PlanePoint(p.x - delta.x, p.y - delta.y)


def _cross(ax, ay, bx, by):
    return ax * by - ay * bx


def cart_in_angle(p: PlanePoint, center: PlanePoint, theta1, theta2) -> bool:
    """Angular part of the sector test; the sector runs CCW theta1 -> theta2."""
    vx = p.x - center.x
    vy = p.y - center.y
    ax, ay = counting.cos(theta1), counting.sin(theta1)
    bx, by = counting.cos(theta2), counting.sin(theta2)
    span = (float(theta2) - float(theta1)) % (2 * math.pi)
    if span <= math.pi:
        return _cross(ax, ay, vx, vy) >= 0 and _cross(vx, vy, bx, by) >= 0
    # reflex sector: outside only when strictly inside the complement
    return not (_cross(bx, by, vx, vy) > 0 and _cross(vx, vy, ax, ay) > 0)


def cart_in_sector(p: PlanePoint, center: PlanePoint, radius, theta1, theta2) -> bool:
    if radius <= 0:
        raise DegenerateGeometry("sector radius must be positive")
    vx = p.x - center.x
    vy = p.y - center.y
    if not vx * vx + vy * vy <= radius * radius:
        return False
    return cart_in_angle(p, center, theta1, theta2)


def edge_function(p: PlanePoint, v0: PlanePoint, v1: PlanePoint):
    return (p.x - v0.x) * (v1.y - v0.y) - (p.y - v0.y) * (v1.x - v0.x)


def clockwise(vertices: Sequence[PlanePoint]) -> list[PlanePoint]:
    """Vertices reordered clockwise (setup step, not part of a query)."""
    area2 = 0.0
    n = len(vertices)
    for i in range(n):
        a, b = vertices[i], vertices[(i + 1) % n]
        area2 += float(a.x) * float(b.y) - float(b.x) * float(a.y)
    return list(vertices) if area2 <= 0 else list(reversed(vertices))


def cart_in_triangle(p: PlanePoint, a: PlanePoint, b: PlanePoint, c: PlanePoint) -> bool:
    """Edge-function test; ``a, b, c`` must be clockwise."""
    if edge_function(c, a, b) == 0:
        raise DegenerateGeometry("zero-area triangle")
    return edge_function(p, a, b) >= 0 and edge_function(p, b, c) >= 0 and edge_function(p, c, a) >= 0


def winding_number(p: PlanePoint, vertices: Sequence[PlanePoint]) -> int:
    w = 0
    n = len(vertices)
    for i in range(n):
        v0, v1 = vertices[i], vertices[(i + 1) % n]
        if v0.y <= p.y < v1.y:
            if edge_function(p, v0, v1) > 0:
                w += 1
        elif v1.y <= p.y < v0.y:
            if edge_function(p, v0, v1) < 0:
                w -= 1
    return w


def cart_in_polygon(p: PlanePoint, vertices: Sequence[PlanePoint]) -> bool:
    if len(vertices) < 3:
        raise DegenerateGeometry("polygon needs at least 3 vertices")
    for i in range(len(vertices)):
        v0, v1 = vertices[i], vertices[(i + 1) % len(vertices)]
        if v0.x == v1.x and v0.y == v1.y:
            raise DegenerateGeometry("repeated consecutive vertex")
    return winding_number(p, vertices) != 0


def hexagon_vertices(center: PlanePoint, radius_cells: float) -> list[PlanePoint]:
    """Corners of the hex-distance ball of the given radius, clockwise."""
    out = []
    for dq, dr, _ in P.DIRECTIONS:
        x = 1.5 * dq * radius_cells
        y = SQRT3 * (dr + dq / 2.0) * radius_cells
        out.append(PlanePoint(center.x + x, center.y + y))
    return out


def cart_in_hex_ball(p: PlanePoint, center: PlanePoint, radius_cells: float) -> bool:
    if radius_cells == 0:
        return abs(p.x - center.x) < 1e-9 and abs(p.y - center.y) < 1e-9
    return cart_in_polygon(p, hexagon_vertices(center, radius_cells))


def point_segment_distance(p: PlanePoint, a: PlanePoint, b: PlanePoint) -> float:
    dx, dy = b.x - a.x, b.y - a.y
    L2 = dx * dx + dy * dy
    if L2 == 0:
        return math.hypot(p.x - a.x, p.y - a.y)
    t = max(0.0, min(1.0, ((p.x - a.x) * dx + (p.y - a.y) * dy) / L2))
    return math.hypot(p.x - a.x - t * dx, p.y - a.y - t * dy)


def ray_point(origin: PlanePoint, b: float, length: float) -> PlanePoint:
    return PlanePoint(origin.x + length * math.sin(b), origin.y + length * math.cos(b))


# -- cost measurement ----------------------------------------------------------

OPERATIONS = (
    "distance",
    "radial_distance",
    "normalization",
    "polar_angle",
    "sign_decoding",
    "orientation",
    "translation",
    "rotation",
    "point_in_sector",
    "point_in_triangle",
    "point_in_polygon",
)
SIDES = ("neurohex", "cartesian")


def _hex_workloads(bits: int) -> dict[str, Callable]:
    from . import shapes

    def polar(q, r, s):
        ri, w, j = P.encode_ring(q, r, s)
        return j + w * ri

    def translation(q, r, s, dq, dr, ds):
        return q - dq, r - dr, s - ds

    def sector(q, r, s, aq, ar, as_, mag, start, end):
        return shapes._sector_test(P, q, r, s, aq, ar, as_, mag, start, end, bits)

    def triangle(q, r, s, w1, w2):
        return sector(q, r, s, *w1) and sector(q, r, s, *w2)

    def polygon(q, r, s, verts, dirs):
        return shapes._convex_test(P, q, r, s, verts, dirs, bits)

    return {
        "distance": P.distance,
        "radial_distance": P.radial,
        "normalization": lambda ri, w, j: P.normalize(ri, w, j, bits),
        "polar_angle": polar,
        "sign_decoding": P.decode_ring,
        "orientation": lambda q, r, s, aq, ar, as_, b: P.orientation(q, r, s, aq, ar, as_, b, bits),
        "translation": translation,
        "rotation": lambda q, r, s, v: P.rotate(q, r, s, v, bits),
        "point_in_sector": sector,
        "point_in_triangle": triangle,
        "point_in_polygon": polygon,
    }


def _cart_workloads(bits: int) -> dict[str, Callable]:
    pt = _pp

    def normalization(phi1, phi2):
        return (phi1 << bits) // phi2

    def sign_decoding(sx, sy, ax, ay):
        return (ax if sx > 0 else -ax), (ay if sy > 0 else -ay)

    def polygon(x, y, verts):
        return winding_number(pt(x, y), verts) != 0

    return {
        "distance": lambda x1, y1, x2, y2: cart_distance(pt(x1, y1), pt(x2, y2)),
        "radial_distance": lambda x, y: cart_radial(pt(x, y)),
        "normalization": normalization,
        "polar_angle": lambda x, y: cart_polar_angle(pt(x, y)),
        "sign_decoding": sign_decoding,
        "orientation": lambda x, y, x0, y0, x1, y1: cart_orientation(pt(x, y), pt(x0, y0), pt(x1, y1)),
        "translation": lambda x, y, dx, dy: cart_translate(pt(x, y), pt(dx, dy)),
        "rotation": lambda x, y, th: cart_rotate(pt(x, y), th),
        "point_in_sector": lambda x, y, cx, cy, rad, t1, t2: cart_in_sector(pt(x, y), pt(cx, cy), rad, t1, t2),
        "point_in_triangle": lambda x, y, a, b, c: cart_in_triangle(pt(x, y), a, b, c),
        "point_in_polygon": polygon,
    }


def _pp(x, y):
    # PlanePoint without the finiteness check, so Tracked values pass through
    p = object.__new__(PlanePoint)
    object.__setattr__(p, "x", x)
    object.__setattr__(p, "y", y)
    return p


def _track(arg):
    if isinstance(arg, (int, float)) and not isinstance(arg, bool):
        return Tracked(arg)
    if isinstance(arg, PlanePoint):
        return _pp(Tracked(arg.x), Tracked(arg.y))
    if isinstance(arg, tuple):
        return tuple(_track(a) for a in arg)
    if isinstance(arg, list):
        return [_track(a) for a in arg]
    return arg


def measure(op_kind: str, workload: Iterable[tuple], side: str = "neurohex",
            bits: int = DEFAULT_BITS) -> OpCounter:
    """Worst-case per-call operation counts of one operation over a workload.

    Each workload item is the argument tuple for a single call.  Arguments
    are wrapped in :class:`Tracked` so that every arithmetic step of the
    reference implementation is counted.  The returned counter holds the
    per-class maximum over calls; ``max_bit_width`` covers every value seen.
    """
    if op_kind not in OPERATIONS:
        raise ValueError(f"unknown operation {op_kind!r}")
    table = _hex_workloads(bits) if side == "neurohex" else _cart_workloads(bits)
    if side not in SIDES:
        raise ValueError(f"unknown side {side!r}")
    fn = table[op_kind]
    worst = OpCounter()
    for args in workload:
        with counting.counting() as c:
            fn(*_track(args))
        worst.adds = max(worst.adds, c.adds)
        worst.muls = max(worst.muls, c.muls)
        worst.divs = max(worst.divs, c.divs)
        worst.shifts = max(worst.shifts, c.shifts)
        worst.trig_calls = max(worst.trig_calls, c.trig_calls)
        worst.max_bit_width = max(worst.max_bit_width, c.max_bit_width)
    return worst


def _rand_cell(rng: random.Random, n_bits: int) -> tuple[int, int, int]:
    # every component keeps |c| < 2**n_bits
    lim = (1 << (n_bits - 1)) - 1
    q = rng.randint(-lim, lim)
    r = rng.randint(-lim, lim)
    return q, r, -q - r


def _extreme_cells(n_bits: int) -> list[tuple[int, int, int]]:
    m = (1 << (n_bits - 1)) - 1
    return [(m, m, -2 * m), (-m, -m, 2 * m), (m, -m, 0), (2 * m, -m, -m), (-2 * m, m, m)]


def default_workload(op_kind: str, side: str, n_bits: int = 16, bits: int = DEFAULT_BITS,
                     count: int = 200, seed: int = 0) -> list[tuple]:
    """Random inputs whose components stay within ``n_bits`` bits."""
    rng = random.Random(seed)
    full = 6 << bits
    lim = (1 << n_bits) - 1
    cells = _extreme_cells(n_bits) + [_rand_cell(rng, n_bits) for _ in range(count)]
    cells = [c for c in cells if c != (0, 0, 0)]
    half = [_rand_cell(rng, n_bits - 1) for _ in range(len(cells))]
    out: list[tuple] = []
    if side == "neurohex":
        for i, c in enumerate(cells):
            o = cells[(i + 1) % len(cells)]
            h = half[i]
            if op_kind == "distance":
                out.append(c + o)
            elif op_kind in ("radial_distance", "polar_angle"):
                out.append(c)
            elif op_kind in ("normalization", "sign_decoding"):
                out.append(P.encode_ring(*c))
            elif op_kind == "orientation":
                anchor = half[(i + 1) % len(half)]
                if h == anchor:
                    continue
                out.append(h + anchor + (rng.randrange(full),))
            elif op_kind == "translation":
                out.append(c + o)
            elif op_kind == "rotation":
                out.append(c + (rng.randrange(full),))
            elif op_kind == "point_in_sector":
                out.append(h + half[(i + 1) % len(half)]
                           + (rng.randint(1, lim >> 1), rng.randrange(full), rng.randrange(full)))
            elif op_kind == "point_in_triangle":
                a = half[(i + 1) % len(half)]
                b = half[(i + 2) % len(half)]
                w1 = a + (lim, rng.randrange(full), rng.randrange(full))
                w2 = b + (lim, rng.randrange(full), rng.randrange(full))
                out.append(h + (w1, w2))
            elif op_kind == "point_in_polygon":
                n = rng.randint(3, 12)
                verts = [_rand_cell(rng, n_bits - 2) for _ in range(n)]
                dirs = [rng.randrange(full) for _ in range(n)]
                if any(v == tuple(h) for v in verts):
                    continue
                out.append(h + (verts, dirs))
    else:
        pts = [(c[0], c[1]) for c in cells]
        for i, (x, y) in enumerate(pts):
            x2, y2 = pts[(i + 1) % len(pts)]
            if op_kind == "distance":
                out.append((x, y, x2, y2))
            elif op_kind in ("radial_distance", "polar_angle"):
                out.append((x, y))
            elif op_kind == "normalization":
                out.append((abs(x) + 1, abs(y) + 1))
            elif op_kind == "sign_decoding":
                out.append((rng.choice((-1, 1)), rng.choice((-1, 1)), abs(x), abs(y)))
            elif op_kind == "orientation":
                out.append((x, y, x2, y2, 0, 0))
            elif op_kind == "translation":
                out.append((x, y, x2, y2))
            elif op_kind == "rotation":
                out.append((x, y, rng.uniform(0, 2 * math.pi)))
            elif op_kind == "point_in_sector":
                out.append((x, y, 0, 0, float(lim), rng.uniform(0, math.pi), rng.uniform(math.pi, 2 * math.pi)))
            elif op_kind == "point_in_triangle":
                a, b, c = clockwise([PlanePoint(0.0, 0.0), PlanePoint(float(lim), 0.0), PlanePoint(0.0, float(lim))])
                out.append((x, y, a, b, c))
            elif op_kind == "point_in_polygon":
                n = rng.randint(3, 12)
                verts = [PlanePoint(lim * math.cos(2 * math.pi * k / n), lim * math.sin(2 * math.pi * k / n))
                         for k in range(n)]
                out.append((x, y, verts))
    return out


BENCH_COLUMNS = ("operation", "side", "adds", "muls", "divs", "trig", "max_bits")


def benchmark_rows(n_bits: int = 16, bits: int = DEFAULT_BITS, count: int = 200,
                   seed: int = 0) -> list[dict]:
    rows = []
    for op in OPERATIONS:
        for side in SIDES:
            c = measure(op, default_workload(op, side, n_bits, bits, count, seed), side, bits)
            rows.append({
                "operation": op,
                "side": side,
                "adds": c.adds,
                "muls": c.muls,
                "divs": c.divs,
                "trig": c.trig_calls,
                "max_bits": c.max_bit_width,
            })
    return rows


def benchmark_csv(rows: list[dict]) -> str:
    lines = [",".join(BENCH_COLUMNS)]
    for row in rows:
        lines.append(",".join(str(row[c]) for c in BENCH_COLUMNS))
    return "\n".join(lines) + "\n"
