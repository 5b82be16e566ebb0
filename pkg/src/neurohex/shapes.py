"""Shape library on the hexagonal lattice.

Foundational shapes are an anchor cell plus an optional magnitude and two
optional clockwise angles; which fields are null decides the kind:

==========  =========  ===========  ==========
kind        magnitude  angle_start  angle_end
==========  =========  ===========  ==========
point       null       null         null
ray         set        one of the two set
wedge       set        set          set
disc        set        null         null
==========  =========  ===========  ==========

Simple shapes intersect two foundational shapes; complex shapes combine any
shapes with :class:`AO` (joint containment), :class:`SO` (in left, not in
right) and :class:`UnionShape`.  :class:`HexPolygon` covers polygons given by
lattice vertices.

Membership rules at the lattice level:

* the anchor belongs to every shape with a magnitude;
* radial tests use hex distance ``<= magnitude``;
* arcs include both endpoints and run clockwise from ``angle_start``;
* a ray holds exactly one cell per ring: the one whose ring spot equals the
  ray angle rescaled (floor) to that ring's resolution.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, replace
from typing import Union

import numpy as np

from . import hexcore
from ._kernels import active as _k
from .hexcore import (
    DEFAULT_BITS,
    HexCoord,
    HexError,
    QuantizedAngle,
    UndefinedAtOrigin,
    angle_of,
)


class ShapeError(HexError):
    pass


class DegenerateAtAnchor(UndefinedAtOrigin):
    pass


class Orientation(enum.IntEnum):
    BEFORE = -1
    ON = 0
    AFTER = 1


@dataclass(frozen=True)
class FoundationalShape:
    anchor: HexCoord
    magnitude: int | None = None
    angle_start: QuantizedAngle | None = None
    angle_end: QuantizedAngle | None = None

    def __post_init__(self):
        m = self.magnitude
        if m is not None and m < 0:
            raise ShapeError(f"negative magnitude {m}")
        if m is None and (self.angle_start is not None or self.angle_end is not None):
            raise ShapeError("rays and wedges need a magnitude (unbounded shapes are not supported)")
        if (
            self.angle_start is not None
            and self.angle_end is not None
            and self.angle_start.bits != self.angle_end.bits
        ):
            raise ShapeError("angles must share one quantization")

    @property
    def kind(self) -> str:
        if self.magnitude is None:
            return "point"
        n_angles = (self.angle_start is not None) + (self.angle_end is not None)
        return ("disc", "ray", "wedge")[n_angles]

    @property
    def bits(self) -> int:
        a = self.angle_start or self.angle_end
        return a.bits if a is not None else DEFAULT_BITS

    @property
    def ray_angle(self) -> QuantizedAngle | None:
        return self.angle_start if self.angle_start is not None else self.angle_end


@dataclass(frozen=True)
class SimpleShape:
    first: FoundationalShape
    second: FoundationalShape


@dataclass(frozen=True)
class AO:
    left: Shape
    right: Shape


@dataclass(frozen=True)
class SO:
    left: Shape
    right: Shape


@dataclass(frozen=True)
class UnionShape:
    left: Shape
    right: Shape


def _cross(a: HexCoord, b: HexCoord) -> int:
    # axial cross product; same sign as the planar cross product
    return a.q * b.r - a.r * b.q


@dataclass(frozen=True, init=False)
class HexPolygon:
    """Polygon with lattice vertices, stored clockwise."""

    vertices: tuple[HexCoord, ...]
    directions: tuple[int, ...]
    convex: bool
    bits: int

    def __init__(self, vertices, bits: int = DEFAULT_BITS):
        verts = [v for i, v in enumerate(vertices) if v != vertices[i - 1]]
        if len(verts) < 3:
            raise ShapeError("a polygon needs at least 3 distinct consecutive vertices")
        area2 = sum(_cross(verts[i], verts[(i + 1) % len(verts)]) for i in range(len(verts)))
        if area2 == 0:
            raise ShapeError("zero-area polygon")
        if area2 > 0:
            verts.reverse()
        n = len(verts)
        turns = [
            _cross(verts[i] - verts[i - 1], verts[(i + 1) % n] - verts[i]) for i in range(n)
        ]
        dirs = tuple(
            angle_of(verts[(i + 1) % n] - verts[i], bits).value for i in range(n)
        )
        object.__setattr__(self, "vertices", tuple(verts))
        object.__setattr__(self, "directions", dirs)
        object.__setattr__(self, "convex", all(t <= 0 for t in turns))
        object.__setattr__(self, "bits", bits)

    def fan(self) -> list[tuple[int, tuple[HexCoord, HexCoord, HexCoord]]]:
        """Signed triangle fan from vertex 0: (+1 clockwise / -1, triangle)."""
        v = self.vertices
        out = []
        for i in range(1, len(v) - 1):
            c = _cross(v[i] - v[0], v[i + 1] - v[0])
            if c:
                out.append((1 if c < 0 else -1, (v[0], v[i], v[i + 1])))
        return out


Shape = Union[FoundationalShape, SimpleShape, AO, SO, UnionShape, HexPolygon]


# -- constructors --------------------------------------------------------------


def point(anchor: HexCoord) -> FoundationalShape:
    return FoundationalShape(anchor)


def disc(anchor: HexCoord, magnitude: int) -> FoundationalShape:
    return FoundationalShape(anchor, magnitude)


def ray(anchor: HexCoord, magnitude: int, angle: QuantizedAngle) -> FoundationalShape:
    return FoundationalShape(anchor, magnitude, angle, None)


def wedge(anchor: HexCoord, magnitude: int, start: QuantizedAngle,
          end: QuantizedAngle) -> FoundationalShape:
    return FoundationalShape(anchor, magnitude, start, end)


def segment(a: HexCoord, b: HexCoord, bits: int = DEFAULT_BITS) -> SimpleShape:
    """Two rays facing each other."""
    d = hexcore.distance(a, b)
    if d == 0:
        raise ShapeError("segment endpoints coincide")
    return SimpleShape(ray(a, d, hexcore.direction(a, b, bits)), ray(b, d, hexcore.direction(b, a, bits)))


def donut(anchor: HexCoord, outer: int, inner: int) -> SO:
    return SO(disc(anchor, outer), disc(anchor, inner))


# -- predicates ------------------------------------------------------------------


def orientation_predicate(p: HexCoord, anchor: HexCoord, boundary: QuantizedAngle) -> Orientation:
    """Side of ``p`` relative to the line through ``anchor`` along ``boundary``.

    AFTER is the clockwise side (the right, looking along ``boundary``).
    """
    if p == anchor:
        raise DegenerateAtAnchor("query coincides with the anchor")
    return Orientation(
        _k.orientation(p.q, p.r, p.s, anchor.q, anchor.r, anchor.s, boundary.value, boundary.bits)
    )


def angle_in_arc(a: QuantizedAngle, start: QuantizedAngle, end: QuantizedAngle) -> bool:
    """Whether ``a`` lies on the clockwise arc from ``start`` to ``end``."""
    full = 6 << a.bits
    return (a.value - start.value) % full <= (end.value - start.value) % full


def _arc_test(a, start, end, bits):
    d = a - start
    if d < 0:
        d = d + (6 << bits)
    span = end - start
    if span < 0:
        span = span + (6 << bits)
    return d <= span


def _sector_test(k, q, r, s, aq, ar, as_, magnitude, start, end, bits):
    # one distance test plus the two angular comparisons
    ri, w, j = k.encode_ring(q - aq, r - ar, s - as_)
    if ri == 0:
        return True
    if ri > magnitude:
        return False
    return _arc_test(k.normalize(ri, w, j, bits), start, end, bits)


def _convex_test(k, q, r, s, verts, dirs, bits):
    # every edge predicate is evaluated, no short circuit
    inside = True
    for (vq, vr, vs), d in zip(verts, dirs):
        if k.orientation(q, r, s, vq, vr, vs, d, bits) < 0:
            inside = False
    return inside


def _triangle_side_test(k, q, r, s, tri, sign, bits):
    for i in range(3):
        a, b = tri[i], tri[(i + 1) % 3]
        d = k.quantized_angle(b.q - a.q, b.r - a.r, b.s - a.s, bits)
        o = k.orientation(q, r, s, a.q, a.r, a.s, d, bits)
        if o * sign < 0:
            return False
    return True


def contains(shape: Shape, p: HexCoord) -> bool:
    if isinstance(shape, FoundationalShape):
        return _contains_foundational(shape, p)
    if isinstance(shape, SimpleShape):
        return _contains_foundational(shape.first, p) and _contains_foundational(shape.second, p)
    if isinstance(shape, AO):
        return contains(shape.left, p) and contains(shape.right, p)
    if isinstance(shape, SO):
        return contains(shape.left, p) and not contains(shape.right, p)
    if isinstance(shape, UnionShape):
        return contains(shape.left, p) or contains(shape.right, p)
    if isinstance(shape, HexPolygon):
        if shape.convex:
            verts = [tuple(v) for v in shape.vertices]
            return _convex_test(_k, p.q, p.r, p.s, verts, shape.directions, shape.bits)
        winding = 0
        for sign, tri in shape.fan():
            if _triangle_side_test(_k, p.q, p.r, p.s, tri, sign, shape.bits):
                winding += sign
        return winding != 0
    raise TypeError(f"not a shape: {shape!r}")


def _contains_foundational(f: FoundationalShape, p: HexCoord) -> bool:
    a = f.anchor
    if f.magnitude is None:
        return p == a
    ri, w, j = _k.encode_ring(p.q - a.q, p.r - a.r, p.s - a.s)
    if ri == 0:
        return True
    if ri > f.magnitude:
        return False
    kind = f.kind
    if kind == "disc":
        return True
    if kind == "ray":
        ang = f.ray_angle
        rw, rj = _k.denormalize(ang.value, ri, ang.bits)
        return w == rw and j == rj
    bits = f.bits
    return _arc_test(_k.normalize(ri, w, j, bits), f.angle_start.value, f.angle_end.value, bits)


# -- vectorized membership ----------------------------------------------------------


def _mask_foundational(f: FoundationalShape, cells: np.ndarray) -> np.ndarray:
    anchor = tuple(f.anchor)
    if f.magnitude is None:
        return np.all(cells == np.array(anchor), axis=1)
    pos = _k.ring_positions(cells, anchor)
    ri = pos[:, 0]
    at_anchor = ri == 0
    in_range = ri <= f.magnitude
    kind = f.kind
    if kind == "disc":
        return in_range
    bits = f.bits
    if kind == "ray":
        ang = f.ray_angle
        rw = ang.value >> bits
        rj = ((ang.value & ((1 << bits) - 1)) * ri) >> bits
        return at_anchor | (in_range & (pos[:, 1] == rw) & (pos[:, 2] == rj))
    full = 6 << bits
    safe_ri = np.where(at_anchor, 1, ri)
    ang = (pos[:, 1] << bits) + (pos[:, 2] << bits) // safe_ri
    span = (f.angle_end.value - f.angle_start.value) % full
    in_arc = (ang - f.angle_start.value) % full <= span
    return at_anchor | (in_range & in_arc)


def _edge_sides(cells: np.ndarray, anchor: tuple, boundary: int, bits: int) -> np.ndarray:
    """Vectorized orientation: -1 before, 0 on, 1 after."""
    ang = _k.quantized_angles(cells, anchor, bits)
    full = 6 << bits
    half = 3 << bits
    d = (ang - boundary) % full
    out = np.where(d < half, 1, -1)
    out[(d == 0) | (d == half) | (ang < 0)] = 0
    return out


def mask(shape: Shape, cells: np.ndarray) -> np.ndarray:
    """Membership of every row of an (n, 3) cell array."""
    cells = np.ascontiguousarray(cells, dtype=np.int64).reshape(-1, 3)
    if isinstance(shape, FoundationalShape):
        return _mask_foundational(shape, cells)
    if isinstance(shape, SimpleShape):
        return _mask_foundational(shape.first, cells) & _mask_foundational(shape.second, cells)
    if isinstance(shape, AO):
        return mask(shape.left, cells) & mask(shape.right, cells)
    if isinstance(shape, SO):
        return mask(shape.left, cells) & ~mask(shape.right, cells)
    if isinstance(shape, UnionShape):
        return mask(shape.left, cells) | mask(shape.right, cells)
    if isinstance(shape, HexPolygon):
        if shape.convex:
            out = np.ones(len(cells), dtype=bool)
            for v, d in zip(shape.vertices, shape.directions):
                out &= _edge_sides(cells, tuple(v), d, shape.bits) >= 0
            return out
        winding = np.zeros(len(cells), dtype=np.int64)
        for sign, tri in shape.fan():
            inside = np.ones(len(cells), dtype=bool)
            for i in range(3):
                a, b = tri[i], tri[(i + 1) % 3]
                d = angle_of(b - a, shape.bits).value
                inside &= _edge_sides(cells, tuple(a), d, shape.bits) * sign >= 0
            winding += sign * inside
        return winding != 0
    raise TypeError(f"not a shape: {shape!r}")


def primary_anchor(shape: Shape) -> HexCoord:
    if isinstance(shape, FoundationalShape):
        return shape.anchor
    if isinstance(shape, SimpleShape):
        return shape.first.anchor
    if isinstance(shape, HexPolygon):
        return shape.vertices[0]
    return primary_anchor(shape.left)


def rasterize_array(shape: Shape, radius: int, center: HexCoord | None = None) -> np.ndarray:
    if radius < 0:
        raise ShapeError(f"negative raster radius {radius}")
    c = primary_anchor(shape) if center is None else center
    cells = _k.disc(tuple(c), radius)
    return cells[mask(shape, cells)]


def rasterize(shape: Shape, radius: int, center: HexCoord | None = None) -> set[HexCoord]:
    """Cells within ``radius`` of ``center`` (default: the shape's anchor) inside the shape."""
    return {HexCoord(*row) for row in rasterize_array(shape, radius, center).tolist()}


# -- transforms ------------------------------------------------------------------


def _map_shape(shape: Shape, fn) -> Shape:
    if isinstance(shape, FoundationalShape):
        return fn(shape)
    if isinstance(shape, SimpleShape):
        return SimpleShape(fn(shape.first), fn(shape.second))
    if isinstance(shape, (AO, SO, UnionShape)):
        return type(shape)(_map_shape(shape.left, fn), _map_shape(shape.right, fn))
    raise TypeError(f"not a shape: {shape!r}")


def translate_shape(shape: Shape, delta: HexCoord) -> Shape:
    """Re-express a shape relative to ``delta`` as the new origin."""
    if isinstance(shape, HexPolygon):
        return HexPolygon([hexcore.translate(v, delta) for v in shape.vertices], shape.bits)
    return _map_shape(shape, lambda f: replace(f, anchor=hexcore.translate(f.anchor, delta)))


def _rot_angle(a: QuantizedAngle | None, rot: QuantizedAngle) -> QuantizedAngle | None:
    if a is None:
        return None
    if a.bits != rot.bits:
        rot = QuantizedAngle((rot.value << a.bits) >> rot.bits, a.bits)
    return a + rot


def rotate_shape(shape: Shape, pivot: HexCoord, rot: QuantizedAngle) -> Shape:
    """Clockwise rotation: anchors rotate about ``pivot``, angles shift by ``rot``."""
    if isinstance(shape, HexPolygon):
        return HexPolygon([hexcore.rotate_point(v, rot, pivot) for v in shape.vertices], shape.bits)

    def fn(f: FoundationalShape) -> FoundationalShape:
        return FoundationalShape(
            hexcore.rotate_point(f.anchor, rot, pivot),
            f.magnitude,
            _rot_angle(f.angle_start, rot),
            _rot_angle(f.angle_end, rot),
        )

    return _map_shape(shape, fn)


def scale_shape(shape: Shape, k: int, direction: str = "up") -> Shape:
    """Power-of-two scaling by shifting anchors and magnitudes."""
    m = hexcore._scale_shift(k)
    if direction == "up":
        move = lambda c: hexcore.refine(c, k)  # noqa: E731
        mag = lambda v: v << m  # noqa: E731
    elif direction == "down":
        move = lambda c: hexcore.coarsen(c, k)  # noqa: E731
        mag = lambda v: v >> m  # noqa: E731
    else:
        raise ShapeError(f"direction must be 'up' or 'down', got {direction!r}")
    if isinstance(shape, HexPolygon):
        return HexPolygon([move(v) for v in shape.vertices], shape.bits)

    def fn(f: FoundationalShape) -> FoundationalShape:
        return replace(
            f,
            anchor=move(f.anchor),
            magnitude=None if f.magnitude is None else mag(f.magnitude),
        )

    return _map_shape(shape, fn)


def iter_foundationals(shape: Shape):
    if isinstance(shape, FoundationalShape):
        yield shape
    elif isinstance(shape, SimpleShape):
        yield shape.first
        yield shape.second
    elif isinstance(shape, (AO, SO, UnionShape)):
        yield from iter_foundationals(shape.left)
        yield from iter_foundationals(shape.right)


# -- JSON ------------------------------------------------------------------------


class SchemaError(ShapeError):
    pass


_FOUNDATIONAL_KINDS = ("point", "ray", "wedge", "disc")
_BINARY = {"ao": AO, "so": SO, "union": UnionShape}


def _angle_json(a: QuantizedAngle | None):
    return None if a is None else a.value


def to_dict(shape: Shape) -> dict:
    if isinstance(shape, FoundationalShape):
        return {
            "kind": shape.kind,
            "anchor": shape.anchor.to_list(),
            "magnitude": shape.magnitude,
            "angles": [_angle_json(shape.angle_start), _angle_json(shape.angle_end)],
            "Q": 1 << shape.bits,
        }
    if isinstance(shape, SimpleShape):
        return {"kind": "simple", "first": to_dict(shape.first), "second": to_dict(shape.second)}
    if isinstance(shape, HexPolygon):
        return {
            "kind": "polygon",
            "vertices": [v.to_list() for v in shape.vertices],
            "Q": 1 << shape.bits,
        }
    for tag, cls in _BINARY.items():
        if type(shape) is cls:
            return {"kind": tag, "left": to_dict(shape.left), "right": to_dict(shape.right)}
    raise TypeError(f"not a shape: {shape!r}")


def _bits_of(obj: dict) -> int:
    q = obj.get("Q", 1 << DEFAULT_BITS)
    if not isinstance(q, int) or isinstance(q, bool) or q < 1 or q & (q - 1):
        raise SchemaError(f"Q must be a power of two, got {q!r}")
    return q.bit_length() - 1


def _coord(v) -> HexCoord:
    if not (isinstance(v, list) and len(v) == 3 and all(isinstance(c, int) and not isinstance(c, bool) for c in v)):
        raise SchemaError(f"a cell is [q, r, s], got {v!r}")
    try:
        return HexCoord(*v)
    except HexError as e:
        raise SchemaError(str(e)) from None


def _keys(obj: dict, allowed: set) -> None:
    extra = set(obj) - allowed
    if extra:
        raise SchemaError(f"unexpected keys {sorted(extra)} in {obj.get('kind')!r} shape")


def from_dict(obj: dict) -> Shape:
    if not isinstance(obj, dict) or "kind" not in obj:
        raise SchemaError(f"a shape is an object with a 'kind', got {obj!r}")
    kind = obj["kind"]
    try:
        if kind in _FOUNDATIONAL_KINDS:
            _keys(obj, {"kind", "anchor", "magnitude", "angles", "Q"})
            bits = _bits_of(obj)
            angles = obj.get("angles", [None, None])
            if not (isinstance(angles, list) and len(angles) == 2):
                raise SchemaError(f"angles must be [start, end], got {angles!r}")
            start, end = (None if a is None else QuantizedAngle(a, bits) for a in angles)
            mag = obj.get("magnitude")
            if mag is not None and (not isinstance(mag, int) or isinstance(mag, bool)):
                raise SchemaError(f"magnitude must be an integer or null, got {mag!r}")
            f = FoundationalShape(_coord(obj.get("anchor")), mag, start, end)
            if f.kind != kind:
                raise SchemaError(f"fields describe a {f.kind}, not a {kind}")
            return f
        if kind == "simple":
            _keys(obj, {"kind", "first", "second"})
            a, b = from_dict(obj["first"]), from_dict(obj["second"])
            if not (isinstance(a, FoundationalShape) and isinstance(b, FoundationalShape)):
                raise SchemaError("simple shapes combine two foundational shapes")
            return SimpleShape(a, b)
        if kind in _BINARY:
            _keys(obj, {"kind", "left", "right"})
            return _BINARY[kind](from_dict(obj["left"]), from_dict(obj["right"]))
        if kind == "polygon":
            _keys(obj, {"kind", "vertices", "Q"})
            verts = obj.get("vertices")
            if not isinstance(verts, list):
                raise SchemaError("polygon vertices must be a list")
            poly = HexPolygon([_coord(v) for v in verts], _bits_of(obj))
            if list(poly.vertices) != [_coord(v) for v in verts]:
                raise SchemaError("polygon vertices must be distinct and clockwise")
            return poly
    except KeyError as e:
        raise SchemaError(f"missing field {e} in {kind!r} shape") from None
    except SchemaError:
        raise
    except HexError as e:
        raise SchemaError(str(e)) from None
    raise SchemaError(f"unknown shape kind {kind!r}")


def dumps(shape: Shape) -> str:
    return json.dumps(to_dict(shape), sort_keys=True, separators=(",", ":"))


def loads(text: str) -> Shape:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise SchemaError(f"invalid JSON: {e}") from None
    return from_dict(obj)
