import json
import math
import random

import numpy as np
import pytest

from neurohex import oracle as O
from neurohex import shapes as S
from neurohex.hexcore import (
    ORIGIN,
    HexCoord,
    QuantizedAngle,
    disc_cells,
    radial_distance,
    refine,
    rotate_point,
    translate,
)
from region_oracle import disagreements
from shape_gen import random_shapes

QA = QuantizedAngle
CELLS = disc_cells(ORIGIN, 30)


def raster(shape, radius=30):
    return S.rasterize(shape, radius, ORIGIN)


def test_disc_radius_two_has_nineteen_cells():
    assert len(raster(S.disc(ORIGIN, 2))) == 19
    assert raster(S.point(HexCoord(1, 0, -1))) == {HexCoord(1, 0, -1)}


def test_donut_is_a_ring_band():
    cells = raster(S.donut(ORIGIN, 3, 1))
    assert len(cells) == 37 - 7
    assert {radial_distance(c) for c in cells} == {2, 3}


def test_ray_along_wedge_boundary():
    cells = raster(S.ray(ORIGIN, 5, QA(0)))
    assert cells == {HexCoord(0, k, -k) for k in range(6)}


def test_ray_has_one_cell_per_ring():
    r = S.ray(HexCoord(2, -3, 1), 12, QA(200))
    cells = S.rasterize(r, 12)
    assert len(cells) == 13
    assert {S.hexcore.distance(c, r.anchor) for c in cells} == set(range(13))


def test_wedge_covering_first_sector():
    cells = raster(S.wedge(ORIGIN, 3, QA(0), QA(63)))
    assert len(cells) == 1 + 1 + 2 + 3
    assert all(S.hexcore.encode_ring(c).wedge_index == 0 for c in cells if c != ORIGIN)


def test_full_circle_wedge_is_a_disc():
    assert raster(S.wedge(ORIGIN, 4, QA(10), QA(9))) == raster(S.disc(ORIGIN, 4))


def test_segment_is_two_facing_rays():
    a, b = HexCoord(0, 0, 0), HexCoord(0, 4, -4)
    seg = S.segment(a, b)
    assert raster(seg) == {HexCoord(0, k, -k) for k in range(5)}
    with pytest.raises(S.ShapeError):
        S.segment(a, a)


def test_angle_in_arc_brute_force():
    bits = 3
    full = 6 << bits
    for start in range(full):
        for end in range(full):
            arc = set()
            v = start
            while True:
                arc.add(v)
                if v == end:
                    break
                v = (v + 1) % full
            for a in range(full):
                assert S.angle_in_arc(QA(a, bits), QA(start, bits), QA(end, bits)) == (a in arc)


def test_orientation_predicate_sides():
    anchor = ORIGIN
    up = QA(0)
    assert S.orientation_predicate(HexCoord(0, 3, -3), anchor, up) == S.Orientation.ON
    assert S.orientation_predicate(HexCoord(0, -3, 3), anchor, up) == S.Orientation.ON
    assert S.orientation_predicate(HexCoord(2, 0, -2), anchor, up) == S.Orientation.AFTER
    assert S.orientation_predicate(HexCoord(-2, 0, 2), anchor, up) == S.Orientation.BEFORE
    with pytest.raises(S.DegenerateAtAnchor):
        S.orientation_predicate(anchor, anchor, up)


def test_orientation_matches_cartesian_away_from_line():
    rng = random.Random(4)
    for _ in range(40):
        q, r = rng.randint(-5, 5), rng.randint(-5, 5)
        anchor = HexCoord(q, r, -q - r)
        v = rng.randrange(6 * 64)
        b = O.bearing_of_hex_angle(v / 64)
        far = O.ray_point(O.hex_to_plane(anchor), b, 100.0)
        for c in CELLS:
            if c == anchor:
                continue
            p = O.hex_to_plane(c)
            if O.point_segment_distance(p, O.ray_point(far, b + math.pi, 200.0), far) <= O.CELL_DIAMETER:
                continue
            side = S.orientation_predicate(c, anchor, QA(v))
            assert side == -O.cart_orientation(p, O.hex_to_plane(anchor), far)


def test_polygon_is_stored_clockwise():
    ccw = [HexCoord(0, 0, 0), HexCoord(4, -4, 0), HexCoord(4, 0, -4)]
    poly = S.HexPolygon(ccw)
    pts = [O.hex_to_plane(v) for v in poly.vertices]
    assert O.clockwise(pts) == pts
    assert poly.convex
    with pytest.raises(S.ShapeError):
        S.HexPolygon([ORIGIN, HexCoord(1, 0, -1), HexCoord(2, 0, -2)])
    with pytest.raises(S.ShapeError):
        S.HexPolygon([ORIGIN, ORIGIN, HexCoord(1, 0, -1)])


def test_non_convex_polygon_matches_winding_oracle():
    ell = [HexCoord(q, r, -q - r) for q, r in
           [(-10, 0), (-10, 14), (-2, 10), (-2, 3), (10, -3), (10, -10)]]
    poly = S.HexPolygon(ell)
    assert not poly.convex
    bad, compared = disagreements(poly, CELLS)
    assert compared > 500
    assert bad == []


@pytest.mark.parametrize("kind_shape", random_shapes(36, seed=3), ids=lambda t: t[0])
def test_random_shapes_match_oracle(kind_shape):
    _, shape = kind_shape
    bad, compared = disagreements(shape, CELLS)
    assert compared > 0
    assert bad == []


def test_boolean_algebra():
    rng = random.Random(9)
    shapes = [s for _, s in random_shapes(12, seed=5)]
    for _ in range(20):
        a, b = rng.sample(shapes, 2)
        ra, rb = raster(a), raster(b)
        assert raster(S.AO(a, b)) == ra & rb
        assert raster(S.SO(a, b)) == ra - rb
        assert raster(S.UnionShape(a, b)) == ra | rb


def test_mask_agrees_with_contains():
    arr = np.array([tuple(c) for c in CELLS], dtype=np.int64)
    ell = S.HexPolygon([HexCoord(q, r, -q - r) for q, r in
                        [(-8, 0), (-8, 12), (0, 8), (0, 2), (9, -3), (9, -9)]])
    for shape in [s for _, s in random_shapes(24, seed=8)] + [ell, S.ray(ORIGIN, 9, QA(77))]:
        m = S.mask(shape, arr)
        assert [S.contains(shape, c) for c in CELLS] == m.tolist()


def test_translation_commutes_with_membership():
    delta = HexCoord(3, -7, 4)
    for _, shape in random_shapes(12, seed=6):
        moved = S.translate_shape(shape, delta)
        expected = {translate(c, delta) for c in raster(shape, 40)}
        assert S.rasterize(moved, 40, translate(ORIGIN, delta)) == expected


@pytest.mark.parametrize("k", [1, 2, 5])
def test_sixty_degree_rotation_commutes_with_membership(k):
    rot = QA(k << 6)
    pivot = HexCoord(1, 2, -3)
    for _, shape in random_shapes(12, seed=7):
        turned = S.rotate_shape(shape, pivot, rot)
        expected = {rotate_point(c, rot, pivot) for c in raster(shape, 36)}
        got = S.rasterize(turned, 50, ORIGIN)
        assert got == expected


def test_scale_up_then_down():
    shape = S.UnionShape(S.disc(HexCoord(1, -1, 0), 3), S.wedge(HexCoord(2, 0, -2), 5, QA(3), QA(90)))
    up = S.scale_shape(shape, 4)
    assert up.left.anchor == refine(HexCoord(1, -1, 0), 4)
    assert up.left.magnitude == 12
    assert S.scale_shape(up, 4, "down") == shape
    with pytest.raises(S.ShapeError):
        S.scale_shape(shape, 2, "sideways")


def test_shape_validation():
    with pytest.raises(S.ShapeError):
        S.disc(ORIGIN, -1)
    with pytest.raises(S.ShapeError):
        S.FoundationalShape(ORIGIN, None, QA(1))
    with pytest.raises(S.ShapeError):
        S.wedge(ORIGIN, 3, QA(1, 4), QA(1, 6))
    assert S.wedge(ORIGIN, 3, QA(1), QA(2)).kind == "wedge"
    assert S.ray(ORIGIN, 3, QA(1)).kind == "ray"
    assert S.FoundationalShape(ORIGIN, 3, None, QA(5)).ray_angle == QA(5)


def test_json_roundtrip_is_byte_exact():
    ell = S.HexPolygon([HexCoord(0, 0, 0), HexCoord(0, 6, -6), HexCoord(3, 3, -6), HexCoord(6, -6, 0)])
    shapes = [s for _, s in random_shapes(30, seed=12)] + [ell, S.point(ORIGIN), S.segment(ORIGIN, HexCoord(2, 1, -3))]
    for shape in shapes:
        text = S.dumps(shape)
        back = S.loads(text)
        assert back == shape
        assert S.dumps(back) == text


def test_json_form():
    w = S.wedge(HexCoord(1, 2, -3), 4, QA(5), QA(70))
    assert json.loads(S.dumps(w)) == {
        "kind": "wedge", "anchor": [1, 2, -3], "magnitude": 4, "angles": [5, 70], "Q": 64,
    }


@pytest.mark.parametrize("doc", [
    {"kind": "disc", "anchor": [0, 0, 0], "magnitude": 2, "angles": [None, None], "Q": 64, "extra": 1},
    {"kind": "wedge", "anchor": [0, 0, 0], "magnitude": 2, "angles": [None, None], "Q": 64},
    {"kind": "disc", "anchor": [1, 1, 1], "magnitude": 2, "angles": [None, None], "Q": 64},
    {"kind": "blob"},
    {"kind": "ao", "left": {"kind": "point", "anchor": [0, 0, 0], "magnitude": None,
                            "angles": [None, None], "Q": 64}},
])
def test_json_schema_errors(doc):
    with pytest.raises(S.ShapeError):
        S.from_dict(doc)
