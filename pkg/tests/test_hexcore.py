import math
from collections import Counter, deque

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from neurohex import oracle as O
from neurohex.hexcore import (
    DIRECTIONS,
    ORIGIN,
    SIGN_PATTERNS,
    HexCoord,
    HexError,
    InvalidAngle,
    InvalidRingPosition,
    InvalidScale,
    QuantizedAngle,
    RingLocalAngle,
    RingPosition,
    UndefinedAtOrigin,
    ZeroSumViolation,
    angle_of,
    coarsen,
    decode_ring,
    denormalize_angle,
    direction,
    disc_cells,
    distance,
    encode_ring,
    from_polar,
    make_coord,
    neighbors,
    normalize_angle,
    parse_coord,
    polar_angle,
    radial_distance,
    refine,
    ring_cells,
    rotate_point,
    translate,
)

coords = st.tuples(st.integers(-500, 500), st.integers(-500, 500)).map(
    lambda t: HexCoord(t[0], t[1], -t[0] - t[1])
)
nonzero = coords.filter(lambda c: c != ORIGIN)
bits_st = st.integers(0, 10)


def test_zero_sum_enforced():
    assert make_coord(1, -3, 2) == HexCoord(1, -3, 2)
    with pytest.raises(ZeroSumViolation):
        make_coord(1, 1, 1)
    assert issubclass(ZeroSumViolation, HexError)


def test_parse_coord():
    assert parse_coord("2,-1,-1") == HexCoord(2, -1, -1)
    for bad in ("1,2", "a,b,c", "1,1,1"):
        with pytest.raises(HexError):
            parse_coord(bad)


def test_directions_are_clockwise_from_top():
    pts = [O.hex_to_plane(d) for d in DIRECTIONS]
    bearings = [O.bearing(p) for p in pts]
    assert bearings[0] == pytest.approx(0.0)
    assert bearings == sorted(bearings)
    for b, k in zip(bearings, range(6)):
        assert b == pytest.approx(k * math.pi / 3)
    assert neighbors(ORIGIN) == list(DIRECTIONS)


def test_distance_matches_bfs():
    seen = {ORIGIN: 0}
    todo = deque([ORIGIN])
    while todo:
        c = todo.popleft()
        if seen[c] == 6:
            continue
        for n in neighbors(c):
            if n not in seen:
                seen[n] = seen[c] + 1
                todo.append(n)
    assert len(seen) == 127
    for c, hops in seen.items():
        assert radial_distance(c) == hops
        assert distance(c, HexCoord(2, -1, -1)) == distance(HexCoord(2, -1, -1), c)


@pytest.mark.parametrize("ri", [1, 2, 5, 17, 64])
def test_sign_patterns_match_ring_walk(ri):
    walk = ring_cells(ri)
    assert len(walk) == 6 * ri
    for i, cell in enumerate(walk):
        w, j = divmod(i, ri)
        assert decode_ring(RingPosition(ri, w, j)) == cell
        assert SIGN_PATTERNS[w].apply(ri, j) == cell
        assert encode_ring(cell) == RingPosition(ri, w, j)


def test_bijection_small_rings():
    cells = disc_cells(ORIGIN, 64)
    assert len(cells) == 12481
    assert len(set(cells)) == len(cells)
    for c in cells:
        assert decode_ring(encode_ring(c)) == c
    assert encode_ring(ORIGIN) == RingPosition(0, 0, 0)


def test_ring_position_validation():
    with pytest.raises(InvalidRingPosition):
        RingPosition(3, 6, 0)
    with pytest.raises(InvalidRingPosition):
        RingPosition(3, 0, 3)
    with pytest.raises(InvalidRingPosition):
        RingPosition(0, 1, 0)
    with pytest.raises(InvalidRingPosition):
        RingPosition(-1)


def test_polar_angle_matches_exact_angle():
    for c in disc_cells(ORIGIN, 20):
        if c == ORIGIN:
            continue
        phi = polar_angle(c)
        assert phi.phi == round(O.exact_hex_angle(c) * phi.ring_index)


@pytest.mark.parametrize("bits", [0, 2, 6, 9])
def test_normalize_is_floor_of_exact_angle(bits):
    q = 1 << bits
    for c in disc_cells(ORIGIN, 24):
        if c == ORIGIN:
            continue
        exact = O.exact_hex_angle(c)
        assert angle_of(c, bits).value == math.floor(exact * q + 1e-9) % (6 * q)


def test_denormalize_bound():
    # rescaling back to a ring loses less than one ring step
    for bits in (3, 6):
        q = 1 << bits
        for ri in (1, 3, 7, 40):
            for v in range(6 * q):
                phi = denormalize_angle(QuantizedAngle(v, bits), ri)
                assert 0 <= v / q - phi.phi / ri < 1 / ri + 1e-12


def test_angle_validation():
    with pytest.raises(InvalidAngle):
        QuantizedAngle(6 * 64, 6)
    with pytest.raises(InvalidAngle):
        QuantizedAngle(0, 31)
    with pytest.raises(UndefinedAtOrigin):
        angle_of(ORIGIN)
    with pytest.raises(UndefinedAtOrigin):
        polar_angle(ORIGIN)
    with pytest.raises(UndefinedAtOrigin):
        RingLocalAngle(0, 0)
    a = QuantizedAngle.from_parts(2, 5)
    assert (a.wedge, a.local) == (2, 5)
    assert a.degrees() == pytest.approx(120 + 5 * 60 / 64)


def test_from_polar_examples():
    assert from_polar(3, QuantizedAngle(0)) == HexCoord(0, 3, -3)
    assert from_polar(2, QuantizedAngle.from_parts(1, 32)) == decode_ring(RingPosition(2, 1, 1))
    assert from_polar(0, QuantizedAngle(100)) == ORIGIN


def test_direction_and_translate():
    a, b = HexCoord(2, -1, -1), HexCoord(2, 2, -4)
    assert direction(a, b) == QuantizedAngle(0)
    assert translate(b, a) == HexCoord(0, 3, -3)


@pytest.mark.parametrize("k", range(1, 6))
def test_sixty_degree_rotation_matches_matrix(k):
    rot = QuantizedAngle(k << 6)
    for c in disc_cells(ORIGIN, 12):
        p = O.hex_to_plane(c)
        cart = O.cart_rotate(p, -k * math.pi / 3)
        assert rotate_point(c, rot) == O.plane_to_hex(cart)
        assert radial_distance(rotate_point(c, rot)) == radial_distance(c)


def test_rotation_about_pivot():
    pivot = HexCoord(3, -2, -1)
    p = HexCoord(5, -2, -3)
    r = rotate_point(p, QuantizedAngle(2 << 6), pivot)
    assert distance(r, pivot) == distance(p, pivot)
    assert rotate_point(r, QuantizedAngle(4 << 6), pivot) == p


def test_fractional_rotation_stays_on_ring():
    for c in disc_cells(ORIGIN, 10):
        for v in (1, 17, 100, 383):
            assert radial_distance(rotate_point(c, QuantizedAngle(v))) == radial_distance(c)


@pytest.mark.parametrize("k", [2, 4, 8])
def test_coarsen_tiles_evenly(k):
    cells = disc_cells(ORIGIN, 48)
    tiles = Counter(coarsen(c, k) for c in cells)
    interior = [t for t in tiles if radial_distance(refine(t, k)) <= 48 - 2 * k]
    assert interior
    assert {tiles[t] for t in interior} == {k * k}
    offsets = {c - refine(coarsen(c, k), k) for c in cells}
    assert len(offsets) == k * k


def test_coarsen_rejects_bad_scale():
    for k in (0, 1, 3, 6):
        with pytest.raises(InvalidScale):
            coarsen(HexCoord(1, 0, -1), k)


def test_refine_then_coarsen_is_identity():
    for t in disc_cells(ORIGIN, 6):
        for k in (2, 4, 8):
            assert coarsen(refine(t, k), k) == t


@given(coords, coords)
def test_distance_is_a_metric(a, b):
    assert distance(a, b) == distance(b, a) >= 0
    assert (distance(a, b) == 0) == (a == b)
    assert distance(a, b) <= radial_distance(a) + radial_distance(b)


@given(coords)
def test_encode_decode_roundtrip(c):
    rp = encode_ring(c)
    assert rp.ring_index == radial_distance(c)
    assert decode_ring(rp) == c


@given(nonzero, st.integers(0, 5))
def test_six_rotations_compose_to_identity(c, k):
    rot = QuantizedAngle(k << 6)
    p = c
    for _ in range(6):
        p = rotate_point(p, rot)
    assert p == c


@settings(max_examples=200)
@given(nonzero, bits_st)
def test_polar_consistency(c, bits):
    a = angle_of(c, bits)
    back = from_polar(radial_distance(c), a)
    # two floors: at most RI/Q + 1 ring steps are lost, none when RI divides Q
    ri, q = radial_distance(c), 1 << bits
    assert radial_distance(back) == ri
    assert distance(back, c) <= ri / q + 1
    if q % ri == 0:
        assert back == c
