import random

import numpy as np
import pytest

from neurohex._kernels import BACKEND, active
from neurohex._kernels import python as P

C = pytest.importorskip("neurohex._kernels._ckernels")


def _cells(n, lim, seed):
    rng = random.Random(seed)
    out = []
    for _ in range(n):
        q, r = rng.randint(-lim, lim), rng.randint(-lim, lim)
        out.append((q, r, -q - r))
    return out


CELLS = [(0, 0, 0)] + _cells(400, 50, 1) + _cells(50, 1 << 20, 2)


def test_backend_selected():
    assert BACKEND in ("cython", "python")
    assert active.BACKEND == BACKEND
    assert C.BACKEND == "cython"


def test_tables_match():
    assert tuple(map(tuple, C.DIRECTIONS)) == tuple(map(tuple, P.DIRECTIONS))


@pytest.mark.parametrize("bits", [0, 3, 6, 12])
def test_scalar_kernels_agree(bits):
    full = 6 << bits
    rng = random.Random(bits)
    for c in CELLS:
        o = CELLS[rng.randrange(len(CELLS))]
        assert C.radial(*c) == P.radial(*c)
        assert C.distance(*c, *o) == P.distance(*c, *o)
        pos = P.encode_ring(*c)
        assert tuple(C.encode_ring(*c)) == pos
        if pos[0]:
            assert tuple(C.decode_ring(*pos)) == P.decode_ring(*pos)
            assert C.normalize(*pos, bits) == P.normalize(*pos, bits)
            assert C.quantized_angle(*c, bits) == P.quantized_angle(*c, bits)
        v = rng.randrange(full)
        ri = max(1, pos[0])
        assert tuple(C.denormalize(v, ri, bits)) == P.denormalize(v, ri, bits)
        assert tuple(C.from_polar(pos[0], v, bits)) == P.from_polar(pos[0], v, bits)
        assert tuple(C.rotate(*c, v, bits)) == P.rotate(*c, v, bits)
        for m in (1, 2, 3):
            assert tuple(C.coarsen(*c, m)) == P.coarsen(*c, m)
        assert C.orientation(*c, *o, v, bits) == P.orientation(*c, *o, v, bits)


def test_batch_kernels_agree():
    cells = np.array(_cells(2000, 40, 3), dtype=np.int64)
    anchor = (3, -5, 2)
    np.testing.assert_array_equal(C.ring_positions(cells, anchor), P.ring_positions(cells, anchor))
    pos = P.ring_positions(cells, (0, 0, 0))
    pos = pos[pos[:, 0] > 0]
    np.testing.assert_array_equal(C.decode_many(pos), P.decode_many(pos))
    for bits in (2, 6):
        np.testing.assert_array_equal(C.quantized_angles(cells, anchor, bits),
                                      P.quantized_angles(cells, anchor, bits))
        np.testing.assert_array_equal(C.rotate_many(cells, 77 % (6 << bits), bits),
                                      P.rotate_many(cells, 77 % (6 << bits), bits))
    np.testing.assert_array_equal(C.distances(cells, anchor), P.distances(cells, anchor))
    np.testing.assert_array_equal(C.coarsen_many(cells, 2), P.coarsen_many(cells, 2))
    np.testing.assert_array_equal(C.disc(anchor, 9), P.disc(anchor, 9))


def test_anchor_angle_sentinel():
    cells = np.array([[1, 1, -2], [0, 0, 0]], dtype=np.int64)
    assert C.quantized_angles(cells, (1, 1, -2), 6)[0] == -1
    assert P.quantized_angles(cells, (1, 1, -2), 6)[0] == -1
