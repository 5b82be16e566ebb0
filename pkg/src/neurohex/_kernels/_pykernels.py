"""Pure-Python lattice kernels.

Reference implementation of the hot integer kernels.  The compiled module
``_ckernels`` mirrors every function here and is checked against it in the
test suite.

Scalar functions take and return plain integers (or tuples of them) and avoid
``int()`` coercions and ``%`` so they can be run on the instrumented numbers
from :mod:`neurohex.counting`.  Wedge arithmetic is done with table lookups
(multiplexer selection), not with modular division.
"""

import numpy as np

BACKEND = "python"

# Per-wedge decoding table.  Entry w gives, for each of (q, r, s), the index
# into (RI, Rws, RI - Rws) and the sign to apply.  Derived from the clockwise
# ring walk starting at the ring-1 cell (0, 1, -1); see tests/test_hexcore.py.
SIGN_PATTERNS = (
    ((1, 1), (2, 1), (0, -1)),
    ((0, 1), (1, -1), (2, -1)),
    ((2, 1), (0, -1), (1, 1)),
    ((1, -1), (2, -1), (0, 1)),
    ((0, -1), (1, 1), (2, 1)),
    ((2, -1), (0, 1), (1, -1)),
)

# Doubled table so a wedge sum in [0, 12) selects without a modulo.
_PATTERNS12 = SIGN_PATTERNS + SIGN_PATTERNS
_SUCC = (1, 2, 3, 4, 5, 6)

DIRECTIONS = (
    (0, 1, -1),
    (1, 0, -1),
    (1, -1, 0),
    (0, -1, 1),
    (-1, 0, 1),
    (-1, 1, 0),
)


def radial(q, r, s):
    return max(abs(q), abs(r), abs(s))


def distance(q1, r1, s1, q2, r2, s2):
    return max(abs(q1 - q2), abs(r1 - r2), abs(s1 - s2))


def encode_ring(q, r, s):
    """Return ``(RI, Wi, Rws)`` for a cell relative to the origin."""
    ri = max(abs(q), abs(r), abs(s))
    if ri == 0:
        return 0, 0, 0
    if s == -ri and q < ri:
        return ri, 0, q
    if q == ri and r > -ri:
        return ri, 1, -r
    if r == -ri and s < ri:
        return ri, 2, s
    if s == ri and q > -ri:
        return ri, 3, -q
    if q == -ri and r < ri:
        return ri, 4, r
    return ri, 5, -s


def _decode(ri, w, j):
    comps = (ri, j, ri - j)
    (iq, sq), (ir, sr), (is_, ss) = _PATTERNS12[w]
    q = comps[iq] if sq > 0 else -comps[iq]
    r = comps[ir] if sr > 0 else -comps[ir]
    s = comps[is_] if ss > 0 else -comps[is_]
    return q, r, s


def decode_ring(ri, w, j):
    if ri == 0:
        return 0, 0, 0
    return _decode(ri, w, j)


def normalize(ri, w, j, bits):
    """Ring-local (Wi, Rws) at ring ``ri`` to a global B-bit angle."""
    return (w << bits) + (j << bits) // ri


def denormalize(value, ri, bits):
    """Global angle to ring-local ``(Wi, Rws)`` at ring ``ri``."""
    mask = (1 << bits) - 1
    return value >> bits, ((value & mask) * ri) >> bits


def quantized_angle(q, r, s, bits):
    ri, w, j = encode_ring(q, r, s)
    if ri == 0:
        raise ValueError("angle undefined at the origin")
    return normalize(ri, w, j, bits)


def from_polar(magnitude, value, bits):
    if magnitude == 0:
        return 0, 0, 0
    w, j = denormalize(value, magnitude, bits)
    return _decode(magnitude, w, j)


def rotate(q, r, s, value, bits):
    """Clockwise rotation about the origin by a global B-bit angle."""
    ri, w, j = encode_ring(q, r, s)
    if ri == 0:
        return q, r, s
    mask = (1 << bits) - 1
    rot_w = value >> bits
    rot_j = ((value & mask) * ri) >> bits
    j = j + rot_j
    if j >= ri:
        j = j - ri
        w = _SUCC[w]
    return _decode(ri, rot_w + w, j)


def coarsen(q, r, s, m):
    """Index of the 2**m-scaled tile containing the cell."""
    mask = (1 << m) - 1
    quo = [q >> m, r >> m, s >> m]
    rem = (q & mask, r & mask, s & mask)
    n = (rem[0] + rem[1] + rem[2]) >> m
    if n:
        # largest remainders first; ties go to the earlier component
        order = sorted(range(3), key=lambda i: (-rem[i], i))
        for i in order[:n]:
            quo[i] = quo[i] + 1
    return quo[0], quo[1], quo[2]


def orientation(q, r, s, aq, ar, as_, boundary, bits):
    """Side of the directed line (anchor, boundary): -1 before, 0 on, 1 after.

    A query at the anchor itself lies on the line.
    """
    ri, w, j = encode_ring(q - aq, r - ar, s - as_)
    if ri == 0:
        return 0
    a = normalize(ri, w, j, bits)
    d = a - boundary
    if d < 0:
        d = d + (6 << bits)
    if d == 0 or d == (3 << bits):
        return 0
    if d < (3 << bits):
        return 1
    return -1


# -- batch kernels ---------------------------------------------------------


def _as_cells(cells):
    return np.ascontiguousarray(cells, dtype=np.int64).reshape(-1, 3)


def ring_positions(cells, anchor):
    """(RI, Wi, Rws) of every cell relative to ``anchor``; shape (n, 3)."""
    cells = _as_cells(cells)
    aq, ar, as_ = anchor
    out = np.empty_like(cells)
    for i, (q, r, s) in enumerate(cells.tolist()):
        out[i] = encode_ring(q - aq, r - ar, s - as_)
    return out


def decode_many(positions):
    positions = _as_cells(positions)
    out = np.empty_like(positions)
    for i, (ri, w, j) in enumerate(positions.tolist()):
        out[i] = decode_ring(ri, w, j)
    return out


def quantized_angles(cells, anchor, bits):
    """Global angle of every cell seen from ``anchor``; -1 at the anchor."""
    cells = _as_cells(cells)
    aq, ar, as_ = anchor
    out = np.empty(len(cells), dtype=np.int64)
    for i, (q, r, s) in enumerate(cells.tolist()):
        ri, w, j = encode_ring(q - aq, r - ar, s - as_)
        out[i] = -1 if ri == 0 else normalize(ri, w, j, bits)
    return out


def distances(cells, anchor):
    cells = _as_cells(cells)
    aq, ar, as_ = anchor
    out = np.empty(len(cells), dtype=np.int64)
    for i, (q, r, s) in enumerate(cells.tolist()):
        out[i] = max(abs(q - aq), abs(r - ar), abs(s - as_))
    return out


def rotate_many(cells, value, bits):
    cells = _as_cells(cells)
    out = np.empty_like(cells)
    for i, (q, r, s) in enumerate(cells.tolist()):
        out[i] = rotate(q, r, s, value, bits)
    return out


def coarsen_many(cells, m):
    cells = _as_cells(cells)
    out = np.empty_like(cells)
    for i, (q, r, s) in enumerate(cells.tolist()):
        out[i] = coarsen(q, r, s, m)
    return out


def disc(center, radius):
    """All cells within ``radius`` of ``center``, ordered by (q, r)."""
    cq, cr, cs = center
    rows = []
    for dq in range(-radius, radius + 1):
        lo = max(-radius, -dq - radius)
        hi = min(radius, -dq + radius)
        for dr in range(lo, hi + 1):
            rows.append((cq + dq, cr + dr, cs - dq - dr))
    return np.array(rows, dtype=np.int64).reshape(-1, 3)
