# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled lattice kernels; same contract as ``_pykernels``."""

import numpy as np
cimport numpy as cnp

ctypedef long long i64

BACKEND = "cython"

SIGN_PATTERNS = (
    ((1, 1), (2, 1), (0, -1)),
    ((0, 1), (1, -1), (2, -1)),
    ((2, 1), (0, -1), (1, 1)),
    ((1, -1), (2, -1), (0, 1)),
    ((0, -1), (1, 1), (2, 1)),
    ((2, -1), (0, 1), (1, -1)),
)

DIRECTIONS = (
    (0, 1, -1),
    (1, 0, -1),
    (1, -1, 0),
    (0, -1, 1),
    (-1, 0, 1),
    (-1, 1, 0),
)

cdef int _IDX[6][3]
cdef int _SGN[6][3]
for _w in range(6):
    for _c in range(3):
        _IDX[_w][_c] = SIGN_PATTERNS[_w][_c][0]
        _SGN[_w][_c] = SIGN_PATTERNS[_w][_c][1]


cdef inline i64 _abs(i64 x) nogil:
    return -x if x < 0 else x


cdef inline i64 _max3(i64 a, i64 b, i64 c) nogil:
    cdef i64 m = a
    if b > m:
        m = b
    if c > m:
        m = c
    return m


cdef inline void _encode(i64 q, i64 r, i64 s, i64 *out) nogil:
    cdef i64 ri = _max3(_abs(q), _abs(r), _abs(s))
    out[0] = ri
    if ri == 0:
        out[1] = 0
        out[2] = 0
    elif s == -ri and q < ri:
        out[1] = 0
        out[2] = q
    elif q == ri and r > -ri:
        out[1] = 1
        out[2] = -r
    elif r == -ri and s < ri:
        out[1] = 2
        out[2] = s
    elif s == ri and q > -ri:
        out[1] = 3
        out[2] = -q
    elif q == -ri and r < ri:
        out[1] = 4
        out[2] = r
    else:
        out[1] = 5
        out[2] = -s


cdef inline void _decode(i64 ri, i64 w, i64 j, i64 *out) nogil:
    cdef i64 comps[3]
    cdef int c
    if ri == 0:
        out[0] = 0
        out[1] = 0
        out[2] = 0
        return
    if w >= 6:
        w -= 6
    comps[0] = ri
    comps[1] = j
    comps[2] = ri - j
    for c in range(3):
        out[c] = comps[_IDX[w][c]] if _SGN[w][c] > 0 else -comps[_IDX[w][c]]


cdef inline i64 _normalize(i64 ri, i64 w, i64 j, int bits) nogil:
    return (w << bits) + (j << bits) // ri


cdef inline void _rotate(i64 q, i64 r, i64 s, i64 value, int bits, i64 *out) nogil:
    cdef i64 pos[3]
    cdef i64 ri, w, j
    _encode(q, r, s, pos)
    ri = pos[0]
    if ri == 0:
        out[0] = q
        out[1] = r
        out[2] = s
        return
    w = pos[1]
    j = pos[2] + ((((value & ((1 << bits) - 1)) * ri)) >> bits)
    if j >= ri:
        j -= ri
        w += 1
    _decode(ri, w + (value >> bits), j, out)


cdef inline void _coarsen(i64 q, i64 r, i64 s, int m, i64 *out) nogil:
    cdef i64 mask = (1 << m) - 1
    cdef i64 rem[3]
    cdef int order[3]
    cdef int a, b, t, n
    out[0] = q >> m
    out[1] = r >> m
    out[2] = s >> m
    rem[0] = q & mask
    rem[1] = r & mask
    rem[2] = s & mask
    n = <int>((rem[0] + rem[1] + rem[2]) >> m)
    if n == 0:
        return
    order[0] = 0
    order[1] = 1
    order[2] = 2
    # stable insertion sort by descending remainder
    for a in range(1, 3):
        b = a
        while b > 0 and rem[order[b]] > rem[order[b - 1]]:
            t = order[b]
            order[b] = order[b - 1]
            order[b - 1] = t
            b -= 1
    for a in range(n):
        out[order[a]] += 1


# -- scalar API ------------------------------------------------------------

cpdef i64 radial(i64 q, i64 r, i64 s):
    return _max3(_abs(q), _abs(r), _abs(s))


cpdef i64 distance(i64 q1, i64 r1, i64 s1, i64 q2, i64 r2, i64 s2):
    return _max3(_abs(q1 - q2), _abs(r1 - r2), _abs(s1 - s2))


cpdef tuple encode_ring(i64 q, i64 r, i64 s):
    cdef i64 out[3]
    _encode(q, r, s, out)
    return out[0], out[1], out[2]


cpdef tuple decode_ring(i64 ri, i64 w, i64 j):
    cdef i64 out[3]
    _decode(ri, w, j, out)
    return out[0], out[1], out[2]


cpdef i64 normalize(i64 ri, i64 w, i64 j, int bits):
    return _normalize(ri, w, j, bits)


cpdef tuple denormalize(i64 value, i64 ri, int bits):
    return value >> bits, ((value & ((1 << bits) - 1)) * ri) >> bits


cpdef i64 quantized_angle(i64 q, i64 r, i64 s, int bits) except? -1:
    cdef i64 out[3]
    _encode(q, r, s, out)
    if out[0] == 0:
        raise ValueError("angle undefined at the origin")
    return _normalize(out[0], out[1], out[2], bits)


cpdef tuple from_polar(i64 magnitude, i64 value, int bits):
    cdef i64 out[3]
    if magnitude == 0:
        return 0, 0, 0
    _decode(magnitude, value >> bits,
            ((value & ((1 << bits) - 1)) * magnitude) >> bits, out)
    return out[0], out[1], out[2]


cpdef tuple rotate(i64 q, i64 r, i64 s, i64 value, int bits):
    cdef i64 out[3]
    _rotate(q, r, s, value, bits, out)
    return out[0], out[1], out[2]


cpdef tuple coarsen(i64 q, i64 r, i64 s, int m):
    cdef i64 out[3]
    _coarsen(q, r, s, m, out)
    return out[0], out[1], out[2]


cpdef int orientation(i64 q, i64 r, i64 s, i64 aq, i64 ar, i64 as_,
                      i64 boundary, int bits):
    cdef i64 pos[3]
    cdef i64 d
    _encode(q - aq, r - ar, s - as_, pos)
    if pos[0] == 0:
        return 0
    d = _normalize(pos[0], pos[1], pos[2], bits) - boundary
    if d < 0:
        d += 6 << bits
    if d == 0 or d == (3 << bits):
        return 0
    if d < (3 << bits):
        return 1
    return -1


# -- batch kernels ---------------------------------------------------------

def _as_cells(cells):
    return np.ascontiguousarray(cells, dtype=np.int64).reshape(-1, 3)


def ring_positions(cells, anchor):
    cdef cnp.int64_t[:, ::1] c = _as_cells(cells)
    cdef Py_ssize_t n = c.shape[0], i
    res = np.empty((n, 3), dtype=np.int64)
    cdef cnp.int64_t[:, ::1] o = res
    cdef i64 aq = anchor[0], ar = anchor[1], as_ = anchor[2]
    cdef i64 tmp[3]
    with nogil:
        for i in range(n):
            _encode(c[i, 0] - aq, c[i, 1] - ar, c[i, 2] - as_, tmp)
            o[i, 0] = tmp[0]
            o[i, 1] = tmp[1]
            o[i, 2] = tmp[2]
    return res


def decode_many(positions):
    cdef cnp.int64_t[:, ::1] c = _as_cells(positions)
    cdef Py_ssize_t n = c.shape[0], i
    res = np.empty((n, 3), dtype=np.int64)
    cdef cnp.int64_t[:, ::1] o = res
    cdef i64 tmp[3]
    with nogil:
        for i in range(n):
            _decode(c[i, 0], c[i, 1], c[i, 2], tmp)
            o[i, 0] = tmp[0]
            o[i, 1] = tmp[1]
            o[i, 2] = tmp[2]
    return res


def quantized_angles(cells, anchor, int bits):
    cdef cnp.int64_t[:, ::1] c = _as_cells(cells)
    cdef Py_ssize_t n = c.shape[0], i
    res = np.empty(n, dtype=np.int64)
    cdef cnp.int64_t[::1] o = res
    cdef i64 aq = anchor[0], ar = anchor[1], as_ = anchor[2]
    cdef i64 tmp[3]
    with nogil:
        for i in range(n):
            _encode(c[i, 0] - aq, c[i, 1] - ar, c[i, 2] - as_, tmp)
            if tmp[0] == 0:
                o[i] = -1
            else:
                o[i] = _normalize(tmp[0], tmp[1], tmp[2], bits)
    return res


def distances(cells, anchor):
    cdef cnp.int64_t[:, ::1] c = _as_cells(cells)
    cdef Py_ssize_t n = c.shape[0], i
    res = np.empty(n, dtype=np.int64)
    cdef cnp.int64_t[::1] o = res
    cdef i64 aq = anchor[0], ar = anchor[1], as_ = anchor[2]
    with nogil:
        for i in range(n):
            o[i] = _max3(_abs(c[i, 0] - aq), _abs(c[i, 1] - ar), _abs(c[i, 2] - as_))
    return res


def rotate_many(cells, i64 value, int bits):
    cdef cnp.int64_t[:, ::1] c = _as_cells(cells)
    cdef Py_ssize_t n = c.shape[0], i
    res = np.empty((n, 3), dtype=np.int64)
    cdef cnp.int64_t[:, ::1] o = res
    cdef i64 tmp[3]
    with nogil:
        for i in range(n):
            _rotate(c[i, 0], c[i, 1], c[i, 2], value, bits, tmp)
            o[i, 0] = tmp[0]
            o[i, 1] = tmp[1]
            o[i, 2] = tmp[2]
    return res


def coarsen_many(cells, int m):
    cdef cnp.int64_t[:, ::1] c = _as_cells(cells)
    cdef Py_ssize_t n = c.shape[0], i
    res = np.empty((n, 3), dtype=np.int64)
    cdef cnp.int64_t[:, ::1] o = res
    cdef i64 tmp[3]
    with nogil:
        for i in range(n):
            _coarsen(c[i, 0], c[i, 1], c[i, 2], m, tmp)
            o[i, 0] = tmp[0]
            o[i, 1] = tmp[1]
            o[i, 2] = tmp[2]
    return res


def disc(center, i64 radius):
    cdef i64 cq = center[0], cr = center[1], cs = center[2]
    cdef i64 n = 3 * radius * (radius + 1) + 1
    res = np.empty((n, 3), dtype=np.int64)
    cdef cnp.int64_t[:, ::1] o = res
    cdef i64 dq, dr, lo, hi
    cdef Py_ssize_t k = 0
    with nogil:
        for dq in range(-radius, radius + 1):
            lo = -radius if -radius > -dq - radius else -dq - radius
            hi = radius if radius < -dq + radius else -dq + radius
            for dr in range(lo, hi + 1):
                o[k, 0] = cq + dq
                o[k, 1] = cr + dr
                o[k, 2] = cs - dq - dr
                k += 1
    return res
