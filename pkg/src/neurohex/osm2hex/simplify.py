"""Polyline simplification and smoothing."""

from __future__ import annotations

import numpy as np

Coords = "list[tuple[float, float]]"


def _segment_distances(pts: np.ndarray, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    d = b - a
    l2 = float(d @ d)
    if l2 == 0.0:
        return np.hypot(pts[:, 0] - a[0], pts[:, 1] - a[1])
    t = np.clip(((pts - a) @ d) / l2, 0.0, 1.0)
    proj = a + t[:, None] * d
    return np.hypot(pts[:, 0] - proj[:, 0], pts[:, 1] - proj[:, 1])


def douglas_peucker_mask(coords, tolerance: float) -> np.ndarray:
    pts = np.asarray(coords, dtype=float)
    n = len(pts)
    keep = np.zeros(n, dtype=bool)
    keep[0] = keep[-1] = True
    stack = [(0, n - 1)]
    while stack:
        i, j = stack.pop()
        if j - i < 2:
            continue
        dist = _segment_distances(pts[i + 1:j], pts[i], pts[j])
        k = int(np.argmax(dist))
        if dist[k] > tolerance:
            k += i + 1
            keep[k] = True
            stack.append((i, k))
            stack.append((k, j))
    return keep


def douglas_peucker(coords, tolerance: float) -> list[tuple[float, float]]:
    """Farthest-point simplification; endpoints are always kept.

    Deviation is measured to the segment, not the infinite line, so every
    dropped vertex is within ``tolerance`` of the output polyline.
    """
    if len(coords) < 2:
        raise ValueError("need at least 2 vertices")
    if not tolerance > 0:
        raise ValueError("tolerance must be positive")
    keep = douglas_peucker_mask(coords, tolerance)
    return [tuple(c) for c, k in zip(coords, keep) if k]


def simplify_ring(ring, tolerance: float) -> list[tuple[float, float]]:
    """Douglas-Peucker on a closed ring, never dropping below a triangle."""
    out = douglas_peucker(ring, tolerance)
    if len(out) >= 4:
        return out
    pts = np.asarray(ring[:-1], dtype=float)
    a = int(np.argmax(np.hypot(*(pts - pts[0]).T)))
    b = int(np.argmax(_segment_distances(pts, pts[0], pts[a])))
    idx = sorted({0, a, b})
    if len(idx) < 3:
        return [tuple(c) for c in ring]
    return [tuple(ring[i]) for i in idx] + [tuple(ring[0])]


def cap_vertices(coords, max_vertices: int, tolerance: float, closed: bool = False):
    """Raise the tolerance until at most ``max_vertices`` remain."""
    simplify = simplify_ring if closed else douglas_peucker
    out = simplify(coords, tolerance)
    while len(out) > max_vertices:
        tolerance *= 2
        out = simplify(coords, tolerance)
    return out


def chaikin(coords, iterations: int = 1, closed: bool = False) -> list[tuple[float, float]]:
    """Corner cutting at the 1/4 and 3/4 points of each segment.

    Open lines keep both endpoints and go from n to 2n - 2 vertices per
    iteration.  Closed rings (first vertex repeated at the end) go from n
    distinct vertices to 2n.
    """
    if len(coords) < 2:
        raise ValueError("need at least 2 vertices")
    if iterations < 0:
        raise ValueError("iterations must be non-negative")
    pts = np.asarray(coords, dtype=float)
    for _ in range(iterations):
        if len(pts) < 3:
            break
        a, b = pts[:-1], pts[1:]
        q = 0.75 * a + 0.25 * b
        r = 0.25 * a + 0.75 * b
        cut = np.empty((2 * len(a), 2))
        cut[0::2] = q
        cut[1::2] = r
        if closed:
            pts = np.vstack([cut, cut[:1]])
        else:
            cut[0] = pts[0]
            cut[-1] = pts[-1]
            pts = cut
    return [(float(x), float(y)) for x, y in pts]


def ring_area(ring) -> float:
    """Unsigned shoelace area in the coordinates' own units."""
    pts = np.asarray(ring, dtype=float)
    x, y = pts[:, 0], pts[:, 1]
    return abs(float(np.dot(x[:-1], y[1:]) - np.dot(x[1:], y[:-1]))) / 2


def max_deviation(points, line) -> float:
    """Largest distance from any of ``points`` to the polyline ``line``."""
    pts = np.asarray(points, dtype=float)
    ln = np.asarray(line, dtype=float)
    best = np.full(len(pts), np.inf)
    for a, b in zip(ln[:-1], ln[1:]):
        best = np.minimum(best, _segment_distances(pts, a, b))
    return float(best.max()) if len(pts) else 0.0
