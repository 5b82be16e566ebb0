"""Deterministic synthetic city extracts in OSM XML.

Stand-in for a real metro extract: a street grid with wiggly residential
ways, a few arterial and highway corridors, a river split into named
fragments, buildings with dense outlines, parks, ponds, landmark nodes and
untagged clutter.
"""

from __future__ import annotations

import math
import random
from xml.sax.saxutils import quoteattr


class _Writer:
    def __init__(self, rng: random.Random):
        self.rng = rng
        self.nodes: list[str] = []
        self.ways: list[str] = []
        self.next_node = 1
        self.next_way = 1
        self.features = 0

    def node(self, lon: float, lat: float, tags: dict | None = None) -> int:
        nid = self.next_node
        self.next_node += 1
        body = "".join(f"<tag k={quoteattr(k)} v={quoteattr(v)}/>" for k, v in (tags or {}).items())
        attrs = f'id="{nid}" lon="{lon:.7f}" lat="{lat:.7f}"'
        self.nodes.append(f"<node {attrs}>{body}</node>" if body else f"<node {attrs}/>")
        if tags:
            self.features += 1
        return nid

    def way(self, coords, tags: dict, closed: bool = False) -> None:
        refs = [self.node(lon, lat) for lon, lat in coords]
        if closed:
            refs.append(refs[0])
        wid = self.next_way
        self.next_way += 1
        nds = "".join(f'<nd ref="{r}"/>' for r in refs)
        tg = "".join(f"<tag k={quoteattr(k)} v={quoteattr(v)}/>" for k, v in tags.items())
        self.ways.append(f'<way id="{wid}">{nds}{tg}</way>')
        self.features += 1


def _polyline(rng, start, end, step, wiggle):
    (x0, y0), (x1, y1) = start, end
    n = max(2, int(math.hypot(x1 - x0, y1 - y0) / step) + 1)
    pts = []
    for i in range(n):
        t = i / (n - 1)
        jitter = 0 if i in (0, n - 1) else rng.uniform(-wiggle, wiggle)
        pts.append((x0 + t * (x1 - x0) + jitter, y0 + t * (y1 - y0) + jitter))
    return pts


def _meander(rng, start, end, step, amplitude, wiggle):
    (x0, y0), (x1, y1) = start, end
    length = math.hypot(x1 - x0, y1 - y0)
    n = max(2, int(length / step) + 1)
    nx, ny = -(y1 - y0) / length, (x1 - x0) / length
    waves = [(rng.uniform(0.3, 1.0) * amplitude, rng.uniform(0.5, 3.0), rng.uniform(0, 2 * math.pi))
             for _ in range(2)]
    pts = []
    for i in range(n):
        t = i / (n - 1)
        off = sum(a * math.sin(math.pi * f * t + ph) * math.sin(math.pi * t) for a, f, ph in waves)
        off += 0 if i in (0, n - 1) else rng.uniform(-wiggle, wiggle)
        pts.append((x0 + t * (x1 - x0) + off * nx, y0 + t * (y1 - y0) + off * ny))
    return pts


def _building(rng, cx, cy, w, h, per_edge):
    corners = [(-w, -h), (w, -h), (w, h), (-w, h)]
    if rng.random() < 0.3:
        # L shape
        corners = [(-w, -h), (w, -h), (w, 0), (0, 0), (0, h), (-w, h)]
    ang = rng.uniform(0, math.pi)
    ca, sa = math.cos(ang), math.sin(ang)
    pts = []
    for (ax, ay), (bx, by) in zip(corners, corners[1:] + corners[:1]):
        for k in range(per_edge):
            t = k / per_edge
            x, y = ax + t * (bx - ax), ay + t * (by - ay)
            pts.append((cx + x * ca - y * sa, cy + x * sa + y * ca))
    return pts


def _blob(rng, cx, cy, r, n):
    phase = [rng.uniform(0, 2 * math.pi) for _ in range(3)]
    pts = []
    for i in range(n):
        t = 2 * math.pi * i / n
        rr = r * (1 + 0.25 * math.sin(2 * t + phase[0]) + 0.1 * math.sin(5 * t + phase[1]))
        pts.append((cx + rr * math.cos(t), cy + rr * math.sin(t) * 0.8))
    return pts


def generate(seed: int = 0, scale: float = 1.0, bbox=(-80.10, 40.35, -79.90, 40.50)) -> str:
    """Return an OSM XML document; ``scale`` multiplies the feature counts."""
    rng = random.Random(seed)
    w = _Writer(rng)
    west, south, east, north = bbox
    width, height = east - west, north - south

    def rand_pt(margin=0.01):
        return (rng.uniform(west + margin * width, east - margin * width),
                rng.uniform(south + margin * height, north - margin * height))

    # river: named fragments sharing endpoints
    river = _meander(rng, (west + 0.02 * width, south + 0.3 * height),
                     (east - 0.02 * width, north - 0.3 * height), 0.0004, 0.01, 0.0001)
    cuts = sorted(rng.sample(range(5, len(river) - 5), 19))
    for a, b in zip([0] + cuts, cuts + [len(river) - 1]):
        w.way(river[a:b + 1], {"waterway": "river", "name": "Synthetic River"})

    n_local = int(1500 * scale)
    for _ in range(n_local):
        x, y = rand_pt()
        horiz = rng.random() < 0.5
        length = rng.uniform(0.004, 0.012)
        end = (x + length, y) if horiz else (x, y + length)
        kind = rng.choice(["residential", "residential", "service", "footway", "tertiary"])
        w.way(_polyline(rng, (x, y), end, 0.0002, 0.00002), {"highway": kind})

    for label, count in (("primary", 120), ("secondary", 120), ("motorway", 30), ("trunk", 30)):
        for _ in range(int(count * scale)):
            x, y = rand_pt()
            ang = rng.uniform(0, 2 * math.pi)
            length = rng.uniform(0.01, 0.04)
            end = (x + length * math.cos(ang), y + length * math.sin(ang))
            w.way(_meander(rng, (x, y), end, 0.0003, length * 0.08, 0.00005), {"highway": label, "name": f"{label} {w.next_way}"})

    for _ in range(int(3000 * scale)):
        cx, cy = rand_pt()
        size = rng.lognormvariate(math.log(0.00012), 0.9)
        per_edge = rng.randint(1, 8)
        w.way(_building(rng, cx, cy, size, size * rng.uniform(0.4, 1.0), per_edge), {"building": "yes"}, closed=True)

    for _ in range(int(120 * scale)):
        cx, cy = rand_pt()
        tags = rng.choice([{"leisure": "park"}, {"landuse": "grass"}, {"natural": "wood"}])
        w.way(_blob(rng, cx, cy, rng.uniform(0.0008, 0.004), rng.randint(30, 120)), tags, closed=True)

    for _ in range(int(60 * scale)):
        cx, cy = rand_pt()
        w.way(_blob(rng, cx, cy, rng.uniform(0.0005, 0.002), rng.randint(20, 80)), {"natural": "water"}, closed=True)

    for _ in range(int(300 * scale)):
        x, y = rand_pt()
        w.node(x, y, rng.choice([{"amenity": "school"}, {"tourism": "museum"}, {"historic": "monument"},
                                 {"amenity": "cafe"}]))

    for _ in range(int(500 * scale)):
        x, y = rand_pt()
        w.way(_polyline(rng, (x, y), (x + 0.001, y + 0.0005), 0.0001, 0.00001), {"barrier": "fence"})

    out = ['<?xml version="1.0" encoding="UTF-8"?>', '<osm version="0.6" generator="synthetic">']
    out.extend(w.nodes)
    out.extend(w.ways)
    out.append("</osm>")
    return "\n".join(out) + "\n"


def feature_estimate(scale: float = 1.0) -> int:
    return 20 + int(1500 * scale) + sum(int(c * scale) for c in (120, 120, 30, 30)) + int(3000 * scale) \
        + int(120 * scale) + int(60 * scale) + int(300 * scale) + int(500 * scale)
