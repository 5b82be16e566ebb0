"""Streaming OSM XML reader.

Elements may appear in any order: node coordinates are indexed by id while
streaming and ways/relations are resolved once the document has been read.
"""

from __future__ import annotations

import xml.etree.ElementTree as ET
from collections import Counter
from typing import BinaryIO, Union

import shapely
from shapely.geometry import LineString, Polygon, box

from .model import BBox, EmptyExtract, GeometryKind, RawFeature, XmlSyntaxError

Source = Union[str, "os.PathLike[str]", BinaryIO]

AREA_KEYS = frozenset({
    "building", "leisure", "landuse", "amenity", "tourism", "historic", "shop",
    "man_made", "natural", "place", "aeroway", "military",
})
LINEAR_NATURAL = frozenset({"coastline", "tree_row", "cliff", "ridge", "arete"})
IGNORED_NODE_TAGS = frozenset({"created_by", "source", "fixme", "note"})


class FeatureList(list):
    """Parsed features plus counters for the records that were dropped."""

    def __init__(self, items=(), warnings=None):
        super().__init__(items)
        self.warnings: Counter = Counter(warnings or {})


def is_area(tags: dict) -> bool:
    area = tags.get("area")
    if area == "no":
        return False
    if area == "yes":
        return True
    if tags.get("waterway") == "riverbank":
        return True
    if "highway" in tags or "barrier" in tags or "waterway" in tags:
        return False
    if tags.get("natural") in LINEAR_NATURAL:
        return False
    return any(k in tags for k in AREA_KEYS)


def _read(source: Source):
    nodes: dict[int, tuple[float, float]] = {}
    tagged_nodes: list[tuple[int, dict]] = []
    ways: list[tuple[int, list[int], dict]] = []
    relations: list[tuple[int, list[tuple[str, int, str]], dict]] = []
    try:
        for _, el in ET.iterparse(source, events=("end",)):
            tag = el.tag
            if tag == "node":
                nid = int(el.get("id"))
                nodes[nid] = (float(el.get("lon")), float(el.get("lat")))
                tags = {t.get("k"): t.get("v") for t in el.iter("tag")}
                if set(tags) - IGNORED_NODE_TAGS:
                    tagged_nodes.append((nid, tags))
                el.clear()
            elif tag == "way":
                refs = [int(nd.get("ref")) for nd in el.iter("nd")]
                tags = {t.get("k"): t.get("v") for t in el.iter("tag")}
                ways.append((int(el.get("id")), refs, tags))
                el.clear()
            elif tag == "relation":
                members = [(m.get("type"), int(m.get("ref")), m.get("role") or "") for m in el.iter("member")]
                tags = {t.get("k"): t.get("v") for t in el.iter("tag")}
                relations.append((int(el.get("id")), members, tags))
                el.clear()
    except ET.ParseError as e:
        raise XmlSyntaxError(f"malformed OSM XML: {e}") from None
    except (TypeError, ValueError) as e:
        raise XmlSyntaxError(f"bad attribute in OSM XML: {e}") from None
    return nodes, tagged_nodes, ways, relations


def _assemble_rings(parts: list[list[int]]) -> tuple[list[list[int]], int]:
    """Join node-id chains into closed rings; returns (rings, open chain count)."""
    rings, open_chains = [], 0
    pending = [list(p) for p in parts if len(p) >= 2]
    while pending:
        cur = pending.pop(0)
        changed = True
        while cur[0] != cur[-1] and changed:
            changed = False
            for i, p in enumerate(pending):
                if p[0] == cur[-1]:
                    cur += p[1:]
                elif p[-1] == cur[-1]:
                    cur += p[-2::-1]
                elif p[-1] == cur[0]:
                    cur = p[:-1] + cur
                elif p[0] == cur[0]:
                    cur = p[:0:-1] + cur
                else:
                    continue
                pending.pop(i)
                changed = True
                break
        if cur[0] == cur[-1] and len(cur) >= 4:
            rings.append(cur)
        else:
            open_chains += 1
    return rings, open_chains


def _clip_line(coords, bbox: BBox, clip_box):
    if all(bbox.contains(x, y) for x, y in coords):
        return [tuple(coords)]
    geom = LineString(coords).intersection(clip_box)
    out = []
    for g in getattr(geom, "geoms", [geom]):
        if g.geom_type == "LineString" and len(g.coords) >= 2 and g.length > 0:
            out.append(tuple(g.coords))
    return out


def _clip_ring(coords, bbox: BBox, clip_box):
    if all(bbox.contains(x, y) for x, y in coords):
        return [tuple(coords)]
    poly = shapely.make_valid(Polygon(coords)).intersection(clip_box)
    out = []
    for g in getattr(poly, "geoms", [poly]):
        if g.geom_type == "Polygon" and not g.is_empty and g.area > 0:
            out.append(tuple(shapely.geometry.polygon.orient(g, -1.0).exterior.coords))
    return out


def parse_osm(source: Source, bbox: BBox) -> FeatureList:
    """Read an OSM XML document and return the features inside ``bbox``.

    Closed ways with area-like tags become polygons, other ways polylines,
    and tagged nodes point features.  Multipolygon relations contribute their
    outer rings.  Everything is clipped to the box.
    """
    nodes, tagged_nodes, ways, relations = _read(source)
    warnings: Counter = Counter()
    features: list[RawFeature] = []
    if bbox.is_empty:
        raise EmptyExtract(f"bounding box {bbox.as_list()} has zero area")
    clip_box = box(bbox.west, bbox.south, bbox.east, bbox.north)

    for nid, tags in tagged_nodes:
        lon, lat = nodes[nid]
        if bbox.contains(lon, lat):
            features.append(RawFeature(nid, GeometryKind.NODE, ((lon, lat),), tags, "node"))

    way_refs: dict[int, list[int]] = {}
    for wid, refs, tags in ways:
        way_refs[wid] = refs
        if any(r not in nodes for r in refs):
            warnings["missing_node"] += 1
            continue
        coords = [nodes[r] for r in refs]
        if len(set(refs)) < 2:
            warnings["degenerate_way"] += 1
            continue
        closed = refs[0] == refs[-1] and len(set(refs)) >= 3
        if closed and is_area(tags):
            parts = _clip_ring(coords, bbox, clip_box)
            kind = GeometryKind.POLYGON
        else:
            parts = _clip_line(coords, bbox, clip_box)
            kind = GeometryKind.POLYLINE
        for i, part in enumerate(parts):
            features.append(RawFeature(wid, kind, part, tags, "way", i))

    for rid, members, tags in relations:
        if tags.get("type") != "multipolygon":
            continue
        outer: list[list[int]] = []
        ok = True
        for mtype, ref, role in members:
            if mtype == "relation":
                warnings["nested_relation"] += 1
                continue
            if mtype != "way" or role not in ("outer", ""):
                continue
            refs = way_refs.get(ref)
            if refs is None or any(r not in nodes for r in refs):
                warnings["missing_member"] += 1
                ok = False
                break
            outer.append(refs)
        if not ok:
            continue
        rings, n_open = _assemble_rings(outer)
        if n_open:
            warnings["open_ring"] += n_open
        part = 0
        for ring in rings:
            for clipped in _clip_ring([nodes[r] for r in ring], bbox, clip_box):
                features.append(RawFeature(rid, GeometryKind.POLYGON, clipped, tags, "relation", part))
                part += 1

    if not features:
        raise EmptyExtract(f"no features inside {bbox.as_list()}")
    features.sort(key=lambda f: f.key)
    return FeatureList(features, warnings)
