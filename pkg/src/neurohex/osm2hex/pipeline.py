"""Stage orchestration: parse, classify, simplify, filter, fit."""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field

from ..hexcore import DEFAULT_BITS, _check_bits
from .classify import classify
from .model import (
    BBox,
    Feature,
    GeometryKind,
    Grid,
    MosaicObject,
    RawFeature,
    ReductionStats,
    ResolutionPolicy,
    StageCount,
    Tier,
)
from .mosaic import fit_point, fit_polygon, fit_polyline
from .parse import Source, parse_osm
from .projection import to_plane_many
from .simplify import cap_vertices, chaikin, ring_area


def _vertices(items) -> int:
    return sum(len(f.coords) for f in items)


def simplify_feature(feature: Feature, policy: ResolutionPolicy) -> Feature:
    """Douglas-Peucker, vertex cap, then Chaikin smoothing for open lines.

    Smoothing iterations stop early rather than leave the line with more
    vertices than it started with.  Polygons are not smoothed (corner cutting
    would round off building corners before the mosaic fit).
    """
    coords = feature.coords
    if feature.kind is GeometryKind.NODE:
        return feature
    closed = feature.kind is GeometryKind.POLYGON
    out = cap_vertices(list(coords), policy.max_vertices, policy.dp_tolerance, closed=closed)
    if not closed:
        for _ in range(policy.chaikin_iterations):
            if 2 * len(out) - 2 > min(len(coords), policy.max_vertices) or len(out) < 3:
                break
            out = chaikin(out, 1)
    return Feature(feature.raw, feature.cls, tuple(out))


def _name(f: Feature) -> str | None:
    return f.raw.tags.get("name")


def merge_rivers(features: list[Feature], gap: float) -> tuple[list[Feature], int]:
    """Join same-name river fragments whose endpoints are within ``gap``."""
    rivers: dict[str, list[Feature]] = {}
    rest = []
    for f in features:
        if f.cls.name == "river" and f.kind is GeometryKind.POLYLINE and _name(f):
            rivers.setdefault(_name(f), []).append(f)
        else:
            rest.append(f)
    merged_count = 0

    def close(p, q):
        return math.hypot(p[0] - q[0], p[1] - q[1]) <= gap

    for group in rivers.values():
        group.sort(key=lambda f: f.key)
        changed = True
        while changed:
            changed = False
            for a in range(len(group)):
                for b in range(a + 1, len(group)):
                    ca, cb = list(group[a].coords), list(group[b].coords)
                    if close(ca[-1], cb[0]):
                        joined = ca + cb[1:]
                    elif close(cb[-1], ca[0]):
                        joined = cb + ca[1:]
                    elif close(ca[-1], cb[-1]):
                        joined = ca + cb[-2::-1]
                    elif close(ca[0], cb[0]):
                        joined = ca[::-1] + cb[1:]
                    else:
                        continue
                    keep = group[a]
                    group[a] = Feature(keep.raw, keep.cls, tuple(joined))
                    group.pop(b)
                    merged_count += 1
                    changed = True
                    break
                if changed:
                    break
        rest.extend(group)
    rest.sort(key=lambda f: f.key)
    return rest, merged_count


@dataclass
class FilterReport:
    merged_rivers: int = 0
    below_area: int = 0
    tier_dropped: int = 0
    after_area: list = field(default_factory=list)


def area_filter(features: list[Feature], policy: ResolutionPolicy) -> tuple[list[Feature], int]:
    kept, dropped = [], 0
    for f in features:
        if (f.kind is GeometryKind.POLYGON and f.cls.tier is not Tier.IDENTITY
                and ring_area(f.coords) < policy.area_threshold):
            dropped += 1
        else:
            kept.append(f)
    return kept, dropped


def filter_features(features: list[Feature], policy: ResolutionPolicy):
    """River merging and area filtering, then relevance-tier filtering."""
    report = FilterReport()
    merged, report.merged_rivers = merge_rivers(features, 2 * policy.dp_tolerance)
    sized, report.below_area = area_filter(merged, policy)
    report.after_area = sized
    kept = [f for f in sized if policy.keeps(f.cls, f.kind)]
    report.tier_dropped = len(sized) - len(kept)
    return kept, report


def fit_mosaic(feature: Feature, policy: ResolutionPolicy, grid: Grid,
               bits: int = DEFAULT_BITS) -> MosaicObject:
    xy = to_plane_many(feature.coords, grid)
    budget = policy.budget(feature.cls)
    if feature.kind is GeometryKind.NODE:
        fit = fit_point(xy, bits)
    elif feature.kind is GeometryKind.POLYLINE:
        fit = fit_polyline(xy, min(budget, len(xy) - 1), bits)
    else:
        # never more primitives than the ring has corners
        fit = fit_polygon(xy, min(budget, len(xy) - 1), policy.mosaic_error, bits)
    raw = feature.raw
    return MosaicObject(
        source_id=raw.id,
        source_type=raw.source_type,
        part=raw.part,
        cls=feature.cls,
        geometry=feature.kind,
        primitives=fit.primitives,
        ops=fit.ops,
        error=round(fit.error, 6),
        accurate=fit.accurate,
        name=raw.tags.get("name"),
    )


def default_grid(bbox: BBox, policy: ResolutionPolicy, cell_size: float | None = None) -> Grid:
    lon, lat = bbox.center
    return Grid(lon, lat, cell_size or policy.cell_size)


@dataclass
class PipelineResult:
    objects: list[MosaicObject]
    stats: ReductionStats
    grid: Grid
    bbox: BBox
    policy: ResolutionPolicy
    bits: int


def run_features(raw: list[RawFeature], bbox: BBox, policy: ResolutionPolicy,
                 bits: int = DEFAULT_BITS, grid: Grid | None = None,
                 warnings: Counter | None = None) -> PipelineResult:
    _check_bits(bits)
    grid = grid or default_grid(bbox, policy)
    stats = ReductionStats(warnings=dict(warnings or {}))
    stats.raw_geometry_count = len(raw)
    stats.raw_vertex_count = sum(len(f.coords) for f in raw)
    stats.stages.append(StageCount("parse", len(raw), stats.raw_vertex_count))

    classified = [Feature(f, classify(f), f.coords) for f in raw]
    simplified = [simplify_feature(f, policy) for f in classified]
    stats.stages.append(StageCount("simplify", len(simplified), _vertices(simplified)))

    kept, report = filter_features(simplified, policy)
    stats.post_simplification_feature_count = len(report.after_area)
    stats.post_simplification_vertex_count = _vertices(report.after_area)
    stats.stages.append(StageCount("area_filter", len(report.after_area), stats.post_simplification_vertex_count))
    stats.kept_object_count = len(kept)
    stats.kept_vertex_count = _vertices(kept)
    stats.stages.append(StageCount("relevance_filter", len(kept), stats.kept_vertex_count))
    stats.warnings.update({
        k: v for k, v in (("merged_river_fragments", report.merged_rivers),
                          ("below_area_threshold", report.below_area),
                          ("dropped_by_tier", report.tier_dropped)) if v
    })

    objects = [fit_mosaic(f, policy, grid, bits) for f in kept]
    objects.sort(key=lambda o: o.key)
    stats.primitive_count = sum(len(o.primitives) for o in objects)
    stats.inaccurate_count = sum(not o.accurate for o in objects)
    stats.stages.append(StageCount("mosaic", len(objects), stats.primitive_count))
    for o in objects:
        for table, key in ((stats.per_tier, o.cls.tier.label), (stats.per_class, o.cls.name)):
            row = table.setdefault(key, {"objects": 0, "primitives": 0})
            row["objects"] += 1
            row["primitives"] += len(o.primitives)
    return PipelineResult(objects, stats, grid, bbox, policy, bits)


def run_pipeline(source: Source, bbox: BBox, policy: ResolutionPolicy,
                 bits: int = DEFAULT_BITS, grid: Grid | None = None) -> PipelineResult:
    raw = parse_osm(source, bbox)
    return run_features(list(raw), bbox, policy, bits, grid, raw.warnings)
