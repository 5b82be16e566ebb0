"""Data types shared by the OSM conversion stages."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field, fields, replace

from ..shapes import Shape


class OsmError(Exception):
    """Base class for pipeline errors."""


class XmlSyntaxError(OsmError):
    pass


class EmptyExtract(OsmError):
    pass


class OutOfGridRange(OsmError):
    pass


class ModelSchemaError(OsmError):
    pass


class PolicyError(OsmError, ValueError):
    pass


@dataclass(frozen=True)
class BBox:
    west: float
    south: float
    east: float
    north: float

    def __post_init__(self):
        if not (-180 <= self.west <= 180 and -180 <= self.east <= 180):
            raise ValueError(f"longitude out of range in {self}")
        if not (-90 <= self.south <= 90 and -90 <= self.north <= 90):
            raise ValueError(f"latitude out of range in {self}")
        if self.west > self.east or self.south > self.north:
            raise ValueError(f"bounding box corners are swapped: {self}")

    @classmethod
    def parse(cls, text: str) -> BBox:
        parts = text.split(",")
        if len(parts) != 4:
            raise ValueError(f"expected W,S,E,N, got {text!r}")
        return cls(*(float(p) for p in parts))

    @property
    def center(self) -> tuple[float, float]:
        return (self.west + self.east) / 2, (self.south + self.north) / 2

    @property
    def is_empty(self) -> bool:
        return self.west == self.east or self.south == self.north

    def contains(self, lon: float, lat: float) -> bool:
        return self.west <= lon <= self.east and self.south <= lat <= self.north

    def as_list(self) -> list[float]:
        return [self.west, self.south, self.east, self.north]


class GeometryKind(str, enum.Enum):
    NODE = "node"
    POLYLINE = "polyline"
    POLYGON = "polygon"


class Tier(enum.IntEnum):
    """Relevance tiers; a larger value is more important."""

    DISCARD = 0
    CONTEXTUAL = 1
    STRUCTURAL = 2
    IDENTITY = 3

    @property
    def label(self) -> str:
        return self.name.lower()

    @classmethod
    def from_label(cls, label: str) -> Tier:
        try:
            return cls[label.upper()]
        except KeyError:
            raise PolicyError(f"unknown tier {label!r}") from None


@dataclass(frozen=True)
class FeatureClass:
    name: str
    tier: Tier


@dataclass(frozen=True)
class RawFeature:
    id: int
    kind: GeometryKind
    coords: tuple[tuple[float, float], ...]
    tags: dict = field(default_factory=dict, compare=False, hash=False)
    source_type: str = "way"
    part: int = 0

    def __post_init__(self):
        n = len(self.coords)
        if self.kind is GeometryKind.NODE and n != 1:
            raise ValueError("a node feature has exactly one coordinate")
        if self.kind is GeometryKind.POLYLINE and n < 2:
            raise ValueError("a polyline needs at least 2 vertices")
        if self.kind is GeometryKind.POLYGON and (n < 4 or self.coords[0] != self.coords[-1]):
            raise ValueError("a polygon ring must be closed with at least 3 distinct vertices")

    @property
    def key(self) -> tuple:
        return (_SOURCE_ORDER.get(self.source_type, 9), self.id, self.part)


_SOURCE_ORDER = {"node": 0, "way": 1, "relation": 2}


@dataclass
class Feature:
    """A raw feature after classification, carrying its working geometry."""

    raw: RawFeature
    cls: FeatureClass
    coords: tuple[tuple[float, float], ...]

    @property
    def kind(self) -> GeometryKind:
        return self.raw.kind

    @property
    def key(self) -> tuple:
        return self.raw.key


@dataclass(frozen=True)
class ResolutionPolicy:
    scale: str
    dp_tolerance: float
    chaikin_iterations: int
    area_threshold: float
    max_vertices: int
    tier_cutoff: Tier
    max_primitives_per_object: int
    park_max_primitives: int = 20
    contextual_kinds: frozenset = frozenset({"node", "polyline", "polygon"})
    mosaic_error: float = 0.10
    cell_size: float = 5.0

    def __post_init__(self):
        if not self.dp_tolerance > 0:
            raise PolicyError("dp_tolerance must be positive")
        if self.area_threshold < 0:
            raise PolicyError("area_threshold must be non-negative")
        if self.chaikin_iterations < 0:
            raise PolicyError("chaikin_iterations must be non-negative")
        if self.max_vertices < 4:
            raise PolicyError("max_vertices must be at least 4")
        if self.max_primitives_per_object < 1 or self.park_max_primitives < 1:
            raise PolicyError("primitive budgets must be at least 1")
        if not 0 <= self.mosaic_error <= 1:
            raise PolicyError("mosaic_error must be in [0, 1]")
        if not self.cell_size > 0:
            raise PolicyError("cell_size must be positive")
        bad = set(self.contextual_kinds) - {k.value for k in GeometryKind}
        if bad:
            raise PolicyError(f"unknown geometry kinds {sorted(bad)}")

    def keeps(self, cls: FeatureClass, kind: GeometryKind) -> bool:
        if cls.tier is Tier.DISCARD or cls.tier < self.tier_cutoff:
            return False
        if cls.tier is Tier.CONTEXTUAL:
            return kind.value in self.contextual_kinds
        return True

    def budget(self, cls: FeatureClass) -> int:
        return self.park_max_primitives if cls.name == "park" else self.max_primitives_per_object

    def to_dict(self) -> dict:
        out = {}
        for f in fields(self):
            v = getattr(self, f.name)
            if isinstance(v, Tier):
                v = v.label
            elif isinstance(v, frozenset):
                v = sorted(v)
            out[f.name] = v
        return out

    @classmethod
    def from_dict(cls, obj: dict) -> ResolutionPolicy:
        known = {f.name for f in fields(cls)}
        extra = set(obj) - known
        if extra:
            raise PolicyError(f"unknown policy keys {sorted(extra)}")
        kw = dict(obj)
        if "tier_cutoff" in kw:
            kw["tier_cutoff"] = Tier.from_label(kw["tier_cutoff"])
        if "contextual_kinds" in kw:
            kw["contextual_kinds"] = frozenset(kw["contextual_kinds"])
        try:
            return cls(**kw)
        except TypeError as e:
            raise PolicyError(str(e)) from None

    def with_overrides(self, **kw) -> ResolutionPolicy:
        merged = self.to_dict()
        merged.update(kw)
        return ResolutionPolicy.from_dict(merged)


METRO = ResolutionPolicy(
    scale="metro",
    dp_tolerance=1e-4,
    chaikin_iterations=2,
    area_threshold=2.5e-6,
    max_vertices=64,
    tier_cutoff=Tier.CONTEXTUAL,
    max_primitives_per_object=8,
    contextual_kinds=frozenset({"polygon"}),
    mosaic_error=0.15,
    cell_size=50.0,
)

ZOOM = ResolutionPolicy(
    scale="zoom",
    dp_tolerance=1e-5,
    chaikin_iterations=1,
    area_threshold=2.5e-9,
    max_vertices=256,
    tier_cutoff=Tier.CONTEXTUAL,
    max_primitives_per_object=8,
    mosaic_error=0.10,
    cell_size=5.0,
)

POLICIES = {"metro": METRO, "zoom": ZOOM}


def policy_named(name: str, **overrides) -> ResolutionPolicy:
    try:
        base = POLICIES[name]
    except KeyError:
        raise PolicyError(f"unknown policy {name!r}; choose from {sorted(POLICIES)}") from None
    return base.with_overrides(**overrides) if overrides else base


@dataclass(frozen=True)
class Grid:
    origin_lon: float
    origin_lat: float
    cell_size: float

    def __post_init__(self):
        if not self.cell_size > 0:
            raise PolicyError("cell_size must be positive")

    def to_dict(self) -> dict:
        return {"origin": [self.origin_lon, self.origin_lat], "cell_size": self.cell_size}


@dataclass
class MosaicObject:
    source_id: int
    source_type: str
    part: int
    cls: FeatureClass
    geometry: GeometryKind
    primitives: list[Shape]
    ops: list[str]
    error: float | None = None
    accurate: bool = True
    name: str | None = None

    @property
    def key(self) -> tuple:
        return (_SOURCE_ORDER.get(self.source_type, 9), self.source_id, self.part)

    def shape(self) -> Shape:
        """Fold the primitives into one shape: 'add' unions, 'sub' subtracts."""
        from ..shapes import SO, UnionShape

        out = self.primitives[0]
        for op, prim in zip(self.ops[1:], self.primitives[1:]):
            out = UnionShape(out, prim) if op == "add" else SO(out, prim)
        return out


@dataclass
class StageCount:
    stage: str
    geometries: int
    vertices: int


@dataclass
class ReductionStats:
    raw_geometry_count: int = 0
    raw_vertex_count: int = 0
    post_simplification_feature_count: int = 0
    post_simplification_vertex_count: int = 0
    kept_object_count: int = 0
    kept_vertex_count: int = 0
    primitive_count: int = 0
    inaccurate_count: int = 0
    per_tier: dict = field(default_factory=dict)
    per_class: dict = field(default_factory=dict)
    warnings: dict = field(default_factory=dict)
    stages: list = field(default_factory=list)

    @staticmethod
    def _ratio(part: int, whole: int) -> float:
        if whole == 0:
            return 0.0
        return round(min(1.0, max(0.0, 1.0 - part / whole)), 6)

    @property
    def ratios(self) -> dict:
        return {
            "geometry": self._ratio(self.kept_object_count, self.raw_geometry_count),
            "simplification": self._ratio(self.post_simplification_feature_count, self.raw_geometry_count),
            "vertex": self._ratio(self.post_simplification_vertex_count, self.raw_vertex_count),
            "primitive": self._ratio(self.primitive_count, self.raw_vertex_count),
        }

    def to_dict(self) -> dict:
        return {
            "raw_geometry_count": self.raw_geometry_count,
            "raw_vertex_count": self.raw_vertex_count,
            "post_simplification_feature_count": self.post_simplification_feature_count,
            "post_simplification_vertex_count": self.post_simplification_vertex_count,
            "kept_object_count": self.kept_object_count,
            "kept_vertex_count": self.kept_vertex_count,
            "primitive_count": self.primitive_count,
            "inaccurate_count": self.inaccurate_count,
            "per_tier": {k: dict(v) for k, v in sorted(self.per_tier.items())},
            "per_class": {k: dict(v) for k, v in sorted(self.per_class.items())},
            "warnings": dict(sorted(self.warnings.items())),
            "stages": [dict(stage=s.stage, geometries=s.geometries, vertices=s.vertices) for s in self.stages],
            "ratios": self.ratios,
        }

    @classmethod
    def from_dict(cls, obj: dict) -> ReductionStats:
        obj = dict(obj)
        obj.pop("ratios", None)
        stages = [StageCount(**s) for s in obj.pop("stages", [])]
        try:
            return replace(cls(**obj), stages=stages)
        except TypeError as e:
            raise ModelSchemaError(f"bad stats record: {e}") from None
