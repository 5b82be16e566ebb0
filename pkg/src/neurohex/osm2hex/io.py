"""Newline-delimited JSON world models.

The first line is a header record with the grid, policy, quantization and
reduction statistics; every following line is one mosaic object.  Keys are
sorted and separators fixed so identical models serialize to identical bytes.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .. import shapes as S
from .classify import CLASS_TIERS
from .model import (
    BBox,
    FeatureClass,
    GeometryKind,
    Grid,
    ModelSchemaError,
    MosaicObject,
    ReductionStats,
    Tier,
)

FORMAT = "neurohex-model"
VERSION = 1


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


@dataclass
class Model:
    header: dict
    objects: list[MosaicObject] = field(default_factory=list)

    @property
    def stats(self) -> ReductionStats:
        return ReductionStats.from_dict(self.header.get("stats", {}))

    @property
    def grid(self) -> Grid | None:
        g = self.header.get("grid")
        if not g:
            return None
        return Grid(g["origin"][0], g["origin"][1], g["cell_size"])


def object_record(o: MosaicObject) -> dict:
    return {
        "record": "object",
        "source_type": o.source_type,
        "source_id": o.source_id,
        "part": o.part,
        "class": o.cls.name,
        "tier": o.cls.tier.label,
        "geometry": o.geometry.value,
        "name": o.name,
        "ops": list(o.ops),
        "primitives": [S.to_dict(p) for p in o.primitives],
        "error": o.error,
        "accurate": o.accurate,
    }


def header_record(grid: Grid | None, bbox: BBox | None, policy: dict | None, bits: int,
                  stats: ReductionStats) -> dict:
    return {
        "record": "header",
        "format": FORMAT,
        "version": VERSION,
        "bbox": bbox.as_list() if bbox else None,
        "grid": grid.to_dict() if grid else None,
        "policy": policy,
        "bits": bits,
        "stats": stats.to_dict(),
    }


def model_from_result(result) -> Model:
    header = header_record(result.grid, result.bbox, result.policy.to_dict(), result.bits, result.stats)
    return Model(header, list(result.objects))


def dumps_model(model: Model) -> str:
    lines = [_dump(model.header)]
    lines += [_dump(object_record(o)) for o in model.objects]
    return "\n".join(lines) + "\n"


def _parse_object(rec: dict, lineno: int) -> MosaicObject:
    try:
        cls_name = rec["class"]
        tier = Tier.from_label(rec["tier"])
        if cls_name not in CLASS_TIERS:
            raise ModelSchemaError(f"unknown class {cls_name!r}")
        prims = [S.from_dict(p) for p in rec["primitives"]]
        ops = list(rec["ops"])
        if not prims or len(ops) != len(prims) or any(op not in ("add", "sub") for op in ops):
            raise ModelSchemaError("ops and primitives must be non-empty lists of equal length")
        return MosaicObject(
            source_id=int(rec["source_id"]),
            source_type=str(rec["source_type"]),
            part=int(rec["part"]),
            cls=FeatureClass(cls_name, tier),
            geometry=GeometryKind(rec["geometry"]),
            primitives=prims,
            ops=ops,
            error=rec.get("error"),
            accurate=bool(rec["accurate"]),
            name=rec.get("name"),
        )
    except ModelSchemaError as e:
        raise ModelSchemaError(f"line {lineno}: {e}") from None
    except (KeyError, TypeError, ValueError) as e:
        raise ModelSchemaError(f"line {lineno}: bad object record ({e})") from None


def loads_model(text: str) -> Model:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ModelSchemaError("empty model file")
    try:
        records = [json.loads(ln) for ln in lines]
    except json.JSONDecodeError as e:
        raise ModelSchemaError(f"invalid JSON: {e}") from None
    header = records[0]
    if not isinstance(header, dict) or header.get("record") != "header" or header.get("format") != FORMAT:
        raise ModelSchemaError("first line must be a neurohex-model header record")
    if header.get("version") != VERSION:
        raise ModelSchemaError(f"unsupported model version {header.get('version')!r}")
    objects = []
    for i, rec in enumerate(records[1:], start=2):
        if not isinstance(rec, dict) or rec.get("record") != "object":
            raise ModelSchemaError(f"line {i}: expected an object record")
        objects.append(_parse_object(rec, i))
    return Model(header, objects)


def empty_model(bits: int = 6) -> Model:
    return Model(header_record(None, None, None, bits, ReductionStats()))


def stats_json(stats: ReductionStats) -> str:
    return json.dumps(stats.to_dict(), sort_keys=True, indent=2) + "\n"
