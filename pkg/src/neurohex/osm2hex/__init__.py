"""OpenStreetMap extracts to compact lattice world models."""

from .classify import classify
from .io import Model, dumps_model, empty_model, loads_model, model_from_result, stats_json
from .model import (
    METRO,
    POLICIES,
    ZOOM,
    BBox,
    EmptyExtract,
    Feature,
    FeatureClass,
    GeometryKind,
    Grid,
    ModelSchemaError,
    MosaicObject,
    OsmError,
    OutOfGridRange,
    PolicyError,
    RawFeature,
    ReductionStats,
    ResolutionPolicy,
    Tier,
    XmlSyntaxError,
    policy_named,
)
from .mosaic import fit_point, fit_polygon, fit_polyline
from .parse import parse_osm
from .pipeline import (
    PipelineResult,
    filter_features,
    fit_mosaic,
    run_features,
    run_pipeline,
    simplify_feature,
)
from .projection import geo_to_hex, hex_to_geo
from .render import render_svg
from .simplify import chaikin, douglas_peucker

__all__ = [
    "BBox", "EmptyExtract", "Feature", "FeatureClass", "GeometryKind", "Grid", "METRO",
    "Model", "ModelSchemaError", "MosaicObject", "OsmError", "OutOfGridRange", "POLICIES",
    "PipelineResult", "PolicyError", "RawFeature", "ReductionStats", "ResolutionPolicy",
    "Tier", "XmlSyntaxError", "ZOOM", "chaikin", "classify", "douglas_peucker",
    "dumps_model", "empty_model", "filter_features", "fit_mosaic", "fit_point",
    "fit_polygon", "fit_polyline", "geo_to_hex", "hex_to_geo", "loads_model",
    "model_from_result", "parse_osm", "policy_named", "render_svg", "run_features",
    "run_pipeline", "simplify_feature", "stats_json",
]
