"""Tag-based semantic classes and relevance tiers.

First matching rule wins:

=========  ==========  ==============================================
class      tier        tags
=========  ==========  ==============================================
river      identity    waterway=river
highway    structural  highway=motorway|trunk (and their _link ramps)
arterial   structural  highway=primary|secondary (and _link ramps)
path       contextual  any other highway value
building   contextual  building=* (except "no")
park       contextual  leisure=park|garden|..., landuse=grass|forest|...
water      contextual  natural=water, waterway=riverbank|stream|canal
landmark   contextual  amenity=*, tourism=*, historic=*
other      discard     everything else
=========  ==========  ==============================================
"""

from __future__ import annotations

from .model import FeatureClass, RawFeature, Tier

HIGHWAY = frozenset({"motorway", "trunk", "motorway_link", "trunk_link"})
ARTERIAL = frozenset({"primary", "secondary", "primary_link", "secondary_link"})
PARK_LEISURE = frozenset({"park", "garden", "playground", "pitch", "nature_reserve", "golf_course", "common"})
PARK_LANDUSE = frozenset({"grass", "recreation_ground", "forest", "meadow", "cemetery", "village_green"})
WATERWAY_WATER = frozenset({"riverbank", "stream", "canal"})
WATER_LANDUSE = frozenset({"reservoir", "basin"})
LANDMARK_KEYS = ("amenity", "tourism", "historic")

CLASS_TIERS = {
    "river": Tier.IDENTITY,
    "highway": Tier.STRUCTURAL,
    "arterial": Tier.STRUCTURAL,
    "path": Tier.CONTEXTUAL,
    "building": Tier.CONTEXTUAL,
    "park": Tier.CONTEXTUAL,
    "water": Tier.CONTEXTUAL,
    "landmark": Tier.CONTEXTUAL,
    "other": Tier.DISCARD,
}


def class_name(tags: dict) -> str:
    if tags.get("waterway") == "river":
        return "river"
    hw = tags.get("highway")
    if hw is not None:
        if hw in HIGHWAY:
            return "highway"
        if hw in ARTERIAL:
            return "arterial"
        return "path"
    if tags.get("building", "no") != "no":
        return "building"
    if (tags.get("leisure") in PARK_LEISURE or tags.get("landuse") in PARK_LANDUSE
            or tags.get("natural") == "wood"):
        return "park"
    if (tags.get("natural") == "water" or tags.get("waterway") in WATERWAY_WATER
            or tags.get("landuse") in WATER_LANDUSE):
        return "water"
    if any(k in tags for k in LANDMARK_KEYS):
        return "landmark"
    return "other"


def classify(feature: RawFeature | dict) -> FeatureClass:
    tags = feature if isinstance(feature, dict) else feature.tags
    name = class_name(tags)
    return FeatureClass(name, CLASS_TIERS[name])
