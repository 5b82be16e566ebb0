"""Cubic hexagonal lattice geometry with shift-and-add angle arithmetic."""

from ._kernels import BACKEND
from .hexcore import (
    DEFAULT_BITS,
    DIRECTIONS,
    ORIGIN,
    HexCoord,
    HexError,
    QuantizedAngle,
    RingLocalAngle,
    RingPosition,
    coarsen,
    decode_ring,
    denormalize_angle,
    distance,
    encode_ring,
    from_polar,
    make_coord,
    normalize_angle,
    parse_coord,
    polar_angle,
    radial_distance,
    refine,
    ring_cells,
    rotate_point,
    translate,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND", "DEFAULT_BITS", "DIRECTIONS", "ORIGIN", "HexCoord", "HexError",
    "QuantizedAngle", "RingLocalAngle", "RingPosition", "coarsen", "decode_ring",
    "denormalize_angle", "distance", "encode_ring", "from_polar", "make_coord",
    "normalize_angle", "parse_coord", "polar_angle", "radial_distance", "refine",
    "ring_cells", "rotate_point", "translate",
]
