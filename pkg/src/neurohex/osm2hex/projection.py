"""Geographic to lattice conversion.

A local equirectangular projection about the grid origin gives meters east
and north; meters are then scaled so that neighboring cell centers are
``cell_size`` meters apart.
"""

from __future__ import annotations

import math

import numpy as np

from ..hexcore import HexCoord
from ..oracle import SQRT3, PlanePoint, cube_round, hex_to_plane
from .model import Grid, OutOfGridRange

EARTH_RADIUS = 6371008.8
MAX_OFFSET_DEG = 2.0
_M_PER_DEG = EARTH_RADIUS * math.pi / 180


def _check(lon: float, lat: float, grid: Grid) -> None:
    if abs(lon - grid.origin_lon) > MAX_OFFSET_DEG or abs(lat - grid.origin_lat) > MAX_OFFSET_DEG:
        raise OutOfGridRange(
            f"({lon}, {lat}) is more than {MAX_OFFSET_DEG} degrees from the grid origin"
        )


def to_plane(lon: float, lat: float, grid: Grid) -> PlanePoint:
    _check(lon, lat, grid)
    k = SQRT3 / grid.cell_size
    x = (lon - grid.origin_lon) * math.cos(math.radians(grid.origin_lat)) * _M_PER_DEG
    y = (lat - grid.origin_lat) * _M_PER_DEG
    return PlanePoint(x * k, y * k)


def to_plane_many(coords, grid: Grid) -> np.ndarray:
    pts = np.asarray(coords, dtype=float).reshape(-1, 2)
    dlon = pts[:, 0] - grid.origin_lon
    dlat = pts[:, 1] - grid.origin_lat
    if len(pts) and (np.abs(dlon).max() > MAX_OFFSET_DEG or np.abs(dlat).max() > MAX_OFFSET_DEG):
        raise OutOfGridRange(f"coordinates more than {MAX_OFFSET_DEG} degrees from the grid origin")
    k = SQRT3 / grid.cell_size * _M_PER_DEG
    return np.column_stack([dlon * math.cos(math.radians(grid.origin_lat)) * k, dlat * k])


def from_plane(pt: PlanePoint, grid: Grid) -> tuple[float, float]:
    k = SQRT3 / grid.cell_size
    lon = grid.origin_lon + pt.x / k / (math.cos(math.radians(grid.origin_lat)) * _M_PER_DEG)
    lat = grid.origin_lat + pt.y / k / _M_PER_DEG
    return lon, lat


def plane_cell(x: float, y: float) -> HexCoord:
    fq = x / 1.5
    return cube_round(fq, y / SQRT3 - fq / 2)


def geo_to_hex(lon: float, lat: float, grid: Grid) -> HexCoord:
    p = to_plane(lon, lat, grid)
    return plane_cell(p.x, p.y)


def hex_to_geo(cell: HexCoord, grid: Grid) -> tuple[float, float]:
    return from_plane(hex_to_plane(cell), grid)
