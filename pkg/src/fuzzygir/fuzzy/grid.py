"""Gridded possibility surfaces: fusion, defuzzification, certainty regions."""
import enum
import math
from dataclasses import dataclass

import numpy as np
import shapely
from shapely.geometry import MultiPolygon, Polygon
from shapely.geometry.polygon import orient

from ..errors import NoLocationError
from ..geo import WORLD, bbox_union
from .surface import alpha_cut_bbox


class FusionMode(enum.Enum):
    MIN = "min"
    MAX = "max"
    WEIGHTED_AVERAGE = "avg"

    @classmethod
    def parse(cls, value):
        if isinstance(value, cls):
            return value
        aliases = {"weightedaverage": "avg", "weighted_average": "avg", "average": "avg", "mean": "avg"}
        value = str(value).strip().lower()
        return cls(aliases.get(value, value))


@dataclass
class GriddedSurface:
    """Possibility values on square lon/lat cells; ``values[row, col]`` with row 0 in the south."""

    lon0: float
    lat0: float
    cell: float
    values: np.ndarray

    @property
    def shape(self):
        return self.values.shape

    @property
    def lon_edges(self):
        return self.lon0 + np.arange(self.values.shape[1] + 1) * self.cell

    @property
    def lat_edges(self):
        return self.lat0 + np.arange(self.values.shape[0] + 1) * self.cell

    def centers(self):
        ny, nx = self.values.shape
        lons = self.lon0 + (np.arange(nx) + 0.5) * self.cell
        lats = self.lat0 + (np.arange(ny) + 0.5) * self.cell
        return np.meshgrid(lons, lats)

    @property
    def bbox(self):
        ny, nx = self.values.shape
        return (self.lon0, self.lat0, self.lon0 + nx * self.cell, self.lat0 + ny * self.cell)

    def possibility(self, lon, lat):
        lon, lat = np.broadcast_arrays(np.asarray(lon, dtype=float), np.asarray(lat, dtype=float))
        shape = lon.shape
        lon, lat = lon.ravel(), lat.ravel()
        ny, nx = self.values.shape
        col = np.floor((lon - self.lon0) / self.cell).astype(int)
        row = np.floor((lat - self.lat0) / self.cell).astype(int)
        ok = (col >= 0) & (col < nx) & (row >= 0) & (row < ny)
        out = np.zeros(lon.shape)
        out[ok] = self.values[row[ok], col[ok]]
        return out.reshape(shape)

    def cut_bbox(self, alpha):
        rows, cols = np.nonzero(self.values >= alpha)
        if rows.size == 0:
            return None
        return (
            self.lon0 + cols.min() * self.cell,
            self.lat0 + rows.min() * self.cell,
            self.lon0 + (cols.max() + 1) * self.cell,
            self.lat0 + (rows.max() + 1) * self.cell,
        )

    @property
    def bounded(self):
        return True


def grid_for_bbox(bbox, cell_deg=0.01, max_cells=512):
    """Cell-aligned grid covering ``bbox``; the cell edge grows by integer
    multiples of ``cell_deg`` until both axes fit within ``max_cells``."""
    x0, y0, x1, y1 = bbox
    k = 1
    while True:
        cell = cell_deg * k
        lon0 = math.floor(x0 / cell) * cell
        lat0 = math.floor(y0 / cell) * cell
        nx = int(math.floor((x1 - lon0) / cell)) + 1
        ny = int(math.floor((y1 - lat0) / cell)) + 1
        if nx <= max_cells and ny <= max_cells:
            return lon0, lat0, cell, nx, ny
        k = max(k + 1, int(math.ceil(k * max(nx, ny) / max_cells)))


def rasterize(surface, grid):
    lon0, lat0, cell, nx, ny = grid
    blank = GriddedSurface(lon0, lat0, cell, np.zeros((ny, nx)))
    lons, lats = blank.centers()
    blank.values = np.asarray(surface.possibility(lons, lats), dtype=float)
    return blank


def fusion_extent(surfaces, clip_alpha=0.05):
    """Union of the ``clip_alpha`` cut boxes of the bounded inputs (world if none is bounded)."""
    boxes = [alpha_cut_bbox(s, clip_alpha) for s in surfaces if s.bounded]
    boxes = [b for b in boxes if b is not None]
    return bbox_union(boxes) if boxes else WORLD


def fuse(surfaces, mode=FusionMode.WEIGHTED_AVERAGE, weights=None, grid_cfg=None, bbox=None):
    """Combine surfaces cell by cell on a shared grid."""
    surfaces = list(surfaces)
    if not surfaces:
        raise ValueError("fuse needs at least one surface")
    mode = FusionMode.parse(mode)
    grid_cfg = grid_cfg or {}
    cell_deg = float(grid_cfg.get("cell_deg", 0.01))
    max_cells = int(grid_cfg.get("max_cells", 512))
    if bbox is None:
        bbox = fusion_extent(surfaces, float(grid_cfg.get("clip_alpha", 0.05)))
    grid = grid_for_bbox(bbox, cell_deg, max_cells)
    layers = np.stack([rasterize(s, grid).values for s in surfaces])
    if mode is FusionMode.MIN:
        values = layers.min(axis=0)
    elif mode is FusionMode.MAX:
        values = layers.max(axis=0)
    else:
        w = np.ones(len(surfaces)) if weights is None else np.asarray(weights, dtype=float)
        if w.shape != (len(surfaces),):
            raise ValueError("need exactly one weight per surface")
        if np.any(w < 0) or not np.isfinite(w).all():
            raise ValueError("weights must be finite and non-negative")
        if w.sum() <= 0:
            raise ValueError("weights must not sum to zero")
        values = np.tensordot(w, layers, axes=1) / w.sum()
    lon0, lat0, cell, _, _ = grid
    return GriddedSurface(lon0, lat0, cell, np.clip(values, 0.0, 1.0))


def cell_union(grid, mask):
    """Union of the masked cells as a shapely geometry (row runs merged first)."""
    xs, ys = grid.lon_edges, grid.lat_edges
    boxes = []
    for r in range(mask.shape[0]):
        row = mask[r]
        if not row.any():
            continue
        padded = np.concatenate(([False], row, [False]))
        diff = np.diff(padded.astype(np.int8))
        for start, stop in zip(np.nonzero(diff == 1)[0], np.nonzero(diff == -1)[0]):
            boxes.append(shapely.box(xs[start], ys[r], xs[stop], ys[r + 1]))
    if not boxes:
        return Polygon()
    return shapely.union_all(boxes).simplify(0)


@dataclass
class Defuzzified:
    point: tuple
    footprint: list
    holes: list
    max_possibility: float


def _polygon_rings(poly):
    poly = orient(poly, sign=1.0)
    outer = [(float(x), float(y)) for x, y in poly.exterior.coords]
    holes = [[(float(x), float(y)) for x, y in ring.coords] for ring in poly.interiors]
    return outer, holes


def defuzzify(grid, alpha=0.5):
    """Most possible point and the ``alpha``-cut footprint of a gridded surface.

    The point is the centroid of the cells attaining the maximum. The
    footprint is the cell union of the alpha-cut (or of the maximal cells if
    the cut is empty); when that union splits into several pieces the one
    holding the most maximal cells is kept.
    """
    values = grid.values
    top = float(values.max()) if values.size else 0.0
    if top <= 0.0:
        raise NoLocationError("possibility is zero everywhere")
    at_max = values >= top - 1e-12
    lons, lats = grid.centers()
    point = (float(lons[at_max].mean()), float(lats[at_max].mean()))
    mask = values >= alpha
    if not mask.any():
        mask = at_max
    shape = cell_union(grid, mask)
    if isinstance(shape, MultiPolygon):
        peaks = shapely.points(lons[at_max], lats[at_max])

        def rank(part):
            return (-int(shapely.contains(part, peaks).sum()), -part.area, part.bounds)

        shape = min(shape.geoms, key=rank)
    outer, holes = _polygon_rings(shape)
    return Defuzzified(point, outer, holes, top)


def certainty_report(grid, most=0.8, least=0.3):
    """Summary of the most-certain (pi >= most) and least-certain (0 < pi < least) cells."""
    total = grid.values.size

    def region(mask, rule):
        rows, cols = np.nonzero(mask)
        out = {"rule": rule, "cells": int(rows.size), "fraction": float(rows.size / total) if total else 0.0}
        if rows.size:
            out["bbox"] = [
                float(grid.lon0 + cols.min() * grid.cell),
                float(grid.lat0 + rows.min() * grid.cell),
                float(grid.lon0 + (cols.max() + 1) * grid.cell),
                float(grid.lat0 + (rows.max() + 1) * grid.cell),
            ]
        else:
            out["bbox"] = None
        return out

    v = grid.values
    return {
        "most_certain": region(v >= most, f"pi >= {most}"),
        "least_certain": region((v > 0) & (v < least), f"0 < pi < {least}"),
        "cell_deg": grid.cell,
        "max_possibility": float(v.max()) if v.size else 0.0,
    }
