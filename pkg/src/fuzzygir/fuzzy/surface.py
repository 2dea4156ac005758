"""Possibility distributions over geographic space.

A surface combines a fuzzy set over the distance (km) from an anchor
footprint with an optional fuzzy set over the angular deviation from a
preferred bearing, joined by a t-norm.
"""
import math
from dataclasses import dataclass

import numpy as np

from ..geo import EARTH_RADIUS_KM, WORLD, bearing_deg, haversine_km
from .sets import Trapezoid, apply_hedge, set_from_config

TNORMS = {
    "min": np.minimum,
    "product": np.multiply,
}

BEARINGS = {"N": 0.0, "NE": 45.0, "E": 90.0, "SE": 135.0, "S": 180.0, "SW": 225.0, "W": 270.0, "NW": 315.0}


@dataclass(frozen=True)
class DirectionSet:
    """Angular trapezoid centred on ``bearing``; full inside ``core`` degrees, zero past ``support``."""

    bearing: float
    core: float = 30.0
    support: float = 60.0

    def deviation(self, bearings):
        return np.abs((np.asarray(bearings, dtype=float) - self.bearing + 180.0) % 360.0 - 180.0)

    def __call__(self, bearings):
        return Trapezoid(-self.support, -self.core, self.core, self.support)(self.deviation(bearings))

    def half_width(self, alpha):
        """Largest deviation whose membership is at least ``alpha``."""
        return self.support - alpha * (self.support - self.core)


@dataclass(frozen=True)
class PossibilitySurface:
    anchor: object
    distance_set: object
    direction: DirectionSet = None
    tnorm: str = "min"

    def __post_init__(self):
        if self.tnorm not in TNORMS:
            raise ValueError(f"unknown t-norm {self.tnorm!r}")

    def possibility(self, lon, lat):
        lon = np.asarray(lon, dtype=float)
        lat = np.asarray(lat, dtype=float)
        pi = self.distance_set(self.anchor.distance_km(lon, lat))
        if self.direction is not None:
            mu_dir = self.direction(bearing_deg(self.anchor.lon, self.anchor.lat, lon, lat))
            pi = TNORMS[self.tnorm](pi, mu_dir)
        return np.clip(pi, 0.0, 1.0)

    @property
    def bounded(self):
        return math.isfinite(self.distance_set.upper_bound(1e-12))

    def _reach_km(self, km):
        """Upper bound on the distance from the anchor centroid of points within ``km`` of the footprint."""
        if self.anchor.is_polygon:
            ring = np.asarray(self.anchor.ring, dtype=float)
            far = float(haversine_km(self.anchor.lon, self.anchor.lat, ring[:, 0], ring[:, 1]).max())
            return far * 1.01 + km
        return self.anchor.radius_km + km

    def cut_bbox(self, alpha):
        return alpha_cut_bbox(self, alpha)

    def to_json(self):
        out = {
            "anchor": self.anchor.to_json(),
            "distance_set": self.distance_set.to_config(),
            "tnorm": self.tnorm,
        }
        if self.direction is not None:
            out["direction"] = {"bearing": self.direction.bearing, "core": self.direction.core,
                                "support": self.direction.support}
        return out


def possibility_at(surface, point):
    lon, lat = point
    return float(surface.possibility(lon, lat))


def _stays_on_side(lat0, dev_max, s):
    # latitude after arc s (radians) along an initial heading dev_max away from the pole
    phi = math.radians(lat0)
    return math.cos(phi) * math.sin(s) * math.cos(math.radians(dev_max)) >= math.sin(phi) * (1 - math.cos(s))


def _clip_by_bearing(box, surface, alpha, km):
    direction = surface.direction
    w = direction.half_width(alpha)
    lo, hi = direction.bearing - w, direction.bearing + w
    s = surface._reach_km(km) / EARTH_RADIUS_KM
    if not math.isfinite(s) or s >= math.pi / 2:
        return box
    clon, clat = surface.anchor.lon, surface.anchor.lat
    x0, y0, x1, y1 = box

    def inside(a, b):
        # bearing interval [lo, hi] (mod 360) inside [a, b]
        shift = math.floor((lo - a) / 360.0) * 360.0
        return a <= lo - shift and hi - shift <= b

    if inside(0.0, 180.0):
        x0 = max(x0, clon)
    if inside(180.0, 360.0):
        x1 = min(x1, clon)
    if inside(-90.0, 90.0):
        dev = max(abs((lo + 180.0) % 360.0 - 180.0), abs((hi + 180.0) % 360.0 - 180.0))
        if dev < 90.0 and _stays_on_side(clat, dev, s):
            y0 = max(y0, clat)
    if inside(90.0, 270.0):
        dev = max(abs(lo % 360.0 - 180.0), abs(hi % 360.0 - 180.0))
        if dev < 90.0 and _stays_on_side(-clat, dev, s):
            y1 = min(y1, clat)
    return (x0, y0, x1, y1)


def alpha_cut_bbox(surface, alpha):
    """Axis-aligned box containing every point with possibility >= ``alpha``."""
    if not 0.0 < alpha <= 1.0:
        raise ValueError(f"alpha must lie in (0, 1], got {alpha}")
    if hasattr(surface, "values"):
        return surface.cut_bbox(alpha)
    km = surface.distance_set.upper_bound(alpha)
    if not math.isfinite(km):
        return WORLD
    box = surface.anchor.buffered_bbox(km)
    if surface.direction is not None:
        box = _clip_by_bearing(box, surface, alpha, km)
    return box


def linguistic_surface(relation, anchor, hedge=None, direction=None, fuzzy_cfg=None):
    """Surface for a relation term anchored on a footprint.

    ``relation`` is one of ``At``, ``Near``, ``WithinWalkingDistance``,
    ``Far`` or ``CardinalOf`` (the latter needs ``direction``, e.g. ``"E"``).
    """
    if fuzzy_cfg is None:
        from ..config import Config

        fuzzy_cfg = Config().fuzzy
    tnorm = fuzzy_cfg.get("tnorm", "min")
    if relation == "CardinalOf":
        card = fuzzy_cfg["cardinal"]
        dist = apply_hedge(set_from_config(card["envelope"]), hedge)
        dirset = DirectionSet(BEARINGS[direction], float(card["core_half_width"]), float(card["support_half_width"]))
        return PossibilitySurface(anchor, dist, dirset, card.get("tnorm", "product"))
    try:
        spec = fuzzy_cfg["terms"][relation]
    except KeyError:
        raise ValueError(f"no linguistic term parameters for relation {relation!r}") from None
    return PossibilitySurface(anchor, apply_hedge(set_from_config(spec), hedge), None, tnorm)
