"""Spherical geometry helpers: distances, bearings, footprints and boxes.

Coordinates are always ``(lon, lat)`` in degrees. Boxes are
``(min_lon, min_lat, max_lon, max_lat)`` tuples and never wrap the
antimeridian; they are clipped to the world instead.
"""
import math
from dataclasses import dataclass

import numpy as np

EARTH_RADIUS_KM = 6371.0088
KM_PER_DEG = EARTH_RADIUS_KM * math.pi / 180.0
WORLD = (-180.0, -90.0, 180.0, 90.0)


def haversine_km(lon1, lat1, lon2, lat2):
    """Great-circle distance in km; broadcasts over numpy arrays."""
    lon1, lat1, lon2, lat2 = (np.radians(np.asarray(v, dtype=float)) for v in (lon1, lat1, lon2, lat2))
    h = np.sin((lat2 - lat1) / 2) ** 2 + np.cos(lat1) * np.cos(lat2) * np.sin((lon2 - lon1) / 2) ** 2
    return 2 * EARTH_RADIUS_KM * np.arcsin(np.sqrt(np.clip(h, 0.0, 1.0)))


def bearing_deg(lon1, lat1, lon2, lat2):
    """Initial bearing from point 1 to point 2, degrees clockwise from north in [0, 360)."""
    lon1, lat1, lon2, lat2 = (np.radians(np.asarray(v, dtype=float)) for v in (lon1, lat1, lon2, lat2))
    dlon = lon2 - lon1
    y = np.sin(dlon) * np.cos(lat2)
    x = np.cos(lat1) * np.sin(lat2) - np.sin(lat1) * np.cos(lat2) * np.cos(dlon)
    return np.degrees(np.arctan2(y, x)) % 360.0


def destination(lon, lat, bearing, km):
    """Point reached travelling ``km`` along ``bearing`` from ``(lon, lat)``."""
    phi1, lam1, theta = math.radians(lat), math.radians(lon), math.radians(bearing)
    delta = km / EARTH_RADIUS_KM
    phi2 = math.asin(math.sin(phi1) * math.cos(delta) + math.cos(phi1) * math.sin(delta) * math.cos(theta))
    lam2 = lam1 + math.atan2(
        math.sin(theta) * math.sin(delta) * math.cos(phi1),
        math.cos(delta) - math.sin(phi1) * math.sin(phi2),
    )
    return (math.degrees(lam2) + 540.0) % 360.0 - 180.0, math.degrees(phi2)


def clip_bbox(box):
    return (max(box[0], -180.0), max(box[1], -90.0), min(box[2], 180.0), min(box[3], 90.0))


def bbox_intersects(a, b):
    return a[0] <= b[2] and b[0] <= a[2] and a[1] <= b[3] and b[1] <= a[3]


def bbox_contains(outer, inner):
    return outer[0] <= inner[0] and outer[1] <= inner[1] and outer[2] >= inner[2] and outer[3] >= inner[3]


def bbox_union(boxes):
    boxes = list(boxes)
    return (
        min(b[0] for b in boxes),
        min(b[1] for b in boxes),
        max(b[2] for b in boxes),
        max(b[3] for b in boxes),
    )


def cap_bbox(lon, lat, km):
    """Smallest box holding every point within ``km`` (great-circle) of a point."""
    delta = km / EARTH_RADIUS_KM
    ddeg = math.degrees(delta)
    if delta >= math.pi or abs(lat) + ddeg >= 90.0:
        south = max(lat - ddeg, -90.0)
        north = min(lat + ddeg, 90.0)
        return (-180.0, south, 180.0, north)
    dlon = math.degrees(math.asin(math.sin(delta) / math.cos(math.radians(lat))))
    return clip_bbox((lon - dlon, lat - ddeg, lon + dlon, lat + ddeg))


def _points_in_ring(lon, lat, ring):
    inside = np.zeros(np.shape(lon), dtype=bool)
    xs = ring[:, 0]
    ys = ring[:, 1]
    for i in range(len(ring) - 1):
        x1, y1, x2, y2 = xs[i], ys[i], xs[i + 1], ys[i + 1]
        if y1 == y2:
            continue
        crosses = (y1 > lat) != (y2 > lat)
        x_at = x1 + (lat - y1) * (x2 - x1) / (y2 - y1)
        inside ^= crosses & (lon < x_at)
    return inside


def _planar_distance_to_ring(lon, lat, ring):
    # local equirectangular projection centred on each query point
    coslat = np.cos(np.radians(lat))[..., None]
    ex = (ring[:, 0][None, :] - lon[..., None]) * coslat * KM_PER_DEG
    ey = (ring[:, 1][None, :] - lat[..., None]) * KM_PER_DEG
    ax, ay, bx, by = ex[..., :-1], ey[..., :-1], ex[..., 1:], ey[..., 1:]
    dx, dy = bx - ax, by - ay
    seg2 = dx * dx + dy * dy
    with np.errstate(invalid="ignore", divide="ignore"):
        t = np.where(seg2 > 0, -(ax * dx + ay * dy) / seg2, 0.0)
    t = np.clip(t, 0.0, 1.0)
    px, py = ax + t * dx, ay + t * dy
    return np.sqrt(px * px + py * py).min(axis=-1)


@dataclass(frozen=True)
class Footprint:
    """Spatial extent of a place.

    A footprint is a polygon ring when one is known, otherwise a disc of
    ``radius_km`` around ``(lon, lat)``; a zero radius is a bare point.
    """

    lon: float
    lat: float
    radius_km: float = 0.0
    ring: tuple = None

    @classmethod
    def point(cls, lon, lat):
        return cls(float(lon), float(lat))

    @property
    def is_polygon(self):
        return self.ring is not None

    def _ring_array(self):
        return np.asarray(self.ring, dtype=float)

    def centroid(self):
        return self.lon, self.lat

    def bbox(self):
        if self.is_polygon:
            r = self._ring_array()
            return (float(r[:, 0].min()), float(r[:, 1].min()), float(r[:, 0].max()), float(r[:, 1].max()))
        if self.radius_km == 0:
            return (self.lon, self.lat, self.lon, self.lat)
        return cap_bbox(self.lon, self.lat, self.radius_km)

    def buffered_bbox(self, km):
        """Box containing every point whose :meth:`distance_km` is at most ``km``."""
        if math.isinf(km):
            return WORLD
        if not self.is_polygon:
            return cap_bbox(self.lon, self.lat, self.radius_km + km)
        x0, y0, x1, y1 = self.bbox()
        ddeg = km / KM_PER_DEG
        south, north = y0 - ddeg, y1 + ddeg
        phi = max(abs(south), abs(north))
        if phi >= 90.0:
            return clip_bbox((-180.0, south, 180.0, north))
        dlon = ddeg / math.cos(math.radians(phi))
        return clip_bbox((x0 - dlon, south, x1 + dlon, north))

    def contains_points(self, lon, lat):
        lon = np.asarray(lon, dtype=float)
        lat = np.asarray(lat, dtype=float)
        if self.is_polygon:
            return _points_in_ring(lon, lat, self._ring_array())
        return haversine_km(self.lon, self.lat, lon, lat) <= self.radius_km

    def distance_km(self, lon, lat):
        """Distance from the footprint boundary, zero inside the footprint."""
        lon = np.asarray(lon, dtype=float)
        lat = np.asarray(lat, dtype=float)
        if not self.is_polygon:
            return np.maximum(haversine_km(self.lon, self.lat, lon, lat) - self.radius_km, 0.0)
        flat_lon, flat_lat = np.atleast_1d(lon).ravel(), np.atleast_1d(lat).ravel()
        d = _planar_distance_to_ring(flat_lon, flat_lat, self._ring_array())
        d[_points_in_ring(flat_lon, flat_lat, self._ring_array())] = 0.0
        return d.reshape(np.shape(lon))

    def to_json(self):
        out = {"lon": self.lon, "lat": self.lat, "radius_km": self.radius_km}
        if self.ring is not None:
            out["ring"] = [list(p) for p in self.ring]
        return out
