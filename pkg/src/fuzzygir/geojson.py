"""GeoJSON export of resolved event locations.

Output is a single RFC 7946 FeatureCollection. Every feature carries a
``kind`` property: ``resolved_point``, ``footprint``, ``mention`` and, when
the raster is requested, one ``pi_cell`` polygon per non-zero grid cell.
"""
import json

import jsonschema
import numpy as np

PRECISION = 6

_POSITION = {
    "type": "array",
    "minItems": 2,
    "maxItems": 3,
    "prefixItems": [
        {"type": "number", "minimum": -180, "maximum": 180},
        {"type": "number", "minimum": -90, "maximum": 90},
    ],
    "items": {"type": "number"},
}

_RING = {"type": "array", "minItems": 4, "items": _POSITION}

GEOJSON_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["type", "features"],
    "properties": {
        "type": {"const": "FeatureCollection"},
        "bbox": {"type": "array", "minItems": 4, "items": {"type": "number"}},
        "features": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["type", "geometry", "properties"],
                "properties": {
                    "type": {"const": "Feature"},
                    "properties": {
                        "type": ["object", "null"],
                        "properties": {
                            "pi": {"type": "number", "minimum": 0, "maximum": 1},
                            "score": {"type": "number", "minimum": 0, "maximum": 1},
                        },
                    },
                    "geometry": {
                        "oneOf": [
                            {
                                "type": "object",
                                "required": ["type", "coordinates"],
                                "properties": {"type": {"const": "Point"}, "coordinates": _POSITION},
                            },
                            {
                                "type": "object",
                                "required": ["type", "coordinates"],
                                "properties": {
                                    "type": {"const": "Polygon"},
                                    "coordinates": {"type": "array", "items": _RING},
                                },
                            },
                        ]
                    },
                },
            },
        },
    },
}


def _pos(lon, lat):
    return [round(float(lon), PRECISION), round(float(lat), PRECISION)]


def _ring(coords):
    ring = [_pos(x, y) for x, y in coords]
    if ring and ring[0] != ring[-1]:
        ring.append(list(ring[0]))
    return ring


def _feature(geometry, **props):
    return {"type": "Feature", "geometry": geometry, "properties": props}


def raster_features(grid):
    """One polygon per cell with non-zero possibility, south-west cell first."""
    out = []
    rows, cols = np.nonzero(grid.values > 0)
    for r, c in zip(rows, cols):
        x0 = grid.lon0 + c * grid.cell
        y0 = grid.lat0 + r * grid.cell
        x1, y1 = x0 + grid.cell, y0 + grid.cell
        ring = _ring([(x0, y0), (x1, y0), (x1, y1), (x0, y1)])
        out.append(_feature({"type": "Polygon", "coordinates": [ring]},
                            kind="pi_cell", pi=round(float(grid.values[r, c]), PRECISION)))
    return out


def geojson_dict(location, query=None, raster=False):
    """FeatureCollection dict for an :class:`~fuzzygir.retrieval.EventLocation`."""
    features = [
        _feature({"type": "Point", "coordinates": _pos(*location.point)},
                 kind="resolved_point", query=query,
                 max_possibility=round(float(location.certainty["max_possibility"]), PRECISION)),
        _feature({"type": "Polygon", "coordinates": [_ring(location.footprint)] + [_ring(h) for h in location.holes]},
                 kind="footprint", query=query),
    ]
    for mark in location.evidence:
        features.append(_feature({"type": "Point", "coordinates": _pos(*mark["point"])},
                                 kind="mention", doc_id=mark["doc_id"], key=mark["key"],
                                 score=round(min(1.0, max(0.0, mark["score"])), PRECISION)))
    if raster:
        features.extend(raster_features(location.surface))
    return {"type": "FeatureCollection", "features": features}


def validate_geojson(obj):
    """Raise :class:`jsonschema.ValidationError` unless ``obj`` is a valid report."""
    if isinstance(obj, (str, bytes)):
        obj = json.loads(obj)
    jsonschema.validate(obj, GEOJSON_SCHEMA)
    for feature in obj["features"]:
        geom = feature["geometry"]
        if geom["type"] == "Polygon":
            for ring in geom["coordinates"]:
                if ring[0] != ring[-1]:
                    raise jsonschema.ValidationError("polygon ring is not closed")
    return obj


def emit_geojson(location, path=None, query=None, raster=False):
    """Serialise ``location`` deterministically; writes to ``path`` when given."""
    obj = geojson_dict(location, query, raster)
    validate_geojson(obj)
    text = json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=False) + "\n"
    if path is not None:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    return text
