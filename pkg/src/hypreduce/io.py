"""Polygon JSON: ``{"model": "poincare", "vertices": [[x, y], ...]}``.

An optional ``"width"`` entry carries the minimal width of an ordinary reduced
polygon.  The reader accepts either orientation and re-orients.
"""

from __future__ import annotations

import json

from .polygon import ConvexPolygon


class PolygonFormatError(ValueError):
    """Malformed polygon document (a usage error, not a geometric one)."""


def polygon_to_dict(poly: ConvexPolygon, width: float | None = None, **extra) -> dict:
    doc = {"model": "poincare", "vertices": [[float(x), float(y)] for x, y in poly.poincare_coords()]}
    if width is not None:
        doc["width"] = float(width)
    doc.update(extra)
    return doc


def polygon_to_json(poly: ConvexPolygon, width: float | None = None, **extra) -> str:
    # repr-based float output round-trips exactly
    return json.dumps(polygon_to_dict(poly, width, **extra), indent=2)


def polygon_from_dict(doc: dict) -> tuple[ConvexPolygon, float | None]:
    if not isinstance(doc, dict):
        raise PolygonFormatError("polygon document must be a JSON object")
    model = doc.get("model", "poincare")
    if model != "poincare":
        raise PolygonFormatError(f"unsupported model {model!r} (expected 'poincare')")
    verts = doc.get("vertices")
    if not isinstance(verts, list) or not all(
            isinstance(v, (list, tuple)) and len(v) == 2 for v in verts):
        raise PolygonFormatError("'vertices' must be a list of [x, y] pairs")
    try:
        coords = [[float(x), float(y)] for x, y in verts]
    except (TypeError, ValueError) as exc:
        raise PolygonFormatError(f"non-numeric vertex coordinate: {exc}") from exc
    for x, y in coords:
        if not x * x + y * y < 1.0:
            raise PolygonFormatError(f"vertex ({x}, {y}) is not inside the unit disk")
    width = doc.get("width")
    return ConvexPolygon.from_poincare(coords), None if width is None else float(width)


def polygon_from_json(text: str) -> tuple[ConvexPolygon, float | None]:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise PolygonFormatError(f"invalid JSON: {exc}") from exc
    return polygon_from_dict(doc)
