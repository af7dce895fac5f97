"""SVG figures in the Poincaré disk.

Geodesic segments are drawn as exact circular arcs: the supporting circle of
the geodesic with ideal endpoints ``e1, e2`` has center ``(e1 + e2) / (1 + e1.e2)``
and meets the unit circle orthogonally.  Drawing happens inside a group that
flips the y axis, so path coordinates are chart coordinates.
"""

from __future__ import annotations

import math

import numpy as np

from .core import HCircle, HPoint, geodesic_through
from .covering import boundary_cover_point, covering_center_set
from .polygon import ConvexPolygon, min_enclosing_disk
from .reduced import OrdinaryReducedPolygon

OVERLAYS = ("butterflies", "chords", "circumcircle", "cover", "centers")

_HEAD = ('<?xml version="1.0" encoding="UTF-8"?>\n'
         '<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
         'viewBox="-1.05 -1.05 2.1 2.1" width="600" height="600">\n')
_PALETTE = ("#e41a1c", "#377eb8", "#4daf4a", "#984ea3", "#ff7f00", "#a65628", "#f781bf", "#999999")


def _f(x: float) -> str:
    s = f"{x:.9f}".rstrip("0").rstrip(".")
    return "0" if s in ("-0", "") else s


def _xy(p: np.ndarray) -> str:
    return f"{_f(p[0])} {_f(p[1])}"


def geodesic_circle(p: HPoint, q: HPoint) -> tuple[np.ndarray, float] | None:
    """Euclidean circle carrying the geodesic through ``p`` and ``q``; None for a diameter."""
    g = geodesic_through(p, q)
    e1, e2 = g.start, g.end
    dot = float(e1 @ e2)
    if abs(1.0 + dot) < 1e-12:
        return None
    c = (e1 + e2) / (1.0 + dot)
    return c, float(np.hypot(*(e1 - c)))


def _segment(p: HPoint, q: HPoint) -> str:
    """Path command drawing the geodesic segment from p to q (pen already at p)."""
    a, b = p.poincare, q.poincare
    circ = geodesic_circle(p, q)
    if circ is None:
        return f"L {_xy(b)}"
    c, r = circ
    u, v = a - c, b - c
    sweep = 1 if u[0] * v[1] - u[1] * v[0] > 0 else 0
    return f"A {_f(r)} {_f(r)} 0 0 {sweep} {_xy(b)}"


def geodesic_polygon_path(points) -> str:
    pts = list(points)
    parts = [f"M {_xy(pts[0].poincare)}"]
    for i in range(len(pts)):
        parts.append(_segment(pts[i], pts[(i + 1) % len(pts)]))
    parts.append("Z")
    return " ".join(parts)


def _circle(center: np.ndarray, radius: float, cls: str, style: str) -> str:
    return (f'<circle class="{cls}" cx="{_f(center[0])}" cy="{_f(center[1])}" '
            f'r="{_f(radius)}" {style}/>')


def _dot(p: HPoint, cls: str, color: str) -> str:
    return _circle(p.poincare, 0.012, cls, f'fill="{color}"')


def render_svg(poly: ConvexPolygon | OrdinaryReducedPolygon, overlays=(), w: float | None = None) -> str:
    """SVG document of the polygon with optional overlays from ``OVERLAYS``.

    Overlays other than ``circumcircle`` need an ordinary reduced polygon (or
    a width ``w``).
    """
    orp = poly if isinstance(poly, OrdinaryReducedPolygon) else None
    base = orp.polygon if orp is not None else poly
    if orp is not None and w is None:
        w = orp.w
    unknown = set(overlays) - set(OVERLAYS)
    if unknown:
        raise ValueError(f"unknown overlay(s): {', '.join(sorted(unknown))}")

    body = ['<circle class="disk" cx="0" cy="0" r="1" fill="none" stroke="black" stroke-width="0.004"/>',
            f'<path class="polygon" d="{geodesic_polygon_path(base.vertices)}" '
            'fill="#dde6f0" stroke="#1f3b5a" stroke-width="0.006"/>']

    if "butterflies" in overlays and orp is not None:
        for bf in orp.butterflies:
            color = _PALETTE[bf.index % len(_PALETTE)]
            for tri in bf.triangles:
                body.append(f'<path class="butterfly" data-index="{bf.index}" '
                            f'd="{geodesic_polygon_path(tri)}" fill="{color}" fill-opacity="0.25" '
                            'stroke="none"/>')
    if "chords" in overlays and orp is not None:
        for i, (v, t) in enumerate(zip(orp.vertices, orp.feet)):
            body.append(f'<path class="chord" data-index="{i}" d="M {_xy(v.poincare)} {_segment(v, t)}" '
                        'fill="none" stroke="#555555" stroke-width="0.003"/>')
            body.append(_dot(t, "foot", "#555555"))
    if "circumcircle" in overlays:
        disk = min_enclosing_disk(base)
        c, r = disk.circle.poincare_circle()
        body.append(_circle(c, r, "circumcircle", 'fill="none" stroke="#d95f02" stroke-width="0.004"'))
    if "cover" in overlays and w is not None:
        bc = boundary_cover_point(base, w)
        c, r = HCircle(bc.point, w).poincare_circle()
        body.append(_circle(c, r, "cover", 'fill="none" stroke="#1b9e77" stroke-width="0.004" '
                                           'stroke-dasharray="0.02 0.01"'))
        body.append(_dot(bc.point, "cover-center", "#1b9e77"))
    if "centers" in overlays and w is not None:
        region = covering_center_set(base, w)
        if not region.empty:
            arcs = region.arcs
            d = [f"M {_xy(arcs[0].start.poincare)}"]
            for arc in arcs:
                span = (arc.theta1 - arc.theta0) % (2.0 * math.pi)
                d.append(f"A {_f(arc.radius)} {_f(arc.radius)} 0 {1 if span > math.pi else 0} 1 "
                         f"{_xy(arc.end.poincare)}")
            d.append("Z")
            body.append(f'<path class="centers" d="{" ".join(d)}" fill="#7570b3" fill-opacity="0.35" '
                        'stroke="#7570b3" stroke-width="0.003"/>')

    for v in base.vertices:
        body.append(_dot(v, "vertex", "#1f3b5a"))
    return _HEAD + '<g transform="scale(1,-1)">\n' + "\n".join(body) + "\n</g>\n</svg>\n"
