"""Disks of a fixed radius covering a polygon.

``C(P, r)``, the set of centers of radius-``r`` disks containing ``P``, is the
intersection of the radius-``r`` disks around the vertices.  Hyperbolic
circles are Euclidean circles in the Poincaré chart, so the region is an
intersection of Euclidean disks there and its boundary is a cycle of circular
arcs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import HCircle, HPoint, dist, hyperboloid_to_klein, interpolate, klein_to_hyperboloid
from .errors import TheoremViolation
from .numerics import golden_section_min
from .polygon import ConvexPolygon
from .reduced import OrdinaryReducedPolygon


@dataclass(frozen=True, eq=False)
class Arc:
    """Boundary arc of the center set on the circle around vertex ``vertex``.

    In the Poincaré chart the arc runs counter-clockwise on the Euclidean
    circle (``center``, ``radius``) from angle ``theta0`` to ``theta1``.
    """

    vertex: int
    start: HPoint
    end: HPoint
    center: np.ndarray
    radius: float
    theta0: float
    theta1: float

    def points(self, count: int) -> list[HPoint]:
        span = (self.theta1 - self.theta0) % (2.0 * math.pi)
        ts = self.theta0 + span * np.linspace(0.0, 1.0, count)
        return [HPoint.from_poincare(self.center + self.radius * np.array([math.cos(t), math.sin(t)]))
                for t in ts]


@dataclass(frozen=True, eq=False)
class CenterSet:
    """The region ``C(P, r)``; ``arcs`` is empty when the region is empty."""

    radius: float
    vertices: tuple[HPoint, ...]
    arcs: tuple[Arc, ...]

    @property
    def empty(self) -> bool:
        return not self.arcs

    @property
    def boundary_vertices(self) -> tuple[int, ...]:
        """Vertex indices whose disk contributes a boundary arc (the set E*)."""
        return tuple(sorted({a.vertex for a in self.arcs}))

    def max_distance(self, z: HPoint) -> float:
        return max(dist(z, v) for v in self.vertices)

    def contains(self, z: HPoint, tol: float = 1e-9) -> bool:
        return self.max_distance(z) <= self.radius + tol

    def sample(self, count: int, rng: np.random.Generator, per_arc: int = 16) -> list[HPoint]:
        """Points of the region: boundary points and Klein-chart convex combinations of them."""
        if self.empty:
            return []
        boundary = [p for arc in self.arcs for p in arc.points(per_arc)]
        k = hyperboloid_to_klein(np.array([p.x for p in boundary]))
        weights = rng.dirichlet(np.full(len(boundary), 0.3), size=count)
        return [HPoint(x) for x in klein_to_hyperboloid(weights @ k)]


def _circle_intersections(c1, r1, c2, r2) -> list[np.ndarray]:
    d = float(np.hypot(*(c2 - c1)))
    if d == 0.0 or d > r1 + r2 or d < abs(r1 - r2):
        return []
    a = (r1 * r1 - r2 * r2 + d * d) / (2.0 * d)
    h = math.sqrt(max(r1 * r1 - a * a, 0.0))
    e = (c2 - c1) / d
    base = c1 + a * e
    perp = np.array([-e[1], e[0]])
    return [base + h * perp, base - h * perp]


def covering_center_set(poly: ConvexPolygon | OrdinaryReducedPolygon, r: float,
                        tol: float = 1e-10) -> CenterSet:
    if isinstance(poly, OrdinaryReducedPolygon):
        poly = poly.polygon
    verts = poly.vertices
    n = len(verts)
    circles = [HCircle(v, r).poincare_circle() for v in verts]

    corners: list[tuple[np.ndarray, set[int]]] = []
    for i in range(n):
        for j in range(i + 1, n):
            for q in _circle_intersections(circles[i][0], circles[i][1], circles[j][0], circles[j][1]):
                if float(q @ q) >= 1.0:
                    continue
                qp = HPoint.from_poincare(q)
                if max(dist(qp, v) for v in verts) > r + tol:
                    continue
                for c, owners in corners:
                    if np.hypot(*(c - q)) < 1e-9:
                        owners.update((i, j))
                        break
                else:
                    corners.append((q, {i, j}))
    if len(corners) < 2:
        return CenterSet(r, verts, ())

    mean = np.mean([c for c, _ in corners], axis=0)
    corners.sort(key=lambda co: math.atan2(co[0][1] - mean[1], co[0][0] - mean[0]))
    arcs = []
    m = len(corners)
    for a in range(m):
        q0, own0 = corners[a]
        q1, own1 = corners[(a + 1) % m]
        for j in sorted(own0 & own1):
            center, rad = circles[j]
            t0 = math.atan2(q0[1] - center[1], q0[0] - center[0])
            t1 = math.atan2(q1[1] - center[1], q1[0] - center[0])
            mid_t = t0 + ((t1 - t0) % (2.0 * math.pi)) / 2.0
            mid = HPoint.from_poincare(center + rad * np.array([math.cos(mid_t), math.sin(mid_t)]))
            if max(dist(mid, v) for v in verts) <= r + 1e-9:
                arcs.append(Arc(j, HPoint.from_poincare(q0), HPoint.from_poincare(q1), center, rad, t0, t1))
                break
    return CenterSet(r, verts, tuple(arcs))


@dataclass(frozen=True, eq=False)
class BoundaryCover:
    point: HPoint
    max_distance: float
    edge: int
    fraction: float


def boundary_cover_point(poly: ConvexPolygon | OrdinaryReducedPolygon, w: float | None = None,
                         violation_tol: float = 1e-6) -> BoundaryCover:
    """Boundary point minimizing the largest distance to a vertex.

    For an ordinary reduced polygon of width ``w`` that distance never exceeds
    ``w``; a larger value raises :class:`TheoremViolation`.
    """
    if isinstance(poly, OrdinaryReducedPolygon):
        w = poly.w if w is None else w
        poly = poly.polygon
    verts = poly.vertices
    n = len(verts)
    best = None
    for e in range(n):
        a, b = verts[e], verts[(e + 1) % n]

        def spread(s, a=a, b=b):
            z = interpolate(a, b, s)
            return max(dist(z, v) for v in verts)

        s, val = golden_section_min(spread, 0.0, 1.0, xtol=1e-12)
        if best is None or val < best.max_distance:
            best = BoundaryCover(interpolate(a, b, s), val, e, s)
    if w is not None and best.max_distance > w + violation_tol:
        raise TheoremViolation(
            f"no boundary point within {w} of all vertices (best {best.max_distance})")
    return best
