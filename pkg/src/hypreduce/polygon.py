"""Convex polygons in H^2.

Besides the basic metric quantities this module computes the minimal width in
the supporting-line sense: the width of a polygon with respect to a supporting
line is the distance to a most distant supporting line, and the minimal width
is the least such value.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import NamedTuple, Sequence

import numpy as np

from .core import (
    CollinearError,
    Geodesic,
    HCircle,
    HPoint,
    _boost_to_origin,
    angle_at,
    circumcenter,
    dist,
    geodesic_through,
    hyperboloid_to_klein,
    interpolate,
    minkowski,
    minkowski_cross,
)
from .errors import DegenerateInput, NotConvex

CONVEXITY_TOL = 1e-10
_J = np.array([1.0, -1.0, -1.0])


@dataclass(frozen=True, eq=False)
class ConvexPolygon:
    """Positively oriented convex polygon with strictly extreme vertices."""

    vertices: tuple[HPoint, ...]
    tol: float = CONVEXITY_TOL

    def __post_init__(self):
        verts = tuple(self.vertices)
        object.__setattr__(self, "vertices", verts)
        n = len(verts)
        if n < 3:
            raise DegenerateInput("a polygon needs at least 3 vertices")
        for i in range(n):
            if dist(verts[i], verts[(i + 1) % n]) <= 1e-9:
                raise DegenerateInput(f"vertices {i} and {(i + 1) % n} coincide")
        sides = minkowski(self.coords[None, :, :], self.edge_normals[:, None, :])
        for i in range(n):
            worst = int(np.argmin(sides[i]))
            if sides[i, worst] < -self.tol:
                raise NotConvex(worst, float(sides[i, worst]))
        for i in range(n):
            chord = minkowski_cross(verts[i - 1].x, verts[(i + 1) % n].x)
            if float(minkowski(verts[i].x, chord)) >= -1e-14 * float(np.abs(chord).max()):
                raise DegenerateInput(f"vertex {i} is not an extreme point")

    @classmethod
    def from_cyclic(cls, points: Sequence[HPoint], tol: float = CONVEXITY_TOL) -> "ConvexPolygon":
        """Build from a cyclic vertex sequence in either orientation."""
        pts = list(points)
        k = hyperboloid_to_klein(np.array([p.x for p in pts]))
        signed_area = 0.5 * float(np.sum(k[:, 0] * np.roll(k[:, 1], -1) - np.roll(k[:, 0], -1) * k[:, 1]))
        if signed_area < 0:
            pts.reverse()
        return cls(tuple(pts), tol)

    @classmethod
    def from_poincare(cls, coords, tol: float = CONVEXITY_TOL) -> "ConvexPolygon":
        return cls.from_cyclic([HPoint.from_poincare(c) for c in np.asarray(coords, float)], tol)

    @property
    def n(self) -> int:
        return len(self.vertices)

    @cached_property
    def coords(self) -> np.ndarray:
        """Hyperboloid coordinates, one row per vertex."""
        return np.array([v.x for v in self.vertices])

    @cached_property
    def edges(self) -> tuple[Geodesic, ...]:
        n = self.n
        return tuple(geodesic_through(self.vertices[i], self.vertices[(i + 1) % n]) for i in range(n))

    @cached_property
    def edge_normals(self) -> np.ndarray:
        return np.array([e.normal for e in self.edges])

    @cached_property
    def _cones(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        # Per vertex: boost to the origin, direction of the incoming edge and
        # the exterior angle; the supporting lines at the vertex are the lines
        # with direction in [theta_in, theta_in + exterior].
        n = self.n
        boosts = np.array([_boost_to_origin(v.x) for v in self.vertices])
        theta_in = np.empty(n)
        exterior = np.empty(n)
        for i in range(n):
            prev = boosts[i] @ self.vertices[i - 1].x
            nxt = boosts[i] @ self.vertices[(i + 1) % n].x
            t_in = math.atan2(prev[2], prev[1]) + math.pi
            t_out = math.atan2(nxt[2], nxt[1])
            theta_in[i] = t_in
            exterior[i] = (t_out - t_in) % (2.0 * math.pi)
        return boosts, theta_in, exterior

    def interior_angles(self) -> np.ndarray:
        n = self.n
        v = self.vertices
        return np.array([angle_at(v[i], v[i - 1], v[(i + 1) % n]) for i in range(n)])

    def edge_lengths(self) -> np.ndarray:
        n = self.n
        return np.array([dist(self.vertices[i], self.vertices[(i + 1) % n]) for i in range(n)])

    def boundary_point(self, edge: int, s: float) -> HPoint:
        """Point at fraction ``s`` along edge ``edge``."""
        return interpolate(self.vertices[edge % self.n], self.vertices[(edge + 1) % self.n], s)

    def apply(self, iso) -> "ConvexPolygon":
        return ConvexPolygon(tuple(iso @ v for v in self.vertices), self.tol)

    def poincare_coords(self) -> np.ndarray:
        return np.array([v.poincare for v in self.vertices])


class Containment(NamedTuple):
    inside: bool
    margin: float


def convex_hull(points: Sequence[HPoint], tol: float = 1e-9) -> ConvexPolygon:
    """Convex hull computed as a Euclidean hull in the Klein chart."""
    pts = list(points)
    if len(pts) < 3:
        raise DegenerateInput("convex hull needs at least 3 points")
    k = hyperboloid_to_klein(np.array([p.x for p in pts]))
    order = sorted(range(len(pts)), key=lambda i: (k[i, 0], k[i, 1]))

    def cross(o, a, b):
        return (k[a, 0] - k[o, 0]) * (k[b, 1] - k[o, 1]) - (k[a, 1] - k[o, 1]) * (k[b, 0] - k[o, 0])

    lower: list[int] = []
    for i in order:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], i) <= 0:
            lower.pop()
        lower.append(i)
    upper: list[int] = []
    for i in reversed(order):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], i) <= 0:
            upper.pop()
        upper.append(i)
    hull = lower[:-1] + upper[:-1]
    if len(hull) < 3:
        raise DegenerateInput("all points lie on one geodesic")
    # reject hulls whose points are all within tol of one geodesic
    far = max(((i, j) for i in hull for j in hull if i < j), key=lambda ij: dist(pts[ij[0]], pts[ij[1]]))
    axis = geodesic_through(pts[far[0]], pts[far[1]])
    if max(abs(axis.signed_distance(pts[i])) for i in hull) <= tol:
        raise DegenerateInput("all points lie within tolerance of one geodesic")
    return ConvexPolygon(tuple(pts[i] for i in hull))


def contains(poly: ConvexPolygon, x: HPoint, tol: float = 1e-10) -> Containment:
    """Whether ``x`` lies in the polygon; margin is the least signed distance to an edge line."""
    margin = float(np.min(np.arcsinh(minkowski(poly.edge_normals, x.x))))
    return Containment(margin >= -tol, margin)


def contains_many(poly: ConvexPolygon, xs: np.ndarray, tol: float = 1e-10) -> np.ndarray:
    """Vectorized containment for an (m, 3) array of hyperboloid points."""
    sides = np.arcsinh(xs @ (poly.edge_normals * np.array([1.0, -1.0, -1.0])).T)
    return np.min(sides, axis=1) >= -tol


def perimeter_direct(poly: ConvexPolygon) -> float:
    return float(np.sum(poly.edge_lengths()))


def area(poly: ConvexPolygon) -> float:
    """Area by the Gauss-Bonnet angle defect."""
    return (poly.n - 2) * math.pi - float(np.sum(poly.interior_angles()))


def diameter(poly: ConvexPolygon) -> tuple[float, tuple[int, int]]:
    n = poly.n
    best, pair = -1.0, (0, 1)
    for i in range(n):
        for j in range(i + 1, n):
            d = dist(poly.vertices[i], poly.vertices[j])
            if d > best:
                best, pair = d, (i, j)
    return best, pair


def _width_cosh(poly: ConvexPolygon, normals: np.ndarray) -> np.ndarray:
    """``cosh`` of the width for each row of ``normals`` (k, 3).

    Every supporting line passes through a vertex with its direction inside
    that vertex's cone.  Along the cone, ``<n(theta), m>`` is a sinusoid whose
    absolute value peaks at the direction perpendicular to the common
    perpendicular, so the maximum over a cone is either that peak
    (``cosh`` of the vertex distance) or a cone endpoint (an edge line).
    """
    boosts, theta_in, exterior = poly._cones
    mp = np.einsum("vij,kj->vki", boosts, normals)
    # <n(theta), m'> = m'_2 cos(theta) - m'_1 sin(theta) for the line through the origin
    m1, m2 = mp[..., 1], mp[..., 2]
    t_in = theta_in[:, None]
    t_end = (theta_in + exterior)[:, None]
    amp = np.hypot(m1, m2)
    delta = np.mod(np.arctan2(-m1, m2) - t_in, math.pi)
    at_start = np.abs(m2 * np.cos(t_in) - m1 * np.sin(t_in))
    at_end = np.abs(m2 * np.cos(t_end) - m1 * np.sin(t_end))
    best = np.where(delta <= exterior[:, None], amp, np.maximum(at_start, at_end))
    return best.max(axis=0)


def width_wrt_line(poly: ConvexPolygon, line: Geodesic | np.ndarray) -> float:
    """Distance from a supporting line to a most distant supporting line."""
    m = line.normal if isinstance(line, Geodesic) else np.asarray(line, float)
    c = float(_width_cosh(poly, m[None, :])[0])
    return math.acosh(c) if c > 1.0 else 0.0


def width_wrt_edge(poly: ConvexPolygon, edge: int) -> float:
    return width_wrt_line(poly, poly.edges[edge % poly.n])


def vertex_heights(poly: ConvexPolygon, edge: int) -> np.ndarray:
    """Signed distances of all vertices to the line of ``edge``."""
    return np.arcsinh(minkowski(poly.coords, poly.edge_normals[edge % poly.n]))


def supporting_normals(poly: ConvexPolygon, vertex: int, theta: np.ndarray) -> np.ndarray:
    """Normals of the supporting lines at ``vertex`` with cone parameter ``theta`` in [0, 1].

    ``theta = 0`` is the incoming edge line and ``theta = 1`` the outgoing one.
    """
    boosts, theta_in, exterior = poly._cones
    t = theta_in[vertex] + exterior[vertex] * np.asarray(theta, float)
    local = np.stack([np.zeros_like(t), -np.sin(t), np.cos(t)], axis=-1)
    inv = _J[:, None] * boosts[vertex].T * _J[None, :]
    return local @ inv.T


class MinWidth(NamedTuple):
    width: float
    vertex: int
    theta: float  # cone parameter in [0, 1]; 0 or 1 means an edge line


def min_width_line(poly: ConvexPolygon, samples: int = 65, xtol: float = 1e-13) -> MinWidth:
    """Minimal width over all supporting lines.

    Each vertex cone is sampled and every sampled local minimum is refined by
    golden-section search.  The minimum need not sit at an edge line: the
    width with respect to a line and with respect to its most distant partner
    differ, so a line touching only a vertex can be the minimizer.
    """
    ts = np.linspace(0.0, 1.0, samples)
    best = MinWidth(math.inf, 0, 0.0)
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    for v in range(poly.n):
        vals = _width_cosh(poly, supporting_normals(poly, v, ts))
        k = int(np.argmin(vals))
        if vals[k] < best.width:
            best = MinWidth(float(vals[k]), v, float(ts[k]))
        interior = [j for j in range(1, samples - 1) if vals[j] <= vals[j - 1] and vals[j] <= vals[j + 1]]
        if not interior:
            continue
        idx = np.array(interior)
        a, b = ts[idx - 1], ts[idx + 1]

        def f(t, v=v):
            return _width_cosh(poly, supporting_normals(poly, v, t))

        c, d = b - invphi * (b - a), a + invphi * (b - a)
        fc, fd = f(c), f(d)
        while float(np.max(b - a)) > xtol:
            left = fc <= fd
            b, a = np.where(left, d, b), np.where(left, a, c)
            c_new, d_new = b - invphi * (b - a), a + invphi * (b - a)
            fc, fd = np.where(left, f(c_new), fd), np.where(left, fc, f(d_new))
            c, d = np.where(left, c_new, d), np.where(left, c, d_new)
        j = int(np.argmin(np.minimum(fc, fd)))
        val, t = (fc[j], c[j]) if fc[j] <= fd[j] else (fd[j], d[j])
        if val < best.width:
            best = MinWidth(float(val), v, float(t))
    w = math.acosh(best.width) if best.width > 1.0 else 0.0
    return MinWidth(w, best.vertex, best.theta)


def min_width(poly: ConvexPolygon) -> float:
    """Minimal width: the least width over all supporting lines."""
    return min_width_line(poly).width


def edge_min_width(poly: ConvexPolygon) -> float:
    """Least width over the edge-supporting lines only (an upper bound for :func:`min_width`)."""
    return float(np.arccosh(np.maximum(_width_cosh(poly, poly.edge_normals), 1.0)).min())


# -- minimal enclosing disk ------------------------------------------------------


@dataclass(frozen=True, eq=False)
class EnclosingDisk:
    center: HPoint
    radius: float
    support: tuple[int, ...]

    @property
    def circle(self) -> HCircle:
        return HCircle(self.center, self.radius)


def _circle_of(points: list[HPoint], idx: tuple[int, ...]) -> tuple[HCircle, tuple[int, ...]]:
    if len(idx) == 1:
        return HCircle(points[idx[0]], 0.0), idx
    if len(idx) == 2:
        return circumcenter([points[i] for i in idx]), idx
    try:
        return circumcenter([points[i] for i in idx]), idx
    except CollinearError:
        pairs = [(idx[0], idx[1]), (idx[0], idx[2]), (idx[1], idx[2])]
        circles = [(circumcenter([points[a], points[b]]), (a, b)) for a, b in pairs]
        covering = [cb for cb in circles if all(cb[0].contains(points[i], 1e-12) for i in idx)]
        pool = covering or circles
        return (min if covering else max)(pool, key=lambda cb: cb[0].radius)


def enclosing_disk_of_points(points: Sequence[HPoint], seed: int = 0,
                             tol: float = 1e-12) -> EnclosingDisk:
    """Smallest disk containing the points (randomized incremental construction)."""
    pts = list(points)
    order = [int(i) for i in np.random.default_rng(seed).permutation(len(pts))]

    def inside(circle: HCircle, i: int) -> bool:
        return dist(circle.center, pts[i]) <= circle.radius + tol

    circle, support = HCircle(pts[order[0]], 0.0), (order[0],)
    for a in range(1, len(order)):
        i = order[a]
        if inside(circle, i):
            continue
        circle, support = HCircle(pts[i], 0.0), (i,)
        for b in range(a):
            j = order[b]
            if inside(circle, j):
                continue
            circle, support = _circle_of(pts, (i, j))
            for c in range(b):
                k = order[c]
                if not inside(circle, k):
                    circle, support = _circle_of(pts, (i, j, k))
    return EnclosingDisk(circle.center, circle.radius, tuple(sorted(support)))


def min_enclosing_disk(poly: ConvexPolygon, seed: int = 0) -> EnclosingDisk:
    return enclosing_disk_of_points(poly.vertices, seed)
