"""Ordinary reduced polygons: validation, regular construction and butterflies.

Vertices are indexed ``0..n-1`` with ``k = (n - 1) // 2``.  The side opposite
``v_i`` is ``[v_{i+k}, v_{i+k+1}]`` and ``t_i`` is the foot of the
perpendicular from ``v_i`` onto its line.  Butterfly ``i`` is formed by the
chords ``[v_i, t_i]`` and ``[v_j, t_j]`` with ``j = i + k + 1``, which cross in
``p_i``; it is the union of the triangles ``[v_i, p_i, t_j]`` and
``[v_j, p_i, t_i]``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import (
    HPoint,
    angle_at,
    dist,
    foot_of_perpendicular,
    geodesic_intersection,
    geodesic_through,
    minkowski,
    minkowski_cross,
)
from .errors import (
    AngleOrderViolation,
    AngleSumExceeded,
    BracketFailure,
    CrossingNotFound,
    EvenVertexCount,
    FootNotInterior,
    IdentityMismatch,
    NonPositiveWidth,
    WidthMismatch,
)
from .formulas import g_w, gamma_of_width, p_w
from .numerics import bisect_increasing
from .polygon import ConvexPolygon, min_width

FOOT_MARGIN = 1e-8
IDENTITY_TOL = 1e-8


@dataclass(frozen=True, eq=False)
class Butterfly:
    index: int
    apex: HPoint           # v_i
    opposite_apex: HPoint  # v_{i+k+1}
    foot: HPoint           # t_i, on the side opposite v_i
    opposite_foot: HPoint  # t_{i+k+1}, on the side [v_i, v_{i+1}]
    crossing: HPoint       # p_i
    phi: float
    alpha: float
    beta: float
    b: float               # d(p_i, t_i)
    c: float               # d(p_i, v_{i+k+1})

    @property
    def triangles(self) -> tuple[tuple[HPoint, HPoint, HPoint], tuple[HPoint, HPoint, HPoint]]:
        return ((self.apex, self.crossing, self.opposite_foot),
                (self.opposite_apex, self.crossing, self.foot))

    def side_triples(self) -> tuple[tuple[float, float, float], tuple[float, float, float]]:
        """Corresponding side lengths (apex-crossing, crossing-foot, apex-foot) of both triangles."""
        v, p, t2 = self.triangles[0]
        u, _, t1 = self.triangles[1]
        return ((dist(v, p), dist(p, t2), dist(v, t2)),
                (dist(u, p), dist(p, t1), dist(u, t1)))

    def congruence_residual(self) -> float:
        first, second = self.side_triples()
        return max(abs(a - b) for a, b in zip(first, second))

    def contains_many(self, xs: np.ndarray, tol: float = 1e-10) -> np.ndarray:
        return _triangle_contains(self.triangles[0], xs, tol) | _triangle_contains(self.triangles[1], xs, tol)


def _triangle_contains(tri, xs: np.ndarray, tol: float) -> np.ndarray:
    a, b, c = (p.x for p in tri)
    normals = [minkowski_cross(a, b), minkowski_cross(b, c), minkowski_cross(c, a)]
    orient = math.copysign(1.0, float(minkowski(c, normals[0])))
    ok = np.ones(len(xs), dtype=bool)
    for nrm in normals:
        nrm = orient * nrm / math.sqrt(-float(minkowski(nrm, nrm)))
        ok &= np.arcsinh(xs @ (nrm * np.array([1.0, -1.0, -1.0]))) >= -tol
    return ok


@dataclass(frozen=True, eq=False)
class OrdinaryReducedPolygon:
    polygon: ConvexPolygon
    w: float
    feet: tuple[HPoint, ...]
    butterflies: tuple[Butterfly, ...]
    gamma: float
    width_residuals: tuple[float, ...]

    @property
    def n(self) -> int:
        return self.polygon.n

    @property
    def vertices(self) -> tuple[HPoint, ...]:
        return self.polygon.vertices

    @property
    def phi(self) -> np.ndarray:
        return np.array([b.phi for b in self.butterflies])

    @property
    def alpha(self) -> np.ndarray:
        return np.array([b.alpha for b in self.butterflies])

    @property
    def beta(self) -> np.ndarray:
        return np.array([b.beta for b in self.butterflies])

    @property
    def phi_sum(self) -> float:
        return float(np.sum(self.phi))

    def perimeter_formula(self) -> float:
        return 2.0 * sum(p_w(self.w, b.phi) for b in self.butterflies)

    def chord_split(self, i: int) -> tuple[float, float]:
        """Boundary lengths on either side of the chord ``[v_i, t_i]``."""
        n, k = self.n, (self.n - 1) // 2
        v = self.vertices
        t = self.feet[i]
        first = sum(dist(v[(i + s) % n], v[(i + s + 1) % n]) for s in range(k)) + dist(v[(i + k) % n], t)
        second = dist(t, v[(i + k + 1) % n]) + sum(
            dist(v[(i + s) % n], v[(i + s + 1) % n]) for s in range(k + 1, n))
        return first, second


def _feet(poly: ConvexPolygon, foot_margin: float):
    n, k = poly.n, (poly.n - 1) // 2
    v = poly.vertices
    feet = []
    for i in range(n):
        a, b = v[(i + k) % n], v[(i + k + 1) % n]
        foot, _ = foot_of_perpendicular(v[i], poly.edges[(i + k) % n])
        side, s1, s2 = dist(a, b), dist(a, foot), dist(foot, b)
        # signed position of the foot inside the side
        margin = min(s1, s2) if s1 + s2 <= side + 1e-9 else -min(s1, s2)
        if margin < foot_margin:
            raise FootNotInterior(i, margin)
        feet.append(foot)
    return feet


def _butterfly(poly: ConvexPolygon, feet, i: int) -> Butterfly:
    n, k = poly.n, (poly.n - 1) // 2
    j = (i + k + 1) % n
    v = poly.vertices
    chord_i = geodesic_through(v[i], feet[i])
    chord_j = geodesic_through(v[j], feet[j])
    p = geodesic_intersection(chord_i, chord_j)
    if p is None:
        raise CrossingNotFound(i)
    for apex, foot in ((v[i], feet[i]), (v[j], feet[j])):
        if abs(dist(apex, p) + dist(p, foot) - dist(apex, foot)) > 1e-9:
            raise CrossingNotFound(i)
    return Butterfly(
        index=i,
        apex=v[i],
        opposite_apex=v[j],
        foot=feet[i],
        opposite_foot=feet[j],
        crossing=p,
        phi=angle_at(p, v[i], feet[j]),
        alpha=angle_at(v[j], feet[i], p),
        beta=angle_at(v[i], v[j], p),
        b=dist(p, feet[i]),
        c=dist(p, v[j]),
    )


def _identity_residuals(bf: Butterfly, w: float, v_i: HPoint) -> dict[str, float]:
    g = g_w(w, bf.phi)
    t = math.tanh(w)
    return {
        "congruence": bf.congruence_residual(),
        "vertical angles": abs(bf.phi - angle_at(bf.crossing, bf.foot, bf.opposite_apex)),
        "isosceles beta": abs(bf.beta - angle_at(bf.opposite_apex, bf.crossing, v_i)),
        "cosh w = cos(alpha+beta)/sin(beta)":
            abs(math.cosh(w) - math.cos(bf.alpha + bf.beta) / math.sin(bf.beta)) / math.cosh(w),
        "tanh c": abs(math.tanh(bf.c) - (t - g) / (1.0 - g * t)),
    }


def validate(poly: ConvexPolygon, w: float, tol: float = 1e-9,
             foot_margin: float = FOOT_MARGIN, identity_tol: float = IDENTITY_TOL) -> OrdinaryReducedPolygon:
    """Check that ``poly`` is an ordinary reduced polygon of minimal width ``w``.

    Raises the first violated condition (with index and margin).
    """
    if not w > 0:
        raise NonPositiveWidth(f"width must be positive, got {w}")
    n = poly.n
    if n % 2 == 0:
        raise EvenVertexCount(n)
    n_half = (n - 1) // 2
    # signed heights first: a width failure is reported before foot placement
    heights = [poly.edges[(i + n_half) % n].signed_distance(poly.vertices[i]) for i in range(n)]
    residuals = [h - w for h in heights]
    for i, r in enumerate(residuals):
        if abs(r) > tol:
            raise WidthMismatch(i, r)
    feet = _feet(poly, foot_margin)
    bfs = tuple(_butterfly(poly, feet, i) for i in range(n))
    for bf in bfs:
        for name, res in _identity_residuals(bf, w, poly.vertices[bf.index]).items():
            if res > identity_tol:
                raise IdentityMismatch(bf.index, name, res)
    phi_sum = sum(bf.phi for bf in bfs)
    if phi_sum > math.pi + tol:
        raise AngleSumExceeded(math.pi - phi_sum)
    gamma = gamma_of_width(w)
    for bf in bfs:
        margin = min(gamma - bf.beta, bf.alpha - gamma)
        if margin < -tol:
            raise AngleOrderViolation(bf.index, margin)
    mw = min_width(poly)
    if abs(mw - w) > 10.0 * tol:
        raise WidthMismatch(None, mw - w)
    return OrdinaryReducedPolygon(poly, w, tuple(feet), bfs, gamma, tuple(residuals))


def butterflies(orp: OrdinaryReducedPolygon) -> tuple[Butterfly, ...]:
    return orp.butterflies


def butterfly_cover_misses(orp: OrdinaryReducedPolygon, xs: np.ndarray, tol: float = 1e-10) -> int:
    """Number of sample points (hyperboloid rows) covered by no butterfly."""
    covered = np.zeros(len(xs), dtype=bool)
    for bf in orp.butterflies:
        covered |= bf.contains_many(xs, tol)
    return int(np.count_nonzero(~covered))


# -- regular polygons ------------------------------------------------------------


def regular_polygon_vertices(n: int, circumradius: float, azimuth: float = 0.0) -> tuple[HPoint, ...]:
    return tuple(HPoint.from_polar(circumradius, azimuth + 2.0 * math.pi * j / n) for j in range(n))


def _regular_height(n: int, rho: float) -> float:
    if rho <= 0.0:
        return 0.0
    k = (n - 1) // 2
    v = regular_polygon_vertices(n, rho)
    line = geodesic_through(v[k], v[k + 1])
    return line.signed_distance(v[0])


def regular_circumradius(n: int, w: float) -> float:
    """Circumradius of the regular n-gon (n odd) whose vertex-to-opposite-side distance is ``w``."""
    if not w > 0:
        raise NonPositiveWidth(f"width must be positive, got {w}")
    hi = 10.0 * w
    for _ in range(2):
        try:
            return bisect_increasing(lambda rho: _regular_height(n, rho) - w, 0.0, hi)
        except BracketFailure:
            hi *= 10.0
    raise BracketFailure(f"no circumradius bracket for n={n}, w={w}")


def regular_ngon(n: int, w: float, azimuth: float = 0.0) -> OrdinaryReducedPolygon:
    if n % 2 == 0 or n < 3:
        raise EvenVertexCount(n)
    rho = regular_circumradius(n, w)
    return validate(ConvexPolygon(regular_polygon_vertices(n, rho, azimuth)), w)
