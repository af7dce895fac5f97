"""Model-independent primitives of the hyperbolic plane.

Points live on the upper sheet of the hyperboloid ``x0^2 - x1^2 - x2^2 = 1``;
the Poincaré disk is the input/output chart and the Klein disk is the chart in
which geodesic segments are straight (used for convexity).

A geodesic is stored through its unit spacelike Minkowski normal ``n``
(``<n, n> = -1``).  For the geodesic oriented from ``p`` to ``q`` the normal is
chosen so that ``<x, n> > 0`` exactly for points to the left of the direction
of travel, and ``asinh(<x, n>)`` is then the signed distance of ``x`` to the
line.  With positively oriented polygons the interior is on the positive side
of every edge.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import CollinearError, DegenerateInput, Unrealizable

NORMALIZATION_TOL = 1e-12
VALIDATION_TOL = 1e-9

_J = np.array([1.0, -1.0, -1.0])
_JM = np.diag(_J)


def minkowski(a, b):
    """Minkowski form ``a0 b0 - a1 b1 - a2 b2`` (broadcasts over the last axis)."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    return a[..., 0] * b[..., 0] - a[..., 1] * b[..., 1] - a[..., 2] * b[..., 2]


def minkowski_cross(a, b):
    """Vector Minkowski-orthogonal to both ``a`` and ``b``."""
    return _J * np.cross(a, b)


def acosh_clamped(x: float, tol: float = 1e-9) -> float:
    """``arcosh`` that absorbs round-off just below 1 and rejects real violations."""
    if x < 1.0:
        if x < 1.0 - tol:
            raise DegenerateInput(f"arcosh argument {x!r} is below 1")
        return 0.0
    return math.acosh(x)


def lift_spatial(s) -> np.ndarray:
    """Hyperboloid vector(s) with the given spatial part(s)."""
    s = np.asarray(s, dtype=float)
    x0 = np.sqrt(1.0 + np.sum(s * s, axis=-1))
    return np.concatenate([x0[..., None], s], axis=-1)


def klein_to_hyperboloid(k) -> np.ndarray:
    k = np.asarray(k, dtype=float)
    r2 = np.sum(k * k, axis=-1)
    if np.any(r2 >= 1.0):
        raise DegenerateInput("Klein coordinates must lie inside the unit disk")
    x0 = 1.0 / np.sqrt(1.0 - r2)
    return np.concatenate([x0[..., None], k * x0[..., None]], axis=-1)


def poincare_to_hyperboloid(p) -> np.ndarray:
    p = np.asarray(p, dtype=float)
    r2 = np.sum(p * p, axis=-1)
    if np.any(r2 >= 1.0):
        raise DegenerateInput("Poincaré coordinates must lie inside the unit disk")
    den = 1.0 - r2
    return np.concatenate([((1.0 + r2) / den)[..., None], 2.0 * p / den[..., None]], axis=-1)


def hyperboloid_to_klein(x) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    return x[..., 1:] / x[..., :1]


def hyperboloid_to_poincare(x) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    return x[..., 1:] / (1.0 + x[..., :1])


@dataclass(frozen=True, eq=False)
class HPoint:
    """A point of H^2.  ``x0`` is always recomputed from the spatial part."""

    x: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.x, dtype=float).reshape(-1)
        if v.shape == (2,):
            s = v
        elif v.shape == (3,):
            s = v[1:]
        else:
            raise ValueError("HPoint needs a hyperboloid 3-vector or its spatial part")
        if not np.all(np.isfinite(s)):
            raise DegenerateInput("non-finite point coordinates")
        vec = lift_spatial(s)
        vec.setflags(write=False)
        object.__setattr__(self, "x", vec)

    @classmethod
    def origin(cls) -> "HPoint":
        return cls(np.zeros(2))

    @classmethod
    def from_poincare(cls, u, v=None) -> "HPoint":
        p = np.array([u, v], dtype=float) if v is not None else np.asarray(u, dtype=float)
        return cls(poincare_to_hyperboloid(p))

    @classmethod
    def from_klein(cls, u, v=None) -> "HPoint":
        k = np.array([u, v], dtype=float) if v is not None else np.asarray(u, dtype=float)
        return cls(klein_to_hyperboloid(k))

    @classmethod
    def from_polar(cls, radius: float, azimuth: float) -> "HPoint":
        """Point at hyperbolic distance ``radius`` from the origin in direction ``azimuth``."""
        sh = math.sinh(radius)
        return cls(np.array([sh * math.cos(azimuth), sh * math.sin(azimuth)]))

    @property
    def spatial(self) -> np.ndarray:
        return self.x[1:]

    @property
    def poincare(self) -> np.ndarray:
        return hyperboloid_to_poincare(self.x)

    @property
    def klein(self) -> np.ndarray:
        return hyperboloid_to_klein(self.x)

    def normalization_residual(self) -> float:
        return abs(float(minkowski(self.x, self.x)) - 1.0)

    def isclose(self, other: "HPoint", tol: float = 1e-10) -> bool:
        return dist(self, other) <= tol

    def __repr__(self):
        u, v = self.poincare
        return f"HPoint(poincare=({u:.12g}, {v:.12g}))"


def _dist_vec(p: np.ndarray, q: np.ndarray) -> float:
    # 2 asinh(sqrt(m) / 2) with m = -<p - q, p - q>.  Splitting ds along
    # S = s_p + s_q and using T^2 - |S|^2 = 4 + m (T = p0 + q0) gives
    # m = (4 k^2 + |ds_perp|^2) / (1 - k^2), k = (ds . S/|S|) / T, which has
    # no cancellation even when both points are far from the origin.
    ds = p[1:] - q[1:]
    S = p[1:] + q[1:]
    norm = math.hypot(S[0], S[1])
    if norm == 0.0:
        m = float(ds @ ds)
    else:
        u = S / norm
        c = float(ds @ u)
        perp = ds - c * u
        k = c / (p[0] + q[0])
        m = (4.0 * k * k + float(perp @ perp)) / (1.0 - k * k)
    return 2.0 * math.asinh(math.sqrt(m) / 2.0)


def dist(p: HPoint, q: HPoint) -> float:
    """Hyperbolic distance."""
    inner = float(minkowski(p.x, q.x))
    if inner < 1.0 - 1e-9 * max(1.0, abs(inner)):
        raise DegenerateInput(f"Minkowski product {inner!r} < 1: not points of H^2")
    if inner > 2.0 and inner > 1e-3 * p.x[0] * q.x[0]:
        # far apart with little cancellation in the product itself
        return math.acosh(inner)
    return _dist_vec(p.x, q.x)


def point_along(p: HPoint, q: HPoint, t: float) -> HPoint:
    """Point at signed distance ``t`` from ``p`` on the geodesic through ``p`` and ``q``."""
    d = dist(p, q)
    if d <= 1e-15:
        raise DegenerateInput("point_along needs distinct points")
    u = (q.x - math.cosh(d) * p.x) / math.sinh(d)
    return HPoint(math.cosh(t) * p.x + math.sinh(t) * u)


def interpolate(p: HPoint, q: HPoint, s: float) -> HPoint:
    """Point dividing the segment [p, q] at fraction ``s`` of its length."""
    d = dist(p, q)
    if d == 0.0:
        return p
    sd = math.sinh(d)
    return HPoint((math.sinh((1.0 - s) * d) * p.x + math.sinh(s * d) * q.x) / sd)


def midpoint(p: HPoint, q: HPoint) -> HPoint:
    m = p.x + q.x
    return HPoint(m / math.sqrt(float(minkowski(m, m))))


# -- geodesics -----------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class Geodesic:
    """Oriented geodesic: unit normal plus ideal endpoints (unit vectors)."""

    normal: np.ndarray
    start: np.ndarray = field(repr=False)
    end: np.ndarray = field(repr=False)

    @classmethod
    def from_normal(cls, normal) -> "Geodesic":
        n = np.asarray(normal, dtype=float)
        norm2 = -float(minkowski(n, n))
        if norm2 <= 0.0:
            raise DegenerateInput("geodesic normal must be spacelike")
        n = n / math.sqrt(norm2)
        # closest point to the origin and the forward unit tangent there
        f = np.array([1.0, 0.0, 0.0]) + n[0] * n
        f = f / math.sqrt(float(minkowski(f, f)))
        u = minkowski_cross(n, f)
        start = (f[1:] - u[1:]) / (f[0] - u[0])
        end = (f[1:] + u[1:]) / (f[0] + u[0])
        start = start / np.hypot(*start)
        end = end / np.hypot(*end)
        if np.hypot(*(start - end)) <= 1e-12:
            raise DegenerateInput("geodesic endpoints coincide")
        n.setflags(write=False)
        return cls(n, start, end)

    def side(self, p: HPoint) -> float:
        """Minkowski residual ``<p, n>``; positive to the left."""
        return float(minkowski(p.x, self.normal))

    def signed_distance(self, p: HPoint) -> float:
        return math.asinh(self.side(p))

    def contains(self, p: HPoint, tol: float = 1e-10) -> bool:
        return abs(self.side(p)) <= tol

    def reversed(self) -> "Geodesic":
        return Geodesic.from_normal(-self.normal)


def geodesic_through(p: HPoint, q: HPoint, tol: float = 1e-10) -> Geodesic:
    """Geodesic through ``p`` and ``q``, oriented from ``p`` to ``q``."""
    if dist(p, q) <= tol:
        raise DegenerateInput("geodesic_through: points coincide")
    return Geodesic.from_normal(minkowski_cross(p.x, q.x))


def line_distance(g: Geodesic, h: Geodesic) -> float:
    """Common-perpendicular length; 0 for intersecting or asymptotic lines."""
    c = abs(float(minkowski(g.normal, h.normal)))
    return math.acosh(c) if c > 1.0 else 0.0


def geodesic_intersection(g: Geodesic, h: Geodesic) -> HPoint | None:
    c = minkowski_cross(g.normal, h.normal)
    m = float(minkowski(c, c))
    if m <= 0.0:
        return None
    c = c / math.sqrt(m)
    if c[0] < 0:
        c = -c
    return HPoint(c)


def foot_of_perpendicular(p: HPoint, g: Geodesic) -> tuple[HPoint, float]:
    """Orthogonal projection of ``p`` onto ``g`` and the distance to it."""
    s = g.side(p)
    foot = HPoint((p.x + s * g.normal) / math.sqrt(1.0 + s * s))
    return foot, abs(math.asinh(s))


# -- isometries ----------------------------------------------------------------


def _boost_to_origin(v: np.ndarray) -> np.ndarray:
    s = v[1:]
    m = np.empty((3, 3))
    m[0, 0] = v[0]
    m[0, 1:] = -s
    m[1:, 0] = -s
    m[1:, 1:] = np.eye(2) + np.outer(s, s) / (v[0] + 1.0)
    return m


@dataclass(frozen=True, eq=False)
class Isometry:
    """Isometry of H^2 as a Minkowski-orthogonal 3x3 matrix."""

    matrix: np.ndarray

    def __post_init__(self):
        m = np.array(self.matrix, dtype=float)
        if m.shape != (3, 3):
            raise ValueError("isometry matrix must be 3x3")
        scale = max(1.0, float(np.max(np.abs(m)))) ** 2
        if np.max(np.abs(m.T @ _JM @ m - _JM)) > 1e-9 * scale or m[0, 0] < 1.0 - 1e-9:
            raise ValueError("matrix does not preserve the Minkowski form and the upper sheet")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @classmethod
    def identity(cls) -> "Isometry":
        return cls(np.eye(3))

    @classmethod
    def rotation(cls, angle: float) -> "Isometry":
        """Rotation about the origin."""
        c, s = math.cos(angle), math.sin(angle)
        return cls(np.array([[1.0, 0.0, 0.0], [0.0, c, -s], [0.0, s, c]]))

    @classmethod
    def boost(cls, distance: float, direction: float = 0.0) -> "Isometry":
        """Hyperbolic translation moving the origin ``distance`` along ``direction``."""
        ch, sh = math.cosh(distance), math.sinh(distance)
        bx = np.array([[ch, sh, 0.0], [sh, ch, 0.0], [0.0, 0.0, 1.0]])
        r = cls.rotation(direction).matrix
        return cls(r @ bx @ r.T)

    @classmethod
    def to_origin(cls, p: HPoint) -> "Isometry":
        """Translation along the geodesic through ``p`` and the origin, sending ``p`` to it."""
        return cls(_boost_to_origin(p.x))

    def inverse(self) -> "Isometry":
        return Isometry(_JM @ self.matrix.T @ _JM)

    @property
    def orientation_preserving(self) -> bool:
        return float(np.linalg.det(self.matrix)) > 0

    def form_residual(self) -> float:
        return float(np.max(np.abs(self.matrix.T @ _JM @ self.matrix - _JM)))

    def __matmul__(self, other):
        if isinstance(other, Isometry):
            return Isometry(self.matrix @ other.matrix)
        if isinstance(other, HPoint):
            return HPoint(self.matrix @ other.x)
        if isinstance(other, Geodesic):
            return Geodesic.from_normal(self.matrix @ other.normal)
        if isinstance(other, HCircle):
            return HCircle(self @ other.center, other.radius)
        return NotImplemented


def isometry_normalize(p: HPoint, q: HPoint) -> Isometry:
    """Orientation-preserving isometry taking ``p`` to the origin and ``q`` to the positive x-axis."""
    if dist(p, q) <= 1e-12:
        raise DegenerateInput("isometry_normalize: points coincide")
    t = Isometry.to_origin(p)
    q1 = t.matrix @ q.x
    return Isometry.rotation(-math.atan2(q1[2], q1[1])) @ t


def angle_at(v: HPoint, a: HPoint, b: HPoint, tol: float = 1e-12) -> float:
    """Angle in [0, pi] at ``v`` between the geodesic rays toward ``a`` and ``b``."""
    return abs(signed_angle_at(v, a, b, tol))


def signed_angle_at(v: HPoint, a: HPoint, b: HPoint, tol: float = 1e-12) -> float:
    """Counter-clockwise angle in (-pi, pi] turning the ray v->a onto v->b."""
    if dist(v, a) <= tol or dist(v, b) <= tol:
        raise DegenerateInput("angle_at: ray endpoint coincides with the vertex")
    m = _boost_to_origin(v.x)
    a1 = m @ a.x
    b1 = m @ b.x
    cross = a1[1] * b1[2] - a1[2] * b1[1]
    dot = a1[1] * b1[1] + a1[2] * b1[2]
    return math.atan2(cross, dot)


# -- right triangles -----------------------------------------------------------


@dataclass(frozen=True)
class RightTriangle:
    """Legs ``a``, ``b``, hypotenuse ``c``; acute angle ``A`` opposite ``a``, ``B`` opposite ``b``."""

    a: float
    b: float
    c: float
    A: float
    B: float

    def residuals(self) -> dict[str, float]:
        a, b, c, A, B = self.a, self.b, self.c, self.A, self.B
        return {
            "pythagoras": math.cosh(c) - math.cosh(a) * math.cosh(b),
            "sine_a": math.sinh(a) - math.sinh(c) * math.sin(A),
            "sine_b": math.sinh(b) - math.sinh(c) * math.sin(B),
            "cos_ratio_b": math.cosh(b) * math.sin(A) - math.cos(B),
            "cos_ratio_a": math.cosh(a) * math.sin(B) - math.cos(A),
        }


def _from_legs(a: float, b: float) -> RightTriangle:
    c = math.acosh(math.cosh(a) * math.cosh(b))
    return RightTriangle(a, b, c, math.atan2(math.tanh(a), math.sinh(b)),
                         math.atan2(math.tanh(b), math.sinh(a)))


def _swap(t: RightTriangle) -> RightTriangle:
    return RightTriangle(t.b, t.a, t.c, t.B, t.A)


def solve_right_triangle(*, a: float | None = None, b: float | None = None,
                         c: float | None = None, A: float | None = None,
                         B: float | None = None) -> RightTriangle:
    """Complete a hyperbolic right triangle from two of its five parts.

    ``A`` is the angle opposite leg ``a`` and ``B`` the angle opposite ``b``.
    Raises :class:`Unrealizable` when no triangle has the requested parts.
    """
    given = {k: v for k, v in dict(a=a, b=b, c=c, A=A, B=B).items() if v is not None}
    if len(given) != 2:
        raise ValueError("solve_right_triangle needs exactly two of a, b, c, A, B")
    for k, v in given.items():
        if k in "abc" and not v > 0:
            raise Unrealizable(f"length {k}={v} must be positive")
        if k in "AB" and not 0 < v < math.pi / 2:
            raise Unrealizable(f"angle {k}={v} must be acute")
    keys = frozenset(given)

    # normalize the six mirror-symmetric cases to the a-side
    if keys in ({"b", "c"}, {"b", "B"}, {"b", "A"}, {"c", "B"}):
        mirror = dict(a=b, b=a, c=c, A=B, B=A)
        return _swap(solve_right_triangle(**{k: mirror[k] for k in "abcAB" if mirror[k] is not None}))

    if keys == {"a", "b"}:
        return _from_legs(a, b)
    if keys == {"a", "c"}:
        if c <= a:
            raise Unrealizable("hypotenuse must exceed the leg")
        return _from_legs(a, math.acosh(math.cosh(c) / math.cosh(a)))
    if keys == {"a", "A"}:
        return _from_legs(a, math.asinh(math.tanh(a) / math.tan(A)))
    if keys == {"a", "B"}:
        tb = math.sinh(a) * math.tan(B)
        if tb >= 1.0:
            raise Unrealizable("adjacent angle too large for the leg: the sides do not meet")
        return _from_legs(a, math.atanh(tb))
    if keys == {"c", "A"}:
        sa = math.sinh(c) * math.sin(A)
        return solve_right_triangle(a=math.asinh(sa), c=c)
    if keys == {"A", "B"}:
        ch = 1.0 / (math.tan(A) * math.tan(B))
        if ch <= 1.0:
            raise Unrealizable("angle sum of a hyperbolic right triangle must be below pi/2")
        return _from_legs(math.acosh(math.cos(A) / math.sin(B)), math.acosh(math.cos(B) / math.sin(A)))
    raise ValueError(f"unsupported combination {sorted(keys)}")  # pragma: no cover


# -- circles -----------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class HCircle:
    center: HPoint
    radius: float

    def __post_init__(self):
        if not self.radius >= 0:
            raise ValueError("circle radius must be non-negative")

    def contains(self, p: HPoint, tol: float = 1e-12) -> bool:
        return dist(self.center, p) <= self.radius + tol

    def poincare_circle(self) -> tuple[np.ndarray, float]:
        """Euclidean center and radius of this circle in the Poincaré chart."""
        c = self.center.poincare
        s = float(np.hypot(*c))
        rho = 2.0 * math.atanh(s)
        direction = c / s if s > 0 else np.array([1.0, 0.0])
        outer = math.tanh((rho + self.radius) / 2.0)
        inner = math.tanh((rho - self.radius) / 2.0)
        return direction * (outer + inner) / 2.0, (outer - inner) / 2.0


def circumcenter(points) -> HCircle:
    """Circle through two (as diameter) or three points."""
    pts = list(points)
    if len(pts) == 2:
        p, q = pts
        if dist(p, q) <= 1e-12:
            raise DegenerateInput("circumcenter: coincident points")
        return HCircle(midpoint(p, q), dist(p, q) / 2.0)
    if len(pts) != 3:
        raise ValueError("circumcenter takes 2 or 3 points")
    p, q, r = pts
    if min(dist(p, q), dist(q, r), dist(p, r)) <= 1e-12:
        raise DegenerateInput("circumcenter: coincident points")
    c = minkowski_cross(p.x - q.x, q.x - r.x)
    m = float(minkowski(c, c))
    scale = float(c @ c)
    if m <= 1e-14 * scale:
        raise CollinearError("no finite circle through the three points")
    c = c / math.sqrt(m)
    if c[0] < 0:
        c = -c
    center = HPoint(c)
    radius = (dist(center, p) + dist(center, q) + dist(center, r)) / 3.0
    return HCircle(center, radius)
