import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hypreduce.core import (
    Geodesic,
    HCircle,
    HPoint,
    Isometry,
    acosh_clamped,
    angle_at,
    circumcenter,
    dist,
    foot_of_perpendicular,
    geodesic_intersection,
    geodesic_through,
    interpolate,
    line_distance,
    midpoint,
    minkowski,
    solve_right_triangle,
)
from hypreduce.errors import CollinearError, DegenerateInput, Unrealizable

from oracles import random_isometry

radii = st.floats(0.0, 4.0)
angles = st.floats(0.0, 2 * math.pi)
points = st.builds(HPoint.from_polar, radii, angles)


def test_charts_round_trip():
    p = HPoint.from_poincare(0.3, -0.55)
    np.testing.assert_allclose(p.poincare, [0.3, -0.55], atol=1e-15)
    q = HPoint.from_klein(p.klein)
    assert dist(p, q) < 1e-12


def test_origin_distance_matches_polar_radius():
    assert dist(HPoint.origin(), HPoint.from_polar(2.5, 1.0)) == pytest.approx(2.5, abs=1e-13)


def test_far_points_stay_normalized():
    p = HPoint.from_polar(15.0, 0.3)
    assert p.normalization_residual() < 1e-11 * p.x[0] ** 2
    assert dist(HPoint.origin(), p) == pytest.approx(15.0, rel=1e-12)


def test_rejects_bad_coordinates():
    with pytest.raises(ValueError):
        HPoint(np.zeros(4))
    with pytest.raises(DegenerateInput):
        HPoint(np.array([np.nan, 0.0]))


def test_acosh_clamp():
    assert acosh_clamped(1.0 - 1e-13) == 0.0
    with pytest.raises(Exception):
        acosh_clamped(0.5)


@settings(max_examples=60, deadline=None)
@given(points, points, st.integers(0, 2 ** 32 - 1))
def test_dist_isometry_invariant(p, q, seed):
    t = random_isometry(np.random.default_rng(seed))
    assert abs(dist(t @ p, t @ q) - dist(p, q)) < 1e-11 * max(1.0, dist(p, q))


@settings(max_examples=60, deadline=None)
@given(points, points, points)
def test_triangle_inequality(p, q, r):
    assert dist(p, r) <= dist(p, q) + dist(q, r) + 1e-10


@pytest.mark.slow
def test_normalization_under_a_million_compositions():
    rng = np.random.default_rng(1)
    steps = [Isometry.boost(1e-3, a) @ Isometry.rotation(b)
             for a, b in rng.uniform(0, 2 * math.pi, size=(64, 2))]
    order = rng.integers(0, len(steps), size=10 ** 6)
    p = HPoint.from_polar(0.5, 0.2)
    worst = 0.0
    for k in order:
        p = steps[k] @ p
        worst = max(worst, abs(float(minkowski(p.x, p.x)) - 1.0))
    assert worst < 1e-11


def test_euclidean_limit():
    a, b = np.array([0.3, -0.2]), np.array([-0.1, 0.45])
    eps = 1e-3
    # Poincaré chart: metric is 2|dx| at the origin, so halve the chart scaling
    p, q = HPoint.from_poincare(eps * a / 2), HPoint.from_poincare(eps * b / 2)
    assert abs(dist(p, q) / eps - np.linalg.norm(a - b)) / np.linalg.norm(a - b) < 1e-4


def test_interpolate_and_midpoint():
    p, q = HPoint.from_polar(1.0, 0.0), HPoint.from_polar(2.0, 2.0)
    m = midpoint(p, q)
    assert dist(p, m) == pytest.approx(dist(q, m), abs=1e-12)
    z = interpolate(p, q, 0.25)
    assert dist(p, z) == pytest.approx(0.25 * dist(p, q), abs=1e-12)


def test_geodesic_orientation_and_side():
    g = geodesic_through(HPoint.from_polar(1.0, -0.5), HPoint.from_polar(1.0, 0.5))
    # the origin is to the left of a line traversed counter-clockwise around it
    assert g.side(HPoint.origin()) > 0
    assert g.signed_distance(HPoint.from_polar(3.0, 0.0)) < 0
    assert g.reversed().side(HPoint.origin()) < 0
    for e in (g.start, g.end):
        assert np.hypot(*e) == pytest.approx(1.0, abs=1e-12)


def test_geodesic_through_rejects_coincident_points():
    p = HPoint.from_polar(1.0, 1.0)
    with pytest.raises(DegenerateInput):
        geodesic_through(p, p)


def test_foot_minimizes_distance(rng):
    for _ in range(20):
        a, b = (HPoint.from_polar(rng.uniform(0, 2), rng.uniform(0, 6.3)) for _ in range(2))
        p = HPoint.from_polar(rng.uniform(0, 3), rng.uniform(0, 6.3))
        g = geodesic_through(a, b)
        foot, d = foot_of_perpendicular(p, g)
        assert abs(minkowski(foot.x, g.normal)) < 1e-10
        assert dist(p, foot) == pytest.approx(d, abs=1e-10)
        # sampled points along the whole line are never closer
        far = [interpolate(a, b, s) for s in np.linspace(-6, 6, 241)]
        assert d <= min(dist(p, z) for z in far) + 1e-10


def test_line_distance_conventions():
    o = HPoint.origin()
    g = geodesic_through(HPoint.from_polar(1.0, math.pi / 2), HPoint.from_polar(1.0, -math.pi / 2))
    h = Isometry.boost(1.3) @ g
    assert line_distance(g, h) == pytest.approx(1.3, abs=1e-12)
    crossing = geodesic_through(o, HPoint.from_polar(1.0, 0.0))
    assert line_distance(g, crossing) == 0.0
    assert dist(geodesic_intersection(g, crossing), o) < 1e-12
    assert geodesic_intersection(g, h) is None


def test_isometry_composition_and_inverse(rng):
    t = random_isometry(rng)
    p = HPoint.from_polar(1.7, 0.4)
    assert dist(t.inverse() @ (t @ p), p) < 1e-11
    assert (t @ t.inverse()).form_residual() < 1e-10
    assert (Isometry.to_origin(p) @ p).isclose(HPoint.origin(), tol=1e-12)
    with pytest.raises(ValueError):
        Isometry(np.diag([1.0, 2.0, 1.0]))


def test_isometry_maps_geodesics(rng):
    t = random_isometry(rng)
    a, b = HPoint.from_polar(1.0, 0.0), HPoint.from_polar(0.5, 2.0)
    g = t @ geodesic_through(a, b)
    assert g.contains(t @ a) and g.contains(t @ b)


def test_angle_at():
    o = HPoint.origin()
    a, b = HPoint.from_polar(1.0, 0.0), HPoint.from_polar(3.0, 1.1)
    assert angle_at(o, a, b) == pytest.approx(1.1, abs=1e-12)


def test_right_triangle_from_legs_satisfies_identities():
    t = solve_right_triangle(a=0.7, b=1.2)
    assert max(abs(v) for v in t.residuals().values()) < 1e-12


@settings(max_examples=50, deadline=None)
@given(st.floats(0.05, 3.0), st.floats(0.05, 3.0))
def test_right_triangle_round_trips(a, b):
    t = solve_right_triangle(a=a, b=b)
    parts = dict(a=t.a, b=t.b, c=t.c, A=t.A, B=t.B)
    for pair in (("a", "c"), ("b", "c"), ("a", "A"), ("a", "B"), ("b", "A"),
                 ("b", "B"), ("c", "A"), ("c", "B"), ("A", "B")):
        u = solve_right_triangle(**{k: parts[k] for k in pair})
        got = dict(a=u.a, b=u.b, c=u.c, A=u.A, B=u.B)
        for k in parts:
            assert got[k] == pytest.approx(parts[k], abs=1e-10, rel=1e-10), (pair, k)


def test_right_triangle_unrealizable():
    with pytest.raises(Unrealizable):
        solve_right_triangle(A=math.pi / 3, B=math.pi / 4)
    with pytest.raises(Unrealizable):
        solve_right_triangle(a=2.0, c=1.0)
    with pytest.raises(Unrealizable):
        solve_right_triangle(a=2.0, B=1.4)
    with pytest.raises(ValueError):
        solve_right_triangle(a=1.0)


def test_circumcenter_equidistant():
    pts = [HPoint.from_polar(1.0, 0.1), HPoint.from_polar(2.0, 2.0), HPoint.from_polar(0.5, 4.0)]
    c = circumcenter(pts)
    for p in pts:
        assert dist(c.center, p) == pytest.approx(c.radius, abs=1e-10)


def test_circumcenter_of_collinear_points_fails():
    line = [HPoint.from_polar(r, 0.0) for r in (-1.0, 0.5, 2.0)]
    with pytest.raises(CollinearError):
        circumcenter(line)


def test_poincare_circle_of_hyperbolic_circle():
    c = HCircle(HPoint.from_polar(1.2, 0.8), 0.9)
    center, r = c.poincare_circle()
    for t in np.linspace(0, 2 * math.pi, 7):
        edge = HPoint.from_poincare(center + r * np.array([math.cos(t), math.sin(t)]))
        assert dist(edge, c.center) == pytest.approx(0.9, abs=1e-10)


def test_geodesic_from_normal_requires_spacelike():
    with pytest.raises(Exception):
        Geodesic.from_normal(np.array([1.0, 0.0, 0.0]))
