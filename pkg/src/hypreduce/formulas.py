"""Closed-form quantities attached to ordinary reduced polygons of width ``w``.

``g_w`` and ``p_w`` describe one butterfly leg as a function of the vertical
angle: ``g_w(x) = tanh b`` for the short chord piece ``b`` and ``p_w(x)`` is
the distance from a foot to the adjacent vertex, so that the perimeter of an
ordinary reduced n-gon is ``2 * sum(p_w(phi_i))``.
"""

from __future__ import annotations

import math

from .errors import DomainError, NonPositiveWidth


def _check_width(w: float) -> None:
    if not w > 0:
        raise NonPositiveWidth(f"width must be positive, got {w}")


def _check_angle(x: float, open_interval: bool = False) -> None:
    if open_interval:
        if not 0.0 < x < math.pi:
            raise DomainError(f"angle {x} outside (0, pi)")
    elif not 0.0 <= x <= math.pi:
        raise DomainError(f"angle {x} outside [0, pi]")


def half_side_cosh(w: float) -> float:
    """``cosh(a/2)`` for the regular triangle of width ``w``."""
    _check_width(w)
    c = math.cosh(w)
    return (c + math.sqrt(c * c + 8.0)) / 4.0


def gamma_of_width(w: float) -> float:
    """Half the interior angle of the regular triangle of minimal width ``w``."""
    _check_width(w)
    c = math.cosh(w)
    # (-c + sqrt(c^2 + 8)) / 4 written without cancellation
    return math.asin(2.0 / (c + math.sqrt(c * c + 8.0)))


def _half_side_excess(w: float) -> float:
    # cosh(a/2) - 1 = ((c - 1) + (c^2 - 1) / (sqrt(c^2 + 8) + 3)) / 4, both terms cancellation-free
    _check_width(w)
    c = math.cosh(w)
    return (2.0 * math.sinh(w / 2.0) ** 2 + math.sinh(w) ** 2 / (math.sqrt(c * c + 8.0) + 3.0)) / 4.0


def _half_side(w: float) -> float:
    return 2.0 * math.asinh(math.sqrt(_half_side_excess(w) / 2.0))


def regular_triangle_side(w: float) -> float:
    return 2.0 * _half_side(w)


def _r(w: float, x: float) -> float:
    # (1 + cos x)^2 - 4 tanh^2 w cos x == 4 sin^4(x/2) + 4 cos x / cosh^2 w
    sh = math.sin(x / 2.0)
    return 2.0 * math.sqrt(sh ** 4 + math.cos(x) / math.cosh(w) ** 2)


def g_w(w: float, x: float) -> float:
    _check_width(w)
    _check_angle(x)
    t = math.tanh(w)
    cx = math.cos(x)
    # numerator rationalized: (1 + cos x) - r = 4 tanh^2 w cos x / ((1 + cos x) + r)
    return 2.0 * t * cx / (1.0 + cx + _r(w, x))


def p_w(w: float, x: float) -> float:
    _check_width(w)
    _check_angle(x)
    if x == 0.0:
        return 0.0
    g = g_w(w, x)
    if x < math.pi / 2:
        # hypotenuse c = w - artanh(g) with sinh p = sinh c sin x; avoids arcosh near 1
        cx = math.cos(x)
        den = 1.0 + cx + _r(w, x)
        one_minus_g = (2.0 * math.sin(x / 2.0) ** 2 + 4.0 * cx / (math.exp(2.0 * w) + 1.0)
                       + _r(w, x)) / den
        b = 0.5 * math.log((1.0 + g) / one_minus_g)
        return math.asinh(math.sinh(w - b) * math.sin(x))
    return math.acosh((1.0 - g * math.tanh(w)) * math.cosh(w))


def p_w_derivatives(w: float, x: float) -> tuple[float, float]:
    """First and second derivative of ``p_w`` at ``x`` in (0, pi).

    With ``r = sqrt((1 + cos x)^2 - 4 tanh^2 w cos x)`` and
    ``s = sqrt(2 tanh^2 w + r - (1 + cos x))``::

        p'  = cos(x/2) s / r
        p'' = s / (2 r^3) * [ 2 sin x cos(x/2) ((1 + cos x) - 2 tanh^2 w)
                              + r sin x cos(x/2) - r^2 sin(x/2) ]

    The second line is obtained by differentiating the first.  Note that the
    second derivative is *not* positive on all of (0, pi): it changes sign at
    an angle that decreases with ``w``.
    """
    _check_width(w)
    _check_angle(x, open_interval=True)
    t2 = math.tanh(w) ** 2
    u = 1.0 + math.cos(x)
    r = _r(w, x)
    q = u - 2.0 * t2
    if q > 0.0:
        # r^2 - q^2 = 4 tanh^2 w / cosh^2 w, so r - q has a cancellation-free form
        s = math.sqrt(4.0 * t2 / math.cosh(w) ** 2 / (r + q))
    else:
        s = math.sqrt(r - q)
    ch, sh = math.cos(x / 2.0), math.sin(x / 2.0)
    sx = math.sin(x)
    d1 = ch * s / r
    d2 = s / (2.0 * r ** 3) * (2.0 * sx * ch * q + r * sx * ch - r * r * sh)
    return d1, d2


def regular_perimeter(n: int, w: float) -> float:
    """Perimeter of the regular n-gon of width ``w`` via the butterfly formula."""
    return 2.0 * n * p_w(w, math.pi / n)


def circle_circumference(w: float) -> float:
    """Circumference of the disk of minimal width ``w`` (radius ``w/2``)."""
    _check_width(w)
    return 2.0 * math.pi * math.sinh(w / 2.0)


# -- upper bounds ------------------------------------------------------------------


def lassak_upper(w: float) -> float:
    """Earlier diameter bound ``arcosh(cosh w sqrt(1 + sinh(w) / sqrt 2))``."""
    _check_width(w)
    return math.acosh(math.cosh(w) * math.sqrt(1.0 + math.sqrt(2.0) / 2.0 * math.sinh(w)))


def diam_upper(w: float) -> float:
    """Sharp diameter bound, attained by the regular triangle."""
    return 2.0 * _half_side(w)


def circ_upper(w: float) -> float:
    """Sharp circumradius bound, attained by the regular triangle."""
    e = _half_side_excess(w)
    return math.asinh(2.0 / math.sqrt(3.0) * math.sqrt(e * (e + 2.0)))


def jung_upper(d: float) -> float:
    """Circumradius bound for a set of diameter ``d`` in H^2."""
    return math.asinh(2.0 / math.sqrt(3.0) * math.sinh(d / 2.0))
