"""Ordinary reduced polygons in the hyperbolic plane."""

from .core import (
    HCircle,
    HPoint,
    Geodesic,
    Isometry,
    RightTriangle,
    angle_at,
    circumcenter,
    dist,
    foot_of_perpendicular,
    geodesic_intersection,
    geodesic_through,
    line_distance,
    midpoint,
    solve_right_triangle,
)
from .covering import boundary_cover_point, covering_center_set
from .errors import HypReduceError
from .explorer import (
    SolveSpec,
    regular_vs_circle_scan,
    solve_ordinary_reduced,
    solve_with_diagnostics,
    sweep_diameter_circumradius,
    sweep_perimeter,
)
from .formulas import (
    circ_upper,
    diam_upper,
    g_w,
    gamma_of_width,
    jung_upper,
    lassak_upper,
    p_w,
    p_w_derivatives,
)
from .polygon import (
    ConvexPolygon,
    area,
    contains,
    convex_hull,
    diameter,
    min_enclosing_disk,
    min_width,
    perimeter_direct,
    width_wrt_line,
)
from .reduced import OrdinaryReducedPolygon, butterflies, regular_ngon, validate
from .report import BoundsReport, bounds_report

__version__ = "0.1.0"
