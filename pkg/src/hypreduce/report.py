"""Metrics and bound checks of an ordinary reduced polygon, with flat JSON/CSV forms.

Each check carries a signed margin.  Non-strict checks pass when
``margin >= -tol``, strict ones when ``margin > 0``.  The CSV column order is
``FIELDS`` followed by ``<check>_margin, <check>_passed`` for every entry of
``CHECKS``; list-valued fields are ``;``-joined and floats use 17 significant
digits so rows parse back to identical reports.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, fields

from .formulas import circ_upper, diam_upper, jung_upper, lassak_upper
from .polygon import area, diameter, min_enclosing_disk, perimeter_direct
from .reduced import OrdinaryReducedPolygon

CHECK_TOL = 1e-9

# name -> strict
CHECKS: dict[str, bool] = {
    "diameter_above_width": True,
    "diameter_below_lassak": True,
    "diameter_below_diam_upper": False,
    "circumradius_below_circ_upper": False,
    "circumradius_below_jung": False,
    "diameter_ratio_below_2": True,
    "circumradius_ratio_above_half": True,
    "circumradius_ratio_below_1": True,
    "phi_sum_at_most_pi": False,
    "perimeter_formula_consistent": False,
    "beta_at_most_gamma": False,
    "gamma_at_most_alpha": False,
}


@dataclass(frozen=True)
class Check:
    name: str
    margin: float
    strict: bool
    passed: bool

    @classmethod
    def of(cls, name: str, margin: float, tol: float = CHECK_TOL) -> "Check":
        strict = CHECKS[name]
        return cls(name, margin, strict, margin > 0.0 if strict else margin >= -tol)


@dataclass(frozen=True)
class BoundsReport:
    w: float
    n: int
    diameter: float
    circumradius: float
    perimeter_direct: float
    perimeter_formula: float
    area: float
    phi_sum: float
    phi: tuple[float, ...]
    alpha: tuple[float, ...]
    beta: tuple[float, ...]
    gamma: float
    lassak_upper: float
    diam_upper: float
    circ_upper: float
    jung_upper: float
    d_over_w: float
    R_over_w: float
    checks: tuple[Check, ...]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def check(self, name: str) -> Check:
        return next(c for c in self.checks if c.name == name)

    def to_dict(self) -> dict:
        out = {f: getattr(self, f) for f in FIELDS}
        for f in LIST_FIELDS:
            out[f] = list(out[f])
        for c in self.checks:
            out[f"{c.name}_margin"] = c.margin
            out[f"{c.name}_passed"] = c.passed
        return out

    @classmethod
    def from_dict(cls, d: dict) -> "BoundsReport":
        kw = {f: d[f] for f in FIELDS}
        kw["n"] = int(kw["n"])
        for f in LIST_FIELDS:
            kw[f] = tuple(float(x) for x in kw[f])
        checks = tuple(Check(name, float(d[f"{name}_margin"]), strict, bool(d[f"{name}_passed"]))
                       for name, strict in CHECKS.items())
        return cls(**kw, checks=checks)

    def to_csv_row(self) -> list[str]:
        return [_fmt(v) for v in self.to_dict().values()]


FIELDS = tuple(f.name for f in fields(BoundsReport) if f.name != "checks")
LIST_FIELDS = ("phi", "alpha", "beta")
CSV_HEADER = FIELDS + tuple(s for name in CHECKS for s in (f"{name}_margin", f"{name}_passed"))


def _fmt(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, int):
        return str(v)
    if isinstance(v, float):
        return f"{v:.17g}"
    return ";".join(f"{x:.17g}" for x in v)


def bounds_report(orp: OrdinaryReducedPolygon, seed: int = 0) -> BoundsReport:
    poly, w = orp.polygon, orp.w
    d, _ = diameter(poly)
    R = min_enclosing_disk(poly, seed).radius
    pd = perimeter_direct(poly)
    pf = orp.perimeter_formula()
    phi, alpha, beta = orp.phi, orp.alpha, orp.beta
    gamma = orp.gamma
    lu, du, cu, ju = lassak_upper(w), diam_upper(w), circ_upper(w), jung_upper(d)
    margins = {
        "diameter_above_width": d - w,
        "diameter_below_lassak": lu - d,
        "diameter_below_diam_upper": du - d,
        "circumradius_below_circ_upper": cu - R,
        "circumradius_below_jung": ju - R,
        "diameter_ratio_below_2": 2.0 - d / w,
        "circumradius_ratio_above_half": R / w - 0.5,
        "circumradius_ratio_below_1": 1.0 - R / w,
        "phi_sum_at_most_pi": math.pi - float(phi.sum()),
        "perimeter_formula_consistent": -abs(pd - pf),
        "beta_at_most_gamma": gamma - float(beta.max()),
        "gamma_at_most_alpha": float(alpha.min()) - gamma,
    }
    return BoundsReport(
        w=w, n=poly.n, diameter=d, circumradius=R,
        perimeter_direct=pd, perimeter_formula=pf, area=area(poly),
        phi_sum=float(phi.sum()),
        phi=tuple(float(x) for x in phi), alpha=tuple(float(x) for x in alpha),
        beta=tuple(float(x) for x in beta), gamma=gamma,
        lassak_upper=lu, diam_upper=du, circ_upper=cu, jung_upper=ju,
        d_over_w=d / w, R_over_w=R / w,
        checks=tuple(Check.of(name, margins[name]) for name in CHECKS),
    )


def write_csv(reports, stream=None) -> str:
    """Write header plus one row per report; returns the text when no stream is given."""
    buf = stream if stream is not None else io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for r in reports:
        writer.writerow(r.to_csv_row())
    return buf.getvalue() if stream is None else ""


def read_csv(text: str) -> list[BoundsReport]:
    rows = list(csv.DictReader(io.StringIO(text)))
    out = []
    for row in rows:
        d: dict = {}
        for key, raw in row.items():
            if key.endswith("_passed"):
                d[key] = raw == "true"
            elif key in LIST_FIELDS:
                d[key] = [float(x) for x in raw.split(";")] if raw else []
            elif key == "n":
                d[key] = int(raw)
            else:
                d[key] = float(raw)
        out.append(BoundsReport.from_dict(d))
    return out
