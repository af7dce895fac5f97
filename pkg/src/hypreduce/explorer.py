"""Numerical search for non-regular ordinary reduced polygons, and sweeps over them.

Solutions are produced by perturb-and-project: the vertices of a regular
n-gon are perturbed and then pulled back onto the solution set by damped
Newton on

    F_i = h_i - w,   i = 0..n-1       (height of v_i over its opposite side)
    mean(klein(v)) = 0                (2 gauge equations)
    vertex 0 on the ray at ``azimuth`` (1 gauge equation)

in the 2n spatial hyperboloid coordinates.  The system is underdetermined for
n > 3, so each step is the minimum-norm least-squares step, which lands on a
nearby member of the (n - 3)-dimensional family.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import asdict, dataclass, field

import numpy as np

from .core import HPoint
from .errors import (
    AngleSumExceeded,
    FeetLeftInterior,
    FootNotInterior,
    HypReduceError,
    InvalidSolveSpec,
    NoConvergence,
    ValidationFailed,
)
from .formulas import circle_circumference, regular_perimeter
from .polygon import ConvexPolygon, diameter, min_enclosing_disk, perimeter_direct
from .reduced import OrdinaryReducedPolygon, regular_circumradius, regular_ngon, validate

COUNTEREXAMPLE_THRESHOLD = 1e-7
_J = np.array([1.0, -1.0, -1.0])


@dataclass(frozen=True)
class SolveSpec:
    n: int
    w: float
    perturbation: tuple[float, ...]
    azimuth: float = 0.0
    tol: float = 1e-12
    max_iter: int = 50
    seed: int | None = None
    trust_radius: float | None = None  # None means 0.2 * w

    def __post_init__(self):
        object.__setattr__(self, "perturbation", tuple(float(x) for x in self.perturbation))
        if not (isinstance(self.n, int) and self.n >= 3 and self.n % 2 == 1):
            raise InvalidSolveSpec(f"n must be an odd integer >= 3, got {self.n}")
        if not self.w > 0:
            raise InvalidSolveSpec(f"width must be positive, got {self.w}")
        if len(self.perturbation) != 2 * self.n:
            raise InvalidSolveSpec(f"perturbation needs {2 * self.n} entries, got {len(self.perturbation)}")
        mag = max((abs(x) for x in self.perturbation), default=0.0)
        if mag > self.radius:
            raise InvalidSolveSpec(f"perturbation magnitude {mag} exceeds trust radius {self.radius}")

    @property
    def radius(self) -> float:
        return 0.2 * self.w if self.trust_radius is None else self.trust_radius

    @classmethod
    def random(cls, n: int, w: float, scale: float, seed: int | np.random.SeedSequence, **kw) -> "SolveSpec":
        """Perturbation drawn uniformly from ``[-scale, scale]^(2n)``."""
        rng = np.random.default_rng(seed)
        pert = rng.uniform(-scale, scale, 2 * n) if scale > 0 else np.zeros(2 * n)
        return cls(n, w, tuple(pert), seed=seed if isinstance(seed, int) else None, **kw)

    @classmethod
    def regular(cls, n: int, w: float, **kw) -> "SolveSpec":
        return cls(n, w, (0.0,) * (2 * n), **kw)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["perturbation"] = list(self.perturbation)
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "SolveSpec":
        return cls(**d)


@dataclass(frozen=True, eq=False)
class SolveResult:
    polygon: OrdinaryReducedPolygon
    iterations: int
    residual_history: tuple[float, ...]
    jacobian_rank: int

    @property
    def family_dimension(self) -> int:
        """Local dimension of the gauge-fixed solution set, ``2n - rank``."""
        return 2 * self.polygon.n - self.jacobian_rank

    def quadratic_ratios(self) -> list[float]:
        """``r_{k+1} / r_k^2`` along the run (tail should stay bounded)."""
        h = self.residual_history
        return [h[k + 1] / h[k] ** 2 for k in range(len(h) - 1) if h[k] > 0 and h[k + 1] > 0]


def _lift(s: np.ndarray) -> np.ndarray:
    s = s.reshape(-1, 2)
    return np.column_stack([np.sqrt(1.0 + np.sum(s * s, axis=1)), s])


def _residuals(s: np.ndarray, n: int, w: float, azimuth: float) -> np.ndarray:
    v = _lift(s)
    k = (n - 1) // 2
    idx = np.arange(n)
    a, b = v[(idx + k) % n], v[(idx + k + 1) % n]
    c = _J * np.cross(a, b)
    c /= np.sqrt(-np.sum(c * c * _J, axis=1))[:, None]
    heights = np.arcsinh(np.sum(v * c * _J, axis=1))
    klein = v[:, 1:] / v[:, :1]
    centroid = klein.mean(axis=0)
    anchor = -math.sin(azimuth) * klein[0, 0] + math.cos(azimuth) * klein[0, 1]
    return np.concatenate([heights - w, centroid, [anchor]])


def _jacobian(s: np.ndarray, n: int, w: float, azimuth: float, h: float = 1e-6) -> np.ndarray:
    cols = []
    for j in range(len(s)):
        e = np.zeros_like(s)
        e[j] = h
        cols.append((_residuals(s + e, n, w, azimuth) - _residuals(s - e, n, w, azimuth)) / (2.0 * h))
    return np.column_stack(cols)


def _rank(jac: np.ndarray, rtol: float = 1e-7) -> int:
    sv = np.linalg.svd(jac, compute_uv=False)
    return int(np.sum(sv > rtol * sv[0]))


def _newton(spec: SolveSpec, s: np.ndarray) -> tuple[np.ndarray, list[float]]:
    res = _residuals(s, spec.n, spec.w, spec.azimuth)
    history = [float(np.max(np.abs(res)))]
    for _ in range(spec.max_iter):
        if history[-1] <= spec.tol:
            return s, history
        jac = _jacobian(s, spec.n, spec.w, spec.azimuth)
        step = np.linalg.lstsq(jac, -res, rcond=None)[0]
        norm0 = float(np.linalg.norm(res))
        t = 1.0
        for _ in range(30):
            trial = s + t * step
            try:
                r_trial = _residuals(trial, spec.n, spec.w, spec.azimuth)
            except FloatingPointError:
                r_trial = None
            if r_trial is not None and np.all(np.isfinite(r_trial)) and np.linalg.norm(r_trial) < norm0:
                break
            t *= 0.5
        else:
            raise NoConvergence(len(history) - 1, history[-1])
        s, res = trial, r_trial
        history.append(float(np.max(np.abs(res))))
    if history[-1] <= spec.tol:
        return s, history
    raise NoConvergence(len(history) - 1, history[-1])


def _seed_coords(spec: SolveSpec) -> np.ndarray:
    rho = regular_circumradius(spec.n, spec.w)
    ang = spec.azimuth + 2.0 * math.pi * np.arange(spec.n) / spec.n
    s = math.sinh(rho) * np.column_stack([np.cos(ang), np.sin(ang)])
    return s.ravel() + np.asarray(spec.perturbation)


def solve_with_diagnostics(spec: SolveSpec) -> SolveResult:
    try:
        with np.errstate(invalid="raise", divide="raise", over="raise"):
            s, history = _newton(spec, _seed_coords(spec))
    except FloatingPointError as exc:
        raise NoConvergence(0, float("inf")) from exc
    rank = _rank(_jacobian(s, spec.n, spec.w, spec.azimuth))
    verts = tuple(HPoint(x) for x in _lift(s))
    try:
        poly = ConvexPolygon(verts)
        orp = validate(poly, spec.w)
    except FootNotInterior as exc:
        raise FeetLeftInterior(exc.index, exc.margin) from exc
    except HypReduceError as exc:
        raise ValidationFailed(exc) from exc
    return SolveResult(orp, len(history) - 1, tuple(history), rank)


def solve_ordinary_reduced(spec: SolveSpec) -> OrdinaryReducedPolygon:
    return solve_with_diagnostics(spec).polygon


# -- sweeps --------------------------------------------------------------------------


@dataclass(frozen=True)
class SampleRecord:
    index: int
    status: str  # "ok" or "skipped"
    error: str
    perimeter: float
    diameter: float
    circumradius: float
    phi_sum: float
    valid: bool
    spec: SolveSpec


@dataclass(frozen=True)
class SweepReport:
    kind: str  # "perimeter" or "diameter_circumradius"
    n: int
    w: float
    seed: int
    scale: float
    baseline: dict[str, float]
    samples: tuple[SampleRecord, ...] = field(default=())

    @property
    def ok(self) -> tuple[SampleRecord, ...]:
        return tuple(s for s in self.samples if s.status == "ok")

    @property
    def skipped(self) -> int:
        return len(self.samples) - len(self.ok)

    @property
    def metrics(self) -> tuple[str, ...]:
        return ("perimeter",) if self.kind == "perimeter" else ("diameter", "circumradius")

    def ratios(self, metric: str) -> np.ndarray:
        return np.array([getattr(s, metric) / self.baseline[metric] for s in self.ok])

    def extremal(self, metric: str) -> SampleRecord | None:
        ok = self.ok
        if not ok:
            return None
        return max(ok, key=lambda s: getattr(s, metric))

    def exceedances(self) -> list[tuple[str, SampleRecord]]:
        """Valid samples whose perimeter beats the regular one by more than the threshold.

        Only the perimeter conjecture names a direction; diameter and
        circumradius sweeps report :meth:`direction` instead.
        """
        if self.kind != "perimeter":
            return []
        return [("perimeter", s) for s in self.ok
                if s.valid and s.perimeter - self.baseline["perimeter"] > COUNTEREXAMPLE_THRESHOLD]

    def direction(self, metric: str) -> str:
        """Empirical position of the regular value among the solved samples."""
        r = self.ratios(metric) - 1.0
        eps = COUNTEREXAMPLE_THRESHOLD
        if not len(r):
            return "none"
        if np.all(r > -eps):
            return "regular_minimal"
        if np.all(r < eps):
            return "regular_maximal"
        return "neither"

    @property
    def counterexample(self) -> bool:
        return bool(self.exceedances())

    def summary(self) -> dict:
        out = {
            "kind": self.kind, "n": self.n, "w": self.w, "samples": len(self.samples),
            "solved": len(self.ok), "skipped": self.skipped, "baseline": dict(self.baseline),
            "counterexample": self.counterexample,
            "reproduction": {"seed": self.seed, "scale": self.scale, "n": self.n, "w": self.w,
                             "exceedances": [{"metric": m, "index": s.index, "spec": s.spec.to_dict()}
                                             for m, s in self.exceedances()]},
        }
        for m in self.metrics:
            r = self.ratios(m)
            out[f"{m}_ratio_min"] = float(r.min()) if len(r) else None
            out[f"{m}_ratio_max"] = float(r.max()) if len(r) else None
            ext = self.extremal(m)
            out[f"{m}_extremal_index"] = None if ext is None else ext.index
            out[f"{m}_direction"] = self.direction(m)
        return out

    def to_json(self) -> str:
        return json.dumps(self.summary(), indent=2)

    def to_csv(self) -> str:
        buf = io.StringIO()
        buf.write(f"# seed={self.seed} scale={self.scale!r} n={self.n} w={self.w!r} kind={self.kind}\n")
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(SAMPLE_HEADER)
        for s in self.samples:
            writer.writerow([s.index, s.status, s.error, *(f"{x:.17g}" for x in
                             (s.perimeter, s.diameter, s.circumradius, s.phi_sum)),
                             "true" if s.valid else "false",
                             ";".join(f"{x:.17g}" for x in s.spec.perturbation)])
        return buf.getvalue()


SAMPLE_HEADER = ("index", "status", "error", "perimeter", "diameter", "circumradius",
                 "phi_sum", "valid", "perturbation")


def _sample(spec: SolveSpec, index: int) -> SampleRecord:
    nan = float("nan")
    try:
        orp = solve_ordinary_reduced(spec)
    except ValidationFailed as exc:
        if isinstance(exc.cause, AngleSumExceeded):
            # a converged polygon with angle sum above pi is a solver bug
            raise
        return SampleRecord(index, "skipped", str(exc), nan, nan, nan, nan, False, spec)
    except HypReduceError as exc:
        return SampleRecord(index, "skipped", str(exc), nan, nan, nan, nan, False, spec)
    poly = orp.polygon
    return SampleRecord(index, "ok", "", perimeter_direct(poly), diameter(poly)[0],
                        min_enclosing_disk(poly).radius, orp.phi_sum, True, spec)


def _baseline(n: int, w: float) -> dict[str, float]:
    reg = regular_ngon(n, w)
    return {"perimeter": regular_perimeter(n, w), "diameter": diameter(reg.polygon)[0],
            "circumradius": min_enclosing_disk(reg.polygon).radius}


def _sweep(kind: str, n: int, w: float, samples: int, seed: int, scale: float | None,
           include_regular: bool) -> SweepReport:
    if samples < 0:
        raise InvalidSolveSpec("samples must be non-negative")
    scale = 0.1 * w if scale is None else scale
    children = np.random.SeedSequence(seed).spawn(samples)
    records = []
    for i, child in enumerate(children):
        if include_regular and i == 0:
            spec = SolveSpec.regular(n, w)
        else:
            spec = SolveSpec.random(n, w, scale, child)
        records.append(_sample(spec, i))
    return SweepReport(kind, n, w, seed, scale, _baseline(n, w), tuple(records))


def sweep_perimeter(n: int, w: float, samples: int, seed: int = 0, scale: float | None = None,
                    include_regular: bool = False) -> SweepReport:
    return _sweep("perimeter", n, w, samples, seed, scale, include_regular)


def sweep_diameter_circumradius(n: int, w: float, samples: int, seed: int = 0,
                                scale: float | None = None,
                                include_regular: bool = False) -> SweepReport:
    return _sweep("diameter_circumradius", n, w, samples, seed, scale, include_regular)


# -- regular polygons against the circle ---------------------------------------------


@dataclass(frozen=True)
class ScanRow:
    w: float
    circle: float
    perimeters: dict[int, float]
    direct: dict[int, float]

    @property
    def triangle_exceeds_circle(self) -> bool:
        return self.perimeters[3] > self.circle

    @property
    def monotone_in_n(self) -> bool:
        vals = [self.perimeters[n] for n in sorted(self.perimeters)]
        return all(a >= b for a, b in zip(vals, vals[1:])) or all(a <= b for a, b in zip(vals, vals[1:]))


@dataclass(frozen=True)
class ScanTable:
    ns: tuple[int, ...]
    rows: tuple[ScanRow, ...]

    def sign_changes(self) -> list[tuple[float, float]]:
        """Consecutive grid pairs between which triangle minus circle changes sign."""
        out = []
        for a, b in zip(self.rows, self.rows[1:]):
            if a.triangle_exceeds_circle != b.triangle_exceeds_circle:
                out.append((a.w, b.w))
        return out

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["w", "circle", *(f"regular_{n}" for n in self.ns),
                         "triangle_exceeds_circle", "monotone_in_n"])
        for r in self.rows:
            writer.writerow([f"{r.w:.17g}", f"{r.circle:.17g}",
                             *(f"{r.perimeters[n]:.17g}" for n in self.ns),
                             "true" if r.triangle_exceeds_circle else "false",
                             "true" if r.monotone_in_n else "false"])
        return buf.getvalue()


def regular_vs_circle_scan(w_grid, ns=(3, 5, 7, 9, 11, 13, 15), construct: bool = False) -> ScanTable:
    """Perimeters of regular n-gons of width w against the circle of width w.

    With ``construct`` the polygons are also built and measured directly.
    """
    rows = []
    for w in w_grid:
        w = float(w)
        if not w > 0:
            raise InvalidSolveSpec(f"grid values must be positive, got {w}")
        per = {n: regular_perimeter(n, w) for n in ns}
        direct = {n: perimeter_direct(regular_ngon(n, w).polygon) for n in ns} if construct else {}
        rows.append(ScanRow(w, circle_circumference(w), per, direct))
    return ScanTable(tuple(ns), tuple(rows))
