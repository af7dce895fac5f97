"""Command line front end.

Exit codes: 0 success, 1 domain or validation error, 2 usage error.  When
``HYPREDUCE_SEED`` is set it overrides ``--seed``.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys

import numpy as np

from . import explorer
from .covering import boundary_cover_point, covering_center_set
from .errors import HypReduceError
from .formulas import g_w, p_w, p_w_derivatives
from .io import PolygonFormatError, polygon_from_json, polygon_to_dict
from .polygon import (
    area,
    diameter,
    min_enclosing_disk,
    min_width,
    perimeter_direct,
)
from .reduced import regular_ngon, validate
from .render import OVERLAYS, render_svg
from .report import bounds_report, write_csv


class UsageError(Exception):
    pass


def _positive(x: str) -> float:
    v = float(x)
    if not (v > 0 and math.isfinite(v)):
        raise argparse.ArgumentTypeError(f"expected a positive number, got {x}")
    return v


def _odd(x: str) -> int:
    v = int(x)
    if v < 3 or v % 2 == 0:
        raise argparse.ArgumentTypeError(f"expected an odd integer >= 3, got {x}")
    return v


def _count(x: str) -> int:
    v = int(x)
    if v < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {x}")
    return v


def _grid(x: str) -> list[float]:
    try:
        vals = [_positive(s) for s in x.split(",") if s.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc
    if not vals:
        raise argparse.ArgumentTypeError("empty grid")
    return vals


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--width", type=_positive, help="minimal width w")
    common.add_argument("--n", type=_odd, help="number of vertices (odd)")
    common.add_argument("--tol", type=_positive, default=1e-9)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--samples", type=_count, default=200)
    common.add_argument("--out", help="output file (default: standard output)")
    common.add_argument("--format", choices=("json", "csv", "svg"), default="json")

    infile = argparse.ArgumentParser(add_help=False)
    infile.add_argument("--in", dest="infile", default="-", help="polygon JSON (default: standard input)")

    p = _Parser(prog="hypreduce", description="Ordinary reduced polygons in the hyperbolic plane.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sp = sub.add_parser("regular", parents=[common], help="regular n-gon of width w")
    sp.add_argument("--azimuth", type=float, default=0.0)
    sp = sub.add_parser("solve", parents=[common], help="perturbed non-regular solution")
    sp.add_argument("--scale", type=float, default=None, help="perturbation scale (default 0.1 w)")
    sub.add_parser("validate", parents=[common, infile], help="check the ordinary reduced conditions")
    sub.add_parser("measure", parents=[common, infile], help="metric quantities of a convex polygon")
    sub.add_parser("bounds", parents=[common, infile], help="bounds report")
    sub.add_parser("butterflies", parents=[common, infile], help="butterfly data")
    sub.add_parser("cover", parents=[common, infile], help="boundary covering disk and center set")
    for name in ("sweep-perimeter", "sweep-extremal"):
        sp = sub.add_parser(name, parents=[common], help="sampling sweep")
        sp.add_argument("--scale", type=float, default=None)
    sp = sub.add_parser("scan-circle", parents=[common], help="regular polygons against the circle")
    sp.add_argument("--grid", type=_grid, default=None, help="comma-separated widths")
    sp.add_argument("--construct", action="store_true", help="also measure constructed polygons")
    sp = sub.add_parser("pw-table", parents=[common], help="tabulate g_w, p_w and derivatives")
    sp.add_argument("--steps", type=_count, default=18)
    sp = sub.add_parser("render", parents=[common, infile], help="SVG figure")
    sp.add_argument("--overlay", action="append", choices=OVERLAYS, default=[])
    return p


def _need(args, *names):
    for name in names:
        if getattr(args, name) is None:
            raise UsageError(f"{args.command}: --{name} is required")


def _read_polygon(args):
    try:
        if args.infile == "-":
            text = sys.stdin.read()
        else:
            with open(args.infile, encoding="utf-8") as fh:
                text = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {args.infile}: {exc}") from exc
    try:
        return polygon_from_json(text)
    except PolygonFormatError as exc:
        raise UsageError(str(exc)) from exc


def _orp(args):
    poly, doc_width = _read_polygon(args)
    w = args.width if args.width is not None else doc_width
    if w is None:
        w = min_width(poly)
    return validate(poly, w, tol=args.tol)


def _table(rows: list[dict], fmt: str) -> str:
    if fmt == "json":
        return json.dumps(rows, indent=2)
    keys = list(rows[0]) if rows else []
    lines = [",".join(keys)]
    for r in rows:
        lines.append(",".join(f"{r[k]:.17g}" if isinstance(r[k], float) else str(r[k]) for k in keys))
    return "\n".join(lines) + "\n"


def _no_svg(args):
    if args.format == "svg":
        raise UsageError(f"{args.command}: --format svg is only available for render")


def _cmd_regular(args) -> str:
    _need(args, "n", "width")
    orp = regular_ngon(args.n, args.width, args.azimuth)
    if args.format == "svg":
        return render_svg(orp)
    if args.format == "csv":
        return _table([{"x": float(x), "y": float(y)} for x, y in orp.polygon.poincare_coords()], "csv")
    return json.dumps(polygon_to_dict(orp.polygon, orp.w), indent=2)


def _cmd_solve(args) -> str:
    _need(args, "n", "width")
    _no_svg(args)
    scale = 0.1 * args.width if args.scale is None else args.scale
    spec = explorer.SolveSpec.random(args.n, args.width, scale, args.seed)
    res = explorer.solve_with_diagnostics(spec)
    doc = polygon_to_dict(res.polygon.polygon, res.polygon.w, spec=spec.to_dict(),
                          iterations=res.iterations, jacobian_rank=res.jacobian_rank,
                          family_dimension=res.family_dimension)
    return json.dumps(doc, indent=2)


def _cmd_validate(args) -> str:
    _no_svg(args)
    orp = _orp(args)
    return json.dumps({
        "valid": True, "n": orp.n, "w": orp.w, "phi_sum": orp.phi_sum, "gamma": orp.gamma,
        "max_width_residual": max(abs(r) for r in orp.width_residuals),
    }, indent=2)


def _cmd_measure(args) -> str:
    _no_svg(args)
    poly, _ = _read_polygon(args)
    d, pair = diameter(poly)
    row = {"n": poly.n, "perimeter": perimeter_direct(poly), "area": area(poly), "diameter": d,
           "diameter_pair": list(pair), "min_width": min_width(poly),
           "circumradius": min_enclosing_disk(poly, args.seed).radius}
    if args.format == "csv":
        row["diameter_pair"] = ";".join(map(str, pair))
        return _table([row], "csv")
    row["interior_angles"] = [float(x) for x in poly.interior_angles()]
    row["edge_lengths"] = [float(x) for x in poly.edge_lengths()]
    return json.dumps(row, indent=2)


def _cmd_bounds(args) -> str:
    _no_svg(args)
    rep = bounds_report(_orp(args), args.seed)
    if args.format == "csv":
        return write_csv([rep])
    return json.dumps(rep.to_dict(), indent=2)


def _cmd_butterflies(args) -> str:
    _no_svg(args)
    orp = _orp(args)
    rows = [{"index": b.index, "phi": b.phi, "alpha": b.alpha, "beta": b.beta, "b": b.b, "c": b.c,
             "congruence_residual": b.congruence_residual()} for b in orp.butterflies]
    return _table(rows, args.format)


def _cmd_cover(args) -> str:
    _no_svg(args)
    orp = _orp(args)
    bc = boundary_cover_point(orp)
    region = covering_center_set(orp, orp.w)
    doc = {"w": orp.w, "point": [float(x) for x in bc.point.poincare], "max_distance": bc.max_distance,
           "edge": bc.edge, "fraction": bc.fraction, "center_set_empty": region.empty,
           "boundary_vertices": list(region.boundary_vertices)}
    if args.format == "csv":
        doc["point"] = ";".join(f"{x:.17g}" for x in doc["point"])
        doc["boundary_vertices"] = ";".join(map(str, doc["boundary_vertices"]))
        return _table([doc], "csv")
    return json.dumps(doc, indent=2)


def _cmd_sweep(args) -> str:
    _need(args, "n", "width")
    _no_svg(args)
    fn = explorer.sweep_perimeter if args.command == "sweep-perimeter" else explorer.sweep_diameter_circumradius
    rep = fn(args.n, args.width, args.samples, seed=args.seed, scale=args.scale)
    return rep.to_csv() if args.format == "csv" else rep.to_json()


def _cmd_scan(args) -> str:
    _no_svg(args)
    grid = args.grid if args.grid is not None else [round(0.25 * k, 10) for k in range(1, 41)]
    table = explorer.regular_vs_circle_scan(grid, construct=args.construct)
    if args.format == "csv":
        return table.to_csv()
    rows = [{"w": r.w, "circle": r.circle, "perimeters": {str(n): v for n, v in r.perimeters.items()},
             "direct": {str(n): v for n, v in r.direct.items()},
             "triangle_exceeds_circle": r.triangle_exceeds_circle, "monotone_in_n": r.monotone_in_n}
            for r in table.rows]
    return json.dumps({"rows": rows, "sign_changes": table.sign_changes()}, indent=2)


def _cmd_pw_table(args) -> str:
    _need(args, "width")
    _no_svg(args)
    w = args.width
    rows = []
    for x in np.linspace(0.0, math.pi, args.steps + 1):
        x = float(x)
        row = {"x": x, "g": g_w(w, x), "p": p_w(w, x)}
        if 0.0 < x < math.pi:
            row["dp"], row["d2p"] = p_w_derivatives(w, x)
        else:
            row["dp"] = row["d2p"] = float("nan")
        rows.append(row)
    if args.format == "json":
        for r in rows:
            for k in ("dp", "d2p"):
                if math.isnan(r[k]):
                    r[k] = None
    return _table(rows, args.format)


def _cmd_render(args) -> str:
    poly, doc_width = _read_polygon(args)
    w = args.width if args.width is not None else doc_width
    needs_orp = set(args.overlay) - {"circumcircle"}
    target = poly
    if needs_orp:
        target = validate(poly, w if w is not None else min_width(poly), tol=args.tol)
    return render_svg(target, overlays=tuple(args.overlay))


COMMANDS = {
    "regular": _cmd_regular, "solve": _cmd_solve, "validate": _cmd_validate,
    "measure": _cmd_measure, "bounds": _cmd_bounds, "butterflies": _cmd_butterflies,
    "cover": _cmd_cover, "sweep-perimeter": _cmd_sweep, "sweep-extremal": _cmd_sweep,
    "scan-circle": _cmd_scan, "pw-table": _cmd_pw_table, "render": _cmd_render,
}


def run(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        env_seed = os.environ.get("HYPREDUCE_SEED")
        if env_seed is not None:
            try:
                args.seed = int(env_seed)
            except ValueError as exc:
                raise UsageError(f"HYPREDUCE_SEED must be an integer, got {env_seed!r}") from exc
        output = COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    except HypReduceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(output if output.endswith("\n") else output + "\n")
    else:
        sys.stdout.write(output if output.endswith("\n") else output + "\n")
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
