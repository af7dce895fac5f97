import json

import numpy as np
import pytest

from hypreduce import HPoint, diam_upper, regular_ngon
from hypreduce.polygon import convex_hull
from hypreduce.cli import run
from hypreduce.io import PolygonFormatError, polygon_from_json, polygon_to_json


def call(capsys, argv, stdin=None, monkeypatch=None):
    if stdin is not None:
        import io
        monkeypatch.setattr("sys.stdin", io.StringIO(stdin))
    code = run(argv)
    out, err = capsys.readouterr()
    return code, out, err


def regular_json(n, w):
    orp = regular_ngon(n, w)
    return polygon_to_json(orp.polygon, orp.w)


def test_io_round_trip():
    orp = regular_ngon(7, 1.3)
    poly, w = polygon_from_json(polygon_to_json(orp.polygon, orp.w))
    assert w == orp.w
    np.testing.assert_allclose(poly.poincare_coords(), orp.polygon.poincare_coords(), rtol=0, atol=1e-15)


@pytest.mark.parametrize("text", ["{", "[]", '{"model": "klein", "vertices": []}',
                                  '{"vertices": [[0, 0], [2, 0], [0, 0.5]]}',
                                  '{"vertices": [[0, "a"], [0.1, 0], [0, 0.5]]}',
                                  '{"vertices": [1, 2, 3]}'])
def test_io_rejects_malformed(text):
    with pytest.raises(PolygonFormatError):
        polygon_from_json(text)


@pytest.mark.parametrize("n", [3, 5, 7, 9, 11, 13, 15])
@pytest.mark.parametrize("w", [0.1, 1.0, 5.0])
def test_regular_then_validate(n, w, capsys, monkeypatch):
    code, out, _ = call(capsys, ["regular", "--n", str(n), "--width", str(w)])
    assert code == 0
    code, out, _ = call(capsys, ["validate"], stdin=out, monkeypatch=monkeypatch)
    assert code == 0
    doc = json.loads(out)
    assert doc["valid"] and doc["n"] == n and doc["max_width_residual"] < 1e-9


def test_validate_failure_exit_code(capsys, monkeypatch):
    verts = [HPoint.from_polar(1.0, 2.1 * k) for k in range(3)]
    text = polygon_to_json(convex_hull(verts), 1.0)
    code, _, err = call(capsys, ["validate"], stdin=text, monkeypatch=monkeypatch)
    assert code == 1 and err.startswith("error:")


def test_usage_errors(capsys, monkeypatch):
    assert call(capsys, ["regular", "--n", "4", "--width", "1"])[0] == 2
    assert call(capsys, ["regular", "--n", "5"])[0] == 2
    assert call(capsys, ["regular", "--n", "5", "--width", "-1"])[0] == 2
    assert call(capsys, ["frobnicate"])[0] == 2
    assert call(capsys, ["validate"], stdin="not json", monkeypatch=monkeypatch)[0] == 2
    assert call(capsys, ["measure", "--format", "svg"], stdin=regular_json(5, 1.0), monkeypatch=monkeypatch)[0] == 2
    assert call(capsys, ["validate", "--in", "/nonexistent/poly.json"])[0] == 2


def test_bounds_csv(tmp_path, capsys):
    path = tmp_path / "tri.json"
    path.write_text(regular_json(3, 1.0))
    code, out, _ = call(capsys, ["bounds", "--in", str(path), "--format", "csv"])
    assert code == 0
    header, row = out.splitlines()
    rec = dict(zip(header.split(","), row.split(",")))
    assert float(rec["diam_upper"]) == diam_upper(1.0)
    assert float(rec["diameter"]) == pytest.approx(diam_upper(1.0), abs=1e-9)


def test_out_file(tmp_path, capsys):
    target = tmp_path / "p.json"
    code, out, _ = call(capsys, ["regular", "--n", "5", "--width", "1", "--out", str(target)])
    assert code == 0 and out == ""
    assert polygon_from_json(target.read_text())[1] == 1.0


def test_seed_environment_override(capsys, monkeypatch):
    args = ["solve", "--n", "5", "--width", "1", "--scale", "0.05"]
    monkeypatch.setenv("HYPREDUCE_SEED", "7")
    a = json.loads(call(capsys, args + ["--seed", "1"])[1])
    monkeypatch.delenv("HYPREDUCE_SEED")
    b = json.loads(call(capsys, args + ["--seed", "7"])[1])
    assert a == b and a["spec"]["seed"] == 7
    monkeypatch.setenv("HYPREDUCE_SEED", "x")
    assert call(capsys, args)[0] == 2


def test_solve_reports_family_dimension(capsys):
    code, out, _ = call(capsys, ["solve", "--n", "7", "--width", "1", "--scale", "0.05", "--seed", "3"])
    assert code == 0
    doc = json.loads(out)
    assert doc["family_dimension"] == 4 and len(doc["vertices"]) == 7


@pytest.mark.parametrize("cmd,fmt", [("measure", "json"), ("measure", "csv"), ("bounds", "json"),
                                     ("butterflies", "json"), ("butterflies", "csv"),
                                     ("cover", "json"), ("cover", "csv"), ("render", "svg")])
def test_polygon_subcommands(cmd, fmt, tmp_path, capsys):
    path = tmp_path / "p.json"
    path.write_text(regular_json(5, 1.0))
    argv = [cmd, "--in", str(path), "--format", fmt]
    if cmd == "render":
        argv += ["--overlay", "butterflies", "--overlay", "cover"]
    code, out, _ = call(capsys, argv)
    assert code == 0 and out.strip()
    if fmt == "json":
        json.loads(out)


def test_sweeps(capsys):
    for cmd in ("sweep-perimeter", "sweep-extremal"):
        code, out, _ = call(capsys, [cmd, "--n", "5", "--width", "1", "--samples", "3", "--seed", "2"])
        assert code == 0
        doc = json.loads(out)
        assert doc["samples"] == 3 and doc["solved"] + doc["skipped"] == 3
        code, csv, _ = call(capsys, [cmd, "--n", "5", "--width", "1", "--samples", "3", "--seed", "2",
                                     "--format", "csv"])
        assert code == 0 and len(csv.splitlines()) == 5


def test_scan_and_table(capsys):
    code, out, _ = call(capsys, ["scan-circle", "--grid", "0.5,1,3", "--construct"])
    assert code == 0 and len(json.loads(out)["rows"]) == 3
    code, out, _ = call(capsys, ["pw-table", "--width", "1", "--steps", "4", "--format", "csv"])
    assert code == 0 and len(out.splitlines()) == 6
    assert call(capsys, ["scan-circle", "--grid", "0,1"])[0] == 2
