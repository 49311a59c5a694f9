import json
from fractions import Fraction

import pytest

from lfpoly import io
from lfpoly.builders import build_polytope, ns_facets
from lfpoly.cli import RunConfig, main, parse, read_config
from lfpoly.errors import DegeneratePlane, ValidationError
from lfpoly.scenario import Scenario
from lfpoly.slice import (
    SlicePlane, lf_extreme_point, quantum_max_point, run_slice, slice_csv_lines, uniform_point,
)

S32 = Scenario(3, 2)


def test_degenerate_plane():
    u, e = uniform_point(), lf_extreme_point()
    mid = tuple((a + b) / 2 for a, b in zip(u, e))
    with pytest.raises(DegeneratePlane):
        SlicePlane(u, e, mid)


def test_slice_special_points(lf32, lhv32):
    plane = SlicePlane.default(resolution=5, low=Fraction(-1), high=Fraction(1))
    rows = run_slice(plane, lhv32.facets, lf32.facets, ns_facets(S32), threads=2)
    by_st = {(r[0], r[1]): r for r in rows}
    assert by_st[(0, 0)][4:] == (True, True, True)
    x, y, lhv, lf, ns = by_st[(1, 0)][2:]
    assert (x, y, lhv, lf, ns) == (6, -2, False, True, True)
    x, y, lhv, lf, ns = by_st[(0, 1)][2:]
    assert (lhv, lf, ns) == (False, False, True)
    assert float(x) == pytest.approx(7.345, abs=0.01)
    lines = slice_csv_lines(rows)
    assert lines[0] == "s,t,x_axis,y_axis,valid,in_lhv,in_lf,in_ns,in_quantum"
    assert all(line.endswith(",") for line in lines[1:])
    assert plane.point(0, 1) == quantum_max_point()


def test_slice_threads_do_not_change_output(lf32, lhv32):
    plane = SlicePlane.default(resolution=9)
    args = (plane, lhv32.facets, lf32.facets, ns_facets(S32))
    assert run_slice(*args) == run_slice(*args, threads=3)


def test_polytope_files_round_trip(tmp_path):
    p = build_polytope("lhv", Scenario(2, 2))
    manifest = io.write_polytope(tmp_path, p)
    assert manifest["vertices"] == 16 and manifest["facets"] == 24
    assert io.read_vertices(tmp_path / "vertices.jsonl").as_set() == p.vertices.as_set()
    assert io.read_facets(tmp_path / "facets.jsonl").as_set() == p.facets.as_set()
    first = json.loads((tmp_path / "vertices.jsonl").read_text().splitlines()[3])
    assert set(first) == {"vertex"} and all(isinstance(v, str) for v in first["vertex"])


def test_config_file_with_flag_override(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# sweep settings\nmu = 0.5, 0.9\nangles = 168,0,118,175\nout = from-config\n")
    assert read_config(cfg)["mu"] == "0.5, 0.9"
    ns = parse(["sweep", "--config", str(cfg), "--out", str(tmp_path / "cli")])
    rc = RunConfig.from_args(ns)
    assert rc.mus == (0.5, 0.9) and rc.out == str(tmp_path / "cli")


def test_config_rejects_unknown_keys(tmp_path, capsys):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("colour = blue\n")
    assert main(["sweep", "--config", str(cfg)]) == 2
    err = json.loads(capsys.readouterr().err)
    assert err["error"] == "ValidationError"


def test_run_config_validation():
    ns = parse(["seesaw", "--dims", "1,2"])
    with pytest.raises(ValidationError):
        RunConfig.from_args(ns)


def test_exit_codes(tmp_path, capsys):
    assert main(["enumerate", "--scenario", "3,x"]) == 2
    assert main(["enumerate", "--scenario", "5,3", "--model", "lhv", "--cap", "10", "--out", str(tmp_path)]) == 3
    err = capsys.readouterr().err.strip().splitlines()[-1]
    assert json.loads(err)["error"] == "CapExceeded"


def test_enumerate_collapse_is_byte_identical(tmp_path):
    for model in ("lf", "lhv"):
        assert main(["enumerate", "--scenario", "2,2", "--model", model, "--out", str(tmp_path / model)]) == 0
    assert (tmp_path / "lf" / "facets.jsonl").read_bytes() == (tmp_path / "lhv" / "facets.jsonl").read_bytes()


def test_enumerate_lhv32_vertex_file(tmp_path):
    assert main(["enumerate", "--scenario", "3,2", "--model", "lhv", "--out", str(tmp_path)]) == 0
    assert len((tmp_path / "vertices.jsonl").read_text().splitlines()) == 64


def test_sweep_and_membership_agree(tmp_path, capsys):
    out = tmp_path / "sweep"
    assert main(["sweep", "--out", str(out), "--mu", "0,0.8", "--behaviors"]) == 0
    csv_lines = (out / "sweep.csv").read_text().splitlines()
    assert csv_lines[0] == "mu,label,lhs,bound,violated"
    assert all(line.endswith("false") for line in csv_lines[1:6])
    behavior = out / "behavior_mu0.80.json"
    assert main(["membership", str(behavior), "--model", "lf", "--out", str(tmp_path / "m_lf")]) == 0
    cert = json.loads((tmp_path / "m_lf" / "certificate.json").read_text())
    assert cert["verdict"] == "inside" and 0 < cert["rounding_radius"] < 1e-9
    assert main(["membership", str(behavior), "--model", "lhv", "--out", str(tmp_path / "m_lhv")]) == 0
    cert = json.loads((tmp_path / "m_lhv" / "certificate.json").read_text())
    assert cert["verdict"] == "outside" and cert["separator_class"] == "Bell non-LF"


def test_membership_of_extreme_vertex(tmp_path):
    path = tmp_path / "ext.json"
    path.write_text(json.dumps({"scenario": [3, 2], "collins_gisin": [str(v) for v in lf_extreme_point()]}))
    assert main(["membership", str(path), "--model", "lf", "--out", str(tmp_path)]) == 0
    cert = json.loads((tmp_path / "certificate.json").read_text())
    assert cert["verdict"] == "inside" and list(cert["weights"].values()) == ["1"]


def test_membership_rejects_signalling(tmp_path):
    table = [0.25] * 36
    table[0] += 0.1
    table[2] -= 0.1
    path = tmp_path / "sig.json"
    path.write_text(json.dumps({"scenario": [3, 2], "table": table}))
    assert main(["membership", str(path), "--out", str(tmp_path)]) == 2


def test_seesaw_and_classify_commands(tmp_path, capsys):
    assert main(["seesaw", "--ineq", "brukner", "--dims", "2,2", "--restarts", "5", "--out", str(tmp_path)]) == 0
    report = json.loads((tmp_path / "seesaw.json").read_text())
    assert report["value"] == pytest.approx(2.828427, abs=1e-6)
    first = (tmp_path / "seesaw.json").read_bytes()
    assert main(["seesaw", "--ineq", "brukner", "--dims", "2,2", "--restarts", "5", "--out", str(tmp_path)]) == 0
    assert (tmp_path / "seesaw.json").read_bytes() == first
    assert main(["enumerate", "--scenario", "2,2", "--model", "lhv", "--out", str(tmp_path / "p")]) == 0
    assert main(["classify", str(tmp_path / "p" / "facets.jsonl"), "--out", str(tmp_path / "p")]) == 3
    assert main(["classify", str(tmp_path / "p" / "facets.jsonl"), "--lenient", "--out", str(tmp_path / "p")]) == 0
