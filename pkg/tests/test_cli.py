import json
import subprocess
import sys

import numpy as np
import pytest

from slicepw import hardy as hd
from slicepw import io as sio
from slicepw import paley_wiener as pw
from slicepw import qft as qf
from slicepw import quaternion as qt
from slicepw import sampling as sp
from slicepw.cli import main
from slicepw.quaternion import UNIT_J


def run(*argv):
    return main([str(a) for a in argv], quiet=True)


def load(path):
    return json.loads(path.read_text())


@pytest.fixture
def files(tmp_path):
    out = {}
    box = pw.CompactSpectrum.from_function(lambda t: np.ones_like(t) / qf.SQRT_2PI, np.pi, 513)
    out["box"] = tmp_path / "box.json"
    sio.write_json(box, out["box"])
    out["zero"] = tmp_path / "zero.json"
    sio.write_json(pw.CompactSpectrum(2.0, np.zeros((33, 4))), out["zero"])
    g = hd.random_rational_hardy(np.random.default_rng(0))
    out["halfline"] = tmp_path / "halfline.json"
    sio.write_json(g.half_line(), out["halfline"])
    grid = qf.UniformGrid.symmetric(12.0, 0.01)
    out["gauss"] = tmp_path / "gauss.json"
    sio.write_json(qf.LineSamples.from_function(lambda x: np.exp(-(x**2) / 2), grid), out["gauss"])
    tgrid = qf.UniformGrid.symmetric(100.0, 0.05)
    out["trace"] = tmp_path / "trace.json"
    sio.write_json(g.trace(tgrid, UNIT_J), out["trace"])
    y = tgrid.points
    out["gtrace"] = tmp_path / "gtrace.json"
    sio.write_json(hd.BoundaryTrace(qf.LineSamples(tgrid, qt.from_slice(np.exp(-(y**2)), 0 * y, UNIT_J.vec)), UNIT_J), out["gtrace"])
    v = np.zeros((41, 4))
    v[20, 0] = 1.0
    out["delta"] = tmp_path / "delta.json"
    sio.write_json(sp.SampleSet(np.pi, 20, v), out["delta"])
    rng = np.random.default_rng(1)
    f = pw.synthesize_compact(pw.random_compact_spectrum(rng, np.pi, qt.random_units(rng, 1)[0]))
    out["pw"] = tmp_path / "pw.json"
    sio.write_json(sp.SampleSet.from_function(f, np.pi, 200), out["pw"])
    out["f"] = f
    out["g"] = g
    return out


def test_synth_box_gives_sinc(files, tmp_path):
    o = tmp_path / "o.json"
    assert run("synth", files["box"], "--extent", 5, "--grid-step", 0.25, "--out", o) == 0
    d = load(o)
    x = np.linspace(-5, 5, 41)
    v = np.array(d["values"])
    assert np.max(np.abs(v[:, 0] - np.sinc(x))) < 1e-4
    assert np.max(np.abs(v[:, 1:])) < 1e-15
    assert d["manifest"]["kind"] == "compact" and d["manifest"]["quadrature"] == "trapezoid"


def test_synth_zero_and_csv(files, tmp_path):
    o = tmp_path / "o.csv"
    assert run("synth", files["zero"], "--extent", 2, "--grid-step", 0.5, "--out", o) == 0
    back = sio.read_csv(o)
    assert back.grid.n == 9 and not np.any(back.values)


def test_synth_halfline(files, tmp_path):
    o = tmp_path / "o.json"
    assert run("synth", files["halfline"], "--re", 1.0, "--unit", "0,0,1", "--extent", 3, "--grid-step", 0.5, "--out", o) == 0
    d = load(o)
    y = np.linspace(-3, 3, 13)
    ref = files["g"](qt.from_slice(np.ones_like(y), y, [0.0, 0.0, 1.0]))
    assert np.max(np.abs(np.array(d["values"]) - ref)) < 1e-9
    assert d["manifest"]["re"] == 1.0


def test_synth_halfline_below_floor_exit_3(files):
    assert run("synth", files["halfline"], "--re", 0.1) == 3
    assert run("synth", files["halfline"], "--re", -1.0) == 5


def test_qft_gaussian_pair(files, tmp_path):
    o = tmp_path / "s.json"
    assert run("qft", files["gauss"], "--unit", "1,1,0", "--out", o) == 0
    S = sio.read_json(o)
    assert np.allclose(S.unit.vec, [2**-0.5, 2**-0.5, 0])
    assert np.max(np.abs(S.values[:, 0] - np.exp(-(S.t**2) / 2))) < 1e-8
    assert np.max(np.abs(S.values[:, 1:])) < 1e-12


def test_qft_zero(tmp_path):
    z = tmp_path / "z.json"
    sio.write_json(qf.LineSamples(qf.UniformGrid.symmetric(1.0, 0.25), np.zeros((9, 4))), z)
    o = tmp_path / "s.json"
    assert run("qft", z, "--out", o) == 0
    assert not np.any(sio.read_json(o).values)


def test_qft_essential(files, tmp_path):
    o = tmp_path / "e.json"
    assert run("qft", files["trace"], "--essential", "--out", o) == 0
    assert load(o)["essential"]["pass"] is True
    assert run("qft", files["gtrace"], "--essential", "--out", o) == 4
    d = load(o)["essential"]
    assert d["max_deviation"] > 1e-3 and d["pass"] is False


def test_reconstruct_sinc(files, tmp_path):
    o = tmp_path / "r.json"
    assert run("reconstruct", files["delta"], "--at", "0.3,0.4,0,0", "--at", "1,0,0.5,0", "--out", o) == 0
    d = load(o)
    q = np.array(d["points"])
    assert np.max(qt.norm(np.array(d["values"]) - qt.sinc_q(q))) < 1e-12
    assert d["path"] == "series"


def test_reconstruct_kernel_vs_series(files, tmp_path):
    pts = tmp_path / "pts.json"
    pts.write_text(json.dumps([[0.3, 0.4, 0, 0], [1.0, 0, 0.2, 0.1], [-2.0, 0.1, 0.1, 0.1]]))
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert run("reconstruct", files["pw"], "--points", pts, "--out", a) == 0
    assert run("reconstruct", files["pw"], "--points", pts, "--kernel", "--out", b) == 0
    va, vb = np.array(load(a)["values"]), np.array(load(b)["values"])
    assert np.max(qt.norm(va - vb)) < 1e-5
    assert np.max(qt.norm(va - files["f"].eval_array(np.array(load(a)["points"])))) < 1e-6


def test_reconstruct_strip_guard(files):
    assert run("reconstruct", files["delta"], "--at", "0,2,0,0", "--M", 0.5) == 5
    assert run("reconstruct", files["delta"]) == 2
    assert run("reconstruct", files["delta"], "--at", "1,2") == 2


def test_verify_reports(tmp_path):
    o = tmp_path / "v.json"
    assert run("verify", "algebra", "--out", o) == 0
    d = load(o)
    assert d["suite"] == "algebra" and d["seed"] == 7
    assert all({"name", "max_error", "tolerance", "pass"} <= set(c) for c in d["checks"])
    assert run("verify", "algebra", "structure", "--out", o) == 0
    assert [r["suite"] for r in load(o)["reports"]] == ["algebra", "structure"]


def test_verify_pw_compact_defaults(tmp_path):
    o = tmp_path / "v.json"
    assert run("verify", "pw-compact", "--out", o) == 0
    d = load(o)
    assert all(c["pass"] and c["max_error"] is not None for c in d["checks"])


def test_verify_sampling_under_truncated_fails(tmp_path):
    o = tmp_path / "v.json"
    assert run("verify", "sampling", "--trunc-K", 5, "--out", o) == 4
    c = {c["name"]: c for c in load(o)["checks"]}["series_vs_synthesis"]
    assert c["pass"] is False and c["max_error"] > 1e-6


def test_verify_usage_errors():
    assert run("verify") == 2
    assert run("verify", "nope") == 2
    assert run("frobnicate") == 2


def test_kernel_eval(tmp_path):
    o = tmp_path / "k.json"
    assert run("kernel-eval", "--kind", "rk", "--q1", "1,0,0,0", "--q2", "1,0,0,0", "--out", o) == 0
    assert load(o)["value"][0] == pytest.approx(0.5)
    assert run("kernel-eval", "--kind", "rk", "--q1", "1,0,0,0", "--q2", "1,0,0,0", "--method", "quad", "--out", o) == 0
    assert load(o)["value"][0] == pytest.approx(0.5, abs=1e-10)
    assert run("kernel-eval", "--kind", "poisson", "--q1", "1,0,0,0", "--out", o) == 0
    assert load(o)["value"][0] == pytest.approx(1 / np.pi)
    assert run("kernel-eval", "--kind", "sinc", "--q1", "0.5,0,0,0", "--out", o) == 0
    assert load(o)["value"][0] == pytest.approx(2 / np.pi)
    assert run("kernel-eval", "--kind", "rk", "--q1=-1,0,0,0", "--q2=1,0,0,0") == 5
    assert run("kernel-eval", "--kind", "rk", "--q1", "1,0,0,0") == 2


def test_config_file(files, tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"extent": 2.0, "grid_step": 0.5}))
    o = tmp_path / "o.json"
    assert run("synth", files["box"], "--config", cfg, "--out", o) == 0
    assert len(load(o)["values"]) == 9
    cfg.write_text(json.dumps({"extnet": 2.0}))
    assert run("synth", files["box"], "--config", cfg) == 2
    assert run("synth", files["box"], "--grid-step", -1) == 2


def test_malformed_inputs(files, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run("qft", bad) == 2
    assert run("qft", tmp_path / "missing.json") == 2
    assert run("synth", files["gauss"]) == 2
    assert run("qft", files["gauss"], "--unit", "0,0,0") == 2


def test_deterministic_reruns(files, tmp_path):
    for argv in (["verify", "algebra"], ["qft", files["gauss"]], ["synth", files["box"], "--extent", 3]):
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        assert run(*argv, "--out", a) == run(*argv, "--out", b) == 0
        assert a.read_bytes() == b.read_bytes()


def test_module_entry_point(files):
    r = subprocess.run(
        [sys.executable, "-m", "slicepw", "kernel-eval", "--kind", "sinc", "--q1", "0,0,0,0"],
        capture_output=True,
        text=True,
    )
    assert r.returncode == 0
    assert json.loads(r.stdout)["value"] == [1, 0, 0, 0]
    r = subprocess.run([sys.executable, "-m", "slicepw", "verify"], capture_output=True, text=True)
    assert r.returncode == 2 and "usage error" in r.stderr
