import json

import numpy as np
import pytest

from slicepw import hardy as hd
from slicepw import io as sio
from slicepw import paley_wiener as pw
from slicepw import qft as qf
from slicepw import quaternion as qt
from slicepw import sampling as sp
from slicepw.errors import GridError
from slicepw.quaternion import UNIT_J, ImaginaryUnit


def objects():
    rng = np.random.default_rng(0)
    g = qf.UniformGrid.symmetric(2.0, 0.25)
    U = ImaginaryUnit.from_vector([1, -2, 0.5])
    ls = qf.LineSamples(g, qt.random_quaternions(rng, g.n))
    return {
        "line": ls,
        "spectrum": qf.Spectrum(g, qt.random_quaternions(rng, g.n), U),
        "compact": pw.random_compact_spectrum(rng, 2.0, U, n=33),
        "halfline": hd.random_rational_hardy(rng).half_line(30.0, 301, UNIT_J),
        "trace": hd.BoundaryTrace(ls, U),
        "samples": sp.SampleSet(np.pi, 4, qt.random_quaternions(rng, 9) / 3),
    }


def same(a, b):
    assert type(a) is type(b)
    assert np.array_equal(a.values, b.values)
    for attr in ("grid", "unit", "band", "K", "cutoff", "x_floor", "exact_cutoff"):
        if hasattr(a, attr):
            assert getattr(a, attr) == getattr(b, attr), attr


@pytest.mark.parametrize("name", list(objects()))
def test_json_round_trip_bit_exact(name, tmp_path):
    obj = objects()[name]
    path = tmp_path / f"{name}.json"
    sio.write_json(obj, path)
    same(obj, sio.read_json(path))
    # a second write of the read-back object is byte identical
    path2 = tmp_path / "again.json"
    sio.write_json(sio.read_json(path), path2)
    assert path.read_bytes() == path2.read_bytes()


@pytest.mark.parametrize("name", ["line", "spectrum", "samples"])
def test_csv_round_trip_bit_exact(name, tmp_path):
    obj = objects()[name]
    path = tmp_path / f"{name}.csv"
    sio.write_csv(obj, path)
    kw = {"band": obj.band} if name == "samples" else {"unit": getattr(obj, "unit", None)}
    back = sio.read_csv(path, **kw)
    assert np.array_equal(back.values, obj.values)
    if name != "samples":
        assert np.allclose(back.grid.points, obj.grid.points, rtol=0, atol=1e-15)


def test_csv_header_and_columns(tmp_path):
    text = sio.to_csv(objects()["samples"])
    lines = text.splitlines()
    assert lines[0] == "k,w,x,y,z"
    assert lines[1].startswith("-4,") and len(lines) == 10


def test_json_is_plain_json():
    d = json.loads(sio.dumps(sio.to_dict(objects()["spectrum"])))
    assert set(d) == {"grid", "unit", "values"}
    assert len(d["values"][0]) == 4


def test_malformed_inputs(tmp_path):
    with pytest.raises(GridError):
        sio.from_dict({"grid": {"min": 0, "max": 1, "n": 2}})
    with pytest.raises(GridError):
        sio.from_dict({"grid": {"min": 0, "max": 1, "n": 2}, "values": [[1, 2, 3]] * 2})
    with pytest.raises(GridError):
        sio.from_dict({"band": 1.0, "K": 1, "values": [[0, 0, 0, 0]]})
    with pytest.raises(TypeError):
        sio.to_dict(object())
    with pytest.raises(ValueError):
        sio.dumps({"a": float("nan")})
    bad = tmp_path / "bad.csv"
    bad.write_text("k,w,x,y,z\n0,1,0,0,0\n")
    with pytest.raises(GridError):
        sio.read_csv(bad)
    bad.write_text("x,w\n0,1\n")
    with pytest.raises(GridError):
        sio.read_csv(bad)


def test_atomic_write_leaves_no_temp_files(tmp_path):
    sio.atomic_write(tmp_path / "a.txt", "hello")
    assert [p.name for p in tmp_path.iterdir()] == ["a.txt"]
    assert (tmp_path / "a.txt").read_text() == "hello"
