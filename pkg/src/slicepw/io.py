"""JSON and CSV serialization of samples, spectra and sample sets.

JSON layouts::

    LineSamples       {"grid": {"min", "max", "n"}, "unit": null, "values": [[w, x, y, z], ...]}
    Spectrum          same, with "unit": [x, y, z]
    CompactSpectrum   Spectrum plus "band"
    HalfLineSpectrum  Spectrum plus "cutoff" (and "x_floor", "exact_cutoff")
    BoundaryTrace     LineSamples plus "boundary": true and the trace unit
    SampleSet         {"band", "K", "values"} ordered k = -K..K

Floats are written with 17 significant digits, so a write/read cycle
reproduces every value bit for bit.  Files are written to a temporary name
and renamed into place.
"""

from __future__ import annotations

import csv
import io as _io
import json
import math
import os
import tempfile
from pathlib import Path

import numpy as np

from .errors import GridError
from .hardy import BoundaryTrace, HalfLineSpectrum
from .paley_wiener import CompactSpectrum
from .qft import LineSamples, Spectrum, UniformGrid
from .quaternion import ImaginaryUnit
from .sampling import SampleSet


def _fmt(x: float) -> str:
    if not math.isfinite(x):
        raise ValueError("non-finite floats cannot be serialized")
    if x == 0 and math.copysign(1.0, x) < 0:
        # JSON reads "-0" as the integer 0 and drops the sign
        return "-0.0"
    return format(x, ".17g")


def dumps(obj, indent: int | None = None) -> str:
    """JSON text with every float printed to 17 significant digits."""

    def enc(o, level):
        pad = "" if indent is None else "\n" + " " * (indent * (level + 1))
        end = "" if indent is None else "\n" + " " * (indent * level)
        sep = ", " if indent is None else ","
        if isinstance(o, bool) or o is None:
            return json.dumps(o)
        if isinstance(o, (int, np.integer)):
            return str(int(o))
        if isinstance(o, (float, np.floating)):
            return _fmt(float(o))
        if isinstance(o, str):
            return json.dumps(o)
        if isinstance(o, np.ndarray):
            return enc(o.tolist(), level)
        if isinstance(o, dict):
            if not o:
                return "{}"
            items = [pad + json.dumps(str(k)) + ": " + enc(v, level + 1) for k, v in o.items()]
            return "{" + sep.join(items) + end + "}"
        if isinstance(o, (list, tuple)):
            if not o:
                return "[]"
            # keep numeric rows on one line
            if all(isinstance(v, (int, float, np.floating, np.integer)) and not isinstance(v, bool) for v in o):
                return "[" + ", ".join(enc(v, level) for v in o) + "]"
            items = [pad + enc(v, level + 1) for v in o]
            return "[" + sep.join(items) + end + "]"
        raise TypeError(f"cannot serialize {type(o).__name__}")

    return enc(obj, 0) + "\n"


def atomic_write(path, text: str) -> None:
    """Write ``text`` to ``path`` through a temporary file and a rename."""
    path = Path(path)
    d = path.parent if str(path.parent) else Path(".")
    fd, tmp = tempfile.mkstemp(prefix=f".{path.name}.", dir=d)
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


# dict conversion ---------------------------------------------------------


def _unit_list(u) -> list | None:
    return None if u is None else [float(c) for c in u.vec]


def to_dict(obj) -> dict:
    """JSON-ready dictionary for any of the serializable types."""
    if isinstance(obj, SampleSet):
        return {"band": obj.band, "K": obj.K, "values": obj.values}
    if isinstance(obj, CompactSpectrum):
        return {"band": obj.band, "grid": obj.grid.to_dict(), "unit": _unit_list(obj.unit), "values": obj.values}
    if isinstance(obj, HalfLineSpectrum):
        return {
            "cutoff": obj.cutoff,
            "x_floor": obj.x_floor,
            "exact_cutoff": obj.exact_cutoff,
            "grid": obj.grid.to_dict(),
            "unit": _unit_list(obj.unit),
            "values": obj.values,
        }
    if isinstance(obj, BoundaryTrace):
        return {"boundary": True, "grid": obj.grid.to_dict(), "unit": _unit_list(obj.unit), "values": obj.values}
    if isinstance(obj, Spectrum):
        return {"grid": obj.grid.to_dict(), "unit": _unit_list(obj.unit), "values": obj.values}
    if isinstance(obj, LineSamples):
        return {"grid": obj.grid.to_dict(), "unit": None, "values": obj.values}
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _values(d) -> np.ndarray:
    v = np.asarray(d["values"], dtype=float)
    if v.ndim != 2 or v.shape[1] != 4:
        raise GridError("values must be a list of [w, x, y, z] rows")
    return v


def _unit(d):
    u = d.get("unit")
    return None if u is None else ImaginaryUnit.from_vector(u)


def from_dict(d: dict):
    """Inverse of :func:`to_dict`; the layout is recognized from its keys."""
    if not isinstance(d, dict) or "values" not in d:
        raise GridError("not a samples/spectrum document")
    if "K" in d:
        return SampleSet(float(d["band"]), int(d["K"]), _values(d))
    grid = UniformGrid.from_dict(d["grid"])
    vals = _values(d)
    unit = _unit(d)
    if "band" in d:
        S = CompactSpectrum(float(d["band"]), vals, unit or ImaginaryUnit(1.0, 0.0, 0.0))
        if S.grid != grid:
            raise GridError("compact spectrum grid must be [-band, band]")
        return S
    if "cutoff" in d:
        S = HalfLineSpectrum(
            float(d["cutoff"]),
            vals,
            unit or ImaginaryUnit(1.0, 0.0, 0.0),
            x_floor=d.get("x_floor"),
            exact_cutoff=bool(d.get("exact_cutoff", False)),
        )
        if S.grid != grid:
            raise GridError("half-line spectrum grid must be [-cutoff, 0]")
        return S
    if d.get("boundary"):
        return BoundaryTrace(LineSamples(grid, vals), unit or ImaginaryUnit(1.0, 0.0, 0.0))
    if unit is not None:
        return Spectrum(grid, vals, unit)
    return LineSamples(grid, vals)


def write_json(obj, path) -> None:
    atomic_write(path, dumps(to_dict(obj) if not isinstance(obj, dict) else obj))


def read_json(path):
    with open(path, encoding="utf-8") as fh:
        return from_dict(json.load(fh))


# CSV ----------------------------------------------------------------------


def to_csv(obj) -> str:
    """CSV text: one coordinate column (x, t or k) and four value columns."""
    if isinstance(obj, SampleSet):
        coord, name = obj.k, "k"
    elif isinstance(obj, (Spectrum, CompactSpectrum, HalfLineSpectrum)):
        coord, name = obj.grid.points, "t"
    elif isinstance(obj, BoundaryTrace):
        coord, name = obj.y, "y"
    elif isinstance(obj, LineSamples):
        coord, name = obj.x, "x"
    else:
        raise TypeError(f"cannot serialize {type(obj).__name__}")
    buf = _io.StringIO()
    wr = csv.writer(buf, lineterminator="\n")
    wr.writerow([name, "w", "x", "y", "z"])
    for c, row in zip(coord, obj.values):
        wr.writerow([str(int(c)) if name == "k" else _fmt(float(c))] + [_fmt(float(v)) for v in row])
    return buf.getvalue()


def write_csv(obj, path) -> None:
    atomic_write(path, to_csv(obj))


def read_csv(path, unit=None, band: float | None = None):
    """Read a CSV mirror; ``band`` turns a ``k`` column into a SampleSet,
    ``unit`` tags a ``t`` column as a Spectrum."""
    with open(path, encoding="utf-8", newline="") as fh:
        rows = list(csv.reader(fh))
    head, body = rows[0], rows[1:]
    if len(head) != 5:
        raise GridError("CSV needs a coordinate column and four value columns")
    coord = np.array([float(r[0]) for r in body])
    vals = np.array([[float(v) for v in r[1:]] for r in body])
    if head[0] == "k":
        if band is None:
            raise GridError("reading a sample set needs the band")
        K = (len(body) - 1) // 2
        if not np.array_equal(coord, np.arange(-K, K + 1)):
            raise GridError("sample indices must run from -K to K")
        return SampleSet(band, K, vals)
    grid = UniformGrid.from_points(coord)
    if head[0] == "t":
        return Spectrum(grid, vals, unit if unit is not None else ImaginaryUnit(1.0, 0.0, 0.0))
    return LineSamples(grid, vals)
