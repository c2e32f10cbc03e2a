"""Command line interface.

Subcommands::

    synth        spectrum file -> sampled function values
    qft          line samples -> spectrum (``--essential`` checks unit independence)
    reconstruct  sample set -> values at query points (sinc series or kernel path)
    verify       run named invariant suites, JSON report
    kernel-eval  evaluate the half-space reproducing kernel, sinc or Poisson kernel

Exit codes: 0 success, 2 usage or malformed input, 3 truncation or
admissibility, 4 invariant failure, 5 domain guard.
"""

from __future__ import annotations

import argparse
import contextlib
import io
import json
import sys

import numpy as np

from . import hardy as hd
from . import io as sio
from . import paley_wiener as pw
from . import qft as qf
from . import quaternion as qt
from . import sampling as sm
from . import verify as vf
from .errors import DomainError, GridError, InvariantError, TruncationError, UnitMismatchError

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_TRUNCATION = 3
EXIT_INVARIANT = 4
EXIT_DOMAIN = 5

# knobs that may also come from --config
KNOBS = {
    "unit": None,
    "band": None,
    "grid_step": qf.DEFAULT_STEP,
    "extent": qf.DEFAULT_EXTENT,
    "trunc_K": sm.DEFAULT_K,
    "tol": None,
    "seed": vf.DEFAULT_SEED,
    "out": None,
}


class UsageError(Exception):
    pass


def _floats(text: str, n: int, what: str) -> list[float]:
    try:
        vals = [float(s) for s in text.split(",")]
    except ValueError:
        raise UsageError(f"{what} must be {n} comma separated numbers, got {text!r}") from None
    if len(vals) != n:
        raise UsageError(f"{what} must be {n} comma separated numbers, got {text!r}")
    return vals


def _unit(text) -> qt.ImaginaryUnit:
    if text is None:
        return qt.UNIT_I
    if isinstance(text, (list, tuple)):
        v = [float(c) for c in text]
    else:
        v = _floats(text, 3, "--unit")
    try:
        return qt.ImaginaryUnit.from_vector(v)
    except ValueError as e:
        raise UsageError(str(e)) from None


def _positive(args, *names):
    for n in names:
        v = getattr(args, n)
        if v is not None and not v > 0:
            raise UsageError(f"--{n.replace('_', '-')} must be positive")


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--unit", help="imaginary unit as x,y,z (normalised)")
    p.add_argument("--band", type=float, help="band limit A")
    p.add_argument("--grid-step", dest="grid_step", type=float)
    p.add_argument("--extent", type=float, help="half-width of the output line grid")
    p.add_argument("--trunc-K", dest="trunc_K", type=int, help="sinc series truncation K")
    p.add_argument("--tol", type=float)
    p.add_argument("--seed", type=int)
    p.add_argument("--out", help="output path (.json or .csv); stdout if omitted")
    p.add_argument("--config", help="JSON file with default knob values")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="slicepw", description="slice regular Paley-Wiener toolkit")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("synth", help="synthesize function values from a spectrum file")
    p.add_argument("spectrum")
    p.add_argument("--re", type=float, help="real part of the sampled line (half-line spectra)")
    p.add_argument("--method", choices=("stem", "components"), default="stem")
    _common(p)

    p = sub.add_parser("qft", help="left-sided transform of line samples")
    p.add_argument("samples")
    p.add_argument("--essential", action="store_true", help="check that the spectrum does not depend on the unit")
    _common(p)

    p = sub.add_parser("reconstruct", help="sinc series reconstruction from a sample set")
    p.add_argument("samples")
    p.add_argument("--at", action="append", default=[], help="query quaternion w,x,y,z (repeatable)")
    p.add_argument("--points", help="JSON file with a list of [w, x, y, z] query points")
    p.add_argument("--kernel", action="store_true", help="use the reproducing-kernel integral instead of the series")
    p.add_argument("--M", dest="M", type=float, help="declared bound on |im(A q / pi)|")
    _common(p)

    p = sub.add_parser("verify", help="run invariant suites")
    p.add_argument("suites", nargs="*")
    _common(p)

    p = sub.add_parser("kernel-eval", help="evaluate a kernel at quaternion arguments")
    p.add_argument("--kind", choices=("rk", "sinc", "poisson"), default="rk")
    p.add_argument("--q1", required=True, help="w,x,y,z")
    p.add_argument("--q2", help="w,x,y,z (rk only)")
    p.add_argument("--method", choices=("closed", "quad"), default="closed")
    _common(p)
    return ap


def _apply_config(args) -> None:
    if args.config is not None:
        try:
            with open(args.config, encoding="utf-8") as fh:
                cfg = json.load(fh)
        except (OSError, json.JSONDecodeError) as e:
            raise UsageError(f"cannot read config: {e}") from None
        if not isinstance(cfg, dict):
            raise UsageError("config must be a JSON object")
        unknown = sorted(set(cfg) - set(KNOBS))
        if unknown:
            raise UsageError(f"unknown config keys: {', '.join(unknown)}")
        for k, v in cfg.items():
            if getattr(args, k) is None:
                setattr(args, k, v)
    for k, v in KNOBS.items():
        if getattr(args, k) is None:
            setattr(args, k, v)
    _positive(args, "band", "grid_step", "extent", "tol")
    if args.trunc_K is not None and args.trunc_K < 0:
        raise UsageError("--trunc-K must be nonnegative")


def _emit(args, obj, quiet: bool) -> None:
    """Write a serializable object or plain dict to ``--out`` or stdout."""
    if args.out is not None and str(args.out).endswith(".csv"):
        if isinstance(obj, dict):
            raise UsageError("this output has no CSV form")
        sio.write_csv(obj, args.out)
        return
    doc = obj if isinstance(obj, dict) else sio.to_dict(obj)
    text = sio.dumps(doc, indent=1)
    if args.out is not None:
        sio.atomic_write(args.out, text)
    elif not quiet:
        sys.stdout.write(text)


def _line_grid(args) -> qf.UniformGrid:
    return qf.UniformGrid.symmetric(args.extent, args.grid_step)


# subcommands ---------------------------------------------------------------


def cmd_synth(args, quiet=False) -> int:
    S = sio.read_json(args.spectrum)
    grid = _line_grid(args)
    y = grid.points
    if isinstance(S, qf.Spectrum) and not isinstance(S, (pw.CompactSpectrum, hd.HalfLineSpectrum)):
        # a plain spectrum on [-A, A] is read as compact with band A
        S = pw.CompactSpectrum.from_spectrum(S)
    if isinstance(S, pw.CompactSpectrum):
        f = pw.synthesize_compact(S, args.method)
        q = qt.from_slice(y, 0.0 * y, qt.UNIT_I.vec)
        manifest = {"kind": "compact", "band": S.band, "nodes": int(S.values.shape[0]), "method": args.method, "line": "real axis"}
    elif isinstance(S, hd.HalfLineSpectrum):
        f = hd.hardy_function(S)
        re = S.x_floor if args.re is None else args.re
        u = _unit(args.unit)
        if re <= 0:
            raise DomainError("half-line synthesis needs Re q > 0")
        if re < S.x_floor:
            raise TruncationError(f"Re q = {re:g} is below the admissible floor {S.x_floor:.6g} of this spectrum")
        q = qt.from_slice(np.full_like(y, re), y, u.vec)
        manifest = {"kind": "half-line", "cutoff": S.cutoff, "x_floor": S.x_floor, "re": float(re), "slice_unit": u.to_list()}
    else:
        raise GridError("synth needs a compact or half-line spectrum file")
    out = qf.LineSamples(grid, f.eval_array(q))
    if args.out is not None and str(args.out).endswith(".csv"):
        _emit(args, out, quiet)
    else:
        doc = sio.to_dict(out)
        doc["manifest"] = dict(manifest, quadrature="trapezoid", grid_step=grid.step, extent=args.extent)
        _emit(args, doc, quiet)
    return EXIT_OK


def cmd_qft(args, quiet=False) -> int:
    F = sio.read_json(args.samples)
    if isinstance(F, hd.BoundaryTrace):
        trace_unit = F.unit
        F = F.samples
    elif isinstance(F, qf.LineSamples):
        trace_unit = qt.UNIT_I
    else:
        raise GridError("qft needs line samples or a boundary trace")
    I = _unit(args.unit) if args.unit is not None else trace_unit
    if not args.essential:
        _emit(args, qf.qft_left(F, I), quiet)
        return EXIT_OK
    # the trace lives on trace_unit; other slices carry the boundary values of
    # the half-space extension built from the nonpositive frequencies
    S0 = qf.qft_left(F, trace_unit)
    neg = np.where((S0.t <= 0)[:, None], S0.values, 0.0)
    units = [trace_unit] + [u for u in _probe_units(trace_unit)]
    traces = [F] + [qf.iqft_left(qf.Spectrum(S0.grid, neg, u), F.grid) for u in units[1:]]
    S, dev = qf.essential_spectra(traces, units)
    tol = 1e-8 if args.tol is None else args.tol
    doc = sio.to_dict(S)
    doc["essential"] = {"max_deviation": dev, "tolerance": tol, "pass": dev <= tol}
    _emit(args, doc, quiet)
    if dev > tol:
        raise InvariantError(f"boundary spectra depend on the unit (deviation {dev:.3e} > {tol:.1e})", dev)
    return EXIT_OK


def _probe_units(I: qt.ImaginaryUnit):
    J, K = qt.orthogonal_frame(I)
    return [J, K, qt.ImaginaryUnit.from_vector(I.vec + J.vec + K.vec)]


def _queries(args) -> np.ndarray:
    pts = [_floats(a, 4, "--at") for a in args.at]
    if args.points is not None:
        try:
            with open(args.points, encoding="utf-8") as fh:
                pts.extend(json.load(fh))
        except (OSError, json.JSONDecodeError) as e:
            raise UsageError(f"cannot read points: {e}") from None
    if not pts:
        raise UsageError("give query points with --at or --points")
    a = np.asarray(pts, dtype=float)
    if a.ndim != 2 or a.shape[1] != 4:
        raise UsageError("query points must be [w, x, y, z] rows")
    return a


def cmd_reconstruct(args, quiet=False) -> int:
    S = sio.read_json(args.samples)
    if not isinstance(S, sm.SampleSet):
        raise GridError("reconstruct needs a sample set file")
    if args.band is not None and args.band != S.band:
        raise UsageError(f"--band {args.band:g} disagrees with the sample set band {S.band:g}")
    q = _queries(args)
    if args.M is not None and args.M < 0:
        raise UsageError("--M must be nonnegative")
    if args.M is not None:
        m = sm.scaled_im(q, S.band)
        if np.any(m > args.M * (1 + 1e-12)):
            raise DomainError(f"query leaves the strip |im(A q / pi)| <= {args.M:g}")
    if args.trunc_K is not None and args.trunc_K < S.K:
        S = S.truncate(args.trunc_K)
    if args.kernel:
        # line values from the series on the sampled window, then the kernel integral
        grid = qf.UniformGrid.symmetric(np.pi * S.K / S.band, np.pi / (8 * S.band))
        x = grid.points
        line = qf.LineSamples(grid, sm.wks_reconstruct(S, qt.from_slice(x, 0 * x, qt.UNIT_I.vec)))
        vals = pw.reproduce(line, S.band, q)
        path = "kernel"
    else:
        vals = sm.wks_reconstruct(S, q)
        path = "series"
    doc = {"path": path, "band": S.band, "K": S.K, "points": q, "values": vals}
    _emit(args, doc, quiet)
    return EXIT_OK


def cmd_verify(args, quiet=False) -> int:
    if not args.suites:
        raise UsageError(f"name at least one suite: {', '.join(vf.SUITES)}")
    unknown = [s for s in args.suites if s not in vf.SUITES]
    if unknown:
        raise UsageError(f"unknown suite(s) {', '.join(unknown)}; choose from {', '.join(vf.SUITES)}")
    reports = [vf.run_suite(s, seed=args.seed, trunc_K=args.trunc_K) for s in args.suites]
    docs = [r.to_dict() for r in reports]
    _emit(args, docs[0] if len(docs) == 1 else {"reports": docs}, quiet)
    if not quiet and args.out is not None:
        for r in reports:
            sys.stderr.write(f"{r.suite}: {'pass' if r.passed else 'FAIL'}\n")
    return EXIT_OK if all(r.passed for r in reports) else EXIT_INVARIANT


def cmd_kernel_eval(args, quiet=False) -> int:
    q1 = np.array(_floats(args.q1, 4, "--q1"))
    if args.kind == "rk":
        if args.q2 is None:
            raise UsageError("--kind rk needs --q2")
        q2 = np.array(_floats(args.q2, 4, "--q2"))
        val = hd.rk_halfspace(q1, q2, args.method)
    elif args.kind == "sinc":
        val = qt.sinc_q(q1)
    else:
        x, y, _ = qt.split_arrays(q1)
        if x <= 0:
            raise DomainError("poisson kernel needs Re q > 0")
        val = np.array([float(hd.poisson_kernel(x, y)), 0.0, 0.0, 0.0])
    _emit(args, {"kind": args.kind, "q1": q1, "q2": None if args.q2 is None else _floats(args.q2, 4, "--q2"), "value": val}, quiet)
    return EXIT_OK


COMMANDS = {
    "synth": cmd_synth,
    "qft": cmd_qft,
    "reconstruct": cmd_reconstruct,
    "verify": cmd_verify,
    "kernel-eval": cmd_kernel_eval,
}


def main(argv=None, quiet: bool = False) -> int:
    parser = build_parser()
    try:
        with contextlib.redirect_stderr(io.StringIO()) if quiet else contextlib.nullcontext():
            args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    try:
        _apply_config(args)
        return COMMANDS[args.command](args, quiet)
    except UsageError as e:
        code, msg = EXIT_USAGE, f"usage error: {e}"
    except (UnitMismatchError, GridError) as e:
        code, msg = EXIT_USAGE, f"bad input: {e}"
    except TruncationError as e:
        code, msg = EXIT_TRUNCATION, f"truncation: {e}"
    except InvariantError as e:
        code, msg = EXIT_INVARIANT, f"invariant failure: {e}"
    except DomainError as e:
        code, msg = EXIT_DOMAIN, f"domain: {e}"
    except (OSError, json.JSONDecodeError, KeyError, TypeError) as e:
        code, msg = EXIT_USAGE, f"bad input: {e}"
    if not quiet:
        sys.stderr.write(msg + "\n")
    return code
