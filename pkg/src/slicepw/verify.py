"""Named invariant suites.

Each suite draws its random inputs from ``numpy.random.default_rng(seed)``
and returns a :class:`Report` of checks ``(name, max_error, tolerance,
pass)``.  A check passes when ``max_error <= tolerance`` unless it is marked
as a lower bound (``max_error`` must then exceed ``tolerance``; used for
witnesses that something is *not* zero).  Reports contain no timings so that
reruns with the same seed are byte-identical.
"""

from __future__ import annotations

import json
import os
import tempfile
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import hardy as hd
from . import paley_wiener as pw
from . import qft as qf
from . import quaternion as qt
from . import sampling as sm
from . import slicefn as sf

DEFAULT_SEED = 7


@dataclass
class Check:
    name: str
    max_error: float
    tolerance: float
    lower_bound: bool = False

    @property
    def passed(self) -> bool:
        if not np.isfinite(self.max_error):
            return False
        if self.lower_bound:
            return self.max_error > self.tolerance
        return self.max_error <= self.tolerance

    def to_dict(self) -> dict:
        return {"name": self.name, "max_error": float(self.max_error), "tolerance": float(self.tolerance), "pass": self.passed}


@dataclass
class Report:
    suite: str
    seed: int
    checks: list[Check] = field(default_factory=list)
    diagnostics: dict = field(default_factory=dict)

    def add(self, name, max_error, tolerance, lower_bound=False) -> Check:
        c = Check(name, float(max_error), float(tolerance), lower_bound)
        self.checks.append(c)
        return c

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def get(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_dict(self) -> dict:
        d = {"suite": self.suite, "checks": [c.to_dict() for c in self.checks], "seed": self.seed}
        if self.diagnostics:
            d["diagnostics"] = self.diagnostics
        return d


def _maxnorm(a, b) -> float:
    return float(np.max(qt.norm(qt.as_quat(a) - qt.as_quat(b)), initial=0.0))


def _ball_points(rng, n, radius):
    return qt.random_quaternions(rng, n, radius)


def _box_points(rng, n, xr, yr, x0=None):
    lo = -xr if x0 is None else x0
    x = rng.uniform(lo, xr, n)
    y = rng.uniform(-yr, yr, n)
    return qt.from_slice(x, y, qt.random_units(rng, n))


# 1 ------------------------------------------------------------------------


def suite_algebra(seed: int = DEFAULT_SEED, **_) -> Report:
    rng = np.random.default_rng(seed)
    r = Report("algebra", seed)
    basis = np.eye(4)
    # table entries e_a e_b as (sign, index)
    table = {
        (1, 1): (-1, 0), (2, 2): (-1, 0), (3, 3): (-1, 0),
        (1, 2): (1, 3), (2, 1): (-1, 3),
        (2, 3): (1, 1), (3, 2): (-1, 1),
        (3, 1): (1, 2), (1, 3): (-1, 2),
    }
    err = 0.0
    for a in range(4):
        for b in range(4):
            if a == 0 or b == 0:
                expect = basis[a + b]
            else:
                s, k = table[(a, b)]
                expect = s * basis[k]
            err = max(err, float(np.max(np.abs(qt.mul(basis[a], basis[b]) - expect))))
    r.add("multiplication_table", err, 0.0)
    n = 10_000
    a, b, c = (_ball_points(rng, n, 10.0) for _ in range(3))
    na, nb, nc = qt.norm(a), qt.norm(b), qt.norm(c)
    r.add("norm_multiplicative_rel", np.max(np.abs(qt.norm(qt.mul(a, b)) - na * nb) / (na * nb)), 1e-12)
    assoc = qt.norm(qt.mul(qt.mul(a, b), c) - qt.mul(a, qt.mul(b, c))) / (na * nb * nc)
    r.add("associativity_rel", np.max(assoc), 1e-12)
    conj_rule = qt.norm(qt.conj(qt.mul(a, b)) - qt.mul(qt.conj(b), qt.conj(a))) / (na * nb)
    r.add("conj_antihomomorphism_rel", np.max(conj_rule), 1e-15)
    x, y, u = qt.split_arrays(a)
    r.add("split_realize_rel", np.max(qt.norm(qt.from_slice(x, y, u) - a) / na), 1e-15)
    th = rng.uniform(-50, 50, n)
    e = qt.exp_q(qt.from_slice(0.0 * th, th, qt.random_units(rng, n)))
    r.add("exp_unit_norm", np.max(np.abs(qt.norm(e) - 1.0)), 1e-13)
    frame_err = 0.0
    for I in qt.random_units(rng, 50):
        J, K = qt.orthogonal_frame(I)
        Iq, Jq, Kq = (np.concatenate([[0.0], v]) for v in (I, J.vec, K.vec))
        frame_err = max(frame_err, abs(float(I @ J.vec)), _maxnorm(qt.mul(Iq, Jq), Kq), _maxnorm(qt.mul(Jq, Iq), -Kq))
    r.add("orthogonal_frame", frame_err, 1e-14)
    return r


# 2 ------------------------------------------------------------------------


def suite_entire(seed: int = DEFAULT_SEED, **_) -> Report:
    rng = np.random.default_rng(seed)
    r = Report("entire", seed)
    q = _ball_points(rng, 1000, 5.0)
    L = np.longdouble
    ulps = {}
    for name, f, coef in (
        ("exp", qt.exp_q, qt.exp_coefficients),
        ("sin", qt.sin_q, qt.sin_coefficients),
        ("sinc", qt.sinc_q, qt.sinc_coefficients),
    ):
        ref = qt.series_eval(coef(60, L), q, 60, dtype=L)
        d = np.sqrt(np.sum((f(q).astype(L) - ref) ** 2, axis=1)).astype(float)
        r.add(f"{name}_vs_series_abs", np.max(d), 1e-11)
        # rounding the value itself costs half an ulp of |f(q)|
        mag = qt.norm(ref.astype(float))
        bad = d > 1e-11
        ulps[name] = {
            "points_over_tolerance": int(np.count_nonzero(bad)),
            "max_ulps_of_value_at_those_points": float(np.max(d[bad] / np.spacing(mag[bad]), initial=0.0)),
            "min_value_modulus_at_those_points": float(np.min(mag[bad], initial=np.inf)) if bad.any() else None,
        }
    r.diagnostics["absolute_error_vs_value_ulp"] = ulps
    qc = qt.conj(q)
    sym = 0.0
    coeffs = [qt.exp_coefficients(60), qt.sin_coefficients(60), qt.sinc_coefficients(60), qt.exp_coefficients(40) * rng.normal(size=40)]
    for c in coeffs:
        sym = max(sym, _maxnorm(qt.series_eval(c, qc), qt.conj(qt.series_eval(c, q))))
    r.add("real_series_conj_symmetry", sym, 1e-13)
    split_err = 0.0
    for f in (qt.exp_q, qt.sin_q, qt.sinc_q):
        split_err = max(split_err, _maxnorm(f(qc), qt.conj(f(q))))
    r.add("closed_forms_conj_symmetry", split_err, 1e-13)
    # both sinc branches on their overlap
    z = 0.5 * np.exp(1j * rng.uniform(0, 2 * np.pi, 200)) * rng.uniform(0.95, 1.05, 200)
    w = -((np.pi * z) ** 2)
    series = np.zeros_like(z)
    for k in range(30, -1, -1):
        series = 1.0 / float(np.prod(np.arange(1, 2 * k + 2, dtype=float))) + w * series
    closed = np.sin(np.pi * z) / (np.pi * z)
    r.add("sinc_branch_overlap", np.max(np.abs(series - closed)), 1e-12)
    return r


# 3 ------------------------------------------------------------------------


def _random_regular(rng):
    """Slice regular test function q -> exp(q) c1 + sin(q) c2 + q^2 c3 + c4."""
    c = qt.random_quaternions(rng, 4, 1.0)

    def f(q):
        q2 = qt.mul(q, q)
        out = qt.mul(qt.exp_q(q), np.broadcast_to(c[0], q.shape))
        out = out + qt.mul(qt.sin_q(q), np.broadcast_to(c[1], q.shape))
        return out + qt.mul(q2, np.broadcast_to(c[2], q.shape)) + c[3]

    return sf.SliceEvaluator(f, name="test_regular")


def suite_structure(seed: int = DEFAULT_SEED, **_) -> Report:
    rng = np.random.default_rng(seed)
    r = Report("structure", seed)
    f = _random_regular(rng)
    pts = sf.probe_points(n=200)
    x, y, u = qt.split_arrays(pts)
    # representation formula through two independent reference slices
    J1, J2 = qt.random_units(rng, 2)
    via1 = sf.represent(f.on_slice(x, y, J1), f.on_slice(x, -y, J1), J1, u)
    via2 = sf.represent(f.on_slice(x, y, J2), f.on_slice(x, -y, J2), J2, u)
    r.add("representation_unit_independence", _maxnorm(via1, via2), 1e-11)
    r.add("representation_vs_direct", _maxnorm(via1, f.eval_array(pts)), 1e-11)
    st1, st2 = sf.stem_split(f, J1), sf.stem_split(f, J2)
    r.add("stem_unit_independence", max(_maxnorm(st1.alpha(x, y), st2.alpha(x, y)), _maxnorm(st1.beta(x, y), st2.beta(x, y))), 1e-11)
    r.add(
        "stem_parity",
        max(_maxnorm(st1.alpha(x, -y), st1.alpha(x, y)), _maxnorm(st1.beta(x, -y), -st1.beta(x, y))),
        1e-12,
    )
    I = qt.ImaginaryUnit.from_vector(qt.random_units(rng, 1)[0])
    quad = sf.decompose(f, I)
    r.add("decompose_recombine", _maxnorm(quad.recombine(pts), f.eval_array(pts)), 1e-11)
    r.add("components_slice_preserving", max(sf.slice_preserving_defect(h) for h in quad.components), 1e-10)
    ext = sf.ext_l(sf.complex_on_slice(np.exp, qt.UNIT_I), qt.UNIT_I)
    q100 = _box_points(rng, 100, 3.0, 3.0)
    r.add("ext_l_exp_vs_exp_q", _maxnorm(ext.eval_array(q100), qt.exp_q(q100)), 1e-12)
    ext2 = sf.ext_l(lambda p: f.eval_array(p), J2)
    r.add("ext_l_uniqueness", _maxnorm(sf.ext_l(lambda p: f.eval_array(p), J1).eval_array(q100), ext2.eval_array(q100)), 1e-11)
    zj = sf.ext_l(lambda p: qt.mul(p, np.broadcast_to([0.0, 0, 1, 0], p.shape)), qt.UNIT_I)
    r.add("ext_l_zj_not_slice_preserving", sf.slice_preserving_defect(zj), 1e-10, lower_bound=True)
    # boundedness transfer: max over all slices <= 2 max over one slice
    units = qt.fibonacci_units(64)
    box = qmc_box(rng, 64)
    vals = np.array([np.max(qt.norm(f.on_slice(box[:, 0], box[:, 1], np.broadcast_to(U, (64, 3))))) for U in units])
    one = float(np.max(qt.norm(f.on_slice(box[:, 0], box[:, 1], np.broadcast_to(qt.UNIT_I.vec, (64, 3))))))
    r.add("boundedness_transfer_ratio", float(np.max(vals)) / one, 2.0)
    orders = []
    for U in qt.random_units(rng, 3):
        orders.append(sf.cr_order(f, U, (0.4, 0.7), (1e-2, 5e-3)))
    r.add("cr_order_deficit", max(2.0 - o for o in orders), 0.1)
    anti = sf.SliceEvaluator(qt.conj)
    r.add("cr_conj_residual_is_one", abs(sf.cr_residual(anti, qt.UNIT_I, (0.3, 0.8)) - 1.0), 1e-8)
    return r


def qmc_box(rng, n, half=3.0):
    """Symmetric probe box: points (x, y) with |x|, |y| <= half, closed under y -> -y."""
    pts = rng.uniform(-half, half, (n // 2, 2))
    return np.concatenate([pts, pts * np.array([1.0, -1.0])])


# 4 ------------------------------------------------------------------------


def _smooth_signal(rng, grid, support=5.0):
    x = grid.points
    tau = np.clip(x / support, -1, 1)
    env = (1 - tau**2) ** 4
    c = qt.random_quaternions(rng, 3, 1.0)
    return env[:, None] * (c[0] + np.outer(tau, c[1]) + np.outer(np.cos(3 * x), c[2]))


def suite_qft(seed: int = DEFAULT_SEED, **_) -> Report:
    rng = np.random.default_rng(seed)
    r = Report("qft", seed)
    grid = qf.UniformGrid.symmetric(qf.DEFAULT_EXTENT, qf.DEFAULT_STEP)
    rt = pl = 0.0
    for _ in range(5):
        F = qf.LineSamples(grid, _smooth_signal(rng, grid))
        I = qt.random_units(rng, 1)[0]
        S = qf.qft_left(F, I)
        rt = max(rt, _maxnorm(qf.iqft_left(S).values, F.values))
        a, b = qf.plancherel_norm(F, S)
        pl = max(pl, abs(a - b) / a)
    r.add("round_trip", rt, 1e-6)
    r.add("plancherel_rel", pl, 1e-6)
    off = mirror = tr = fft_dir = 0.0
    x = grid.points
    for _ in range(10):
        c = rng.normal(size=3)
        sig = np.exp(-((x - c[0]) ** 2) / (1 + c[1] ** 2)) * (1 + c[2] * x)
        F = qf.LineSamples(grid, qt.from_slice(sig, 0 * sig, qt.UNIT_I.vec))
        freq = qf.frequency_grid(grid)
        # the direct cosine/sine sums do not depend on the unit
        Cd, Sd = qf.cos_sin_sums(grid, F.values, freq, "direct")

        def direct(U):
            return qf.Spectrum(freq, (Cd - qt.left_unit_mul(U, Sd)) / qf.SQRT_2PI, U)

        for I, J in zip(qt.random_units(rng, 5), qt.random_units(rng, 5)):
            S = qf.qft_left(F, I, method="fft")
            o, m = qf.slice_symmetry_defects(S)
            off, mirror = max(off, o), max(mirror, m)
            tr = max(tr, qf.transfer_spectrum(S, J).max_deviation(direct(J)))
            fft_dir = max(fft_dir, S.max_deviation(direct(I)))
    r.add("real_signal_spectrum_in_slice", off, 1e-12)
    r.add("real_signal_conj_mirror", mirror, 1e-12)
    r.add("transfer_vs_direct", tr, 1e-10)
    r.add("fft_vs_direct", fft_dir, 1e-10)
    # analytic pairs
    gauss = np.exp(-(x**2) / 2) / np.pi**0.25
    G = qf.LineSamples(grid, qt.from_slice(gauss, 0 * x, qt.UNIT_I.vec))
    SG = qf.qft_left(G, qt.UNIT_J)
    exact = np.exp(-(SG.t**2) / 2) / np.pi**0.25
    r.add("gaussian_spectrum", _maxnorm(SG.values, qt.from_slice(exact, 0 * exact, qt.UNIT_J.vec)), 1e-8)
    r.add("gaussian_unit_norm", abs(G.l2_norm_sq() - 1.0) + abs(SG.l2_norm_sq() - 1.0), 1e-8)
    bgrid = qf.UniformGrid(-20.005, 20.005, 4002)
    B = qf.LineSamples.from_function(lambda t: (np.abs(t) < 1).astype(float), bgrid)
    SB = qf.qft_left(B)
    i0 = int(np.argmin(np.abs(SB.t)))
    r.add("box_value_at_zero", abs(SB.values[i0, 0] - 2 / qf.SQRT_2PI), 1e-12)
    r.add("box_plancherel", max(abs(B.l2_norm_sq() - 2), abs(SB.l2_norm_sq() - 2)), 1e-4)
    # kernel order matters for quaternion data
    Fj = qf.LineSamples(grid, qt.from_slice(0 * x, gauss * (1 + x), qt.UNIT_J.vec))
    r.add("left_vs_right_kernel_differ", qf.qft_left(Fj).max_deviation(qf.qft_right(Fj)), 1e-3, lower_bound=True)
    box_spec = qf.Spectrum(qf.UniformGrid.symmetric(4, 0.01), qt.from_slice((np.abs(np.linspace(-4, 4, 801)) <= 2) * 1.0, 0.0, qt.UNIT_I.vec))
    r.add("support_radius_box", abs(qf.support_radius(box_spec, 1e-6) - 2.0), 0.01)
    return r


# 5 ------------------------------------------------------------------------

BANDS = (1.0, 2.0, np.pi)


def suite_pw_compact(seed: int = DEFAULT_SEED, n_spectra: int = 20, **_) -> Report:
    rng = np.random.default_rng(seed)
    r = Report("pw-compact", seed)
    line = qf.UniformGrid.symmetric(60.0, 0.05)
    growth = supp = order_def = member_fail = dual = 0.0
    bin_w = None
    for m in range(n_spectra):
        A = BANDS[m % 3]
        unit = qt.ImaginaryUnit.from_vector(qt.random_units(rng, 1)[0])
        S = pw.random_compact_spectrum(rng, A, unit)
        f = pw.synthesize_compact(S)
        pts = _ball_points(rng, 40, 10.0)
        growth = max(growth, pw.growth_check(f, pts).max_ratio)
        F = f.restrict(line)
        spec = qf.qft_left(F, qt.random_units(rng, 1)[0])
        bin_w = spec.grid.step
        supp = max(supp, qf.support_radius(spec, 1e-6) - A)
        member_fail += 0.0 if pw.pw_membership(F, A, 1e-6) else 1.0
        for U in qt.random_units(rng, 3):
            at = (rng.uniform(-2, 2), rng.uniform(-1, 1))
            order_def = max(order_def, 2.0 - sf.cr_order(f, U, at, (1e-2, 5e-3)))
        if m < 5:
            g = pw.synthesize_compact(S, "components")
            fv = f.eval_array(pts[:10])
            dual = max(dual, _maxnorm(fv, g.eval_array(pts[:10])) / max(1.0, float(np.max(qt.norm(fv)))))
    r.add("growth_ratio", growth, 1 + 1e-6)
    r.add("support_excess_over_A", supp, bin_w)
    r.add("pw_membership_failures", member_fail, 0.0)
    r.add("cr_order_deficit", order_def, 0.1)
    r.add("stem_vs_components_rel", dual, 1e-12)
    # closed-form oracle: bump spectrum -> spherical Bessel function
    from scipy.special import gamma, jv

    A, p = 2.0, 6
    S = pw.CompactSpectrum.from_function(lambda t: (1 - (t / A) ** 2) ** p, A, 4097)
    f = pw.synthesize_compact(S)
    q = _box_points(rng, 50, 5.0, 2.0)
    x, y, u = qt.split_arrays(q)
    z = x + 1j * y
    ref = A / qf.SQRT_2PI * np.sqrt(np.pi) * gamma(p + 1) * (2 / (A * z)) ** (p + 0.5) * jv(p + 0.5, A * z)
    r.add("bessel_oracle", _maxnorm(f.eval_array(q), qt.from_slice(ref.real, ref.imag, u)), 1e-10)
    # slice preserving backer: |f(x + J y)| independent of J
    Sr = pw.CompactSpectrum.from_function(lambda t: (1 - (t / A) ** 2) ** 3 * np.cos(t), A, 2049)
    fr = pw.synthesize_compact(Sr)
    r.add("real_even_spectrum_slice_preserving", sf.slice_preserving_defect(fr.evaluator), 1e-10)
    xs, ys = rng.uniform(-3, 3, 20), rng.uniform(-2, 2, 20)
    mags = np.array([qt.norm(fr.on_slice(xs, ys, np.broadcast_to(U, (20, 3)))) for U in qt.random_units(rng, 16)])
    r.add("slice_independent_modulus", float(np.max(mags.max(axis=0) - mags.min(axis=0))), 1e-10)
    return r


# 6 ------------------------------------------------------------------------


def suite_hardy(seed: int = DEFAULT_SEED, n_spectra: int = 5, **_) -> Report:
    rng = np.random.default_rng(seed)
    r = Report("hardy", seed)
    grid = qf.UniformGrid.symmetric(100.0, 0.05)
    three = closed = ess = support = semi = 0.0
    ntbl = []
    for m in range(n_spectra):
        R = hd.random_rational_hardy(rng)
        S = R.half_line(unit=qt.random_units(rng, 1)[0])
        h = hd.hardy_function(S)
        I = qt.random_units(rng, 1)[0]
        F = h.boundary_trace(grid, I)
        n = 20
        q = qt.from_slice(rng.uniform(max(S.x_floor, 0.5), 3.0, n), rng.uniform(-3, 3, n), qt.random_units(rng, n))
        v_syn = h.eval_array(q)
        v_cau = hd.cauchy_extend(F, q)
        v_poi = hd.poisson_extend(F, q)
        three = max(three, _maxnorm(v_syn, v_cau), _maxnorm(v_syn, v_poi), _maxnorm(v_cau, v_poi))
        closed = max(closed, _maxnorm(v_syn, R(q)))
        units = [qt.UNIT_I, qt.UNIT_J, qt.ImaginaryUnit.from_vector([1, 1, 0]), qt.random_units(rng, 1)[0]]
        _, dev = qf.essential_spectra(lambda U: h.boundary_trace(grid, U).samples, units)
        ess = max(ess, dev)
        support = max(support, qf.halfline_leakage(qf.qft_left(F.samples, F.unit), 1))
        # Poisson semigroup: P_{x1} * (P_{x2} * F) = P_{x1 + x2} * F
        x1, x2 = 0.6, 0.9
        inner = hd.BoundaryTrace(
            qf.LineSamples(grid, hd.poisson_extend(F, qt.from_slice(np.full(grid.n, x2), grid.points, F.unit.vec))), F.unit
        )
        ys = rng.uniform(-3, 3, 10)
        lhs = hd.poisson_extend(inner, qt.from_slice(np.full(10, x1), ys, F.unit.vec))
        rhs = hd.poisson_extend(F, qt.from_slice(np.full(10, x1 + x2), ys, F.unit.vec))
        semi = max(semi, _maxnorm(lhs, rhs))
        if m == 0:
            exact = R.trace(grid, I)
            Sd = hd.HalfLineSpectrum(S.cutoff, S.values, S.unit, x_floor=1e-3)
            hd_low = hd.hardy_function(Sd)
            for xv in (1e-1, 1e-2, 1e-3):
                vals = hd_low.eval_array(qt.from_slice(np.full(grid.n, xv), grid.points, I))
                d = vals - exact.values
                ntbl.append(float(np.sqrt(grid.weights() @ np.sum(d * d, axis=1))))
    r.add("three_way_identity", three, 1e-5)
    r.add("synthesis_vs_closed_form", closed, 1e-8)
    r.add("essential_ft_cross_unit", ess, 1e-8)
    r.add("trace_positive_frequency_leakage", support, 1e-6)
    r.add("poisson_semigroup", semi, 1e-5)
    r.diagnostics["ntbl_l2_errors_x_0.1_0.01_0.001"] = ntbl
    xs = rng.uniform(0, 5, 100)
    xs[xs == 0] = 1.0
    ys = rng.uniform(-5, 5, 100)
    P = hd.poisson_kernel(xs, ys)
    r.add("poisson_closed_vs_kernel_ratio_rel", np.max(np.abs(P - hd.poisson_kernel_ratio(xs, ys)) / P), 1e-12)
    kq = max(abs(hd.cauchy_kernel(z) - hd.cauchy_kernel_quad(z)) for z in (1.0, 2.0, 0.5 + 1.5j, 2 - 3j))
    r.add("cauchy_closed_vs_quad", kq, 1e-10)
    x = grid.points
    gauss = hd.BoundaryTrace(qf.LineSamples(grid, qt.from_slice(np.exp(-(x**2)), 0 * x, qt.UNIT_I.vec)))
    leak = qf.halfline_leakage(qf.qft_left(gauss.samples), 1)
    rejected = not hd.hardy_membership(gauss, 2, 1e-6)
    r.add("gaussian_trace_positive_mass", leak if rejected else 0.0, 1e-6, lower_bound=True)
    # symmetric-pair extension reproduces a slice preserving Hardy element
    Rr = hd.random_rational_hardy(rng, real=True)
    tr = Rr.trace(grid, qt.UNIT_I).values
    A_even = qf.LineSamples(grid, qt.from_slice(tr[:, 0], 0 * x, qt.UNIT_I.vec))
    B_odd = qf.LineSamples(grid, qt.from_slice(tr[:, 1], 0 * x, qt.UNIT_I.vec))
    q = qt.from_slice(rng.uniform(0.5, 3, 20), rng.uniform(-3, 3, 20), qt.random_units(rng, 20))
    r.add("symmetric_extension_vs_closed_form", _maxnorm(hd.hardy_extend_symmetric(A_even, B_odd, q), Rr(q)), 1e-6)
    return r


# 7 ------------------------------------------------------------------------


def suite_kernel(seed: int = DEFAULT_SEED, **_) -> Report:
    rng = np.random.default_rng(seed)
    r = Report("kernel", seed)
    line = qf.UniformGrid.symmetric(40.0, 0.01)
    rep = 0.0
    for A in (1.0, np.pi, 3.0):
        f = pw.synthesize_compact(pw.random_compact_spectrum(rng, A, qt.random_units(rng, 1)[0]))
        F = f.restrict(line)
        q = qt.from_slice(rng.uniform(-5, 5, 50), rng.uniform(0, 2, 50), qt.random_units(rng, 50))
        rep = max(rep, _maxnorm(pw.reproduce(F, A, q), f.eval_array(q)))
    r.add("reproduce_vs_synthesis", rep, 1e-5)
    R = hd.random_rational_hardy(rng)
    h = hd.hardy_function(R.half_line())
    F = h.boundary_trace(qf.UniformGrid.symmetric(100.0, 0.05), qt.random_units(rng, 1)[0])
    q = qt.from_slice(rng.uniform(0.5, 3, 10), rng.uniform(-3, 3, 10), qt.random_units(rng, 10))
    r.add("rk_reproduces_hardy_element", _maxnorm(hd.rk_reproduce(F, q), h.eval_array(q)), 1e-5)
    one = qt.Quaternion(1.0, 0, 0, 0)
    r.add("k11_quadrature", abs(float(np.asarray(hd.rk_halfspace(one, one, "quad"))[0]) - 0.5), 1e-10)
    kd = 0.0
    cq = 0.0
    for _ in range(10):
        a, b = (qt.Quaternion.from_array(v) for v in _box_points(rng, 2, 3.0, 3.0, x0=0.2))
        cq = max(cq, _maxnorm(hd.rk_halfspace(a, b), hd.rk_halfspace(a, b, "quad")))
        kd = max(kd, _maxnorm(hd.rk_halfspace(a, a), [1 / (2 * a.w), 0, 0, 0]))
    r.add("kernel_closed_vs_quadrature", cq, 1e-10)
    r.add("kernel_diagonal_is_1_over_2x", kd, 1e-12)
    return r


# 8 ------------------------------------------------------------------------


def suite_sampling(seed: int = DEFAULT_SEED, trunc_K: int = sm.DEFAULT_K, **_) -> Report:
    rng = np.random.default_rng(seed)
    r = Report("sampling", seed)
    K = int(trunc_K)
    nodes = cons = parse = 0.0
    line = qf.UniformGrid.symmetric(60.0, 0.05)
    for A in BANDS:
        f = pw.synthesize_compact(pw.random_compact_spectrum(rng, A, qt.random_units(rng, 1)[0]))
        S = sm.SampleSet.from_function(f, A, K)
        nq = qt.from_slice(S.nodes, 0 * S.nodes, qt.random_units(rng, S.nodes.size))
        nodes = max(nodes, _maxnorm(sm.wks_reconstruct(S, nq), S.values))
        q = qt.from_slice(rng.uniform(-3, 3, 50), rng.uniform(-1, 1, 50), qt.random_units(rng, 50))
        cons = max(cons, _maxnorm(sm.wks_reconstruct(S, q), f.eval_array(q)))
        E = sm.line_energy(f, line)
        parse = max(parse, abs(sm.sample_energy(S) - E) / E)
    r.add("node_interpolation", nodes, 1e-12)
    r.add("series_vs_synthesis", cons, 1e-6)
    r.add("parseval_rel", parse, 1e-5)
    dom = 0.0
    for M in (0.25, 0.5):
        q = qt.from_slice(rng.uniform(-3, 3, 50), rng.uniform(0, M, 50), qt.random_units(rng, 50))
        bound = sm.sinc_sum_bound(M, 2.0)
        for Kp in (10, 100, 1000):
            dom = max(dom, float(np.max(sm.sinc_power_sum(q, Kp, 2.0))) / bound)
    r.add("sinc_square_sum_over_bound", dom, 1.0)
    A = 2.0
    f = pw.synthesize_compact(pw.random_compact_spectrum(rng, A, qt.random_units(rng, 1)[0], power=3))
    S = sm.SampleSet.from_function(f, A, 500)
    curve = sm.l2_error_curve(f, S, [25, 50, 100, 200, 500])
    r.diagnostics["l2_error_curve_K_25_50_100_200_500"] = curve
    v = np.asarray(curve)
    r.add("l2_curve_monotone_excess", float(np.max(v[1:] / v[:-1])) - 1.0, 0.05)
    r.add("l2_curve_final", curve[-1], 1e-5)
    # truncation bound dominates the observed error
    worst = 0.0
    for m in range(20):
        A = BANDS[m % 3]
        f = pw.synthesize_compact(pw.random_compact_spectrum(rng, A, power=3))
        full = sm.SampleSet.from_function(f, A, 400)
        Kt = 10
        M = 0.5
        q = qt.from_slice(rng.uniform(-3, 3, 10), rng.uniform(0, M * np.pi / A, 10), qt.random_units(rng, 10))
        obs = _maxnorm(sm.wks_reconstruct(full.truncate(Kt), q), f.eval_array(q))
        tail = sm.tail_energy(full, Kt) + sm.estimate_tail_energy(full)
        worst = max(worst, obs / sm.truncation_bound(Kt, M, 2.0, tail))
    r.add("observed_over_truncation_bound", worst, 1.0)
    # slice universality for a slice preserving function
    Sr = pw.CompactSpectrum.from_function(lambda t: (1 - (t / 2) ** 2) ** 4, 2.0, 2049)
    fr = pw.synthesize_compact(Sr)
    Ssp = sm.SampleSet.from_function(fr, 2.0, 60)
    xs, ys = rng.uniform(-3, 3, 30), rng.uniform(-1, 1, 30)
    errs = []
    for U in qt.random_units(rng, 8):
        qq = qt.from_slice(xs, ys, np.broadcast_to(U, (30, 3)))
        errs.append(qt.norm(sm.wks_reconstruct(Ssp, qq) - fr.eval_array(qq)))
    errs = np.array(errs)
    r.add("slice_universality", float(np.max(errs.max(axis=0) - errs.min(axis=0))), 1e-10)
    return r


# 9 ------------------------------------------------------------------------


def suite_cli(seed: int = DEFAULT_SEED, **_) -> Report:
    from . import cli
    from . import io as sio

    rng = np.random.default_rng(seed)
    r = Report("cli", seed)
    with tempfile.TemporaryDirectory() as d:
        objs = []
        g = qf.UniformGrid.symmetric(2.0, 0.5)
        objs.append(qf.LineSamples(g, rng.normal(size=(g.n, 4))))
        objs.append(qf.Spectrum(g, rng.normal(size=(g.n, 4)), qt.random_units(rng, 1)[0]))
        objs.append(pw.CompactSpectrum(1.5, rng.normal(size=(25, 4)), qt.random_units(rng, 1)[0]))
        R = hd.random_rational_hardy(rng)
        objs.append(R.half_line(cutoff=60.0, n=601))
        objs.append(hd.BoundaryTrace(qf.LineSamples(g, rng.normal(size=(g.n, 4))), qt.UNIT_J))
        objs.append(sm.SampleSet(2.0, 3, rng.normal(size=(7, 4))))
        bad = 0
        for k, o in enumerate(objs):
            p = os.path.join(d, f"o{k}.json")
            sio.write_json(o, p)
            back = sio.read_json(p)
            same = type(back) is type(o) and np.array_equal(back.values, o.values)
            same &= sio.dumps(sio.to_dict(back)) == sio.dumps(sio.to_dict(o))
            bad += 0 if same else 1
            if not isinstance(o, (pw.CompactSpectrum, hd.HalfLineSpectrum)):
                pc = os.path.join(d, f"o{k}.csv")
                sio.write_csv(o, pc)
                unit = getattr(o, "unit", None)
                back = sio.read_csv(pc, unit=unit, band=getattr(o, "band", None))
                bad += 0 if np.array_equal(back.values, o.values) else 1
        r.add("file_round_trip_mismatches", bad, 0.0)
        # exit-code contract
        spec = os.path.join(d, "box.json")
        A = np.pi
        sio.write_json(pw.CompactSpectrum.from_function(lambda t: np.ones_like(t) / qf.SQRT_2PI, A, 257), spec)
        hspec = os.path.join(d, "half.json")
        sio.write_json(R.half_line(), hspec)
        gauss = os.path.join(d, "gauss.json")
        gg = qf.UniformGrid.symmetric(20.0, 0.05)
        sio.write_json(hd.BoundaryTrace(qf.LineSamples.from_function(lambda y: np.exp(-(y**2)), gg)), gauss)
        samples = os.path.join(d, "samples.json")
        delta = np.zeros((11, 4))
        delta[5, 0] = 1.0
        sio.write_json(sm.SampleSet(np.pi, 5, delta), samples)
        out = os.path.join(d, "out.json")
        cases = [
            (["synth", spec, "--extent", "4", "--grid-step", "0.5", "--out", out], 0),
            (["verify"], 2),
            (["verify", "no-such-suite"], 2),
            (["synth", hspec, "--re", "0.01", "--out", out], 3),
            (["qft", gauss, "--essential", "--out", out], 4),
            (["reconstruct", samples, "--at", "0.5,0,3,0", "--M", "1", "--out", out], 5),
            (["kernel-eval", "--kind", "rk", "--q1=-1,0,0,0", "--q2=1,0,0,0"], 5),
            (["synth", spec, "--bogus"], 2),
        ]
        wrong = 0
        for argv, code in cases:
            got = cli.main(argv, quiet=True)
            if got != code:
                wrong += 1
                r.diagnostics.setdefault("exit_code_mismatches", []).append({"argv": argv, "expected": code, "got": got})
        r.add("exit_code_mismatches", wrong, 0.0)
        # byte-identical reruns
        o1, o2 = os.path.join(d, "r1.json"), os.path.join(d, "r2.json")
        cli.main(["verify", "algebra", "--seed", str(seed), "--out", o1], quiet=True)
        cli.main(["verify", "algebra", "--seed", str(seed), "--out", o2], quiet=True)
        with open(o1, "rb") as a, open(o2, "rb") as b:
            same = a.read() == b.read()
        r.add("rerun_byte_mismatch", 0.0 if same else 1.0, 0.0)
    return r


SUITES: dict[str, Callable[..., Report]] = {
    "algebra": suite_algebra,
    "entire": suite_entire,
    "structure": suite_structure,
    "qft": suite_qft,
    "pw-compact": suite_pw_compact,
    "hardy": suite_hardy,
    "kernel": suite_kernel,
    "sampling": suite_sampling,
    "cli": suite_cli,
}


def run_suite(name: str, seed: int = DEFAULT_SEED, **knobs) -> Report:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    return SUITES[name](seed=seed, **knobs)


def report_json(report: Report) -> str:
    return json.dumps(report.to_dict())
