"""Hardy-space machinery on the right half-space ``Re q > 0``.

A Hardy function is stored through its essential spectrum on ``(-inf, 0]``,
truncated to ``[-T, 0]``:

    f(x + J y) = (2 pi)^{-1/2} int_{-T}^0 e^{(x + J y) t} V(t) dt.

The spectrum does not depend on the slice, so the same data serve every
unit ``J``.  Boundary data ``F(y) = f(I y)`` are extended into the half-space
either with the Poisson kernel ``P(x, y) = x / (pi (x^2 + y^2))`` or with the
Cauchy kernel ``K(z) = 1 / (2 pi z)`` placed on the left; values off the data
slice come from the representation formula.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import factorial

import numpy as np
from scipy import integrate

from .errors import DomainError, GridError, InvariantError, TruncationError
from .qft import SQRT_2PI, LineSamples, Spectrum, UniformGrid, cos_sin_sums, halfline_leakage, qft_left
from .quaternion import (
    UNIT_I,
    ImaginaryUnit,
    Quaternion,
    as_quat,
    as_units,
    from_slice,
    left_unit_mul,
    mul,
    norm,
    orthogonal_frame,
    random_quaternions,
    split_arrays,
)
from .slicefn import RIGHT_HALF_SPACE, SliceEvaluator, represent, unit_product

#: truncation budget e^{-x T} max|V| <= TRUNC_EPS sets the smallest usable Re q
TRUNC_EPS = 1e-12
#: |V(-T)| must be below this fraction of max|V|
DECAY_RATIO = 1e-8
SYMMETRY_TOL = 1e-10
_QCHUNK = 256


def _unit(u) -> ImaginaryUnit:
    return u if isinstance(u, ImaginaryUnit) else ImaginaryUnit.from_vector(u)


@dataclass(frozen=True)
class HalfLineSpectrum:
    """Essential spectrum sampled on ``[-T, 0]``.

    ``x_floor`` is the smallest real part at which synthesis is trusted; by
    default it is chosen so that ``e^{-x T} max|V| <= 1e-12``.  A caller who
    knows the spectrum is already negligible near ``-T`` may declare a lower
    floor.  ``exact_cutoff=True`` declares that the spectrum really ends at
    ``-T`` (the truncated integral is the function itself); the decay
    requirement is then waived and any ``x > 0`` is admissible.
    """

    cutoff: float
    values: np.ndarray
    unit: ImaginaryUnit = field(default=UNIT_I)
    x_floor: float | None = None
    exact_cutoff: bool = False

    def __post_init__(self):
        if not self.cutoff > 0:
            raise GridError("cutoff T must be positive")
        v = np.asarray(as_quat(self.values), dtype=float)
        if v.ndim != 2 or v.shape[0] < 2:
            raise GridError("a half-line spectrum needs at least two nodes")
        object.__setattr__(self, "values", v)
        object.__setattr__(self, "unit", _unit(self.unit))
        Spectrum(self.grid, v, self.unit)
        mags = norm(v)
        vmax = float(np.max(mags))
        if not self.exact_cutoff and mags[0] > DECAY_RATIO * vmax:
            raise TruncationError(
                f"spectrum has not decayed at -T: |V(-T)| = {mags[0]:.3e} > {DECAY_RATIO:g} max|V|"
            )
        if self.x_floor is None:
            floor = 0.0 if (self.exact_cutoff or vmax == 0) else max(0.0, np.log(vmax / TRUNC_EPS) / self.cutoff)
            object.__setattr__(self, "x_floor", float(floor))
        elif self.x_floor < 0:
            raise ValueError("x_floor must be nonnegative")

    @property
    def grid(self) -> UniformGrid:
        return UniformGrid(-float(self.cutoff), 0.0, self.values.shape[0])

    @property
    def t(self) -> np.ndarray:
        return self.grid.points

    @classmethod
    def from_function(cls, fn, cutoff: float, n: int, unit=UNIT_I, **kw) -> "HalfLineSpectrum":
        t = np.linspace(-cutoff, 0.0, n)
        v = np.asarray(fn(t))
        if v.shape == t.shape:
            v = from_slice(np.real(v), np.imag(v), as_units(_unit(unit)))
        return cls(cutoff, v, unit, **kw)

    @classmethod
    def from_spectrum(cls, S: Spectrum, **kw) -> "HalfLineSpectrum":
        """Keep the part of a full-line spectrum on ``t <= 0``."""
        t = S.t
        keep = t <= 0.5 * S.grid.step * 1e-6
        if abs(t[keep][-1]) > 1e-9 * S.grid.step:
            raise GridError("frequency grid must contain t = 0")
        tk = t[keep]
        return cls(-float(tk[0]), S.values[keep], S.unit, **kw)


@dataclass(frozen=True)
class BoundaryTrace:
    """Boundary values ``F(y) = f(I y)`` of a half-space function on slice ``I``."""

    samples: LineSamples
    unit: ImaginaryUnit = field(default=UNIT_I)

    def __post_init__(self):
        object.__setattr__(self, "unit", _unit(self.unit))

    @property
    def grid(self) -> UniformGrid:
        return self.samples.grid

    @property
    def y(self) -> np.ndarray:
        return self.samples.x

    @property
    def values(self) -> np.ndarray:
        return self.samples.values

    def lp_norm(self, p: float) -> float:
        return self.samples.lp_norm(p)


# kernels ---------------------------------------------------------------


def _slice_complex(z):
    """Complex array and the units of a complex or quaternion argument."""
    if isinstance(z, Quaternion) or (np.ndim(z) > 0 and np.shape(z)[-1:] == (4,) and not np.iscomplexobj(z)):
        x, y, u = split_arrays(as_quat(z))
        return x + 1j * y, u
    return np.asarray(z, dtype=complex), None


def cauchy_kernel(z):
    """``K(z) = 1 / (2 pi z)`` for ``Re z > 0``.

    Accepts complex numbers or quaternions; a quaternion result stays on the
    slice of its argument.
    """
    zc, u = _slice_complex(z)
    if np.any(zc.real <= 0):
        raise DomainError("cauchy_kernel needs Re z > 0")
    k = 1.0 / (2.0 * np.pi * zc)
    if u is None:
        return k if np.ndim(k) else complex(k)
    out = from_slice(k.real, k.imag, u)
    return Quaternion.from_array(out) if isinstance(z, Quaternion) else out


def cauchy_kernel_quad(z: complex) -> complex:
    """Defining integral ``(1/2pi) int_{-inf}^0 e^{z s} ds`` by adaptive quadrature."""
    z = complex(z)
    if z.real <= 0:
        raise DomainError("cauchy_kernel needs Re z > 0")
    # s = -u, u in [0, inf): e^{-x u} (cos(y u) - i sin(y u))
    re = integrate.quad(lambda u: np.exp(-z.real * u), 0, np.inf, weight="cos", wvar=z.imag)[0] if z.imag else 1.0 / z.real
    im = -integrate.quad(lambda u: np.exp(-z.real * u), 0, np.inf, weight="sin", wvar=z.imag)[0] if z.imag else 0.0
    return complex(re, im) / (2.0 * np.pi)


def poisson_kernel(x, y):
    """``P(x, y) = x / (pi (x^2 + y^2))`` for ``x > 0``."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if np.any(x <= 0):
        raise DomainError("poisson_kernel needs x > 0")
    out = x / (np.pi * (x * x + y * y))
    return float(out) if out.ndim == 0 else out


def poisson_kernel_ratio(x, y):
    """``|K(x + iy)|^2 / K(2x)``, the kernel-ratio form of the Poisson kernel."""
    x = np.asarray(x, dtype=float)
    k = cauchy_kernel(x + 1j * np.asarray(y, dtype=float))
    out = np.abs(k) ** 2 / cauchy_kernel(2.0 * x + 0j).real
    return float(out) if np.ndim(out) == 0 else out


# synthesis -------------------------------------------------------------


class HardyFunction:
    """Evaluator of the half-line synthesis integral of a :class:`HalfLineSpectrum`."""

    def __init__(self, spectrum: HalfLineSpectrum):
        self.spectrum = spectrum
        self.evaluator = SliceEvaluator(self._eval, RIGHT_HALF_SPACE, name="hardy")
        # boundary sums do not depend on the unit; keyed by grid
        self._trace_sums: dict[UniformGrid, tuple[np.ndarray, np.ndarray]] = {}

    def _sums(self, x, y):
        S = self.spectrum
        t = S.t
        w = S.grid.weights() / SQRT_2PI
        V = S.values
        a = np.empty((x.size, 4))
        b = np.empty_like(a)
        for lo in range(0, x.size, _QCHUNK):
            E = w * np.exp(np.outer(x[lo : lo + _QCHUNK], t))
            arg = np.outer(y[lo : lo + _QCHUNK], t)
            a[lo : lo + _QCHUNK] = (E * np.cos(arg)) @ V
            b[lo : lo + _QCHUNK] = (E * np.sin(arg)) @ V
        return a, b

    def _eval(self, q):
        a = as_quat(q)
        shape = a.shape[:-1]
        x, y, u = split_arrays(a.reshape(-1, 4))
        if np.any(x < self.spectrum.x_floor):
            raise TruncationError(
                f"Re q = {float(np.min(x)):.3g} is below the admissible floor {self.spectrum.x_floor:.3g} "
                f"for cutoff T = {self.spectrum.cutoff:g}"
            )
        al, be = self._sums(x, y)
        return (al + left_unit_mul(u, be)).reshape(shape + (4,))

    def __call__(self, q):
        return self.evaluator(q)

    def eval_array(self, q) -> np.ndarray:
        return self.evaluator.eval_array(q)

    def on_slice(self, x, y, units) -> np.ndarray:
        return self.evaluator.on_slice(x, y, units)

    def boundary_trace(self, grid: UniformGrid, unit=UNIT_I) -> BoundaryTrace:
        """Boundary values at ``I y`` (the synthesis integral at ``x = 0``).

        Needs a spectrum that has decayed at ``-T``; exact-cutoff spectra
        have no trustworthy trace and are refused.
        """
        S = self.spectrum
        if S.exact_cutoff:
            raise TruncationError("boundary trace needs a spectrum that decays before -T")
        u = _unit(unit)
        if grid not in self._trace_sums:
            C, Sn = cos_sin_sums(S.grid, S.values, grid)
            self._trace_sums[grid] = (C / SQRT_2PI, Sn / SQRT_2PI)
        al, be = self._trace_sums[grid]
        return BoundaryTrace(LineSamples(grid, al + left_unit_mul(u.vec, be)), u)


def hardy_function(S: HalfLineSpectrum) -> HardyFunction:
    return HardyFunction(S)


def synthesize_hardy(S: HalfLineSpectrum, q):
    """Value(s) of the half-line synthesis integral at ``q`` (``Re q > 0``)."""
    return HardyFunction(S)(q)


# extension of boundary data --------------------------------------------


def _check_interior(x):
    if np.any(np.asarray(x) <= 0):
        raise DomainError("extension needs Re q > 0")


def _same_slice_conv(F: BoundaryTrace, x, y, kind: str):
    """Kernel convolution on the data slice at points ``x + I y`` (arrays)."""
    t = F.y
    w = F.grid.weights()
    V = F.values
    out = np.empty((x.size, 4))
    for lo in range(0, x.size, _QCHUNK):
        xs = x[lo : lo + _QCHUNK, None]
        d = y[lo : lo + _QCHUNK, None] - t
        r2 = xs * xs + d * d
        if kind == "poisson":
            out[lo : lo + _QCHUNK] = (w * xs / (np.pi * r2)) @ V
        else:
            # K(x + I d) = (x - I d) / (2 pi (x^2 + d^2)), on the left of F
            a = (w * xs / (2 * np.pi * r2)) @ V
            b = (w * -d / (2 * np.pi * r2)) @ V
            out[lo : lo + _QCHUNK] = a + left_unit_mul(F.unit.vec, b)
    return out


def _extend(F: BoundaryTrace, q, kind: str):
    a = as_quat(q)
    shape = a.shape[:-1]
    x, y, u = split_arrays(a.reshape(-1, 4))
    _check_interior(x)
    I = F.unit.vec
    # values on the data slice at x + I y and its mirror x - I y
    both = _same_slice_conv(F, np.concatenate([x, x]), np.concatenate([y, -y]), kind)
    fp, fm = both[: x.size], both[x.size :]
    out = represent(fp, fm, I, u).reshape(shape + (4,))
    return Quaternion.from_array(out) if isinstance(q, Quaternion) else out


def poisson_extend(F: BoundaryTrace, q):
    """Poisson integral ``int P(x, y - t) F(t) dt`` at ``q = x + J y``.

    On the data slice this is the plain convolution; on other slices the
    representation formula combines the values at ``x +- I y``.
    """
    return _extend(F, q, "poisson")


def cauchy_extend(F: BoundaryTrace, q):
    """Cauchy integral ``int K(x + I (y - t)) F(t) dt`` with ``K`` on the left."""
    return _extend(F, q, "cauchy")


def hardy_extend(F: BoundaryTrace) -> SliceEvaluator:
    """Half-space extension of boundary data through the symplectic split.

    ``F = G0 + G1 J`` with ``G0, G1`` valued in ``C_I`` (``J`` from
    :func:`orthogonal_frame`); each part is a slice-complex problem, extended
    by the Poisson integral and recombined.
    """
    I = F.unit
    J, _ = orthogonal_frame(I)
    V = F.values
    Iq = np.concatenate([[0.0], I.vec])
    Jq = np.concatenate([[0.0], J.vec])
    Kq = mul(Iq, Jq)
    # V = g0 + g1 I + (h0 + h1 I) J
    g0, g1 = V[:, 0], V @ Iq
    h0, h1 = V @ Jq, V @ Kq
    G0 = BoundaryTrace(LineSamples(F.grid, from_slice(g0, g1, I.vec)), I)
    G1 = BoundaryTrace(LineSamples(F.grid, from_slice(h0, h1, I.vec)), I)

    def fn(q):
        e0 = poisson_extend(G0, q)
        e1 = poisson_extend(G1, q)
        return e0 + mul(e1, np.broadcast_to(Jq, np.shape(e1)))

    return SliceEvaluator(fn, RIGHT_HALF_SPACE, name="hardy_extend")


def hardy_membership(F: BoundaryTrace, p: int = 2, tol: float = 1e-6, margin_bins: int = 1) -> bool:
    """Boundary data of an ``H^p`` function iff its spectrum vanishes for ``t > 0``.

    Only ``p in {1, 2}`` is supported; the spectral test is the same for both,
    the norm check differs.  ``margin_bins`` skips the bins next to ``t = 0``
    where truncation of the line smears the spectrum.
    """
    if p not in (1, 2):
        raise ValueError("hardy_membership supports p in {1, 2}")
    if tol <= 0:
        raise ValueError("tol must be positive")
    if not np.isfinite(F.lp_norm(p)):
        return False
    S = qft_left(F.samples, F.unit)
    return halfline_leakage(S, margin_bins) <= tol


def check_even_odd(A_even: LineSamples, B_odd: LineSamples, tol: float = SYMMETRY_TOL) -> None:
    if A_even.grid != B_odd.grid or not A_even.grid.is_symmetric:
        raise GridError("even/odd data must share one symmetric grid")
    a, b = A_even.values, B_odd.values
    if np.any(a[:, 1:]) or np.any(b[:, 1:]):
        raise ValueError("even/odd data must be real valued")
    ea = float(np.max(np.abs(a[:, 0] - a[::-1, 0])))
    eb = float(np.max(np.abs(b[:, 0] + b[::-1, 0])))
    if ea > tol or eb > tol:
        raise InvariantError(f"symmetry violated (even defect {ea:.2e}, odd defect {eb:.2e})", max(ea, eb))


def symmetric_trace(A_even: LineSamples, B_odd: LineSamples, unit) -> BoundaryTrace:
    """``A + U B`` as boundary data on slice ``U``."""
    u = _unit(unit)
    return BoundaryTrace(LineSamples(A_even.grid, from_slice(A_even.values[:, 0], B_odd.values[:, 0], u.vec)), u)


def hardy_extend_symmetric(
    A_even: LineSamples, B_odd: LineSamples, q, tol: float = 1e-6, probe_unit=UNIT_I, margin_bins: int = 1
):
    """Slice preserving Hardy function with boundary data ``A + J B`` on every slice ``J``.

    ``A`` must be even and ``B`` odd (real valued); the spectrum of
    ``A + I B`` on the probe unit must vanish for ``t > 0`` up to ``tol``.
    At ``q = x + J y`` the value is ``int P(x, y - t) (A(t) + J B(t)) dt``.
    """
    check_even_odd(A_even, B_odd)
    probe = symmetric_trace(A_even, B_odd, probe_unit)
    leak = halfline_leakage(qft_left(probe.samples, probe.unit), margin_bins)
    if leak > tol:
        raise InvariantError(f"boundary spectrum has positive-frequency content {leak:.3e} > {tol:.1e}", leak)
    a = as_quat(q)
    shape = a.shape[:-1]
    x, y, u = split_arrays(a.reshape(-1, 4))
    _check_interior(x)
    grid = A_even.grid
    t = grid.points
    w = grid.weights()
    Av, Bv = A_even.values[:, 0], B_odd.values[:, 0]
    re = np.empty(x.size)
    im = np.empty(x.size)
    for lo in range(0, x.size, _QCHUNK):
        xs = x[lo : lo + _QCHUNK, None]
        d = y[lo : lo + _QCHUNK, None] - t
        P = w * xs / (np.pi * (xs * xs + d * d))
        re[lo : lo + _QCHUNK] = P @ Av
        im[lo : lo + _QCHUNK] = P @ Bv
    out = from_slice(re, im, u).reshape(shape + (4,))
    return Quaternion.from_array(out) if isinstance(q, Quaternion) else out


# reproducing kernel ----------------------------------------------------


def _rk_parts(x1, y1, x2, y2):
    s = x1 + x2

    def Lc(w):
        return s / (s * s + w * w)

    def Ls(w):
        return w / (s * s + w * w)

    cc = 0.5 * (Lc(y1 - y2) + Lc(y1 + y2))
    cs = 0.5 * (Ls(y2 + y1) + Ls(y2 - y1))
    sc = 0.5 * (Ls(y1 + y2) + Ls(y1 - y2))
    ss = 0.5 * (Lc(y1 - y2) - Lc(y1 + y2))
    return cc, cs, sc, ss


def _rk_parts_quad(x1, y1, x2, y2):
    s = x1 + x2

    def lap(w, kind):
        if w == 0:
            return 1.0 / s if kind == "cos" else 0.0
        sign = 1.0
        if w < 0:
            w, sign = -w, (1.0 if kind == "cos" else -1.0)
        return sign * integrate.quad(lambda t: np.exp(-s * t), 0, np.inf, weight=kind, wvar=w)[0]

    cc = 0.5 * (lap(y1 - y2, "cos") + lap(y1 + y2, "cos"))
    cs = 0.5 * (lap(y2 + y1, "sin") + lap(y2 - y1, "sin"))
    sc = 0.5 * (lap(y1 + y2, "sin") + lap(y1 - y2, "sin"))
    ss = 0.5 * (lap(y1 - y2, "cos") - lap(y1 + y2, "cos"))
    return cc, cs, sc, ss


def rk_halfspace(q1, q2, method: str = "closed"):
    """Kernel ``k(q1, q2) = int_0^inf e^{-q1 t} e^{-conj(q2) t} dt``.

    Expanding both exponentials on their slices gives

        k = L_cc + L_cs I2 - L_sc I1 - L_ss I1 I2

    with Laplace transforms of products of cosines and sines at
    ``s = Re q1 + Re q2``.  ``method="quad"`` evaluates those one-sided
    Fourier integrals with QUADPACK's oscillatory rule instead of the closed
    form (scalar arguments only).
    """
    a1, a2 = as_quat(q1), as_quat(q2)
    x1, y1, I1 = split_arrays(a1)
    x2, y2, I2 = split_arrays(a2)
    if np.any(x1 <= 0) or np.any(x2 <= 0):
        raise DomainError("rk_halfspace needs Re q1 > 0 and Re q2 > 0")
    if method == "closed":
        cc, cs, sc, ss = _rk_parts(x1, y1, x2, y2)
    elif method == "quad":
        if a1.ndim != 1 or a2.ndim != 1:
            raise ValueError("quadrature path takes single quaternions")
        cc, cs, sc, ss = _rk_parts_quad(float(x1), float(y1), float(x2), float(y2))
    else:
        raise ValueError(f"unknown method {method!r}")
    shape = np.broadcast_shapes(np.shape(cc), I1.shape[:-1], I2.shape[:-1])
    cc, cs, sc, ss = (np.broadcast_to(v, shape) for v in (cc, cs, sc, ss))
    out = np.zeros(shape + (4,))
    out[..., 0] = cc
    out[..., 1:] += cs[..., None] * I2 - sc[..., None] * I1
    out -= ss[..., None] * unit_product(I1, I2)
    if isinstance(q1, Quaternion) or isinstance(q2, Quaternion):
        return Quaternion.from_array(out)
    return out


def rk_reproduce(F: BoundaryTrace, q):
    """``(1/2pi) int k(q, I y) F(y) dy`` with the kernel on the left."""
    a = as_quat(q)
    shape = a.shape[:-1]
    qs = a.reshape(-1, 4)
    y = F.y
    w = F.grid.weights() / (2 * np.pi)
    pts = from_slice(np.full_like(y, 0.0), y, F.unit.vec)
    out = np.empty((qs.shape[0], 4))
    x2, y2, I2 = split_arrays(pts)
    for m, qq in enumerate(qs):
        x1, y1, I1 = split_arrays(qq)
        if x1 <= 0:
            raise DomainError("rk_reproduce needs Re q > 0")
        cc, cs, sc, ss = _rk_parts(x1, y1, x2, y2)
        k = np.zeros((y.size, 4))
        k[:, 0] = cc
        k[:, 1:] = cs[:, None] * I2 - sc[:, None] * I1
        k -= ss[:, None] * unit_product(I1, I2)
        out[m] = w @ mul(k, F.values)
    out = out.reshape(shape + (4,))
    return Quaternion.from_array(out) if isinstance(q, Quaternion) else out


# admissible test spectra ------------------------------------------------


@dataclass(frozen=True)
class RationalHardy:
    """Closed form of ``V(t) = sum_j t^{n_j} e^{a_j t} c_j`` on ``(-inf, 0]``.

    ``f(q) = (2 pi)^{-1/2} sum_j (-1)^{n_j} n_j! (q + a_j)^{-(n_j + 1)} c_j``.
    """

    powers: tuple[int, ...]
    rates: tuple[float, ...]
    coeffs: np.ndarray

    def spectrum_values(self, t) -> np.ndarray:
        t = np.asarray(t, dtype=float)
        out = np.zeros(t.shape + (4,))
        for n, a, c in zip(self.powers, self.rates, self.coeffs):
            out += (t**n * np.exp(a * t))[..., None] * c
        return out

    def __call__(self, q) -> np.ndarray:
        """Values at quaternions with ``Re q >= 0`` (boundary included)."""
        x, y, u = split_arrays(as_quat(q))
        z = x + 1j * y
        out = 0.0
        for n, a, c in zip(self.powers, self.rates, self.coeffs):
            g = (-1) ** n * factorial(n) / (z + a) ** (n + 1) / SQRT_2PI
            out = out + mul(from_slice(g.real, g.imag, u), np.broadcast_to(c, u.shape[:-1] + (4,)))
        return out

    def trace(self, grid: UniformGrid, unit=UNIT_I) -> BoundaryTrace:
        u = _unit(unit)
        y = grid.points
        return BoundaryTrace(LineSamples(grid, self(from_slice(0.0 * y, y, u.vec))), u)

    def half_line(self, cutoff: float = 80.0, n: int = 8001, unit=UNIT_I, **kw) -> HalfLineSpectrum:
        t = np.linspace(-cutoff, 0.0, n)
        return HalfLineSpectrum(cutoff, self.spectrum_values(t), unit, **kw)


def random_rational_hardy(rng: np.random.Generator, terms: int = 2, real: bool = False) -> RationalHardy:
    """Random admissible spectrum: powers 3..6, rates in [0.75, 1.5], quaternion (or real) coefficients."""
    powers = tuple(int(n) for n in rng.integers(3, 7, size=terms))
    rates = tuple(float(a) for a in rng.uniform(0.75, 1.5, size=terms))
    c = random_quaternions(rng, terms)
    if real:
        c = c * np.array([1.0, 0, 0, 0])
        c[:, 0] = rng.uniform(-1, 1, size=terms)
    return RationalHardy(powers, rates, c)
