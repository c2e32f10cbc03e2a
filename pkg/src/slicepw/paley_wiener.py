"""Compact-type Paley-Wiener functions on H.

A function of ``PW_A`` is represented by its spectrum ``F_I(f|R)`` sampled on
``[-A, A]``.  Synthesis at ``x + J y`` uses

    f(x + J y) = (2 pi)^{-1/2} int e^{J (x + J y) t} F_J(t) dt,

where ``F_J`` is obtained from the stored ``F_I`` by the slice transfer
identity.  Splitting ``F_I = C - I S`` into its cosine and sine parts gives
the stem functions directly:

    alpha = (2 pi)^{-1/2} int e^{-y t} (cos(xt) C + sin(xt) S) dt
    beta  = (2 pi)^{-1/2} int e^{-y t} (sin(xt) C - cos(xt) S) dt.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, GridError, TruncationError
from .qft import SQRT_2PI, LineSamples, Spectrum, UniformGrid, qft_left, support_radius
from .quaternion import (
    UNIT_I,
    ImaginaryUnit,
    Quaternion,
    as_quat,
    complex_sinc,
    from_slice,
    left_unit_mul,
    mul,
    norm,
    orthogonal_frame,
    random_quaternions,
    split_arrays,
)
from .slicefn import WHOLE_SPACE, SliceEvaluator

#: minimum spectral nodes per unit of bandwidth (2A)
MIN_NODES_PER_BAND = 8
#: growth_check refuses points farther out than this
GROWTH_RADIUS = 10.0
GROWTH_SLACK = 1e-6
#: evaluation is blocked over this many query points
_QCHUNK = 256


@dataclass(frozen=True)
class CompactSpectrum:
    """Spectrum on ``[-A, A]`` defining a ``PW_A`` function."""

    band: float
    values: np.ndarray
    unit: ImaginaryUnit = field(default=UNIT_I)

    def __post_init__(self):
        if not self.band > 0:
            raise GridError("band A must be positive")
        v = np.asarray(as_quat(self.values), dtype=float)
        if v.ndim != 2 or v.shape[0] < 2:
            raise GridError("a compact spectrum needs at least two nodes")
        object.__setattr__(self, "values", v)
        if not isinstance(self.unit, ImaginaryUnit):
            object.__setattr__(self, "unit", ImaginaryUnit.from_vector(self.unit))
        Spectrum(self.grid, v, self.unit)  # validates finiteness

    @property
    def grid(self) -> UniformGrid:
        return UniformGrid(-float(self.band), float(self.band), self.values.shape[0])

    @property
    def t(self) -> np.ndarray:
        return self.grid.points

    def as_spectrum(self) -> Spectrum:
        return Spectrum(self.grid, self.values, self.unit)

    @classmethod
    def from_spectrum(cls, S: Spectrum) -> "CompactSpectrum":
        if not S.grid.is_symmetric:
            raise GridError("compact spectra live on a symmetric grid [-A, A]")
        return cls(S.grid.stop, S.values, S.unit)

    @classmethod
    def from_function(cls, fn, band: float, n: int, unit=UNIT_I) -> "CompactSpectrum":
        """Tabulate ``fn(t)`` on ``[-A, A]``; real/complex output lands in ``C_unit``."""
        t = np.linspace(-band, band, n)
        v = np.asarray(fn(t))
        if v.shape == t.shape:
            u = unit.vec if isinstance(unit, ImaginaryUnit) else np.asarray(unit, dtype=float)
            v = from_slice(np.real(v), np.imag(v), u)
        return cls(band, v, unit)

    def l2_norm(self) -> float:
        return float(np.sqrt(self.as_spectrum().l2_norm_sq()))

    def stem_parts(self) -> tuple[np.ndarray, np.ndarray]:
        """Cosine part ``C(t)`` and sine part ``S(t)`` with ``F_I = C - I S``."""
        V = self.values
        M = V[::-1]
        C = 0.5 * (V + M)
        S = 0.5 * left_unit_mul(self.unit.vec, V - M)
        return C, S


def _stem_sums(S: CompactSpectrum, x, y, C, Sn):
    """``(alpha, beta)`` arrays at slice coordinates ``(x, y)``."""
    t = S.t
    w = S.grid.weights() / SQRT_2PI
    x = np.ravel(x)
    y = np.ravel(y)
    a = np.empty((x.size,) + C.shape[1:])
    b = np.empty_like(a)
    for lo in range(0, x.size, _QCHUNK):
        xs, ys = x[lo : lo + _QCHUNK, None], y[lo : lo + _QCHUNK, None]
        E = w * np.exp(-ys * t)
        arg = xs * t
        Ec, Es = E * np.cos(arg), E * np.sin(arg)
        a[lo : lo + _QCHUNK] = Ec @ C + Es @ Sn
        b[lo : lo + _QCHUNK] = Es @ C - Ec @ Sn
    return a, b


def check_resolution(S: CompactSpectrum) -> None:
    if S.values.shape[0] - 1 < MIN_NODES_PER_BAND * 2 * S.band:
        raise GridError(
            f"spectral grid too coarse: {S.values.shape[0]} nodes for band {S.band} "
            f"(need {MIN_NODES_PER_BAND} per unit bandwidth)"
        )


class PWFunction:
    """Evaluator of the function synthesized from a :class:`CompactSpectrum`."""

    def __init__(self, spectrum: CompactSpectrum, method: str = "stem"):
        check_resolution(spectrum)
        if method not in ("stem", "components"):
            raise ValueError(f"unknown synthesis method {method!r}")
        self.spectrum = spectrum
        self.method = method
        self._C, self._S = spectrum.stem_parts()
        if method == "components":
            self._frame = _full_frame(spectrum.unit)
        self.evaluator = SliceEvaluator(self._eval, WHOLE_SPACE, name="pw")

    @property
    def band(self) -> float:
        return self.spectrum.band

    def _eval(self, q):
        a = as_quat(q)
        shape = a.shape[:-1]
        x, y, units = split_arrays(a.reshape(-1, 4))
        if self.method == "stem":
            al, be = _stem_sums(self.spectrum, x, y, self._C, self._S)
            out = al + left_unit_mul(units, be)
        else:
            out = np.zeros((x.size, 4))
            for e in self._frame:
                # real component spectra along e; h_m(x + Uy) = a_m + U b_m
                al, be = _stem_sums(self.spectrum, x, y, self._C @ e, self._S @ e)
                h = from_slice(al, be, units)
                out += _right_mul(h, e)
        return out.reshape(shape + (4,))

    def __call__(self, q):
        return self.evaluator(q)

    def eval_array(self, q) -> np.ndarray:
        return self.evaluator.eval_array(q)

    def on_slice(self, x, y, units) -> np.ndarray:
        return self.evaluator.on_slice(x, y, units)

    def growth_constant(self) -> float:
        """``sqrt(A / pi) ||S||_2``; ``|f(q)| <= constant * e^{A |im q|}``."""
        return float(np.sqrt(self.band / np.pi) * self.spectrum.l2_norm())

    def restrict(self, grid: UniformGrid) -> LineSamples:
        x = grid.points
        return LineSamples(grid, self.eval_array(from_slice(x, 0.0 * x, UNIT_I.vec)))


def _full_frame(I: ImaginaryUnit) -> np.ndarray:
    J, K = orthogonal_frame(I)
    return np.stack([[1.0, 0, 0, 0], [0.0, *I.vec], [0.0, *J.vec], [0.0, *K.vec]])


def _right_mul(h, e):
    return mul(h, np.broadcast_to(e, h.shape))


def synthesize_compact(S: CompactSpectrum, method: str = "stem") -> PWFunction:
    """Paley-Wiener function with spectrum ``S`` (kernel unit ``S.unit``).

    ``method="stem"`` evaluates the transferred synthesis integral on the query
    slice; ``method="components"`` splits the spectrum along the frame
    ``{1, I, J, K}`` into four real-signal spectra and synthesizes each slice
    preserving component separately.  Both agree to rounding.
    """
    return PWFunction(S, method)


@dataclass(frozen=True)
class GrowthReport:
    ratios: np.ndarray
    max_ratio: float
    passed: bool


def growth_check(f: PWFunction, points, slack: float = GROWTH_SLACK) -> GrowthReport:
    """Ratios ``|f(q)| / (sqrt(A/pi) ||S||_2 e^{A |im q|})``; pass iff all ``<= 1 + slack``."""
    q = as_quat(points).reshape(-1, 4)
    if np.any(norm(q) > GROWTH_RADIUS):
        raise DomainError(f"growth_check points must satisfy |q| <= {GROWTH_RADIUS}")
    _, y, _ = split_arrays(q)
    bound = f.growth_constant() * np.exp(f.band * y)
    vals = norm(f.eval_array(q))
    with np.errstate(invalid="ignore", divide="ignore"):
        ratios = np.where(bound > 0, vals / np.where(bound > 0, bound, 1.0), 0.0)
    m = float(np.max(ratios, initial=0.0))
    return GrowthReport(ratios, m, m <= 1.0 + slack)


def pw_membership(F: LineSamples, A: float, tol: float, units=None) -> bool:
    """Spectral support test ``supp F_U(F) in [-A, A]`` up to one bin of leakage.

    The support threshold is ``tol`` plus ``tol * max|S|`` (absolute floor
    scaled by the spectrum's size); by default the test runs on ``i`` and on a
    second orthogonal unit.
    """
    if A <= 0 or tol <= 0:
        raise ValueError("A and tol must be positive")
    if not np.any(F.values):
        return True
    for u in units if units is not None else (UNIT_I, orthogonal_frame(UNIT_I)[0]):
        S = qft_left(F, u)
        thresh = tol * (1.0 + float(np.max(norm(S.values))))
        if support_radius(S, thresh) > A + S.grid.step:
            return False
    return True


def _reproduce_window(grid: UniformGrid, x) -> None:
    span = grid.stop - grid.start
    lo, hi = grid.start + 0.25 * span, grid.stop - 0.25 * span
    if np.any((x < lo) | (x > hi)):
        raise TruncationError(f"reproduce: Re q must lie in [{lo:g}, {hi:g}] for this grid (central half)")


def reproduce(f_samples: LineSamples, A: float, q):
    """Reproducing-kernel evaluation ``(A/pi) int sinc((A/pi)(q - t)) f(t) dt``.

    The sinc factor multiplies the samples from the left.  ``q`` may be one
    quaternion or an array ``(..., 4)``; ``Re q`` must lie in the central
    half of the sampled line so that truncation stays small.
    """
    if A <= 0:
        raise ValueError("A must be positive")
    a = as_quat(q)
    shape = a.shape[:-1]
    x, y, units = split_arrays(a.reshape(-1, 4))
    grid = f_samples.grid
    _reproduce_window(grid, x)
    t = grid.points
    w = grid.weights() * (A / np.pi)
    V = f_samples.values
    al = np.empty((x.size, 4))
    be = np.empty_like(al)
    for lo in range(0, x.size, _QCHUNK):
        z = (A / np.pi) * ((x[lo : lo + _QCHUNK, None] - t) + 1j * y[lo : lo + _QCHUNK, None])
        g = w * complex_sinc(z)
        al[lo : lo + _QCHUNK] = g.real @ V
        be[lo : lo + _QCHUNK] = g.imag @ V
    out = (al + left_unit_mul(units, be)).reshape(shape + (4,))
    if isinstance(q, Quaternion):
        return Quaternion.from_array(out)
    return out


def bump_spectrum_values(t, A: float, coeffs, power: int = 6) -> np.ndarray:
    """``(1 - (t/A)^2)^p * sum_j c_j (t/A)^j`` with quaternion ``c_j`` (right factors)."""
    tau = np.asarray(t, dtype=float) / A
    env = np.clip(1.0 - tau**2, 0.0, None) ** power
    coeffs = as_quat(coeffs)
    poly = sum(np.outer(tau**j, c) for j, c in enumerate(coeffs))
    return env[:, None] * poly


def random_compact_spectrum(
    rng: np.random.Generator, A: float, unit=UNIT_I, n: int = 4097, degree: int = 2, power: int = 6
) -> CompactSpectrum:
    """Smooth random spectrum: a bump of order ``power`` times a random quaternion polynomial.

    The bump vanishes to order ``power`` at ``+-A`` so the synthesized function
    decays like ``|x|^{-(power+1)}``; ``n`` is large enough that the discrete
    synthesis matches the continuous one far beyond the sampling windows used
    in the test-suites.
    """
    t = np.linspace(-A, A, n)
    c = random_quaternions(rng, degree + 1)
    return CompactSpectrum(A, bump_spectrum_values(t, A, c, power), unit)
