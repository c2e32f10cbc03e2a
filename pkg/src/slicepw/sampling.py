"""Sinc-series sampling and reconstruction for ``PW_A`` functions on H.

Samples are taken at ``pi k / A`` on the real axis and the series

    f(q) = sum_k sinc(A q / pi - k) f(pi k / A)

is summed with the sinc factor on the LEFT of each sample.  For ``q = x + I y``
all arguments ``A q / pi - k`` lie on the slice of ``q``, so the coefficient
matrix is a complex sinc table and the sum splits into two real matrix
products.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError, GridError
from .qft import UniformGrid
from .quaternion import UNIT_I, Quaternion, as_quat, complex_sinc, from_slice, left_unit_mul, norm, split_arrays

#: default truncation and declared imaginary-part bound
DEFAULT_K = 200
DEFAULT_M = 1.0
_QCHUNK = 256


@dataclass(frozen=True)
class SampleSet:
    """Samples ``f(pi k / A)`` for ``k = -K..K``."""

    band: float
    K: int
    values: np.ndarray

    def __post_init__(self):
        if not self.band > 0:
            raise GridError("band A must be positive")
        if int(self.K) != self.K or self.K < 0:
            raise GridError("K must be a nonnegative integer")
        v = np.asarray(as_quat(self.values), dtype=float)
        if v.shape != (2 * self.K + 1, 4):
            raise GridError(f"expected {2 * self.K + 1} samples, got shape {v.shape}")
        if not np.all(np.isfinite(v)):
            raise GridError("samples must be finite")
        object.__setattr__(self, "values", v)

    @property
    def k(self) -> np.ndarray:
        return np.arange(-self.K, self.K + 1)

    @property
    def nodes(self) -> np.ndarray:
        return np.pi * self.k / self.band

    @classmethod
    def from_function(cls, f, band: float, K: int = DEFAULT_K) -> "SampleSet":
        """Sample an evaluator (or a callable on quaternion arrays) at ``pi k / A``."""
        x = np.pi * np.arange(-K, K + 1) / band
        q = from_slice(x, 0.0 * x, UNIT_I.vec)
        vals = f.eval_array(q) if hasattr(f, "eval_array") else np.asarray(f(q))
        return cls(band, K, vals)

    def truncate(self, K: int) -> "SampleSet":
        if K > self.K or K < 0:
            raise GridError(f"cannot truncate K = {self.K} samples to K = {K}")
        return SampleSet(self.band, K, self.values[self.K - K : self.K + K + 1])


def scaled_im(q, band: float) -> np.ndarray:
    """``|im(A q / pi)|``, the imaginary size the sinc bound refers to."""
    _, y, _ = split_arrays(as_quat(q))
    return band * y / np.pi


def wks_reconstruct(S: SampleSet, q, M: float | None = None):
    """Truncated sinc series ``sum_{|k|<=K} sinc(A q / pi - k) f(pi k / A)``.

    If ``M`` is given, points with ``|im(A q / pi)| > M`` raise
    :class:`DomainError` (the truncation bound is only available on that strip).
    """
    a = as_quat(q)
    shape = a.shape[:-1]
    x, y, u = split_arrays(a.reshape(-1, 4))
    if M is not None and np.any(S.band * y / np.pi > M * (1 + 1e-12)):
        raise DomainError(f"query leaves the strip |im(A q / pi)| <= {M:g}")
    s = S.band / np.pi
    k = S.k
    V = S.values
    al = np.empty((x.size, 4))
    be = np.empty_like(al)
    for lo in range(0, x.size, _QCHUNK):
        z = (s * x[lo : lo + _QCHUNK, None] - k) + 1j * (s * y[lo : lo + _QCHUNK, None])
        g = complex_sinc(z)
        al[lo : lo + _QCHUNK] = g.real @ V
        be[lo : lo + _QCHUNK] = g.imag @ V
    out = (al + left_unit_mul(u, be)).reshape(shape + (4,))
    return Quaternion.from_array(out) if isinstance(q, Quaternion) else out


def sinc_power_sum(q, K: int, p: float = 2.0) -> np.ndarray:
    """Partial sums ``sum_{|k|<=K} |sinc(q - k)|^p`` for each point of ``q``."""
    x, y, _ = split_arrays(as_quat(q).reshape(-1, 4))
    k = np.arange(-K, K + 1)
    z = (x[:, None] - k) + 1j * y[:, None]
    return np.sum(np.abs(complex_sinc(z)) ** p, axis=1)


def sinc_sum_bound(M: float, p: float = 2.0) -> float:
    """``p' e^{p M pi}``, the bound for ``sum_k |sinc(q - k)|^p`` when ``|im q| <= M``."""
    if p <= 1:
        raise ValueError("p must exceed 1")
    return p / (p - 1) * np.exp(p * M * np.pi)


def truncation_bound(K: int, M: float, p: float, tail_energy: float) -> float:
    """Upper bound for ``|f(q) - (truncated series)(q)|`` on ``|im(A q / pi)| <= M``.

    Hoelder's inequality with exponents ``p`` and ``p'`` applied to the
    omitted terms, the sinc ``p``-sum bound and ``||.||_{p'} <= ||.||_2`` (valid
    for ``p' >= 2``, i.e. ``1 < p <= 2``) give

        (p' e^{p M pi})^{1/p} * sqrt(sum_{|k|>K} |f(pi k / A)|^2).

    ``K`` only names the truncation the tail energy belongs to.
    """
    if p <= 1:
        raise ValueError("p must exceed 1")
    if p > 2:
        raise ValueError("the l2 tail estimate needs p <= 2")
    if M < 0 or tail_energy < 0 or K < 0:
        raise ValueError("M, K and tail_energy must be nonnegative")
    if tail_energy == 0:
        return 0.0
    return float(sinc_sum_bound(M, p) ** (1.0 / p) * np.sqrt(tail_energy))


def tail_energy(S: SampleSet, K: int) -> float:
    """Stored energy ``sum_{K < |k| <= S.K} |f_k|^2`` beyond a truncation ``K``."""
    e = np.sum(S.values**2, axis=1)
    k = np.abs(S.k)
    return float(np.sum(e[k > K]))


def estimate_tail_energy(S: SampleSet) -> float:
    """Extrapolated ``sum_{|k|>K} |f_k|^2`` beyond the stored samples.

    The sample energies over the last decade ``K/10 < |k| <= K`` are fitted
    by ``C |k|^{-s}`` (geometric decay on the log scale) and the fit is summed
    to infinity.  Returns ``inf`` when the fitted decay is too slow to sum.
    """
    if S.K < 10:
        raise GridError("need at least 10 samples per side to estimate the tail")
    e = np.sum(S.values**2, axis=1)
    # fold both sides onto |k|
    folded = e[S.K :].copy()
    folded[1:] += e[: S.K][::-1]
    ks = np.arange(S.K + 1)
    sel = (ks > S.K / 10) & (folded > 0)
    if np.count_nonzero(sel) < 2:
        return 0.0
    slope, icpt = np.polyfit(np.log(ks[sel]), np.log(folded[sel]), 1)
    s = -slope
    if s <= 1:
        return float("inf")
    # integral test: sum_{k>K} C k^{-s} ~ C K^{1-s} / (s - 1)
    return float(np.exp(icpt) * S.K ** (1 - s) / (s - 1))


def sample_energy(S: SampleSet) -> float:
    """``(pi / A) sum |f(pi k / A)|^2``."""
    return float(np.pi / S.band * np.sum(S.values**2))


def line_energy(f, grid: UniformGrid) -> float:
    """Trapezoid ``int |f(x)|^2 dx`` on a line grid."""
    x = grid.points
    v = f.eval_array(from_slice(x, 0.0 * x, UNIT_I.vec))
    return float(grid.weights() @ np.sum(v * v, axis=1))


def error_grid(S: SampleSet, extent_factor: float = 1.5, per_node: int = 4) -> UniformGrid:
    """Line grid covering ``1.5`` times the sampled window, four nodes per sample spacing."""
    L = extent_factor * np.pi * max(S.K, 1) / S.band
    return UniformGrid.symmetric(L, np.pi / (per_node * S.band))


def l2_error_curve(f_true, S: SampleSet, Ks, grid: UniformGrid | None = None) -> list[float]:
    """Discrete ``L^2(R)`` error of the series truncated at each ``K`` in ``Ks``."""
    grid = error_grid(S) if grid is None else grid
    x = grid.points
    q = from_slice(x, 0.0 * x, UNIT_I.vec)
    ref = f_true.eval_array(q) if hasattr(f_true, "eval_array") else np.asarray(f_true(q))
    w = grid.weights()
    out = []
    for K in Ks:
        approx = wks_reconstruct(S.truncate(int(K)), q)
        d = ref - approx
        out.append(float(np.sqrt(w @ np.sum(d * d, axis=1))))
    return out


def nonincreasing(values, jitter: float = 0.05) -> bool:
    """Each entry at most ``(1 + jitter)`` times its predecessor."""
    v = np.asarray(values, dtype=float)
    return bool(np.all(v[1:] <= (1 + jitter) * v[:-1]))


def max_abs_error(a, b) -> float:
    return float(np.max(norm(as_quat(a) - as_quat(b)), initial=0.0))
