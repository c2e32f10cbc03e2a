"""Structure theory of left slice regular functions.

Evaluators are plain callables on quaternion arrays wrapped in
:class:`SliceEvaluator`, which records whether they live on all of H or on
the right half-space ``Re q > 0``.  Everything here is built from point
evaluations: the representation formula, the slice extension ``ext_l``, the
stem pair ``(alpha, beta)``, the splitting into four slice preserving
components, and a finite-difference Cauchy-Riemann residual.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
from scipy.stats import qmc

from .errors import DomainError
from .quaternion import (
    ImaginaryUnit,
    Quaternion,
    SlicePoint,
    as_quat,
    as_units,
    conj,
    fibonacci_units,
    frame_basis,
    from_slice,
    left_unit_mul,
    mul,
    norm,
    orthogonal_frame,
    split_arrays,
)

WHOLE_SPACE = "whole-space"
RIGHT_HALF_SPACE = "right-half-space"

#: default central-difference step for cr_residual
FD_STEP = 1e-4
#: probe box half-width and probe counts
PROBE_BOX = 3.0
PROBE_UNITS = 64
PROBE_SEED = 20240917


class SliceEvaluator:
    """A quaternion function on H or on the right half-space.

    ``fn`` receives a float array of shape ``(..., 4)`` and must return an
    array of the same shape.
    """

    def __init__(self, fn: Callable[[np.ndarray], np.ndarray], domain: str = WHOLE_SPACE, name: str = ""):
        if domain not in (WHOLE_SPACE, RIGHT_HALF_SPACE):
            raise ValueError(f"unknown domain tag {domain!r}")
        self._fn = fn
        self.domain = domain
        self.name = name or getattr(fn, "__name__", "evaluator")

    def __repr__(self):
        return f"SliceEvaluator({self.name}, {self.domain})"

    def check_domain(self, a: np.ndarray) -> None:
        if self.domain == RIGHT_HALF_SPACE and np.any(a[..., 0] <= 0):
            raise DomainError(f"{self.name}: evaluation needs Re q > 0")

    def eval_array(self, q) -> np.ndarray:
        a = as_quat(q)
        self.check_domain(a)
        return np.asarray(self._fn(a), dtype=float)

    def __call__(self, q):
        out = self.eval_array(q)
        if isinstance(q, Quaternion):
            return Quaternion.from_array(out)
        return out

    def on_slice(self, x, y, units) -> np.ndarray:
        """Values at ``x + U y``; ``y`` may be negative."""
        return self.eval_array(from_slice(x, y, units))


def as_evaluator(f, domain: str = WHOLE_SPACE) -> SliceEvaluator:
    if isinstance(f, SliceEvaluator):
        return f
    return SliceEvaluator(f, domain)


def unit_product(I, J) -> np.ndarray:
    """The quaternion ``I J`` for units given as 3-vectors."""
    a, b = as_units(I), as_units(J)
    w = -np.sum(a * b, axis=-1)
    return np.concatenate([w[..., None], np.cross(a, b)], axis=-1)


def represent(f_plus, f_minus, J, I):
    """Representation formula ``(1 - IJ)/2 f(x+Jy) + (1 + IJ)/2 f(x-Jy)``.

    ``f_plus`` and ``f_minus`` are the values of f at the mirror pair
    ``x + Jy`` and ``x - Jy``; the result is the value at ``x + Iy``.
    """
    fp, fm = as_quat(f_plus), as_quat(f_minus)
    IJ = unit_product(I, J)
    half_sum = 0.5 * (fp + fm)
    half_diff = 0.5 * (fm - fp)
    out = half_sum + mul(IJ, half_diff)
    if isinstance(f_plus, Quaternion) and out.shape == (4,):
        return Quaternion.from_array(out)
    return out


def complex_on_slice(g: Callable, J) -> Callable[[np.ndarray], np.ndarray]:
    """Turn a complex function into a C_J-valued function on C_J.

    The returned callable reads ``q = x + J y`` off its quaternion argument,
    evaluates ``g(x + iy)`` and maps ``i`` to ``J``.
    """
    u = as_units(J)

    def F(q):
        a = as_quat(q)
        x = a[..., 0]
        y = a[..., 1:] @ u
        val = np.asarray(g(x + 1j * y), dtype=complex)
        return from_slice(val.real, val.imag, u)

    F.__name__ = getattr(g, "__name__", "g")
    return F


def ext_l(F: Callable, J, domain: str = WHOLE_SPACE) -> SliceEvaluator:
    """Unique left slice regular extension of a function given on one slice.

    ``F`` takes quaternion points of ``C_J`` (shape ``(..., 4)``) and returns
    quaternion values.  The extension is
    ``(F(x-Jy) + F(x+Jy))/2 + I J (F(x-Jy) - F(x+Jy))/2`` at ``x + I y``.
    """
    Ju = as_units(J)

    def fn(q):
        x, y, units = split_arrays(q)
        fp = np.asarray(F(from_slice(x, y, Ju)), dtype=float)
        fm = np.asarray(F(from_slice(x, -y, Ju)), dtype=float)
        if not (np.all(np.isfinite(fp)) and np.all(np.isfinite(fm))):
            raise DomainError("ext_l: slice data unavailable at a mirror point")
        return represent(fp, fm, Ju, units)

    return SliceEvaluator(fn, domain, name=f"ext_l({getattr(F, '__name__', 'F')})")


@dataclass(frozen=True)
class StemPair:
    """Even/odd stem functions with ``f(x + I y) = alpha(x, y) + I beta(x, y)``."""

    alpha: Callable[[np.ndarray, np.ndarray], np.ndarray]
    beta: Callable[[np.ndarray, np.ndarray], np.ndarray]

    def evaluate(self, x, y, units) -> np.ndarray:
        return self.alpha(x, y) + left_unit_mul(units, self.beta(x, y))


def stem_split(f, I=None) -> StemPair:
    """Stem functions of ``f`` read off the slice ``C_I`` (default ``i``)."""
    f = as_evaluator(f)
    u = as_units(I) if I is not None else np.array([1.0, 0.0, 0.0])

    def alpha(x, y):
        return 0.5 * (f.on_slice(x, y, u) + f.on_slice(x, -np.asarray(y), u))

    def beta(x, y):
        d = f.on_slice(x, -np.asarray(y), u) - f.on_slice(x, y, u)
        return 0.5 * left_unit_mul(u, d)

    return StemPair(alpha, beta)


@dataclass(frozen=True)
class ComponentQuad:
    """Slice preserving components with ``f = h0 + h1 I + h2 J + h3 K``."""

    h0: SliceEvaluator
    h1: SliceEvaluator
    h2: SliceEvaluator
    h3: SliceEvaluator
    frame: tuple[ImaginaryUnit, ImaginaryUnit, ImaginaryUnit]

    @property
    def components(self) -> tuple[SliceEvaluator, ...]:
        return (self.h0, self.h1, self.h2, self.h3)

    def recombine(self, q) -> np.ndarray:
        basis = frame_basis(self.frame[0])
        basis[2], basis[3] = np.asarray(self.frame[1]), np.asarray(self.frame[2])
        out = 0.0
        for h, e in zip(self.components, basis):
            out = out + mul(h.eval_array(q), e)
        return out


def decompose(f, frame=None) -> ComponentQuad:
    """Split a slice regular ``f`` into four slice preserving components.

    ``frame`` is ``(I, J, K)`` with ``K = I J``, or a single unit ``I`` that is
    completed with :func:`orthogonal_frame`; the default is ``(i, j, k)``.
    The stems ``alpha``, ``beta`` are resolved along ``{1, I, J, K}`` into real
    parts ``h_m^0``, ``h_m^1`` and ``h_m(x + U y) = h_m^0 + U h_m^1``.
    """
    f = as_evaluator(f)
    if frame is None:
        frame = ImaginaryUnit(1.0, 0.0, 0.0)
    if isinstance(frame, ImaginaryUnit):
        J, K = orthogonal_frame(frame)
        frame = (frame, J, K)
    I, J, K = frame
    basis = np.stack([np.array([1.0, 0, 0, 0]), np.asarray(I), np.asarray(J), np.asarray(K)])
    stems = stem_split(f, I)

    def component(m):
        e = basis[m]

        def h(q):
            x, y, units = split_arrays(q)
            a = stems.alpha(x, y) @ e
            b = stems.beta(x, y) @ e
            return from_slice(a, b, units)

        return SliceEvaluator(h, f.domain, name=f"h{m}[{f.name}]")

    return ComponentQuad(*(component(m) for m in range(4)), frame=(I, J, K))


def probe_points(domain: str = WHOLE_SPACE, n: int = 256, box: float = PROBE_BOX, seed: int = PROBE_SEED) -> np.ndarray:
    """Deterministic probe quaternions: Halton (x, y) pairs on Fibonacci units."""
    pts = qmc.Halton(d=2, scramble=True, seed=seed).random(n)
    x = box * (2.0 * pts[:, 0] - 1.0)
    if domain == RIGHT_HALF_SPACE:
        x = box * (0.05 + 0.95 * pts[:, 0])
    y = box * (2.0 * pts[:, 1] - 1.0)
    units = fibonacci_units(PROBE_UNITS)[np.arange(n) % PROBE_UNITS]
    return from_slice(x, y, units)


def slice_preserving_defect(f, points=None) -> float:
    """``max |f(conj q) - conj f(q)|`` over the probe set."""
    f = as_evaluator(f)
    q = probe_points(f.domain) if points is None else as_quat(points)
    d = f.eval_array(conj(q)) - conj(f.eval_array(q))
    return float(np.max(norm(d)))


def is_slice_preserving(f, tol: float = 1e-10, points=None) -> bool:
    if tol <= 0:
        raise ValueError("tol must be positive")
    return slice_preserving_defect(f, points) <= tol


def cr_residual(f, I, at, h: float = FD_STEP) -> float:
    """Norm of the central-difference ``(d/dx + I d/dy) f / 2`` on ``C_I``.

    ``at`` is a :class:`SlicePoint` (its unit is ignored, the coordinates are
    read on ``C_I``) or an ``(x, y)`` pair.
    """
    if h <= 0:
        raise ValueError("h must be positive")
    f = as_evaluator(f)
    if isinstance(at, SlicePoint):
        x, y = at.re, at.im
    else:
        x, y = at
    u = as_units(I)
    if f.domain == RIGHT_HALF_SPACE and x - h <= 0:
        raise DomainError("cr_residual: stencil leaves the right half-space")
    xs = np.array([x + h, x - h, x, x])
    ys = np.array([y, y, y + h, y - h])
    v = f.on_slice(xs, ys, u)
    dx = (v[0] - v[1]) / (2 * h)
    dy = (v[2] - v[3]) / (2 * h)
    return float(norm(0.5 * (dx + left_unit_mul(u, dy))))


def cr_order(f, I, at, steps: Sequence[float] = (1e-2, 1e-3)) -> float:
    """Observed convergence order of :func:`cr_residual` between two steps."""
    h1, h2 = steps
    r1 = cr_residual(f, I, at, h1)
    r2 = cr_residual(f, I, at, h2)
    return float(np.log(r1 / r2) / np.log(h1 / h2))
