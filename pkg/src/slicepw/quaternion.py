"""Quaternion arithmetic, the imaginary-unit sphere and slice coordinates.

Two layers live here.  The array layer works on float arrays whose last axis
has length 4 (components along 1, i, j, k) and broadcasts like numpy.  The
value layer (:class:`Quaternion`, :class:`ImaginaryUnit`, :class:`SlicePoint`)
wraps single values for readable call sites.  Every public operation accepts
either form; it returns a :class:`Quaternion` when all quaternion arguments
were :class:`Quaternion` values and an ndarray otherwise.

Entire functions with real Taylor coefficients (``exp_q``, ``sin_q``,
``sinc_q``) are evaluated by slice reduction: write ``q = x + I y`` with
``y >= 0``, evaluate the complex function at ``x + iy`` and map ``i`` to ``I``.
``series_eval`` is the independent power-series path used to check them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

#: a quaternion is treated as real when its imaginary norm is at most this
REAL_AXIS_TOL = 0.0
#: construction tolerance for unit imaginary quaternions
UNIT_TOL = 1e-14
#: |dot| above this marks a standard basis unit as parallel in orthogonal_frame
PARALLEL_TOL = 1.0 - 1e-10
#: below this modulus sinc_q uses its Taylor series
SINC_SWITCH_RADIUS = 0.5
_SINC_SERIES_TERMS = 16
#: pi to extended precision (float64 pi is off by 1.2e-16 relative)
PI_LONG = np.longdouble("3.14159265358979323846264338327950288")


@dataclass(frozen=True)
class Quaternion:
    """A single quaternion ``w + x i + y j + z k``."""

    w: float = 0.0
    x: float = 0.0
    y: float = 0.0
    z: float = 0.0

    __array_ufunc__ = None  # keep ndarray * Quaternion routed through __rmul__

    def __array__(self, dtype=None, copy=None):
        return np.array([self.w, self.x, self.y, self.z], dtype=dtype or float)

    @classmethod
    def from_array(cls, a) -> "Quaternion":
        a = np.asarray(a, dtype=float)
        if a.shape != (4,):
            raise ValueError(f"expected 4 components, got shape {a.shape}")
        return cls(*(float(c) for c in a))

    @classmethod
    def real(cls, r: float) -> "Quaternion":
        return cls(float(r), 0.0, 0.0, 0.0)

    def __add__(self, other):
        return _binary(np.add, self, other)

    def __radd__(self, other):
        return _binary(np.add, other, self)

    def __sub__(self, other):
        return _binary(np.subtract, self, other)

    def __rsub__(self, other):
        return _binary(np.subtract, other, self)

    def __mul__(self, other):
        if np.isscalar(other):
            return Quaternion.from_array(np.asarray(self) * float(other))
        return mul(self, other)

    def __rmul__(self, other):
        if np.isscalar(other):
            return Quaternion.from_array(float(other) * np.asarray(self))
        return mul(other, self)

    def __truediv__(self, other):
        if np.isscalar(other):
            return Quaternion.from_array(np.asarray(self) / float(other))
        return mul(self, inv(other))

    def __neg__(self):
        return Quaternion(-self.w, -self.x, -self.y, -self.z)

    def __abs__(self) -> float:
        return float(norm(self))

    def conj(self) -> "Quaternion":
        return conj(self)

    def to_list(self) -> list[float]:
        return [self.w, self.x, self.y, self.z]


def _binary(op, a, b):
    out = op(_coerce(a), _coerce(b))
    if isinstance(a, Quaternion) or isinstance(b, Quaternion):
        if out.shape == (4,):
            return Quaternion.from_array(out)
    return out


def _coerce(a) -> np.ndarray:
    """Real scalars become real quaternions; everything else must end in 4."""
    if isinstance(a, (Quaternion, ImaginaryUnit)):
        return np.asarray(a, dtype=float)
    if np.isscalar(a):
        return np.array([float(a), 0.0, 0.0, 0.0])
    return np.asarray(a, dtype=float)


@dataclass(frozen=True)
class ImaginaryUnit:
    """A point of the unit sphere of purely imaginary quaternions."""

    x: float
    y: float
    z: float

    __array_ufunc__ = None

    def __post_init__(self):
        n2 = self.x * self.x + self.y * self.y + self.z * self.z
        if not math.isfinite(n2) or abs(math.sqrt(n2) - 1.0) > UNIT_TOL:
            raise ValueError(f"not a unit imaginary quaternion: ({self.x}, {self.y}, {self.z})")

    @classmethod
    def from_vector(cls, v: Sequence[float]) -> "ImaginaryUnit":
        """Normalise a nonzero 3-vector onto the sphere."""
        v = np.asarray(v, dtype=float)
        n = float(np.linalg.norm(v))
        if v.shape != (3,) or n == 0.0 or not math.isfinite(n):
            raise ValueError(f"cannot normalise {v!r} to an imaginary unit")
        v = v / n
        return cls(float(v[0]), float(v[1]), float(v[2]))

    @property
    def vec(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z])

    def __array__(self, dtype=None, copy=None):
        return np.array([0.0, self.x, self.y, self.z], dtype=dtype or float)

    def quaternion(self) -> Quaternion:
        return Quaternion(0.0, self.x, self.y, self.z)

    def __neg__(self):
        return ImaginaryUnit(-self.x, -self.y, -self.z)

    def to_list(self) -> list[float]:
        return [self.x, self.y, self.z]


UNIT_I = ImaginaryUnit(1.0, 0.0, 0.0)
UNIT_J = ImaginaryUnit(0.0, 1.0, 0.0)
UNIT_K = ImaginaryUnit(0.0, 0.0, 1.0)


@dataclass(frozen=True)
class SlicePoint:
    """Slice coordinates ``re + unit * im`` with ``im >= 0``."""

    re: float
    im: float
    unit: ImaginaryUnit

    def __post_init__(self):
        if self.im < 0:
            raise ValueError("SlicePoint.im must be nonnegative")

    def realize(self) -> Quaternion:
        u = self.unit
        return Quaternion(self.re, u.x * self.im, u.y * self.im, u.z * self.im)


# ---------------------------------------------------------------- array layer


def as_quat(q) -> np.ndarray:
    """Array view of ``q`` with a trailing axis of length 4."""
    a = _coerce(q)
    if a.shape[-1:] != (4,):
        raise ValueError(f"quaternion arrays need a trailing axis of 4, got {a.shape}")
    return a


def as_units(u) -> np.ndarray:
    """Array of unit vectors ``(..., 3)`` from an ImaginaryUnit or array."""
    if isinstance(u, ImaginaryUnit):
        return u.vec
    a = np.asarray(u, dtype=float)
    if a.shape[-1:] != (3,):
        raise ValueError(f"unit arrays need a trailing axis of 3, got {a.shape}")
    return a


def _wrap(out: np.ndarray, *args):
    if out.shape == (4,) and any(isinstance(a, Quaternion) for a in args):
        return Quaternion.from_array(out)
    return out


def mul(a, b):
    """Hamilton product ``a b`` (order matters)."""
    p, q = as_quat(a), as_quat(b)
    w1, x1, y1, z1 = np.moveaxis(p, -1, 0)
    w2, x2, y2, z2 = np.moveaxis(q, -1, 0)
    out = np.stack(
        [
            w1 * w2 - x1 * x2 - y1 * y2 - z1 * z2,
            w1 * x2 + x1 * w2 + y1 * z2 - z1 * y2,
            w1 * y2 - x1 * z2 + y1 * w2 + z1 * x2,
            w1 * z2 + x1 * y2 - y1 * x2 + z1 * w2,
        ],
        axis=-1,
    )
    return _wrap(out, a, b)


def conj(q):
    """Negate the i, j, k components."""
    a = as_quat(q)
    out = a * np.array([1.0, -1.0, -1.0, -1.0], dtype=a.dtype)
    return _wrap(out, q)


def norm(q):
    """Euclidean norm ``|q|``; an array for array input."""
    a = as_quat(q)
    out = np.sqrt(np.sum(a * a, axis=-1))
    return float(out) if out.ndim == 0 else out


def inv(q):
    a = as_quat(q)
    n2 = np.sum(a * a, axis=-1, keepdims=True)
    if np.any(n2 == 0):
        raise ZeroDivisionError("quaternion inverse of zero")
    return _wrap(as_quat(conj(a)) / n2, q)


def left_unit_mul(u, v) -> np.ndarray:
    """Product ``U v`` for pure imaginary ``U`` given as 3-vectors."""
    uu = as_units(u)
    vv = as_quat(v)
    vw = vv[..., 0]
    vx = vv[..., 1:]
    w = -np.sum(uu * vx, axis=-1)
    rest = uu * vw[..., None] + np.cross(uu, vx)
    return np.concatenate([w[..., None], rest], axis=-1)


def from_slice(re, im, units) -> np.ndarray:
    """Quaternion array ``re + U im``."""
    re = np.asarray(re, dtype=float)
    im = np.asarray(im, dtype=float)
    uu = as_units(units)
    shape = np.broadcast_shapes(re.shape, im.shape, uu.shape[:-1])
    out = np.empty(shape + (4,))
    out[..., 0] = re
    out[..., 1:] = uu * im[..., None]
    return out


def split_arrays(q):
    """Vectorised slice coordinates: ``(re, im, units)`` with ``im >= 0``.

    Real entries get the canonical unit ``i``.
    """
    a = as_quat(q)
    re = a[..., 0].copy()
    v = a[..., 1:]
    im = np.sqrt(np.sum(v * v, axis=-1))
    units = np.zeros(v.shape)
    real = im <= REAL_AXIS_TOL
    with np.errstate(invalid="ignore", divide="ignore"):
        units[...] = v / np.where(real, 1.0, im)[..., None]
    units[real] = UNIT_I.vec
    return re, im, units


def split(q):
    """Slice coordinates of ``q``.

    Returns a :class:`SlicePoint` for a single quaternion and the tuple of
    :func:`split_arrays` for arrays of shape ``(..., 4)`` with leading axes.
    """
    a = as_quat(q)
    re, im, units = split_arrays(a)
    if a.ndim == 1:
        u = units
        return SlicePoint(float(re), float(im), ImaginaryUnit(float(u[0]), float(u[1]), float(u[2])))
    return re, im, units


def orthogonal_frame(I) -> tuple[ImaginaryUnit, ImaginaryUnit]:
    """Complete ``I`` to a frame ``(J, K)`` with ``K = I J``.

    ``J`` is the Gram-Schmidt projection of the first standard unit among
    ``i, j, k`` that is not parallel to ``I``.
    """
    u = as_units(I)
    for e in np.eye(3):
        d = float(u @ e)
        if abs(d) > PARALLEL_TOL:
            continue
        j = e - d * u
        J = ImaginaryUnit.from_vector(j)
        K = ImaginaryUnit.from_vector(np.cross(u, J.vec))
        return J, K
    raise AssertionError("unreachable: some standard unit is never parallel")


def frame_basis(I) -> np.ndarray:
    """The real basis ``{1, I, J, K}`` as a ``(4, 4)`` array of rows."""
    if not isinstance(I, ImaginaryUnit):
        I = ImaginaryUnit.from_vector(I)
    J, K = orthogonal_frame(I)
    return np.stack([np.array([1.0, 0, 0, 0]), np.asarray(I), np.asarray(J), np.asarray(K)])


# ---------------------------------------------------------- entire functions


def sinpi(x):
    """``sin(pi x)`` with exact zeros at the integers."""
    x = np.asarray(x, dtype=float)
    n = np.round(x)
    s = np.sin(np.pi * (x - n))
    return np.where(np.fmod(n, 2) == 0, s, -s)


def cospi(x):
    """``cos(pi x)`` with exact zeros at the half integers."""
    x = np.asarray(x, dtype=float)
    n = np.round(x)
    f = x - n
    c = np.where(np.abs(f) == 0.5, 0.0, np.cos(np.pi * f))
    return np.where(np.fmod(n, 2) == 0, c, -c)


def _sinc_parts(x, y, rt, pi):
    """Real and imaginary parts of ``sinc(x + iy)`` computed in type ``rt``."""
    ct = np.clongdouble if rt is np.longdouble else np.complex128
    zz = x.astype(ct) + 1j * y.astype(ct)
    near = np.sqrt(x * x + y * y) < SINC_SWITCH_RADIUS
    # Taylor branch
    w = -((pi * zz) ** 2)
    series = np.zeros_like(zz)
    for k in range(_SINC_SERIES_TERMS - 1, -1, -1):
        series = rt(1) / rt(math.factorial(2 * k + 1)) + w * series
    # closed-form branch, sin(pi x) and cos(pi x) reduced to |x - n| <= 1/2
    n = np.round(x)
    f = x - n
    odd = np.fmod(n, 2) != 0
    sf = np.sin(pi * f)
    cf = np.where(np.abs(f) == 0.5, rt(0), np.cos(pi * f))
    sp = np.where(odd, -sf, sf)
    cp = np.where(odd, -cf, cf)
    s = sp * np.cosh(pi * y) + 1j * (cp * np.sinh(pi * y))
    with np.errstate(invalid="ignore", divide="ignore"):
        closed = s / (pi * np.where(near, ct(1), zz))
    out = np.where(near, series, closed)
    return out.real, out.imag


def complex_sinc(z, extended: bool = False):
    """Normalised sinc ``sin(pi z) / (pi z)`` on complex input.

    With ``extended=True`` the arithmetic runs in long double and only the
    result is rounded to double.
    """
    z = np.asarray(z, dtype=complex)
    rt, pi = (np.longdouble, PI_LONG) if extended else (np.float64, np.pi)
    re, im = _sinc_parts(z.real.astype(rt), z.imag.astype(rt), rt, pi)
    return re.astype(float) + 1j * im.astype(float)


def slice_apply(g: Callable, q) -> np.ndarray:
    """Evaluate a real-coefficient entire function slice by slice.

    ``g`` maps complex arrays to complex arrays and must satisfy
    ``g(conj z) = conj g(z)``; the quaternion value at ``x + I y`` is
    ``Re g(x+iy) + I Im g(x+iy)``.
    """
    re, im, units = split_arrays(q)
    val = np.asarray(g(re + 1j * im), dtype=complex)
    return from_slice(val.real, val.imag, units)


def exp_q(q):
    """Quaternion exponential ``e^x (cos y + I sin y)``."""
    out = slice_apply(np.exp, q)
    return _wrap(out, q)


def sin_q(q):
    """Quaternion sine ``sin x cosh y + I cos x sinh y``."""
    out = slice_apply(np.sin, q)
    return _wrap(out, q)


def sinc_q(q):
    """Quaternionic sinc ``sin(pi q) (pi q)^{-1}``; slice preserving.

    The slice split and the evaluation run in long double: ``sinc`` grows like
    ``e^{pi |im q|}`` and a one-ulp error in ``|im q|`` would otherwise be
    amplified by ``pi |q|``.
    """
    a = as_quat(q).astype(np.longdouble)
    re = a[..., 0]
    v = a[..., 1:]
    im = np.sqrt(np.sum(v * v, axis=-1))
    gr, gi = _sinc_parts(re, im, np.longdouble, PI_LONG)
    out = np.empty(a.shape, dtype=np.longdouble)
    out[..., 0] = gr
    real = im == 0
    scale = np.where(real, 0, gi / np.where(real, 1, im))
    out[..., 1:] = v * scale[..., None]
    out = out.astype(float)
    return _wrap(out, q)


def series_eval(coeffs, q, N: int | None = None, dtype=np.float64):
    """Truncated power series ``sum_{n<N} q^n a_n`` by Horner's rule.

    Coefficients may be real (shape ``(M,)``) or quaternion (``(M, 4)``); they
    sit to the right of the powers.  Quaternion coefficients use genuine
    quaternion products.  Real coefficients keep every partial sum on the
    slice of ``q``, so the recursion runs in complex arithmetic there; this
    makes ``f(conj q) = conj f(q)`` hold bit for bit.  Pass
    ``dtype=np.longdouble`` for an extended-precision oracle.
    """
    a = np.asarray(coeffs, dtype=dtype)
    if N is None:
        N = a.shape[0]
    if N < 1:
        raise ValueError("series_eval needs N >= 1")
    if not np.all(np.isfinite(a[:N])):
        raise ValueError("series coefficients must be finite")
    x = np.asarray(_coerce(q), dtype=dtype)
    if a.ndim == 2:
        r = np.broadcast_to(a[N - 1], x.shape).astype(dtype)
        for n in range(N - 2, -1, -1):
            r = _mul_dtype(x, r) + np.broadcast_to(a[n], x.shape)
    else:
        v = x[..., 1:]
        im = np.sqrt(np.sum(v * v, axis=-1))
        ctype = np.clongdouble if dtype == np.longdouble else np.complex128
        z = x[..., 0].astype(ctype) + 1j * im.astype(ctype)
        acc = np.full(z.shape, a[N - 1], dtype=ctype)
        for n in range(N - 2, -1, -1):
            acc = z * acc + a[n]
        r = np.empty(x.shape, dtype=dtype)
        r[..., 0] = acc.real
        safe = np.where(im > 0, im, 1)
        # on the real axis the imaginary part of acc vanishes
        r[..., 1:] = v * (acc.imag / safe)[..., None]
    if dtype == np.float64:
        return _wrap(r, q)
    return r


def _mul_dtype(p, q):
    # same as mul() but without coercion to float64
    w1, x1, y1, z1 = np.moveaxis(p, -1, 0)
    w2, x2, y2, z2 = np.moveaxis(q, -1, 0)
    return np.stack(
        [
            w1 * w2 - x1 * x2 - y1 * y2 - z1 * z2,
            w1 * x2 + x1 * w2 + y1 * z2 - z1 * y2,
            w1 * y2 - x1 * z2 + y1 * w2 + z1 * x2,
            w1 * z2 + x1 * y2 - y1 * x2 + z1 * w2,
        ],
        axis=-1,
    )


def exp_coefficients(N: int, dtype=np.float64) -> np.ndarray:
    one = dtype(1)
    return np.array([one / dtype(math.factorial(n)) for n in range(N)], dtype=dtype)


def sin_coefficients(N: int, dtype=np.float64) -> np.ndarray:
    c = np.zeros(N, dtype=dtype)
    for n in range(1, N, 2):
        c[n] = dtype((-1) ** ((n - 1) // 2)) / dtype(math.factorial(n))
    return c


def sinc_coefficients(N: int, dtype=np.float64) -> np.ndarray:
    """Coefficients of ``sum_k q^{2k} (-pi^2)^k / (2k+1)!`` up to degree N-1."""
    pi = PI_LONG if dtype == np.longdouble else np.pi
    c = np.zeros(N, dtype=dtype)
    for n in range(0, N, 2):
        k = n // 2
        c[n] = dtype((-(pi**2)) ** k) / dtype(math.factorial(2 * k + 1))
    return c


def random_quaternions(rng: np.random.Generator, n: int, radius: float = 1.0) -> np.ndarray:
    """``n`` quaternions uniform in the 4-ball of the given radius."""
    g = rng.standard_normal((n, 4))
    g /= np.linalg.norm(g, axis=1, keepdims=True)
    r = radius * rng.random(n) ** 0.25
    return g * r[:, None]


def random_units(rng: np.random.Generator, n: int) -> np.ndarray:
    """``n`` imaginary units uniform on the sphere, shape ``(n, 3)``."""
    g = rng.standard_normal((n, 3))
    return g / np.linalg.norm(g, axis=1, keepdims=True)


def fibonacci_units(n: int = 64) -> np.ndarray:
    """Deterministic, nearly uniform units on the sphere."""
    k = np.arange(n) + 0.5
    z = 1.0 - 2.0 * k / n
    r = np.sqrt(1.0 - z * z)
    phi = np.pi * (3.0 - math.sqrt(5.0)) * k
    return np.stack([r * np.cos(phi), r * np.sin(phi), z], axis=1)
