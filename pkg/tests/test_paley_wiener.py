import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import integrate
from scipy.special import gamma, jv, sici

from slicepw import paley_wiener as pw
from slicepw import qft as qf
from slicepw import quaternion as qt
from slicepw import slicefn as sf
from slicepw.errors import DomainError, GridError, TruncationError
from slicepw.quaternion import UNIT_I, UNIT_J, ImaginaryUnit


def box_spectrum(A=np.pi, n=257, unit=UNIT_I):
    return pw.CompactSpectrum.from_function(lambda t: np.ones_like(t) / qf.SQRT_2PI, A, n, unit)


def sinc_samples(L=40.0, step=1e-2):
    g = qf.UniformGrid.symmetric(L, step)
    return qf.LineSamples.from_function(lambda x: np.sinc(x), g)


def test_box_spectrum_synthesizes_sinc():
    f = pw.synthesize_compact(box_spectrum())
    assert f(qt.Quaternion.real(0.0)).w == pytest.approx(1.0, abs=1e-12)
    rng = np.random.default_rng(0)
    q = qt.random_quaternions(rng, 50, 3.0)
    # trapezoid sum of e^{q t} over [-pi, pi]: exact for the discrete box up to the end-node weights
    t = np.linspace(-np.pi, np.pi, 257)
    w = np.full(257, t[1] - t[0])
    w[[0, -1]] /= 2
    x, y, u = qt.split_arrays(q)
    z = x + 1j * y
    ref = (np.exp(1j * np.outer(z, t)) @ w) / (2 * np.pi)
    assert np.max(qt.norm(f.eval_array(q) - qt.from_slice(ref.real, ref.imag, u))) < 1e-14 * np.max(np.abs(ref))
    s = qt.sinc_q(q)
    assert np.max(qt.norm(f.eval_array(q) - s) / np.maximum(qt.norm(s), 1)) < 1e-3


def test_zero_spectrum():
    S = pw.CompactSpectrum(2.0, np.zeros((65, 4)))
    f = pw.synthesize_compact(S)
    q = qt.random_quaternions(np.random.default_rng(1), 10, 5.0)
    assert not np.any(f.eval_array(q))
    assert np.all(pw.growth_check(f, q).ratios == 0)
    assert pw.pw_membership(qf.LineSamples(qf.UniformGrid.symmetric(5, 0.1), np.zeros((101, 4))), 0.1, 1e-6)


@pytest.mark.parametrize("p", [2, 4, 7])
def test_bump_spectrum_bessel_oracle(p):
    A = 1.5
    S = pw.CompactSpectrum.from_function(lambda t: (1 - (t / A) ** 2) ** p, A, 4097, ImaginaryUnit.from_vector([0, 1, 1]))
    f = pw.synthesize_compact(S)
    rng = np.random.default_rng(p)
    x, y = rng.uniform(-6, 6, 40), rng.uniform(-2, 2, 40)
    u = qt.random_units(rng, 40)
    z = x + 1j * y
    ref = A / qf.SQRT_2PI * np.sqrt(np.pi) * gamma(p + 1) * (2 / (A * z)) ** (p + 0.5) * jv(p + 0.5, A * z)
    got = f.on_slice(x, y, u)
    assert np.max(qt.norm(got - qt.from_slice(ref.real, ref.imag, u))) < 1e-10


def test_stem_and_component_paths_agree():
    rng = np.random.default_rng(2)
    S = pw.random_compact_spectrum(rng, 2.0, qt.random_units(rng, 1)[0], n=513)
    q = qt.random_quaternions(rng, 30, 4.0)
    a = pw.synthesize_compact(S).eval_array(q)
    b = pw.synthesize_compact(S, "components").eval_array(q)
    assert np.max(qt.norm(a - b)) <= 1e-12 * np.max(qt.norm(a))
    with pytest.raises(ValueError):
        pw.synthesize_compact(S, "other")


def test_real_even_spectrum_is_slice_preserving():
    S = pw.CompactSpectrum.from_function(lambda t: np.cos(t) * (1 - t**2 / 4) ** 3, 2.0, 1025, UNIT_J)
    f = pw.synthesize_compact(S)
    assert sf.is_slice_preserving(f.evaluator, 1e-10)


def test_quaternion_spectrum_is_regular():
    rng = np.random.default_rng(3)
    S = pw.random_compact_spectrum(rng, np.pi, qt.random_units(rng, 1)[0])
    f = pw.synthesize_compact(S)
    for U in qt.random_units(rng, 3):
        assert sf.cr_order(f, U, (0.5, -0.4), (1e-2, 5e-3)) >= 1.9


@settings(max_examples=8, deadline=None)
@given(st.integers(0, 2**32 - 1), st.sampled_from([1.0, 2.0, np.pi]))
def test_growth_bound_holds(seed, A):
    rng = np.random.default_rng(seed)
    f = pw.synthesize_compact(pw.random_compact_spectrum(rng, A, qt.random_units(rng, 1)[0], n=1025))
    rep = pw.growth_check(f, qt.random_quaternions(rng, 50, 10.0))
    assert rep.passed and rep.max_ratio <= 1 + 1e-6


def test_growth_on_real_axis_and_at_3i():
    f = pw.synthesize_compact(box_spectrum())
    x = np.linspace(-5, 5, 41)
    rep = pw.growth_check(f, qt.from_slice(x, 0 * x, UNIT_I.vec))
    assert rep.max_ratio <= 1.0 + 1e-12
    q = np.array([0.0, 3.0, 0, 0])
    bound = f.growth_constant() * np.exp(3 * np.pi)
    assert qt.norm(f.eval_array(q)) <= bound
    assert f.growth_constant() == pytest.approx(1.0, rel=1e-3)
    with pytest.raises(DomainError):
        pw.growth_check(f, np.array([11.0, 0, 0, 0]))


def test_restriction_support():
    rng = np.random.default_rng(4)
    A = 3.0
    f = pw.synthesize_compact(pw.random_compact_spectrum(rng, A))
    F = f.restrict(qf.UniformGrid.symmetric(60.0, 0.05))
    S = qf.qft_left(F, UNIT_J)
    assert qf.support_radius(S, 1e-6) <= A + S.grid.step
    assert pw.pw_membership(F, A, 1e-6)
    assert not pw.pw_membership(F, 2.0, 1e-6)


def test_membership_sinc_and_gaussian():
    g = qf.UniformGrid.symmetric(200.0, 0.05)
    F = qf.LineSamples.from_function(lambda x: np.sinc(x) ** 2, g)
    # sinc^2 has a triangular spectrum on [-2 pi, 2 pi]; the 1/x^2 tail cut at 200 leaks ~1e-4
    assert pw.pw_membership(F, 2 * np.pi, 1e-3)
    assert not pw.pw_membership(F, 4.0, 1e-3)
    G = qf.LineSamples.from_function(lambda x: np.exp(-(x**2)), qf.UniformGrid.symmetric(20, 0.01))
    assert not pw.pw_membership(G, 5.0, 1e-6)
    assert pw.pw_membership(G, 12.0, 1e-6)


def test_sinc_truncation_leakage_is_one_bin_scale():
    # plain sinc samples on [-40, 40] leak ~1/L outside the band
    S = qf.qft_left(sinc_samples(40.0, 0.05))
    outside = np.abs(S.t) > np.pi + 2 * S.grid.step
    assert np.max(qt.norm(S.values[outside])) < 0.05


def test_reproduce_sinc_at_zero_matches_truncated_integral():
    L = 40.0
    got = pw.reproduce(sinc_samples(L), np.pi, qt.Quaternion.real(0.0))
    si, _ = sici(2 * np.pi * L)
    exact = 2 / np.pi * (si - np.sin(np.pi * L) ** 2 / (np.pi * L))
    assert got.w == pytest.approx(exact, abs=1e-6)
    assert abs(got.w - 1) < 5e-3


def test_reproduce_sinc_off_axis_matches_quadrature():
    L = 40.0
    q = np.array([1.0, 0, 1.0, 0])
    got = pw.reproduce(sinc_samples(L), np.pi, q)
    z = 1 + 1j

    def part(fn):
        return integrate.quad(lambda t: fn(np.sinc(z - t) * np.sinc(t)), -L, L, limit=2000, points=[0.0])[0]

    ref = part(np.real) + 1j * part(np.imag)
    assert np.allclose(got, [ref.real, 0, ref.imag, 0], atol=1e-6)


def test_reproduce_decaying_function_matches_synthesis():
    rng = np.random.default_rng(5)
    f = pw.synthesize_compact(pw.random_compact_spectrum(rng, np.pi, qt.random_units(rng, 1)[0]))
    F = f.restrict(qf.UniformGrid.symmetric(40.0, 0.01))
    q = np.array([1.0, 0, 1.0, 0])
    assert qt.norm(pw.reproduce(F, np.pi, q) - f.eval_array(q)) < 1e-5
    zero = qf.LineSamples(F.grid, np.zeros_like(F.values))
    assert not np.any(pw.reproduce(zero, np.pi, q))


def test_reproduce_guards():
    F = sinc_samples(10.0, 0.05)
    with pytest.raises(TruncationError):
        pw.reproduce(F, np.pi, np.array([8.0, 0, 0, 0]))
    with pytest.raises(ValueError):
        pw.reproduce(F, 0.0, np.zeros(4))


def test_compact_spectrum_validation():
    with pytest.raises(GridError):
        pw.CompactSpectrum(-1.0, np.zeros((5, 4)))
    with pytest.raises(GridError):
        pw.synthesize_compact(pw.CompactSpectrum(50.0, np.zeros((5, 4))))
    S = box_spectrum()
    back = pw.CompactSpectrum.from_spectrum(S.as_spectrum())
    assert back.band == S.band and np.array_equal(back.values, S.values)
