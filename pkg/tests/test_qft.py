import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import integrate

from slicepw import qft as qf
from slicepw import quaternion as qt
from slicepw.errors import GridError, InvariantError, UnitMismatchError
from slicepw.quaternion import UNIT_I, UNIT_J, ImaginaryUnit

GRID = qf.UniformGrid.symmetric(20.0, 0.01)


def real_samples(grid, fn):
    return qf.LineSamples.from_function(fn, grid)


def test_grid_construction():
    g = qf.UniformGrid.symmetric(2.0, 0.5)
    assert g.n == 9 and g.step == 0.5 and g.is_symmetric
    assert np.array_equal(g.points, np.linspace(-2, 2, 9))
    w = g.weights()
    assert w[0] == w[-1] == 0.25 and np.all(w[1:-1] == 0.5)
    assert qf.UniformGrid.from_dict(g.to_dict()) == g
    assert qf.UniformGrid.from_points(g.points) == g
    # the step is rounded so that the nodes hit both ends
    assert qf.UniformGrid.symmetric(1.0, 0.3).n == 8
    with pytest.raises(GridError):
        qf.UniformGrid.symmetric(1.0, 0.0)
    with pytest.raises(GridError):
        qf.UniformGrid.from_points([0.0, 1.0, 3.0])


def test_frequency_and_line_grids_are_inverse():
    fg = qf.frequency_grid(GRID)
    assert fg.step == pytest.approx(np.pi / 20.0)
    assert qf.line_grid(fg) == GRID


def test_zero_signal_zero_spectrum():
    F = qf.LineSamples(GRID, np.zeros((GRID.n, 4)))
    S = qf.qft_left(F, UNIT_J)
    assert not np.any(S.values)
    assert not np.any(qf.iqft_left(S).values)
    assert qf.plancherel_norm(F, S) == (0.0, 0.0)
    assert qf.support_radius(S, 1e-6) == 0.0


def test_box_transform():
    g = qf.UniformGrid(-20.005, 20.005, 4002)
    F = real_samples(g, lambda t: (np.abs(t) < 1).astype(float))
    S = qf.qft_left(F)
    t = S.t
    i0 = np.argmin(np.abs(t))
    assert S.values[i0, 0] == pytest.approx(2 / np.sqrt(2 * np.pi), abs=1e-12)
    # the discrete box is 200 cells of width 0.01 centred at 0
    ref = 2 * np.sinc(t / np.pi) / np.sqrt(2 * np.pi)
    assert np.max(np.abs(S.values[:, 0] - ref)[np.abs(t) < 20]) < 2e-2
    assert np.max(np.abs(S.values[:, 1:])) < 1e-12
    a, b = qf.plancherel_norm(F, S)
    assert abs(a - 2) < 1e-4 and abs(b - 2) < 1e-4


def test_gaussian_pair_and_plancherel():
    g = qf.UniformGrid.symmetric(12.0, 0.01)
    F = real_samples(g, lambda x: np.exp(-(x**2) / 2) / np.pi**0.25)
    for U in (UNIT_I, ImaginaryUnit.from_vector([1, -2, 0.5])):
        S = qf.qft_left(F, U)
        exact = np.exp(-(S.t**2) / 2) / np.pi**0.25
        assert np.max(np.abs(S.values[:, 0] - exact)) < 1e-8
        a, b = qf.plancherel_norm(F, S)
        assert abs(a - 1) < 1e-8 and abs(b - 1) < 1e-8


def test_real_even_signal_has_real_even_spectrum():
    F = real_samples(GRID, lambda x: np.exp(-np.abs(x)) * np.cos(x) ** 2)
    S = qf.qft_left(F, UNIT_J)
    assert np.max(np.abs(S.values[:, 1:])) < 1e-12
    assert np.max(np.abs(S.values[:, 0] - S.values[::-1, 0])) < 1e-14
    for J in (UNIT_I, ImaginaryUnit.from_vector([1, 1, 1])):
        assert qf.transfer_spectrum(S, J).max_deviation(S) < 1e-12


def test_round_trip_compact_signal():
    rng = np.random.default_rng(0)
    c = qt.random_quaternions(rng, 2)
    x = GRID.points
    env = np.clip(1 - (x / 5) ** 2, 0, None) ** 4
    F = qf.LineSamples(GRID, env[:, None] * (c[0] + np.outer(np.sin(x), c[1])))
    S = qf.qft_left(F, qt.random_units(rng, 1)[0])
    back = qf.iqft_left(S)
    assert back.grid == GRID
    assert np.max(qt.norm(back.values - F.values)) < 1e-6


def test_bump_spectrum_gives_near_constant_signal():
    fg = qf.UniformGrid.symmetric(1.0, 1e-3)
    v = np.zeros((fg.n, 4))
    v[fg.n // 2, 0] = 1.0 / fg.step
    S = qf.Spectrum(fg, v, UNIT_I)
    F = qf.iqft_left(S, qf.UniformGrid.symmetric(2.0, 0.5))
    assert np.allclose(F.values[:, 0], 1 / np.sqrt(2 * np.pi), rtol=1e-5)


def test_transfer_identity_and_odd_gaussian():
    F = real_samples(GRID, lambda x: x * np.exp(-(x**2)))
    S = qf.qft_left(F, UNIT_I)
    assert qf.transfer_spectrum(S, UNIT_I).max_deviation(S) < 1e-15
    direct = qf.qft_left(F, UNIT_J, method="direct")
    assert qf.transfer_spectrum(S, UNIT_J).max_deviation(direct) < 1e-10


@settings(max_examples=10, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_transfer_holds_for_quaternion_signals(seed):
    rng = np.random.default_rng(seed)
    g = qf.UniformGrid.symmetric(8.0, 0.05)
    x = g.points
    c = qt.random_quaternions(rng, 2)
    F = qf.LineSamples(g, np.exp(-(x**2))[:, None] * (c[0] + np.outer(x, c[1])))
    I, J = qt.random_units(rng, 2)
    S = qf.qft_left(F, I)
    assert qf.transfer_spectrum(S, J).max_deviation(qf.qft_left(F, J)) < 1e-12


def test_fft_path_matches_direct():
    rng = np.random.default_rng(1)
    x = GRID.points
    F = qf.LineSamples(GRID, np.exp(-((x - 1) ** 2))[:, None] * qt.random_quaternions(rng, 1)[0])
    a = qf.qft_left(F, UNIT_J, method="fft")
    b = qf.qft_left(F, UNIT_J, method="direct")
    assert a.max_deviation(b) < 1e-10
    with pytest.raises(GridError):
        qf.qft_left(F, freq=qf.UniformGrid(-1.0, 1.0, 7), method="fft")
    with pytest.raises(ValueError):
        qf.qft_left(F, method="magic")


def test_fft_path_off_centre_grids():
    g = qf.UniformGrid(-3.0, 9.0, 241)
    F = real_samples(g, lambda x: np.exp(-((x - 3) ** 2)) * np.cos(2 * x))
    fg = qf.frequency_grid(g)
    a = qf.qft_left(F, freq=fg, method="fft")
    b = qf.qft_left(F, freq=fg, method="direct")
    assert a.max_deviation(b) < 1e-12


def test_slice_symmetry_real_signal():
    F = real_samples(GRID, lambda x: np.exp(-((x - 0.7) ** 2)) * (1 + x))
    S = qf.qft_left(F, ImaginaryUnit.from_vector([0.2, -1, 0.4]))
    off, mirror = qf.slice_symmetry_defects(S)
    assert off < 1e-12 and mirror < 1e-12


def test_left_and_right_kernels_differ_for_quaternion_data():
    x = GRID.points
    F = qf.LineSamples(GRID, qt.from_slice(0 * x, np.exp(-(x**2)) * (1 + x), UNIT_J.vec))
    assert qf.qft_left(F).max_deviation(qf.qft_right(F)) > 1e-3
    R = real_samples(GRID, lambda t: np.exp(-(t**2)))
    assert qf.qft_left(R).max_deviation(qf.qft_right(R)) < 1e-15


def test_spectrum_arithmetic_units():
    fg = qf.UniformGrid.symmetric(1.0, 0.5)
    a = qf.Spectrum(fg, np.ones((5, 4)), UNIT_I)
    assert np.all((a + a).values == 2)
    with pytest.raises(UnitMismatchError):
        a + qf.Spectrum(fg, np.ones((5, 4)), UNIT_J)
    with pytest.raises(GridError):
        qf.Spectrum(fg, np.ones((4, 4)))
    with pytest.raises(GridError):
        qf.LineSamples(fg, np.full((5, 4), np.nan))


def test_support_radius_examples():
    fg = qf.UniformGrid.symmetric(4.0, 0.01)
    t = fg.points
    box = qf.Spectrum(fg, qt.from_slice((np.abs(t) <= 2) * 1.0, 0 * t, UNIT_I.vec))
    assert abs(qf.support_radius(box, 1e-6) - 2.0) <= fg.step
    full = qf.Spectrum(fg, np.ones((fg.n, 4)))
    assert qf.support_radius(full, 1e-6) == np.inf
    with pytest.raises(ValueError):
        qf.support_radius(box, 0)


def test_halfline_check_constructed():
    fg = qf.UniformGrid.symmetric(30.0, 0.05)
    t = fg.points
    tail = np.where(t <= 0, np.exp(t) * np.cos(t), 0.0)
    S = qf.Spectrum(fg, qt.from_slice(tail, 0 * t, UNIT_I.vec))
    assert qf.support_halfline_check(S, 1e-6)
    mirror = qf.Spectrum(fg, S.values[::-1])
    assert not qf.support_halfline_check(mirror, 1e-6)


def test_essential_ft_detects_unit_dependence():
    g = qf.UniformGrid.symmetric(10.0, 0.05)
    x = g.points
    # boundary values of 1/(q+1)^2 on each slice: unit independent spectrum
    def trace(U):
        z = 1j * x
        v = 1 / (z + 1) ** 2
        return qf.LineSamples(g, qt.from_slice(v.real, v.imag, U.vec))

    units = [UNIT_I, UNIT_J, ImaginaryUnit.from_vector([1, 1, 0])]
    S, dev = qf.essential_spectra(trace, units)
    assert dev < 1e-12
    assert qf.essential_ft(trace, units).max_deviation(S) == 0.0
    # the same complex values placed on the i-slice for every unit are not a slice trace
    bad = [trace(UNIT_I)] * 3
    with pytest.raises(InvariantError) as e:
        qf.essential_ft(bad, units)
    assert e.value.deviation > 1e-3
    zero = [qf.LineSamples(g, np.zeros((g.n, 4)))] * 3
    assert not np.any(qf.essential_ft(zero, units).values)


def test_trapezoid_weights_match_scipy():
    rng = np.random.default_rng(2)
    v = rng.normal(size=GRID.n)
    assert GRID.weights() @ v == pytest.approx(integrate.trapezoid(v, GRID.points), rel=1e-13)


def test_restrict_to_line():
    f = qt.exp_q
    F = qf.restrict_to_line(f, qf.UniformGrid.symmetric(1.0, 0.5), UNIT_J)
    assert np.allclose(F.values[:, 0], np.exp(F.x))
