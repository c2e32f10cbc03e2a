import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from slicepw import paley_wiener as pw
from slicepw import quaternion as qt
from slicepw import sampling as sp
from slicepw.errors import DomainError, GridError
from slicepw.quaternion import UNIT_J, ImaginaryUnit


def delta_samples(band=np.pi, K=10):
    v = np.zeros((2 * K + 1, 4))
    v[K, 0] = 1.0
    return sp.SampleSet(band, K, v)


def random_pw(seed, A=np.pi):
    rng = np.random.default_rng(seed)
    return pw.synthesize_compact(pw.random_compact_spectrum(rng, A, qt.random_units(rng, 1)[0]))


def test_delta_samples_give_sinc():
    rng = np.random.default_rng(0)
    q = qt.random_quaternions(rng, 40, 3.0)
    assert np.max(qt.norm(sp.wks_reconstruct(delta_samples(), q) - qt.sinc_q(q))) < 1e-12
    A = 2.0
    got = sp.wks_reconstruct(delta_samples(A), q)
    assert np.max(qt.norm(got - qt.sinc_q(A * q / np.pi))) < 1e-12


def test_zero_samples():
    S = sp.SampleSet(1.0, 5, np.zeros((11, 4)))
    assert not np.any(sp.wks_reconstruct(S, qt.random_quaternions(np.random.default_rng(1), 5)))
    assert sp.sample_energy(S) == 0.0
    assert sp.truncation_bound(5, 1.0, 2.0, sp.tail_energy(S, 2)) == 0.0


def test_interpolates_at_nodes():
    rng = np.random.default_rng(2)
    S = sp.SampleSet(1.5, 20, qt.random_quaternions(rng, 41))
    x = S.nodes
    got = sp.wks_reconstruct(S, qt.from_slice(x, 0 * x, UNIT_J.vec))
    assert np.max(qt.norm(got - S.values)) < 1e-13


def test_series_matches_synthesis_off_axis():
    f = random_pw(3)
    S = sp.SampleSet.from_function(f, np.pi, 200)
    for U in (UNIT_J, ImaginaryUnit.from_vector([1, 2, -1])):
        q = qt.from_slice(0.3, 0.4, U.vec)
        assert qt.norm(sp.wks_reconstruct(S, q) - f.eval_array(q)) < 1e-6


def test_sinc_factor_sits_on_the_left():
    # a single sample c at k = 0 reproduces sinc(q) c, not c sinc(q)
    c = np.array([0.0, 0.0, 1.0, 0.0])
    v = np.zeros((3, 4))
    v[1] = c
    q = np.array([0.3, 0.4, 0, 0])
    got = sp.wks_reconstruct(sp.SampleSet(np.pi, 1, v), q)
    assert np.allclose(got, qt.mul(qt.sinc_q(q), c), atol=1e-15)
    assert not np.allclose(got, qt.mul(c, qt.sinc_q(q)))


def test_sinc_square_sum_closed_form():
    for y in (0.25, 1.0):
        q = np.array([0.5, y, 0, 0])
        got = sp.sinc_power_sum(q, 200000, 2.0)[0]
        # Parseval: sum_k |sinc(z - k)|^2 = sinh(2 pi y) / (2 pi y); the omitted
        # tail is about 2 |sin(pi z)|^2 / (pi^2 K)
        ref = np.sinh(2 * np.pi * y) / (2 * np.pi * y)
        assert got == pytest.approx(ref, rel=1e-5)
        assert got <= sp.sinc_sum_bound(y, 2.0)


@settings(max_examples=20, deadline=None)
@given(st.floats(-5, 5), st.floats(0, 1.5), st.sampled_from([1.25, 1.5, 2.0, 3.0]))
def test_sinc_power_sum_below_bound(x, y, p):
    q = np.array([x, 0, y, 0])
    assert sp.sinc_power_sum(q, 400, p)[0] <= sp.sinc_sum_bound(abs(y), p)


def test_truncation_bound_guards():
    with pytest.raises(ValueError):
        sp.truncation_bound(10, 1.0, 3.0, 1.0)
    with pytest.raises(ValueError):
        sp.truncation_bound(10, 1.0, 1.0, 1.0)
    with pytest.raises(ValueError):
        sp.sinc_sum_bound(1.0, 0.5)
    assert sp.truncation_bound(10, 0.0, 2.0, 4.0) == pytest.approx(np.sqrt(2) * 2)


@pytest.mark.parametrize("seed", range(5))
def test_truncation_bound_dominates(seed):
    f = random_pw(seed)
    S = sp.SampleSet.from_function(f, np.pi, 2000)
    rng = np.random.default_rng(seed)
    M = 0.5
    x = rng.uniform(-5, 5, 30)
    y = rng.uniform(-M, M, 30)
    q = qt.from_slice(x, y, qt.random_units(rng, 30))
    exact = f.eval_array(q)
    for K in (5, 20, 60):
        err = np.max(qt.norm(sp.wks_reconstruct(S.truncate(K), q, M) - exact))
        for p in (1.5, 2.0):
            assert err <= sp.truncation_bound(K, M, p, sp.tail_energy(S, K))


def test_strip_guard():
    S = delta_samples()
    with pytest.raises(DomainError):
        sp.wks_reconstruct(S, np.array([0.0, 2.0, 0, 0]), M=1.0)
    assert sp.wks_reconstruct(S, np.array([0.0, 1.0, 0, 0]), M=1.0) is not None


def test_sample_energy_matches_line_energy():
    assert sp.sample_energy(delta_samples()) == pytest.approx(1.0)
    f = random_pw(6, 2.0)
    S = sp.SampleSet.from_function(f, 2.0, 400)
    line = sp.line_energy(f, sp.error_grid(S))
    assert sp.sample_energy(S) == pytest.approx(line, rel=1e-6)


def test_l2_error_curve():
    sinc = pw.synthesize_compact(pw.CompactSpectrum.from_function(lambda t: np.ones_like(t) / np.sqrt(2 * np.pi), np.pi, 4097))
    S = delta_samples(np.pi, 40)
    # the delta samples reproduce sinc exactly; the synthesized box keeps its trapezoid error
    assert max(sp.l2_error_curve(qt.sinc_q, S, [0, 5, 40])) < 1e-12
    assert max(sp.l2_error_curve(sinc, S, [0, 5, 40])) < 1e-4
    f = random_pw(7)
    S = sp.SampleSet.from_function(f, np.pi, 120)
    curve = sp.l2_error_curve(f, S, [2, 5, 10, 20, 40, 80])
    assert sp.nonincreasing(curve)
    assert curve[-1] < 1e-3 * curve[0]
    zero = sp.SampleSet(np.pi, 10, np.zeros((21, 4)))
    assert sp.l2_error_curve(lambda q: np.zeros_like(q), zero, [1, 10]) == [0.0, 0.0]


def test_tail_energy_helpers():
    k = np.arange(-400, 401)
    v = np.zeros((801, 4))
    v[:, 0] = 1.0 / np.maximum(np.abs(k), 1) ** 2
    S = sp.SampleSet(1.0, 400, v)
    assert sp.tail_energy(S, 399) == pytest.approx(2 / 400**4)
    # two sides of sum_{k > 400} k^{-4}, about 2 * 400^{-3} / 3
    est = sp.estimate_tail_energy(S)
    assert est == pytest.approx(2 * 400.0**-3 / 3, rel=0.02)
    slow = sp.SampleSet(1.0, 400, np.tile([1.0, 0, 0, 0], (801, 1)))
    assert sp.estimate_tail_energy(slow) == np.inf
    with pytest.raises(GridError):
        sp.estimate_tail_energy(delta_samples(K=5))


def test_sample_set_validation():
    with pytest.raises(GridError):
        sp.SampleSet(np.pi, 2, np.zeros((4, 4)))
    with pytest.raises(GridError):
        sp.SampleSet(0.0, 0, np.zeros((1, 4)))
    with pytest.raises(GridError):
        delta_samples(K=3).truncate(4)
    assert delta_samples(K=3).truncate(0).values.shape == (1, 4)
    assert np.allclose(delta_samples(2.0, 2).nodes, np.pi * np.arange(-2, 3) / 2)
