import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from pycod.analytic import (analytic_field, analytic_series, hilbert_approx_error,
                            spectral_mask)
from pycod.core import InvalidArgumentError, SignalField, TimeGrid, uniform_grid

finite = st.floats(-1e3, 1e3, allow_nan=False)
series = arrays(np.float64, st.integers(4, 129), elements=finite)


def _negative_bins(n):
    # strictly negative frequencies; an even-length Nyquist bin is not one
    return np.arange(n) > n // 2


@pytest.mark.parametrize("n", [64, 63])
def test_cosine_becomes_complex_exponential(n):
    t = np.arange(n)
    w = 2 * np.pi * 5 / n
    z = analytic_series(np.cos(w * t))
    assert np.allclose(z, np.exp(1j * w * t), atol=1e-12)


def test_sine_becomes_sine_minus_i_cosine():
    n = 100
    t = np.arange(n)
    w = 2 * np.pi * 7 / n
    z = analytic_series(np.sin(w * t))
    assert np.allclose(z, np.sin(w * t) - 1j * np.cos(w * t), atol=1e-12)


def test_constant_series_is_kept():
    z = analytic_series(np.full(10, 3.5))
    assert np.allclose(z, 3.5 + 0j, atol=1e-14)


def test_mask_conventions():
    assert spectral_mask(6).tolist() == [1, 2, 2, 1, 0, 0]
    assert spectral_mask(7).tolist() == [1, 2, 2, 2, 0, 0, 0]


@pytest.mark.parametrize("bad", [[1.0, 2.0, 3.0], [1.0, np.nan, 0.0, 1.0], [[1.0] * 4]])
def test_analytic_series_rejects(bad):
    with pytest.raises(InvalidArgumentError):
        analytic_series(bad)


@given(series)
def test_real_part_preserved(x):
    z = analytic_series(x)
    scale = max(np.max(np.abs(x)), 1e-300)
    assert np.max(np.abs(z.real - x)) <= 1e-12 * scale + 1e-300


@given(series)
def test_negative_bins_are_empty(x):
    spec = np.fft.fft(analytic_series(x))
    total = np.sum(np.abs(spec) ** 2)
    neg = np.sum(np.abs(spec[_negative_bins(x.size)]) ** 2)
    assert neg <= 1e-12 * total + 1e-300


@given(series)
def test_masking_rule_bin_by_bin(x):
    spec_in = np.fft.fft(x)
    spec_out = np.fft.fft(analytic_series(x))
    tol = 1e-9 * (np.max(np.abs(spec_in)) + 1e-300)
    assert np.allclose(spec_out, spec_in * spectral_mask(x.size), rtol=0, atol=tol)


@given(st.integers(4, 80).flatmap(lambda n: st.tuples(
    arrays(np.float64, n, elements=finite), arrays(np.float64, n, elements=finite))),
    finite, finite)
def test_linearity(xy, a, b):
    x, y = xy
    lhs = analytic_series(a * x + b * y)
    rhs = a * analytic_series(x) + b * analytic_series(y)
    scale = np.max(np.abs(lhs)) + np.max(np.abs(rhs)) + 1e-300
    assert np.max(np.abs(lhs - rhs)) <= 1e-10 * scale


def test_field_negative_frequency_energy(sloshing):
    spec = np.fft.fft(sloshing.analytic.values, axis=0)
    neg = _negative_bins(spec.shape[0])
    col_total = np.sum(np.abs(spec) ** 2, axis=0)
    col_neg = np.sum(np.abs(spec[neg]) ** 2, axis=0)
    assert np.all(col_neg <= 1e-10 * col_total + 1e-300)


def test_zero_field():
    f = SignalField(TimeGrid(0, 0.1, 16), uniform_grid(0, 1, 3), np.zeros((16, 3)))
    assert np.all(analytic_field(f).values == 0)


def test_damped_imaginary_part_follows_slow_damping(damped):
    f = damped.field
    t = f.time.times
    approx = (-16 * np.exp(-t) * np.cos(2 * np.pi * 5 * t))[:, None] \
        * np.sin(2 * np.pi * f.space.positions / 300)[None, :]
    edge = f.time.count // 10
    err = np.abs(damped.analytic.values.imag - approx)[edge:-edge]
    # same bound as the slow-damping check at gamma = 1, times A1 = 16
    assert err.max() < 0.05 * 16


def test_threads_do_not_change_bits(monkeypatch, sloshing):
    serial = analytic_field(sloshing.field, threads=1).values
    monkeypatch.setenv("COD_THREADS", "3")
    assert np.array_equal(analytic_field(sloshing.field).values, serial)
    assert np.array_equal(analytic_field(sloshing.field, threads=7).values, serial)


def test_bad_thread_env(monkeypatch, sloshing):
    monkeypatch.setenv("COD_THREADS", "zero")
    with pytest.raises(InvalidArgumentError):
        analytic_field(sloshing.field)


INTEGER_PERIODS = TimeGrid(0.0, 3.4 / 500, 500)


def test_hilbert_error_vanishes_without_damping():
    assert hilbert_approx_error(0.0, 2 * np.pi * 5, INTEGER_PERIODS) < 1e-6


def test_hilbert_error_shrinks_with_damping():
    gammas = [4.0, 2.0, 1.0, 0.5, 0.25, 0.1, 0.05]
    errs = [hilbert_approx_error(g, 2 * np.pi * 5, INTEGER_PERIODS) for g in gammas]
    assert all(a > b for a, b in zip(errs, errs[1:]))


def test_hilbert_error_example_window():
    # the damped example's own window (17.5 periods)
    grid = TimeGrid(0.0, 0.007, 500)
    err = hilbert_approx_error(1.0, 2 * np.pi * 5, grid)
    assert 0 < err < 0.05
    assert err > hilbert_approx_error(0.0, 2 * np.pi * 5, INTEGER_PERIODS)


@pytest.mark.parametrize("gamma, omega", [(-1.0, 1.0), (0.0, 0.0)])
def test_hilbert_error_rejects(gamma, omega):
    with pytest.raises(InvalidArgumentError):
        hilbert_approx_error(gamma, omega, INTEGER_PERIODS)
