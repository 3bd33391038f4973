import math

import mpmath
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from pycod.core import InvalidArgumentError, SignalField, TimeGrid, uniform_grid
from pycod.generators import (PRESETS, SloshingParams, WaveMode, add_noise, airy_omega,
                              bessel_j, bessel_j_orders, chebyshev_grid, damped_params,
                              damped_standing_field, fm_cubic_field, fm_params,
                              jacobi_anger_lines, preset_field, sloshing_field,
                              sloshing_params)
from pycod.spectrum import point_spectrum


# -- dispersion -------------------------------------------------------------------

@pytest.mark.parametrize("n", [1, 2, 3, 7])
@pytest.mark.parametrize("h", [10.0, 100.0, 1000.0])
def test_airy_against_mpmath(n, h):
    mpmath.mp.dps = 30
    k = n * mpmath.pi / 400
    ref = mpmath.sqrt(9810 * k * mpmath.tanh(k * h))
    assert airy_omega(n, 400.0, h) == pytest.approx(float(ref), rel=1e-13)


def test_airy_deep_water_limit():
    k = math.pi / 400
    assert airy_omega(1, 400.0, 1e5) == pytest.approx(math.sqrt(9810 * k), rel=1e-12)


def test_airy_shallow_water_limit():
    k = math.pi / 400
    h = 0.01
    assert airy_omega(1, 400.0, h) == pytest.approx(k * math.sqrt(9810 * h), rel=1e-8)


def test_example_frequencies():
    assert airy_omega(1, 400, 100) / (2 * math.pi) == pytest.approx(1.1313, abs=1e-3)
    assert airy_omega(3, 400, 100) / (2 * math.pi) == pytest.approx(2.3981, abs=1e-3)


@pytest.mark.parametrize("args", [(0, 400, 100), (1.5, 400, 100), (1, -1, 100), (1, 400, 0)])
def test_airy_rejects(args):
    with pytest.raises(InvalidArgumentError):
        airy_omega(*args)


# -- sloshing ---------------------------------------------------------------------

def test_sloshing_point_spectrum_peaks(sloshing):
    spec = point_spectrum(sloshing.field, 0)
    peaks = spec.frequencies[spec.local_maxima()]
    for n in (1, 3):
        f = airy_omega(n, 400, 100) / (2 * np.pi)
        assert np.min(np.abs(peaks - f)) <= spec.resolution


def test_zero_amplitudes_give_zero_field():
    p = sloshing_params()
    zero = SloshingParams(p.L, p.h, (WaveMode(1, 0.0), WaveMode(3, 0.0)), p.time, p.space)
    assert np.all(sloshing_field(zero).values == 0)


def test_standing_sloshing_is_odd(sloshing):
    v = sloshing.field.values
    assert np.allclose(v, -v[:, ::-1], atol=1e-12)


@pytest.mark.parametrize("alpha", [1.5, -1.01])
def test_alpha_bound(alpha):
    with pytest.raises(InvalidArgumentError):
        sloshing_field(sloshing_params(alpha1=alpha))


def test_travelling_mix_is_a_travelling_wave():
    p = sloshing_params()
    full = SloshingParams(p.L, p.h, (WaveMode(1, 1.0, 1.0),), p.time, p.space)
    x = p.space.positions
    t = p.time.times
    w = airy_omega(1, p.L, p.h)
    k = 2 * np.pi / 800
    expected = np.cos(w * t[:, None] - k * x[None, :])
    assert np.allclose(sloshing_field(full).values, expected, atol=1e-12)


# -- damped -----------------------------------------------------------------------

def test_damped_without_damping_is_sloshing():
    p = damped_params(gamma=0.0)
    as_sloshing = SloshingParams(L=p.lambda1, h=100.0,
                                 modes=(WaveMode(2, p.A1, 0.0, omega=2 * np.pi * p.f1),),
                                 time=p.time, space=p.space)
    assert np.array_equal(damped_standing_field(p).values, sloshing_field(as_sloshing).values)


def test_damped_envelope(damped):
    f = damped.field
    col = int(np.argmin(np.abs(f.space.positions - 10.0)))
    t = f.time.times
    shape = np.sin(2 * np.pi * f.space.positions[col] / 300)
    carrier = 16 * shape * np.sin(2 * np.pi * 5 * t)
    ratio = f.values[:, col] / np.where(np.abs(carrier) > 1e-3, carrier, np.nan)
    ok = np.isfinite(ratio)
    assert np.allclose(ratio[ok], np.exp(-t[ok]), rtol=1e-10)


def test_damped_starts_at_rest(damped):
    assert np.all(damped.field.values[0] == 0)


def test_damped_rejects_negative_gamma():
    with pytest.raises(InvalidArgumentError):
        damped_standing_field(damped_params(gamma=-0.1))


# -- frequency modulated cubic -------------------------------------------------------

def test_fm_without_modulation_has_single_line():
    f = fm_cubic_field(fm_params(epsilon=0.0))
    spec = point_spectrum(f, 0)
    freq, height = spec.peak()
    assert freq == pytest.approx(1.0, abs=1e-12)
    others = np.delete(spec.power, np.argmax(spec.power))
    assert others.max() < 1e-10 * height


def test_fm_centre_column_is_zero():
    f = fm_cubic_field(fm_params(nx=251))
    assert f.space.positions[125] == 0
    assert np.all(f.values[:, 125] == 0)


def test_fm_sidebands(fm):
    spec = point_spectrum(fm.field, 0)
    peaks = spec.frequencies[spec.local_maxima()]
    for n in (-2, -1, 0, 1, 2):
        assert np.min(np.abs(peaks - (1.0 + 0.2 * n))) < 1e-9


@pytest.mark.parametrize("kw", [{"epsilon": -1.0}])
def test_fm_rejects(kw):
    with pytest.raises(InvalidArgumentError):
        fm_cubic_field(fm_params(**kw))


# -- Bessel -------------------------------------------------------------------------

@pytest.mark.parametrize("n", [0, 1, 2, 5, 10, 25, 50])
@pytest.mark.parametrize("x", [1e-6, 0.1, 1.0, 2.5, 7.3, 15.0, 20.0])
def test_bessel_against_mpmath(n, x):
    ref = float(mpmath.besselj(n, x))
    assert abs(bessel_j(n, x) - ref) <= 1e-10 * max(1.0, abs(ref))


def test_bessel_at_zero():
    assert bessel_j(0, 0.0) == 1.0
    assert bessel_j(3, 0.0) == 0.0


def test_bessel_first_zero():
    assert abs(bessel_j(0, 2.404825557695773)) < 1e-12


@given(st.floats(0.0, 20.0))
def test_bessel_weights_sum_to_one(x):
    j = bessel_j_orders(50, x)
    assert j[0] ** 2 + 2 * np.sum(j[1:] ** 2) == pytest.approx(1.0, abs=1e-12)


@pytest.mark.parametrize("n, x", [(51, 1.0), (-1, 1.0), (2, 20.5), (2, -0.1), (2, np.nan)])
def test_bessel_envelope(n, x):
    with pytest.raises(InvalidArgumentError):
        bessel_j(n, x)


def test_jacobi_anger_example():
    lines = jacobi_anger_lines(1.0, 0.2, 1.0, n_max=2)
    assert [round(line.frequency, 12) for line in lines] == [0.6, 0.8, 1.0, 1.2, 1.4]
    w = {line.order: line.weight for line in lines}
    assert w[0] == pytest.approx(float(mpmath.besselj(0, 1)) ** 2, rel=1e-12)
    assert w[-1] == w[1] and w[-2] == w[2]


@given(st.floats(0.0, 10.0))
def test_jacobi_anger_automatic_truncation(eps):
    lines = jacobi_anger_lines(1.0, 0.2, eps)
    assert sum(line.weight for line in lines) > 1 - 1e-8
    weights = {line.order: line.weight for line in lines}
    assert all(weights[n] == weights[-n] for n in weights)


def test_jacobi_anger_rejects():
    with pytest.raises(InvalidArgumentError):
        jacobi_anger_lines(1.0, 0.2, 1.0, n_max=0)
    with pytest.raises(InvalidArgumentError):
        jacobi_anger_lines(1.0, 0.2, -1.0)


# -- Chebyshev grid -------------------------------------------------------------------

@pytest.mark.parametrize("nx", [3, 4, 101, 250])
def test_chebyshev_grid(nx):
    g = chebyshev_grid(400.0, nx)
    x = g.positions
    assert x[0] == -200 and x[-1] == 200
    assert np.all(np.diff(x) > 0)
    assert np.allclose(x, -x[::-1], atol=1e-12)
    if nx % 2:
        assert x[nx // 2] == 0.0
    ref = -200 * np.cos(np.pi * np.arange(nx) / (nx - 1))
    assert np.allclose(x, ref, atol=1e-12)
    assert g.weights.sum() == pytest.approx(400.0, rel=1e-13)


def test_chebyshev_clusters_at_walls():
    d = np.diff(chebyshev_grid(400.0, 101).positions)
    assert d[0] < d[50] / 10


# -- noise ----------------------------------------------------------------------------

def _zeros(nt=40, nx=5):
    return SignalField(TimeGrid(0, 0.1, nt), uniform_grid(0, 1, nx), np.zeros((nt, nx)))


def test_noise_is_reproducible():
    a = add_noise(_zeros(), 0.5, 11)
    b = add_noise(_zeros(), 0.5, 11)
    c = add_noise(_zeros(), 0.5, 12)
    assert np.array_equal(a.values, b.values)
    assert not np.array_equal(a.values, c.values)


def test_noise_generator_convention():
    expected = np.random.Generator(np.random.PCG64(3)).standard_normal((40, 5))
    assert np.array_equal(add_noise(_zeros(), 1.0, 3).values, expected)


def test_noise_statistics():
    v = add_noise(_zeros(2000, 50), 0.3, 0).values
    assert v.mean() == pytest.approx(0, abs=0.01)
    assert v.std() == pytest.approx(0.3, rel=0.01)


def test_zero_noise_is_identity(sloshing):
    assert np.array_equal(add_noise(sloshing.field, 0.0, 1).values, sloshing.field.values)
    with pytest.raises(InvalidArgumentError):
        add_noise(sloshing.field, -1.0, 1)


def test_preset_noise(sloshing):
    noisy = preset_field("sloshing", sigma=0.1, seed=5)
    diff = noisy.values - sloshing.field.values
    assert diff.std() == pytest.approx(0.1, rel=0.02)


def test_unknown_preset():
    with pytest.raises(InvalidArgumentError, match="choose from"):
        preset_field("nope")
    assert set(PRESETS) == {"sloshing", "sloshing-chebyshev", "damped", "fm-cubic"}
