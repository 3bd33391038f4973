"""Synthetic fields for the sloshing, damped and frequency-modulated test
cases, together with their closed-form references.

Lengths are millimetres, so gravity defaults to 9810 mm/s^2.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .core import (InvalidArgumentError, SignalField, SpatialGrid, TimeGrid,
                   uniform_grid)

GRAVITY_MM = 9810.0

BESSEL_MAX_ORDER = 50
BESSEL_MAX_ARG = 20.0
JACOBI_ANGER_TAIL = 1e-8


class WaveMode(NamedTuple):
    """One sloshing component: mode number, amplitude and travelling mix.

    ``omega`` overrides the Airy frequency when given.
    """
    n: int
    A: float
    alpha: float = 0.0
    omega: float | None = None


@dataclass(frozen=True)
class SloshingParams:
    L: float
    h: float
    modes: tuple[WaveMode, ...]
    time: TimeGrid
    space: SpatialGrid
    g: float = GRAVITY_MM

    def check(self):
        if not (self.L > 0 and self.h > 0 and self.g > 0):
            raise InvalidArgumentError("L, h and g must be positive")
        for m in self.modes:
            if int(m.n) != m.n or m.n < 1:
                raise InvalidArgumentError(f"mode number must be an integer >= 1, got {m.n}")
            if abs(m.alpha) > 1:
                raise InvalidArgumentError(f"|alpha| <= 1 violated (alpha={m.alpha})")


@dataclass(frozen=True)
class DampedParams:
    L: float
    lambda1: float
    A1: float
    f1: float
    gamma: float
    time: TimeGrid
    space: SpatialGrid

    def check(self):
        if self.gamma < 0:
            raise InvalidArgumentError(f"gamma >= 0 violated (gamma={self.gamma})")
        if not self.f1 > 0:
            raise InvalidArgumentError(f"f1 > 0 violated (f1={self.f1})")
        if not (self.L > 0 and self.lambda1 > 0):
            raise InvalidArgumentError("L and lambda1 must be positive")


@dataclass(frozen=True)
class FmParams:
    """Cubic standing shape ``(shape_scale * x) ** shape_power`` times a
    frequency-modulated carrier ``sin(2 pi f1 t + epsilon sin(2 pi F t))``."""

    L: float
    A1: float
    f1: float
    F: float
    epsilon: float
    time: TimeGrid
    space: SpatialGrid
    shape_scale: float = 0.01
    shape_power: int = 3

    def check(self):
        if not self.F > 0:
            raise InvalidArgumentError(f"F > 0 violated (F={self.F})")
        if not self.f1 > self.F:
            raise InvalidArgumentError(f"f1 > F violated (f1={self.f1}, F={self.F})")
        if self.epsilon < 0:
            raise InvalidArgumentError(f"epsilon >= 0 violated (epsilon={self.epsilon})")


@dataclass(frozen=True)
class SpectralLine:
    frequency: float
    weight: float
    order: int = 0


def airy_omega(n: int, L: float, h: float, g: float = GRAVITY_MM) -> float:
    """Angular frequency of sloshing mode ``n`` from ``omega^2 = g k tanh(k h)``, ``k = n pi / L``."""
    if int(n) != n or n < 1:
        raise InvalidArgumentError(f"n must be an integer >= 1, got {n!r}")
    if not (L > 0 and h > 0 and g > 0):
        raise InvalidArgumentError("L, h and g must be positive")
    k = n * math.pi / L
    return math.sqrt(g * k * math.tanh(k * h))


def _standing(A, omega, wavelength, t, x, alpha=0.0, envelope=None):
    tt = omega * t
    kx = 2.0 * np.pi * x / wavelength
    sin_t = np.sin(tt) if envelope is None else envelope * np.sin(tt)
    cos_t = np.cos(tt) if envelope is None else envelope * np.cos(tt)
    return A * (sin_t[:, None] * np.sin(kx)[None, :]
                + alpha * (cos_t[:, None] * np.cos(kx)[None, :]))


def sloshing_field(p: SloshingParams) -> SignalField:
    p.check()
    t = p.time.times
    x = p.space.positions
    values = np.zeros((p.time.count, p.space.size))
    for m in p.modes:
        omega = airy_omega(m.n, p.L, p.h, p.g) if m.omega is None else m.omega
        values += _standing(m.A, omega, 2.0 * p.L / m.n, t, x, m.alpha)
    return SignalField(p.time, p.space, values)


def damped_standing_field(p: DampedParams) -> SignalField:
    p.check()
    t = p.time.times
    envelope = np.exp(-p.gamma * t)
    values = _standing(p.A1, 2.0 * np.pi * p.f1, p.lambda1, t, p.space.positions,
                       envelope=envelope)
    return SignalField(p.time, p.space, values)


def fm_cubic_field(p: FmParams) -> SignalField:
    p.check()
    t = p.time.times
    shape = (p.shape_scale * p.space.positions) ** p.shape_power
    phase = 2.0 * np.pi * p.f1 * t + p.epsilon * np.sin(2.0 * np.pi * p.F * t)
    return SignalField(p.time, p.space, p.A1 * np.sin(phase)[:, None] * shape[None, :])


def bessel_j_orders(n_max: int, x: float) -> np.ndarray:
    """``J_0(x) .. J_{n_max}(x)`` from one downward Miller recurrence.

    The recurrence ``J_{k-1} = (2k/x) J_k - J_{k+1}`` is started far above
    ``max(n_max, x)`` from arbitrary seeds and normalised with
    ``J_0 + 2 sum_k J_{2k} = 1``. Below ``x = 0.5`` the power series is
    summed directly instead.
    """
    if int(n_max) != n_max or not 0 <= n_max <= BESSEL_MAX_ORDER:
        raise InvalidArgumentError(f"order must be an integer in [0, {BESSEL_MAX_ORDER}]")
    if not (np.isfinite(x) and 0 <= x <= BESSEL_MAX_ARG):
        raise InvalidArgumentError(f"argument must lie in [0, {BESSEL_MAX_ARG}], got {x!r}")
    n_max = int(n_max)
    out = np.zeros(n_max + 1)
    if x == 0:
        out[0] = 1.0
        return out
    if x < 0.5:
        # power series; the recurrence's 2k/x factor would overflow for tiny x
        q = -0.25 * x * x
        for n in range(n_max + 1):
            term = math.exp(n * (math.log(x) - math.log(2.0)) - math.lgamma(n + 1.0))
            total = 0.0
            for m in range(30):
                total += term
                term *= q / ((m + 1) * (m + 1 + n))
                if abs(term) <= 1e-17 * abs(total):
                    break
            out[n] = total
        return out
    top = max(n_max, int(x)) + 30 + int(math.sqrt(60.0 * max(n_max, x)))
    top += top % 2
    above, cur = 0.0, 1e-300
    norm = 0.0
    for k in range(top, 0, -1):
        below = (2.0 * k / x) * cur - above
        above, cur = cur, below
        # cur now holds the unnormalised J_{k-1}
        if k - 1 <= n_max:
            out[k - 1] = cur
        if (k - 1) % 2 == 0:
            norm += cur if k - 1 == 0 else 2.0 * cur
        if abs(cur) > 1e250:
            above *= 1e-250
            cur *= 1e-250
            norm *= 1e-250
            out *= 1e-250
    return out / norm


def bessel_j(n: int, x: float) -> float:
    """Bessel function of the first kind, ``J_n(x)`` for ``0 <= n <= 50``, ``0 <= x <= 20``."""
    return float(bessel_j_orders(n, x)[int(n)])


def jacobi_anger_lines(f1: float, F: float, epsilon: float,
                       n_max: int | None = None) -> list[SpectralLine]:
    """Sideband lines ``f1 + n F`` with weights ``J_n(epsilon)^2``.

    With ``n_max=None`` the smallest truncation whose omitted weight is below
    ``1e-8`` is used.
    """
    if n_max is not None and (int(n_max) != n_max or n_max < 1):
        raise InvalidArgumentError(f"n_max must be an integer >= 1, got {n_max!r}")
    if epsilon < 0:
        raise InvalidArgumentError(f"epsilon >= 0 violated (epsilon={epsilon})")
    j = bessel_j_orders(BESSEL_MAX_ORDER, epsilon)
    if n_max is None:
        n_max = 1
        while 1.0 - (j[0] ** 2 + 2.0 * np.sum(j[1:n_max + 1] ** 2)) >= JACOBI_ANGER_TAIL:
            n_max += 1
            if n_max >= BESSEL_MAX_ORDER:
                break
    n_max = int(n_max)
    if n_max > BESSEL_MAX_ORDER:
        raise InvalidArgumentError(f"n_max must be <= {BESSEL_MAX_ORDER}")
    return [SpectralLine(f1 + n * F, float(j[abs(n)] ** 2), n)
            for n in range(-n_max, n_max + 1)]


def chebyshev_grid(L: float, Nx: int) -> SpatialGrid:
    """Chebyshev-Lobatto positions on ``[-L/2, L/2]``, clustered at both walls."""
    if int(Nx) != Nx or Nx < 3:
        raise InvalidArgumentError(f"Nx must be an integer >= 3, got {Nx!r}")
    if not L > 0:
        raise InvalidArgumentError("L must be positive")
    Nx = int(Nx)
    # -cos(pi j/(Nx-1)) written as a sine so the centre and ends are exact
    theta = np.pi * (2.0 * np.arange(Nx) - (Nx - 1)) / (2.0 * (Nx - 1))
    x = 0.5 * L * np.sin(theta)
    x[0], x[-1] = -0.5 * L, 0.5 * L
    return SpatialGrid.from_positions(x)


def add_noise(field: SignalField, sigma: float, seed: int) -> SignalField:
    """Add i.i.d. Gaussian noise of standard deviation ``sigma``.

    Draws come from ``numpy.random.Generator(PCG64(seed)).standard_normal``,
    row-major over the ``(Nt, Nx)`` matrix.
    """
    if sigma < 0:
        raise InvalidArgumentError(f"sigma >= 0 violated (sigma={sigma})")
    if sigma == 0:
        return SignalField(field.time, field.space, field.values)
    rng = np.random.Generator(np.random.PCG64(seed))
    noise = rng.standard_normal(field.values.shape)
    return SignalField(field.time, field.space, field.values + sigma * noise)


# Example defaults. Only the sample counts are given; record lengths are chosen here.

def sloshing_params(alpha1: float = 0.0, nt: int = 1000, nx: int = 250, dt: float = 0.04,
                    grid: str = "uniform", L: float = 400.0, h: float = 100.0) -> SloshingParams:
    if grid == "uniform":
        space = uniform_grid(-L / 2, L / 2, nx)
    elif grid == "chebyshev":
        space = chebyshev_grid(L, nx)
    else:
        raise InvalidArgumentError(f"unknown grid kind {grid!r}")
    return SloshingParams(L=L, h=h, modes=(WaveMode(1, 15.0, alpha1), WaveMode(3, 4.0, 0.0)),
                          time=TimeGrid(0.0, dt, nt), space=space)


def damped_params(gamma: float = 1.0, nt: int = 500, nx: int = 1200, dt: float = 0.007,
                  L: float = 400.0) -> DampedParams:
    return DampedParams(L=L, lambda1=300.0, A1=16.0, f1=5.0, gamma=gamma,
                        time=TimeGrid(0.0, dt, nt), space=uniform_grid(-L / 2, L / 2, nx))


def fm_params(epsilon: float = 1.0, nt: int = 1000, nx: int = 250, dt: float = 0.05,
              L: float = 400.0) -> FmParams:
    return FmParams(L=L, A1=2.0, f1=1.0, F=0.2, epsilon=epsilon,
                    time=TimeGrid(0.0, dt, nt), space=uniform_grid(-L / 2, L / 2, nx))


@dataclass(frozen=True)
class Preset:
    name: str
    build: object
    params: dict = field(default_factory=dict)

    def field(self, **overrides) -> SignalField:
        return self.build(**{**self.params, **overrides})


def _sloshing(**kw):
    return sloshing_field(sloshing_params(**kw))


def _damped(**kw):
    return damped_standing_field(damped_params(**kw))


def _fm(**kw):
    return fm_cubic_field(fm_params(**kw))


PRESETS = {
    "sloshing": Preset("sloshing", _sloshing),
    "sloshing-chebyshev": Preset("sloshing-chebyshev", _sloshing, {"grid": "chebyshev"}),
    "damped": Preset("damped", _damped),
    "fm-cubic": Preset("fm-cubic", _fm),
}


def preset_field(name: str, sigma: float = 0.0, seed: int = 0, **overrides) -> SignalField:
    try:
        preset = PRESETS[name]
    except KeyError:
        raise InvalidArgumentError(
            f"unknown preset {name!r}; choose from {', '.join(sorted(PRESETS))}") from None
    if not sigma >= 0:
        raise InvalidArgumentError(f"sigma >= 0 violated (sigma={sigma})")
    out = preset.field(**overrides)
    return add_noise(out, sigma, seed) if sigma > 0 else out


__all__ = [
    "WaveMode", "SloshingParams", "DampedParams", "FmParams", "SpectralLine",
    "airy_omega", "sloshing_field", "damped_standing_field", "fm_cubic_field",
    "bessel_j", "bessel_j_orders", "jacobi_anger_lines", "chebyshev_grid", "add_noise",
    "sloshing_params", "damped_params", "fm_params", "PRESETS", "preset_field",
]
