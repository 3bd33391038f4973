"""One-sided amplitude spectra of point signals and modal coefficients.

Normalisation: a real sinusoid ``A sin(2 pi f t)`` sampled over an integer
number of periods gives a peak of height ``A`` at ``f``. For a real series
that means ``|X_k| / Nt`` doubled on every bin except DC and Nyquist; an
analytic (complex, positive-frequency) series already carries the doubled
content, so its bins are ``|X_k| / Nt`` without doubling.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import InvalidArgumentError, SignalField, TimeGrid


@dataclass(frozen=True, eq=False)
class SpectrumSeries:
    frequencies: np.ndarray
    power: np.ndarray

    @property
    def resolution(self) -> float:
        return float(self.frequencies[1] - self.frequencies[0])

    def peak(self) -> tuple[float, float]:
        """Frequency and height of the largest bin."""
        k = int(np.argmax(self.power))
        return float(self.frequencies[k]), float(self.power[k])

    def local_maxima(self) -> np.ndarray:
        p = self.power
        inner = (p[1:-1] >= p[:-2]) & (p[1:-1] >= p[2:]) & (p[1:-1] > 0)
        return np.flatnonzero(inner) + 1


def _taper(n: int, window: bool) -> tuple[np.ndarray, float]:
    if not window:
        return np.ones(n), float(n)
    w = np.hanning(n)
    # coherent gain keeps peak heights in amplitude units
    return w, float(np.sum(w))


def parseval_residual(series) -> float:
    """Relative mismatch between time- and frequency-domain energy of the raw DFT."""
    x = np.asarray(series)
    time_energy = float(np.sum(np.abs(x) ** 2))
    if time_energy == 0:
        return 0.0
    freq_energy = float(np.sum(np.abs(np.fft.fft(x)) ** 2)) / x.size
    return abs(time_energy - freq_energy) / time_energy


def real_spectrum(samples, dt: float, window: bool = False) -> SpectrumSeries:
    x = np.asarray(samples, dtype=float)
    n = x.size
    taper, gain = _taper(n, window)
    amp = np.abs(np.fft.rfft(x * taper)) / gain
    stop = amp.size - 1 if n % 2 == 0 else amp.size
    amp[1:stop] *= 2.0
    return SpectrumSeries(np.fft.rfftfreq(n, dt), amp)


def analytic_spectrum(series, dt: float, window: bool = False) -> SpectrumSeries:
    a = np.asarray(series, dtype=complex)
    n = a.size
    taper, gain = _taper(n, window)
    amp = np.abs(np.fft.fft(a * taper))[: n // 2 + 1] / gain
    return SpectrumSeries(np.fft.rfftfreq(n, dt), amp)


def point_spectrum(field: SignalField, column_index: int, window: bool = False) -> SpectrumSeries:
    nx = field.values.shape[1]
    if int(column_index) != column_index or not 0 <= column_index < nx:
        raise InvalidArgumentError(f"column index {column_index!r} outside [0, {nx - 1}]")
    return real_spectrum(field.values[:, int(column_index)], field.time.dt, window)


def coefficient_spectrum(mode, time: TimeGrid, window: bool = False) -> SpectrumSeries:
    """Spectrum of a mode's temporal coefficients over non-negative frequencies."""
    coeffs = getattr(mode, "temporal_coeffs", mode)
    return analytic_spectrum(coeffs, time.dt, window)


def nearest_bin(spec: SpectrumSeries, frequency: float) -> int:
    return int(np.argmin(np.abs(spec.frequencies - frequency)))
