"""Complex orthogonal decomposition of an analytic field.

The weighted covariance is symmetrised with ``B = diag(sqrt(w))`` so that a
plain Hermitian eigensolve yields spatial modes that are orthonormal under
the quadrature-weighted inner product ``u^H W v``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import (AnalyticField, InvalidArgumentError, NumericError, SignalField,
                   SpatialGrid, TimeGrid, validate_field)

# eigenvalues below -CLAMP_TOL * lambda_max are treated as a solver failure
CLAMP_TOL = 1e-10
NEGLIGIBLE = 1e-12
TIE_TOL = 1e-12
RESIDUAL_TOL = 1e-8


@dataclass(frozen=True)
class GramSummary:
    """Weighted Gram entries of the real and imaginary parts of a mode:
    ``a = <Re, Re>``, ``b = <Im, Im>``, ``c = <Re, Im>``."""

    a: float
    b: float
    c: float

    @classmethod
    def of(cls, mode_vector, space: SpatialGrid) -> "GramSummary":
        re = np.real(mode_vector)
        im = np.imag(mode_vector)
        w = space.weights
        return cls(float(np.sum(w * re * re)), float(np.sum(w * im * im)),
                   float(np.sum(w * re * im)))

    @classmethod
    def principal(cls, mode_vector, space: SpatialGrid) -> "GramSummary":
        """Gram entries after a global phase rotation onto the principal axes.

        The travelling index is phase invariant; rotating first makes ``b``
        the small eigenvalue computed directly, so a standing mode gets an
        index at roundoff level rather than ``sqrt(eps)`` from ``ab - c^2``.
        """
        g = cls.of(mode_vector, space)
        theta = 0.5 * np.arctan2(2.0 * g.c, g.a - g.b)
        return cls.of(np.asarray(mode_vector) * np.exp(-1j * theta), space)

    @property
    def eigenvalues(self) -> tuple[float, float]:
        mean = 0.5 * (self.a + self.b)
        half = 0.5 * np.hypot(self.a - self.b, 2.0 * self.c)
        return mean - half, mean + half

    def travelling_index(self) -> float:
        """``sqrt(lambda_min / lambda_max)`` of the 2x2 Gram matrix."""
        a, b, c = self.a, self.b, self.c
        total = a + b
        if total <= 0:
            return 0.0
        root = np.hypot(a - b, 2.0 * c)
        # a + b - root == 4 (ab - c^2) / (a + b + root); the right side avoids
        # cancellation for nearly standing modes
        det = max(a * b - c * c, 0.0)
        return float(min(2.0 * np.sqrt(det) / (total + root), 1.0))


@dataclass(frozen=True, eq=False)
class CodMode:
    spatial_mode: np.ndarray
    temporal_coeffs: np.ndarray
    energy: float
    travelling_index: float
    amplitude: float
    negligible: bool = False


@dataclass(frozen=True, eq=False)
class CodResult:
    modes: tuple[CodMode, ...]
    total_energy: float
    time: TimeGrid
    space: SpatialGrid
    eigenvalues: np.ndarray
    hermitian_residual: float = 0.0

    def __len__(self):
        return len(self.modes)

    @property
    def energies(self) -> np.ndarray:
        return np.array([m.energy for m in self.modes])

    @property
    def spatial_modes(self) -> np.ndarray:
        """Modes as columns, shape ``(Nx, n_modes)``."""
        return np.column_stack([m.spatial_mode for m in self.modes])

    @property
    def coefficients(self) -> np.ndarray:
        """Temporal coefficients as rows, shape ``(n_modes, Nt)``."""
        return np.vstack([m.temporal_coeffs for m in self.modes])

    @property
    def degenerate(self) -> bool:
        return not self.total_energy > 0


def covariance(field: AnalyticField) -> np.ndarray:
    """Symmetrised weighted covariance ``(1/Nt) B Z Z^H B`` with ``B = diag(sqrt(w))``."""
    y = np.sqrt(field.space.weights)[:, None] * field.Z
    return (y @ y.conj().T) / field.time.count


def _fix_phase(phi: np.ndarray) -> np.ndarray:
    """Rotate each column so its largest-magnitude entry is real and positive."""
    idx = np.argmax(np.abs(phi), axis=0)
    pivot = phi[idx, np.arange(phi.shape[1])]
    mag = np.abs(pivot)
    rot = np.where(mag > 0, np.conj(pivot) / np.where(mag > 0, mag, 1.0), 1.0)
    out = phi * rot[None, :]
    out[idx, np.arange(phi.shape[1])] = mag
    return out


def _order(energies: np.ndarray, peak: np.ndarray, where: np.ndarray) -> np.ndarray:
    """Descending energy; near-equal energies broken by larger peak, then leftmost peak."""
    order = np.argsort(-energies, kind="stable")
    scale = energies[order[0]] if energies.size else 0.0
    tol = TIE_TOL * scale
    out = []
    i = 0
    while i < order.size:
        j = i + 1
        while j < order.size and energies[order[j - 1]] - energies[order[j]] <= tol:
            j += 1
        group = list(order[i:j])
        group.sort(key=lambda m: (-peak[m], where[m]))
        out.extend(group)
        i = j
    return np.array(out, dtype=int)


def travelling_index(mode, space: SpatialGrid | None = None) -> float:
    """Travelling index in [0, 1] of a mode (or of a precomputed :class:`GramSummary`).

    0 means a purely standing mode, 1 a perfectly travelling one.
    """
    if isinstance(mode, GramSummary):
        return mode.travelling_index()
    if space is None:
        raise InvalidArgumentError("travelling_index needs the spatial grid of the mode")
    vec = mode.spatial_mode if isinstance(mode, CodMode) else np.asarray(mode)
    return GramSummary.principal(vec, space).travelling_index()


def amplitude_estimate(mode: CodMode) -> float:
    """``sqrt(energy) * max|phi|``: the peak oscillation amplitude for a
    constant-envelope harmonic mode."""
    if mode.spatial_mode.size == 0:
        return 0.0
    return float(np.sqrt(max(mode.energy, 0.0)) * np.max(np.abs(mode.spatial_mode)))


def cod(field: AnalyticField) -> CodResult:
    """Decompose an analytic field into weighted-orthonormal complex modes.

    Returns every mode (``Nx`` of them) sorted by decreasing energy; modes
    with energy below ``1e-12`` of the leading one are flagged ``negligible``
    but kept so that full-rank reconstruction is exact.

    Raises
    ------
    InvalidArgumentError
        If the field fails validation.
    NumericError
        If the eigensolver does not converge or returns an inaccurate basis.
    """
    validate_field(field).raise_if_invalid("analytic field")
    w = field.space.weights
    nt = field.time.count
    Z = field.Z

    C = covariance(field)
    cmax = float(np.max(np.abs(C)))
    herm = float(np.max(np.abs(C - C.conj().T))) / cmax if cmax > 0 else 0.0
    C = 0.5 * (C + C.conj().T)

    try:
        lam, psi = np.linalg.eigh(C)
    except np.linalg.LinAlgError as exc:
        raise NumericError(f"Hermitian eigensolve failed: {exc}", residual=float("nan")) from exc
    if cmax > 0:
        resid = float(np.linalg.norm(C @ psi - psi * lam) / np.linalg.norm(C))
        if not resid <= RESIDUAL_TOL:
            raise NumericError(f"eigen-decomposition residual {resid:.3e} too large",
                               residual=resid)

    lmax = float(np.max(lam)) if lam.size else 0.0
    if lam.size and lam.min() < -CLAMP_TOL * max(lmax, 0.0):
        raise NumericError(f"covariance has eigenvalue {lam.min():.3e} < 0",
                           residual=float(-lam.min()))
    lam = np.clip(lam, 0.0, None)

    phi = _fix_phase(psi / np.sqrt(w)[:, None])
    coeffs = (phi.conj() * w[:, None]).T @ Z
    energies = np.sum(np.abs(coeffs) ** 2, axis=1) / nt

    peak = np.max(np.abs(phi), axis=0)
    order = _order(energies, peak, np.argmax(np.abs(phi), axis=0))
    phi, coeffs, energies, lam = phi[:, order], coeffs[order], energies[order], lam[order]

    lead = energies[0] if energies.size else 0.0
    modes = []
    for j in range(phi.shape[1]):
        vec = phi[:, j].copy()
        vec.setflags(write=False)
        a = coeffs[j].copy()
        a.setflags(write=False)
        energy = float(energies[j])
        modes.append(CodMode(
            spatial_mode=vec,
            temporal_coeffs=a,
            energy=energy,
            travelling_index=GramSummary.principal(vec, field.space).travelling_index(),
            amplitude=float(np.sqrt(energy) * peak[order[j]]),
            negligible=bool(energy <= NEGLIGIBLE * lead),
        ))
    eig = lam.copy()
    eig.setflags(write=False)
    return CodResult(tuple(modes), float(np.sum(energies)), field.time, field.space,
                     eig, herm)


def reconstruct(result: CodResult, k: int) -> AnalyticField:
    """Rank-``k`` analytic field ``sum_{j<k} a_j phi_j^T``."""
    n = len(result.modes)
    if int(k) != k or not 0 <= k <= n:
        raise InvalidArgumentError(f"rank k must be an integer in [0, {n}], got {k!r}")
    k = int(k)
    shape = (result.time.count, result.space.size)
    if k == 0:
        return AnalyticField(result.time, result.space, np.zeros(shape, complex))
    phi = np.column_stack([m.spatial_mode for m in result.modes[:k]])
    a = np.vstack([m.temporal_coeffs for m in result.modes[:k]])
    return AnalyticField(result.time, result.space, a.T @ phi.T)


def reconstruct_real(result: CodResult, k: int) -> SignalField:
    return reconstruct(result, k).real


def modal_energy_fractions(result: CodResult) -> np.ndarray:
    total = float(np.sum(result.energies))
    if not total > 0:
        raise InvalidArgumentError("energy fractions are undefined for a zero-energy result")
    return result.energies / total


def psd_energy_check(mode: CodMode, time: TimeGrid | None = None) -> float:
    """Relative gap between the time-mean power of ``a_j`` and its discrete
    power-spectrum sum (discrete Parseval); zero for a zero mode."""
    a = np.asarray(mode.temporal_coeffs)
    nt = a.size
    mean_power = np.sum(np.abs(a) ** 2) / nt
    spectral = np.sum(np.abs(np.fft.fft(a)) ** 2) / nt ** 2
    ref = mode.energy if mode.energy > 0 else mean_power
    if not ref > 0:
        return 0.0
    return float(abs(mean_power - spectral) / ref)
