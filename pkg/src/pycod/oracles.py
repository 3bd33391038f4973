"""Independent reference computations used to cross-check the engine.

Nothing here calls a Hermitian eigensolver: eigenvalues come from the roots
of the characteristic polynomial (Faddeev-LeVerrier coefficients), refined
by inverse iteration with Rayleigh quotients.
"""
from __future__ import annotations

import numpy as np


def charpoly(C: np.ndarray) -> np.ndarray:
    """Coefficients of ``det(z I - C)``, highest degree first."""
    n = C.shape[0]
    coeffs = np.zeros(n + 1, dtype=complex)
    coeffs[0] = 1.0
    M = np.zeros_like(C, dtype=complex)
    eye = np.eye(n)
    for k in range(1, n + 1):
        M = C @ M + coeffs[k - 1] * eye
        coeffs[k] = -np.trace(C @ M) / k
    return coeffs


def _roots_real(coeffs: np.ndarray) -> np.ndarray:
    """Real roots of a polynomial known to have only real roots (Durand-Kerner)."""
    p = np.real(coeffs)
    n = p.size - 1
    bound = 1.0 + np.max(np.abs(p[1:])) if n else 0.0
    z = bound * np.exp(2j * np.pi * (np.arange(n) + 0.25) / n)
    for _ in range(500):
        num = np.polyval(p, z)
        den = np.array([np.prod(z[i] - np.delete(z, i)) for i in range(n)])
        den = np.where(den == 0, 1e-300, den)
        step = num / den
        z = z - step
        if np.max(np.abs(step)) <= 1e-15 * bound:
            break
    return np.sort(z.real)[::-1]


def hermitian_eig_reference(C: np.ndarray, sweeps: int = 4):
    """Eigenpairs of a small Hermitian matrix, descending eigenvalues."""
    n = C.shape[0]
    scale = float(np.max(np.abs(C))) or 1.0
    A = C / scale
    lam = _roots_real(charpoly(A))
    vecs = np.zeros((n, n), dtype=complex)
    rng = np.random.default_rng(12345)
    for j, mu in enumerate(lam):
        v = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        # Gram-Schmidt against earlier vectors keeps clustered roots apart
        shift = mu + 1e-10 * (1 + abs(mu))
        for _ in range(sweeps):
            for i in range(j):
                v -= vecs[:, i] * np.vdot(vecs[:, i], v)
            v = np.linalg.solve(A - shift * np.eye(n), v)
            v /= np.linalg.norm(v)
        for i in range(j):
            v -= vecs[:, i] * np.vdot(vecs[:, i], v)
        v /= np.linalg.norm(v)
        vecs[:, j] = v
        lam[j] = float(np.real(np.vdot(v, A @ v)))
    return lam * scale, vecs


def principal_angles(U: np.ndarray, V: np.ndarray) -> np.ndarray:
    """Principal angles between the column spaces of ``U`` and ``V`` (orthonormalised here)."""
    qu, _ = np.linalg.qr(U)
    qv, _ = np.linalg.qr(V)
    # sine form: accurate for tiny angles, unlike arccos of the cosines
    resid = qv - qu @ (qu.conj().T @ qv)
    sines = np.linalg.svd(resid, compute_uv=False)
    return np.arcsin(np.clip(sines, 0.0, 1.0))


def damped_amplitude(A1: float, gamma: float, T: float) -> float:
    """RMS-based amplitude of ``A1 exp(-gamma t)`` averaged over ``[0, T]``."""
    if gamma == 0:
        return A1
    return A1 * np.sqrt((1.0 - np.exp(-2.0 * gamma * T)) / (2.0 * gamma * T))
