"""Exit criteria of the package, runnable as ``pycod selftest``.

Each check returns ``(passed, detail)``; :func:`run` prints one PASS/FAIL
line per criterion.
"""
from __future__ import annotations

import contextlib
import io
import json
import sys
import tempfile
import time
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path
from typing import Callable

import numpy as np

from .analytic import analytic_field, hilbert_approx_error
from .core import AnalyticField, SignalField, SpatialGrid, TimeGrid, uniform_grid
from .decompose import (cod, modal_energy_fractions, psd_energy_check, reconstruct,
                        travelling_index)
from .generators import bessel_j_orders, jacobi_anger_lines, preset_field
from .oracles import damped_amplitude, hermitian_eig_reference, principal_angles
from .spectrum import coefficient_spectrum, nearest_bin


@dataclass(frozen=True)
class Criterion:
    number: int
    title: str
    check: Callable[[], tuple[bool, str]]


@lru_cache(maxsize=None)
def _run(preset: str, **overrides):
    field = preset_field(preset, **overrides)
    return field, cod(analytic_field(field))


def overlap(space: SpatialGrid, u, v) -> float:
    """``|<u, v>_W| / (|u|_W |v|_W)``, insensitive to phase and scale."""
    return abs(space.inner(u, v)) / (space.norm(u) * space.norm(v))


def _sloshing_checks(grid: str):
    field, res = _run("sloshing", grid=grid)
    x = field.space.positions
    amps = [m.amplitude for m in res.modes[:2]]
    idx = [m.travelling_index for m in res.modes[:2]]
    shapes = [np.sin(2 * np.pi * x / 800.0), np.sin(2 * np.pi * x / (800.0 / 3))]
    ovl = [overlap(field.space, res.modes[j].spatial_mode, shapes[j]) for j in range(2)]
    amp_err = [abs(amps[0] - 15) / 15, abs(amps[1] - 4) / 4]
    return res, amps, amp_err, idx, ovl


def c1_amplitudes():
    res, amps, err, _, _ = _sloshing_checks("uniform")
    tail = modal_energy_fractions(res)[2:]
    ok = max(err) < 0.005 and np.all(tail < 1e-6)
    return ok, (f"A = {amps[0]:.5f}, {amps[1]:.5f} (rel err {err[0]:.2e}, {err[1]:.2e} < 5e-3); "
                f"max remaining fraction {tail.max():.1e} < 1e-6")


def c2_travelling_index():
    _, res = _run("sloshing")
    lead = res.modes[0].travelling_index
    ok = lead < 5e-3
    parts = [f"alpha1=0: {lead:.2e} < 5e-3"]
    for a1 in (0.25, 0.5, 1.0):
        _, r = _run("sloshing", alpha1=a1)
        got = r.modes[0].travelling_index
        ok &= abs(got - a1) <= 0.01
        parts.append(f"alpha1={a1}: {got:.4f}")
    return ok, "; ".join(parts) + " (tol 0.01)"


def c3_spatial_modes():
    _, _, _, _, ovl = _sloshing_checks("uniform")
    field, res = _run("sloshing", alpha1=0.5)
    x = field.space.positions
    k = 2 * np.pi * x / 800.0
    # analytic field of the first component is -i A exp(i w t) (sin kx + i alpha cos kx)
    travelling = overlap(field.space, res.modes[0].spatial_mode, np.sin(k) + 0.5j * np.cos(k))
    ok = min(ovl) > 0.999 and travelling > 0.999
    return ok, (f"overlaps {ovl[0]:.6f}, {ovl[1]:.6f}; alpha1=0.5 mode 1 {travelling:.6f} "
                "(> 0.999)")


def c4_damped():
    field, res = _run("damped")
    lead = res.modes[0]
    frac = modal_energy_fractions(res)[0]
    ovl = overlap(field.space, lead.spatial_mode,
                  np.sin(2 * np.pi * field.space.positions / 300.0))
    expected = damped_amplitude(16.0, 1.0, field.time.duration)
    err = abs(lead.amplitude - expected) / expected
    ok = frac > 0.99 and lead.travelling_index < 0.05 and ovl > 0.999 and err < 0.02
    return ok, (f"fraction {frac:.6f}, index {lead.travelling_index:.1e}, overlap {ovl:.6f}, "
                f"A = {lead.amplitude:.4f} vs {expected:.4f} (rel err {err:.1e} < 2e-2)")


def hilbert_sweep(gammas=(2.0, 1.0, 0.5, 0.1), f=5.0):
    # 500 samples over 17 whole periods of the carrier
    grid = TimeGrid(0.0, 17.0 / f / 500, 500)
    return [hilbert_approx_error(g, 2 * np.pi * f, grid) for g in gammas]


def c5_hilbert():
    errs = hilbert_sweep()
    ok = errs[1] < 0.05 and all(a > b for a, b in zip(errs, errs[1:]))
    return ok, "errors at gamma 2, 1, 0.5, 0.1: " + ", ".join(f"{e:.4f}" for e in errs)


def c6_fm_standing():
    field, res = _run("fm-cubic")
    lead = res.modes[0]
    frac = modal_energy_fractions(res)[0]
    ovl = overlap(field.space, lead.spatial_mode, (0.01 * field.space.positions) ** 3)
    ok = lead.travelling_index < 1e-8 and frac > 1 - 1e-6 and ovl > 0.999
    return ok, f"index {lead.travelling_index:.1e}, fraction 1-{1 - frac:.1e}, overlap {ovl:.8f}"


def c7_sidebands():
    field, res = _run("fm-cubic")
    spec = coefficient_spectrum(res.modes[0], field.time)
    lines = [ln for ln in jacobi_anger_lines(1.0, 0.2, 1.0) if ln.weight > 1e-3]
    jn = np.abs(bessel_j_orders(50, 1.0))
    maxima = spec.local_maxima()
    ok = True
    parts = []
    ref = spec.power[nearest_bin(spec, 1.0)]
    for ln in lines:
        k = nearest_bin(spec, ln.frequency)
        found = np.any(np.abs(maxima - k) <= 1)
        ratio = spec.power[k] / ref
        want = jn[abs(ln.order)] / jn[0]
        rel = abs(ratio - want) / want
        ok &= bool(found) and rel < 0.10
        parts.append(f"n={ln.order:+d}: {ratio:.4f}/{want:.4f}")
    return ok, "; ".join(parts) + " (ratio tol 10%)"


def c8_chebyshev():
    _, amps, err, idx, ovl = _sloshing_checks("chebyshev")
    ok = max(err) < 0.01 and max(idx) < 5e-3 and min(ovl) > 0.999
    return ok, (f"A = {amps[0]:.4f}, {amps[1]:.4f}; indices {idx[0]:.1e}, {idx[1]:.1e}; "
                f"overlaps {ovl[0]:.6f}, {ovl[1]:.6f}")


def random_field(rng, nt: int, nx: int, monotone: bool) -> AnalyticField:
    if monotone:
        x = np.cumsum(rng.uniform(0.05, 2.0, nx))
        space = SpatialGrid.from_positions(x - x[0])
    else:
        space = uniform_grid(0.0, float(nx - 1), nx)
    values = rng.standard_normal((nt, nx)) * rng.uniform(0.1, 10.0)
    return analytic_field(SignalField(TimeGrid(0.0, rng.uniform(0.01, 1.0), nt), space, values))


def structural_residuals(field: AnalyticField, rng) -> dict[str, float]:
    res = cod(field)
    w = field.space.weights
    phi = res.spatial_modes
    gram = phi.conj().T @ (w[:, None] * phi)
    rec = reconstruct(res, len(res.modes)).values
    ref = np.linalg.norm(field.values)
    inv = 0.0
    for m in res.modes:
        base = m.travelling_index
        theta = rng.uniform(0, 2 * np.pi)
        scale = rng.uniform(0.01, 100.0)
        inv = max(inv,
                  abs(travelling_index(m.spatial_mode * np.exp(1j * theta), field.space) - base),
                  abs(travelling_index(m.spatial_mode * scale, field.space) - base))
    return {
        "orthonormality": float(np.max(np.abs(gram - np.eye(gram.shape[0])))),
        "hermitian": res.hermitian_residual,
        "min_eigenvalue": float(np.min(res.eigenvalues)),
        "reconstruction": float(np.linalg.norm(rec - field.values) / ref) if ref else 0.0,
        "parseval": max(psd_energy_check(m, field.time) for m in res.modes),
        "index_range": float(max(max(-m.travelling_index, m.travelling_index - 1)
                                 for m in res.modes)),
        "index_invariance": inv,
    }


STRUCTURAL_LIMITS = {
    "orthonormality": 1e-10,
    "hermitian": 1e-12,
    "reconstruction": 1e-8,
    "parseval": 1e-10,
    "index_invariance": 1e-10,
}


def c9_structural(n_fields: int = 120, seed: int = 2024):
    rng = np.random.default_rng(seed)
    worst = {k: 0.0 for k in STRUCTURAL_LIMITS}
    min_eig, out_of_range = np.inf, 0.0
    for i in range(n_fields):
        f = random_field(rng, int(rng.integers(4, 65)), int(rng.integers(2, 17)),
                         monotone=bool(i % 2))
        r = structural_residuals(f, rng)
        for k in worst:
            worst[k] = max(worst[k], r[k])
        min_eig = min(min_eig, r["min_eigenvalue"])
        out_of_range = max(out_of_range, r["index_range"])
    ok = all(worst[k] < lim for k, lim in STRUCTURAL_LIMITS.items())
    ok &= min_eig >= 0 and out_of_range <= 0
    detail = ", ".join(f"{k} {worst[k]:.1e}" for k in worst)
    return ok, f"{n_fields} fields; {detail}; min eigenvalue {min_eig:.1e}"


def dense_covariance(field: AnalyticField) -> np.ndarray:
    """Entry-by-entry covariance, written independently of the engine."""
    nt, nx = field.values.shape
    w = field.space.weights
    C = np.zeros((nx, nx), dtype=complex)
    for j in range(nx):
        for k in range(nx):
            acc = 0j
            for n in range(nt):
                acc += field.values[n, j] * np.conj(field.values[n, k])
            C[j, k] = np.sqrt(w[j] * w[k]) * acc / nt
    return C


def oracle_comparison(field: AnalyticField) -> tuple[float, float]:
    """Worst relative eigenvalue error and worst principal angle against the oracle."""
    res = cod(field)
    lam_ref, vec_ref = hermitian_eig_reference(dense_covariance(field))
    lam = np.sort(res.eigenvalues)[::-1]
    lam_err = float(np.max(np.abs(lam - lam_ref) / np.abs(lam_ref)))
    psi = np.sqrt(field.space.weights)[:, None] * res.spatial_modes
    # pair modes with the oracle by eigenvalue, grouping near-degenerate clusters
    order = np.argsort(res.eigenvalues)[::-1]
    psi = psi[:, order]
    worst = 0.0
    start = 0
    n = lam_ref.size
    while start < n:
        stop = start + 1
        while stop < n and abs(lam_ref[stop - 1] - lam_ref[stop]) <= 1e-6 * abs(lam_ref[0]):
            stop += 1
        ang = principal_angles(psi[:, start:stop], vec_ref[:, start:stop])
        worst = max(worst, float(np.max(ang)))
        start = stop
    return lam_err, worst


def c10_oracle(n_fields: int = 100, seed: int = 7):
    rng = np.random.default_rng(seed)
    lam_worst = ang_worst = 0.0
    for i in range(n_fields):
        nx = int(rng.integers(2, 5))
        nt = int(rng.integers(nx + 4, 17))
        f = random_field(rng, nt, nx, monotone=bool(i % 2))
        le, ang = oracle_comparison(f)
        lam_worst, ang_worst = max(lam_worst, le), max(ang_worst, ang)
    ok = lam_worst < 1e-8 and ang_worst < 1e-6
    return ok, (f"{n_fields} fields; eigenvalue rel err {lam_worst:.1e} < 1e-8; "
                f"max principal angle {ang_worst:.1e} < 1e-6")


def _cli(argv) -> tuple[int, str]:
    from .cli import main

    err = io.StringIO()
    with contextlib.redirect_stderr(err), contextlib.redirect_stdout(io.StringIO()):
        code = main(argv)
    return code, err.getvalue()


def c11_cli():
    from .io import read_signal_csv, summarize, write_field_csv

    parts = []
    ok = True
    with tempfile.TemporaryDirectory() as tmp:
        tmp = Path(tmp)
        code, _ = _cli(["generate", "sloshing", "-o", str(tmp / "gen")])
        dt = json.loads((tmp / "gen" / "meta.json").read_text())["dt"]
        code2, _ = _cli(["decompose", "--grid", str(tmp / "gen" / "grid.csv"),
                         "--signal", str(tmp / "gen" / "signal.csv"), "--dt", repr(dt),
                         "-o", str(tmp / "out")])
        summary = json.loads((tmp / "out" / "summary.json").read_text())
        amps = [m["amplitude"] for m in summary["modes"][:2]]
        good = code == 0 and code2 == 0 and abs(amps[0] - 15) < 0.075 and abs(amps[1] - 4) < 0.02
        ok &= good
        parts.append(f"generate+decompose exit {code}/{code2}, A = {amps[0]:.4f}, {amps[1]:.4f}")

        field = preset_field("sloshing")
        g, s = write_field_csv(field, tmp / "rt")
        back = read_signal_csv(g, s, dt=field.time.dt)
        cfg = {"dt": field.time.dt, "weighted": "auto"}
        a = json.dumps(summarize(cod(analytic_field(field)), config=cfg), indent=2)
        b = json.dumps(summarize(cod(analytic_field(back)), config=cfg), indent=2)
        same = a == b and np.array_equal(field.values, back.values)
        ok &= same
        parts.append("round-trip " + ("identical" if same else "DIFFERS"))

        (tmp / "bad").mkdir()
        (tmp / "bad" / "grid.csv").write_text("0\n1\n1\n")
        (tmp / "bad" / "sig.csv").write_text("1,2\n3,4\n5,6\n7,8\n")
        (tmp / "bad" / "grid2.csv").write_text("0\n1\n")
        (tmp / "bad" / "ragged.csv").write_text("1,2\n3,4\n5,6,7\n7,8\n")
        (tmp / "bad" / "grid3.csv").write_text("0\n1\n2\n")
        cases = [
            (["--grid", str(tmp / "bad" / "grid.csv"), "--signal", str(tmp / "bad" / "sig.csv")],
             "grid.csv:3"),
            (["--grid", str(tmp / "bad" / "grid2.csv"), "--signal", str(tmp / "bad" / "ragged.csv")],
             "ragged.csv:3"),
            (["--grid", str(tmp / "bad" / "grid3.csv"), "--signal", str(tmp / "bad" / "sig.csv")],
             "sig.csv:1"),
        ]
        for args, needle in cases:
            code, err = _cli(["decompose", *args, "--dt", "0.1", "-o", str(tmp / "x")])
            good = code == 1 and needle in err
            ok &= good
            parts.append(f"{needle} -> exit {code}")
        code, err = _cli(["decompose", "--bogus"])
        ok &= code == 1
        parts.append(f"unknown flag -> exit {code}")
    return bool(ok), "; ".join(parts)


CRITERIA = [
    Criterion(1, "example-1 amplitude recovery", c1_amplitudes),
    Criterion(2, "example-1 travelling index", c2_travelling_index),
    Criterion(3, "example-1 spatial modes", c3_spatial_modes),
    Criterion(4, "example-2 single-mode concentration", c4_damped),
    Criterion(5, "slow-damping Hilbert approximation", c5_hilbert),
    Criterion(6, "example-3 standing character", c6_fm_standing),
    Criterion(7, "example-3 sidebands", c7_sidebands),
    Criterion(8, "non-uniform grid equivalence", c8_chebyshev),
    Criterion(9, "structural invariants", c9_structural),
    Criterion(10, "small-instance oracle equivalence", c10_oracle),
    Criterion(11, "CLI contract", c11_cli),
]


def evaluate(criterion: Criterion) -> tuple[bool, str, float]:
    start = time.perf_counter()
    try:
        ok, detail = criterion.check()
    except Exception as exc:  # a crash is a failure, reported like one
        ok, detail = False, f"{type(exc).__name__}: {exc}"
    return bool(ok), detail, time.perf_counter() - start


def format_line(criterion: Criterion, ok: bool, detail: str, seconds: float) -> str:
    tag = "PASS" if ok else "FAIL"
    return f"{tag} [{criterion.number:2d}] {criterion.title} ({seconds:.1f}s): {detail}"


def run(stream=None) -> bool:
    stream = stream or sys.stdout
    all_ok = True
    for c in CRITERIA:
        ok, detail, secs = evaluate(c)
        all_ok &= ok
        print(format_line(c, ok, detail, secs), file=stream, flush=True)
    print("ALL PASS" if all_ok else "SOME CRITERIA FAILED", file=stream)
    return all_ok
