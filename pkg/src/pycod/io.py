"""CSV ingestion and result serialisation.

Input is two header-less, comma-separated UTF-8 files: a grid file with one
position per line (optionally followed by a weight) and a signal file with
one row per time step and one column per position. The sampling interval is
supplied separately.
"""
from __future__ import annotations

import csv
import json
import math
from importlib import resources
from pathlib import Path

import numpy as np

from . import __version__
from .core import (InvalidArgumentError, SignalField, SpatialGrid, TimeGrid,
                   trapezoidal_weights, validate_field)
from .decompose import CodResult, modal_energy_fractions
from .spectrum import coefficient_spectrum

FLOAT_FMT = "%.17g"
WEIGHTING = ("auto", "on", "off")


class ParseError(InvalidArgumentError):
    def __init__(self, path, line, message, column=None):
        where = f"{path}:{line}" + (f":{column}" if column is not None else "")
        super().__init__(f"{where}: {message}")
        self.path = str(path)
        self.line = line
        self.column = column


def _rows(path):
    """Yield ``(line_number, cells)`` for every non-blank line."""
    try:
        with open(path, newline="", encoding="utf-8") as fh:
            for lineno, row in enumerate(csv.reader(fh), start=1):
                if not row or all(not c.strip() for c in row):
                    continue
                yield lineno, row
    except UnicodeDecodeError as exc:
        raise ParseError(path, "?", f"not valid UTF-8 ({exc.reason})") from None


def _number(path, lineno, col, cell) -> float:
    try:
        value = float(cell)
    except ValueError:
        raise ParseError(path, lineno, f"non-numeric cell {cell.strip()!r}", col) from None
    if not math.isfinite(value):
        raise ParseError(path, lineno, f"non-finite cell {cell.strip()!r}", col)
    return value


def read_grid_csv(path) -> tuple[np.ndarray, np.ndarray | None]:
    positions, weights, lines = [], [], []
    width = None
    for lineno, row in _rows(path):
        if len(row) not in (1, 2):
            raise ParseError(path, lineno, f"expected 1 or 2 columns, got {len(row)}")
        if width is None:
            width = len(row)
        elif len(row) != width:
            raise ParseError(path, lineno, f"ragged row: {len(row)} columns, expected {width}")
        positions.append(_number(path, lineno, 1, row[0]))
        if width == 2:
            w = _number(path, lineno, 2, row[1])
            if w <= 0:
                raise ParseError(path, lineno, f"weight must be > 0, got {w!r}", 2)
            weights.append(w)
        if len(positions) > 1 and positions[-1] <= positions[-2]:
            raise ParseError(path, lineno, "grid positions must be strictly increasing", 1)
        lines.append(lineno)
    if len(positions) < 2:
        raise ParseError(path, lines[-1] if lines else 1, "grid needs at least 2 positions")
    return np.array(positions), (np.array(weights) if width == 2 else None)


def read_matrix_csv(path, ncols: int | None = None) -> np.ndarray:
    rows = []
    for lineno, row in _rows(path):
        if ncols is None:
            ncols = len(row)
        if len(row) != ncols:
            raise ParseError(path, lineno, f"ragged row: {len(row)} cells, expected {ncols}")
        rows.append([_number(path, lineno, c, cell) for c, cell in enumerate(row, start=1)])
    if not rows:
        raise ParseError(path, 1, "signal file is empty")
    return np.array(rows, dtype=float)


def read_signal_csv(grid_path, signal_path, dt: float, t0: float = 0.0,
                    weighted: str = "auto") -> SignalField:
    """Load a field from the two-file CSV layout.

    ``weighted`` selects the quadrature weights: ``auto`` uses the grid
    file's weight column when present and trapezoidal weights otherwise,
    ``on`` always recomputes trapezoidal weights, ``off`` uses unit weights.
    """
    if weighted not in WEIGHTING:
        raise InvalidArgumentError(f"weighted must be one of {WEIGHTING}, got {weighted!r}")
    if not (math.isfinite(dt) and dt > 0):
        raise InvalidArgumentError(f"dt must be > 0, got {dt!r}")
    positions, file_weights = read_grid_csv(grid_path)
    values = read_matrix_csv(signal_path, ncols=positions.size)
    if weighted == "off":
        space = SpatialGrid.unit_weights(positions)
    elif weighted == "auto" and file_weights is not None:
        space = SpatialGrid(positions, file_weights)
    else:
        space = SpatialGrid(positions, trapezoidal_weights(positions))
    field = SignalField(TimeGrid(float(t0), float(dt), values.shape[0]), space, values)
    report = validate_field(field)
    if not report.ok:
        raise InvalidArgumentError(f"{signal_path} with {grid_path}: {report}")
    return field


def write_field_csv(field: SignalField, directory, grid_name="grid.csv",
                    signal_name="signal.csv") -> tuple[Path, Path]:
    out = Path(directory)
    out.mkdir(parents=True, exist_ok=True)
    grid_path, signal_path = out / grid_name, out / signal_name
    np.savetxt(grid_path, np.column_stack([field.space.positions, field.space.weights]),
               fmt=FLOAT_FMT, delimiter=",")
    np.savetxt(signal_path, field.values, fmt=FLOAT_FMT, delimiter=",")
    return grid_path, signal_path


def _rounded(x: float) -> float:
    # 17 significant digits, the same precision the CSV files carry
    return float(FLOAT_FMT % x)


def summarize(result: CodResult, rank: int | None = None, config: dict | None = None) -> dict:
    n = len(result.modes)
    if rank is None:
        rank = max(1, sum(not m.negligible for m in result.modes)) if n else 0
    if not 0 <= rank <= n:
        raise InvalidArgumentError(f"rank must lie in [0, {n}], got {rank}")
    degenerate = result.degenerate
    fractions = np.zeros(n) if degenerate else modal_energy_fractions(result)
    modes = []
    for j, mode in enumerate(result.modes[:rank]):
        spec = coefficient_spectrum(mode, result.time)
        freq = spec.peak()[0] if mode.energy > 0 else 0.0
        modes.append({
            "index": j + 1,
            "energy": _rounded(mode.energy),
            "energy_fraction": _rounded(fractions[j]),
            "travelling_index": _rounded(mode.travelling_index),
            "amplitude": _rounded(mode.amplitude),
            "dominant_frequency": _rounded(freq),
            "negligible": bool(mode.negligible),
        })
    return {
        "library": "pycod",
        "version": __version__,
        "n_time": result.time.count,
        "n_space": result.space.size,
        "dt": _rounded(result.time.dt),
        "total_energy": _rounded(result.total_energy),
        "degenerate": bool(degenerate),
        "n_modes_total": n,
        "n_modes_written": rank,
        "max_hermitian_residual": _rounded(result.hermitian_residual),
        "config": dict(config or {}),
        "modes": modes,
    }


def load_summary_schema() -> dict:
    text = resources.files("pycod").joinpath("schemas/summary.schema.json").read_text("utf-8")
    return json.loads(text)


def write_result(result: CodResult, directory, rank: int | None = None,
                 config: dict | None = None) -> dict[str, Path]:
    """Write ``summary.json``, ``modes.csv``, ``coeffs.csv`` and ``spectra.csv``.

    ``rank`` limits the modes written; by default every non-negligible mode
    is kept. Returns the written paths keyed by file stem.
    """
    out = Path(directory)
    try:
        out.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise OSError(f"cannot create output directory {out}: {exc.strerror}") from exc
    summary = summarize(result, rank, config)
    k = summary["n_modes_written"]
    kept = result.modes[:k]
    paths = {name: out / f"{name}.{ext}" for name, ext in
             (("summary", "json"), ("modes", "csv"), ("coeffs", "csv"), ("spectra", "csv"))}

    with open(paths["summary"], "w", encoding="utf-8") as fh:
        json.dump(summary, fh, indent=2, allow_nan=False)
        fh.write("\n")

    pair_names = [f"{p}_{j}" for j in range(1, k + 1) for p in ("re", "im")]

    cols = [result.space.positions, result.space.weights]
    for m in kept:
        cols += [m.spatial_mode.real, m.spatial_mode.imag]
    np.savetxt(paths["modes"], np.column_stack(cols), fmt=FLOAT_FMT, delimiter=",",
               header=",".join(["x", "w"] + pair_names), comments="")

    cols = [result.time.times]
    for m in kept:
        cols += [m.temporal_coeffs.real, m.temporal_coeffs.imag]
    np.savetxt(paths["coeffs"], np.column_stack(cols), fmt=FLOAT_FMT, delimiter=",",
               header=",".join(["t"] + pair_names), comments="")

    specs = [coefficient_spectrum(m, result.time) for m in kept]
    freqs = specs[0].frequencies if specs else np.fft.rfftfreq(result.time.count, result.time.dt)
    np.savetxt(paths["spectra"], np.column_stack([freqs] + [s.power for s in specs]),
               fmt=FLOAT_FMT, delimiter=",",
               header=",".join(["frequency"] + [f"mode_{j}" for j in range(1, k + 1)]),
               comments="")
    return paths
