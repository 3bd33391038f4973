"""Command line: ``pycod generate | decompose | spectrum | selftest``.

Exit status is 0 on success, 1 on invalid input or usage, 2 on numerical
failure.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .analytic import analytic_field
from .core import InvalidArgumentError, NumericError, SignalField, SpatialGrid, TimeGrid
from .decompose import cod
from .generators import PRESETS, preset_field
from .io import (FLOAT_FMT, read_grid_csv, read_matrix_csv, read_signal_csv, write_field_csv,
                 write_result)
from .spectrum import point_spectrum

EXIT_OK, EXIT_INVALID, EXIT_NUMERIC = 0, 1, 2

# generator overrides accepted by each preset
PRESET_OPTIONS = {
    "sloshing": {"nt", "nx", "dt", "alpha1"},
    "sloshing-chebyshev": {"nt", "nx", "dt", "alpha1"},
    "damped": {"nt", "nx", "dt", "gamma"},
    "fm-cubic": {"nt", "nx", "dt", "epsilon"},
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.format_usage()}{self.prog}: error: {message}")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="pycod", description="Complex orthogonal decomposition of spatio-temporal signals.")
    p.add_argument("--version", action="version", version=f"pycod {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    g = sub.add_parser("generate", help="write a synthetic example field as grid.csv + signal.csv")
    g.add_argument("preset", choices=sorted(PRESETS))
    g.add_argument("-o", "--output", required=True, type=Path)
    g.add_argument("--nt", type=int)
    g.add_argument("--nx", type=int)
    g.add_argument("--dt", type=float)
    g.add_argument("--alpha1", type=float, help="travelling mix of the first sloshing mode")
    g.add_argument("--gamma", type=float, help="damping rate (1/s)")
    g.add_argument("--epsilon", type=float, help="modulation depth")
    g.add_argument("--noise-sigma", type=float, default=0.0)
    g.add_argument("--seed", type=int, default=0)

    d = sub.add_parser("decompose", help="decompose a field given as two CSV files")
    d.add_argument("--grid", required=True, type=Path)
    d.add_argument("--signal", required=True, type=Path)
    d.add_argument("--dt", required=True, type=float)
    d.add_argument("-k", "--rank", type=int)
    d.add_argument("--weighted", choices=("auto", "on", "off"), default="auto")
    d.add_argument("-o", "--output", required=True, type=Path)

    s = sub.add_parser("spectrum", help="one-sided amplitude spectrum of one column")
    s.add_argument("--signal", required=True, type=Path)
    s.add_argument("--dt", required=True, type=float)
    s.add_argument("--column", required=True, type=int)
    s.add_argument("--grid", type=Path)
    s.add_argument("--window", action="store_true", help="apply a Hann window")
    s.add_argument("-o", "--output", required=True, type=Path)

    sub.add_parser("selftest", help="run the acceptance criteria")
    return p


def _generate(args) -> int:
    allowed = PRESET_OPTIONS[args.preset]
    overrides = {}
    for name in ("nt", "nx", "dt", "alpha1", "gamma", "epsilon"):
        value = getattr(args, name)
        if value is None:
            continue
        if name not in allowed:
            raise InvalidArgumentError(f"--{name} does not apply to preset {args.preset!r}")
        overrides[name] = value
    field = preset_field(args.preset, sigma=args.noise_sigma, seed=args.seed, **overrides)
    grid_path, signal_path = write_field_csv(field, args.output)
    meta = {"preset": args.preset, "dt": field.time.dt, "t0": field.time.t0,
            "n_time": field.time.count, "n_space": field.space.size,
            "overrides": overrides, "noise_sigma": args.noise_sigma, "seed": args.seed}
    (args.output / "meta.json").write_text(json.dumps(meta, indent=2) + "\n", encoding="utf-8")
    print(f"wrote {grid_path} and {signal_path} (dt = {field.time.dt!r})")
    return EXIT_OK


def _decompose(args) -> int:
    field = read_signal_csv(args.grid, args.signal, dt=args.dt, weighted=args.weighted)
    result = cod(analytic_field(field))
    config = {"dt": args.dt, "rank": args.rank, "weighted": args.weighted}
    paths = write_result(result, args.output, rank=args.rank, config=config)
    summary = json.loads(paths["summary"].read_text(encoding="utf-8"))
    for m in summary["modes"][:5]:
        print(f"mode {m['index']}: fraction {m['energy_fraction']:.6g}  "
              f"amplitude {m['amplitude']:.6g}  index {m['travelling_index']:.3g}  "
              f"f {m['dominant_frequency']:.4g} Hz")
    print(f"results in {args.output}")
    return EXIT_OK


def _spectrum(args) -> int:
    if args.grid is not None:
        positions, _ = read_grid_csv(args.grid)
        values = read_matrix_csv(args.signal, ncols=positions.size)
    else:
        values = read_matrix_csv(args.signal)
        positions = np.arange(values.shape[1], dtype=float)
    if values.shape[1] < 2:
        space = SpatialGrid(np.arange(values.shape[1], dtype=float), np.ones(values.shape[1]))
    else:
        space = SpatialGrid.from_positions(positions)
    field = SignalField(TimeGrid(0.0, args.dt, values.shape[0]), space, values)
    spec = point_spectrum(field, args.column, window=args.window)
    args.output.mkdir(parents=True, exist_ok=True)
    out = args.output / "spectrum.csv"
    np.savetxt(out, np.column_stack([spec.frequencies, spec.power]), fmt=FLOAT_FMT,
               delimiter=",", header="frequency,amplitude", comments="")
    f, a = spec.peak()
    print(f"peak {a:.6g} at {f:.6g} Hz; wrote {out}")
    return EXIT_OK


def _selftest(args) -> int:
    from .acceptance import run

    return EXIT_OK if run() else EXIT_NUMERIC


COMMANDS = {"generate": _generate, "decompose": _decompose, "spectrum": _spectrum,
            "selftest": _selftest}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_INVALID
    except SystemExit as exc:  # --help / --version
        return int(exc.code or 0)
    try:
        return COMMANDS[args.command](args)
    except InvalidArgumentError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except NumericError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
