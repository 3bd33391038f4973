"""Domain types, grids, quadrature weights and field validation.

Coordinates are in millimetres and time in seconds. Units are labels only;
no conversion is ever performed.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

MIN_TIME_SAMPLES = 4
MIN_SPACE_SAMPLES = 2


class CodError(Exception):
    """Base class for all errors raised by this package."""


class InvalidArgumentError(CodError, ValueError):
    pass


class NumericError(CodError, ArithmeticError):
    """An eigensolve or other numerical step failed.

    ``residual`` carries the residual norm when one is available.
    """

    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


def _frozen(values, dtype) -> np.ndarray:
    arr = np.array(values, dtype=dtype, copy=True)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class TimeGrid:
    """Uniform time sampling ``t_n = t0 + n * dt`` for ``n = 0 .. count-1``."""

    t0: float
    dt: float
    count: int

    @property
    def times(self) -> np.ndarray:
        return self.t0 + self.dt * np.arange(self.count)

    @property
    def duration(self) -> float:
        """Record length ``count * dt`` (the DFT period)."""
        return self.count * self.dt

    def problems(self) -> list[str]:
        out = []
        if not np.isfinite(self.dt) or self.dt <= 0:
            out.append(f"time grid: dt > 0 violated (dt={self.dt!r})")
        if not np.isfinite(self.t0):
            out.append("time grid: t0 must be finite")
        if self.count < MIN_TIME_SAMPLES:
            out.append(f"time grid: count >= {MIN_TIME_SAMPLES} violated (count={self.count})")
        return out


@dataclass(frozen=True, eq=False)
class SpatialGrid:
    """Strictly increasing positions with positive quadrature weights."""

    positions: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "positions", _frozen(self.positions, float))
        object.__setattr__(self, "weights", _frozen(self.weights, float))

    @classmethod
    def from_positions(cls, positions) -> "SpatialGrid":
        return cls(positions, trapezoidal_weights(positions))

    @classmethod
    def unit_weights(cls, positions) -> "SpatialGrid":
        """Grid with every weight equal to one (the plain, unweighted inner product)."""
        positions = np.asarray(positions, dtype=float)
        return cls(positions, np.ones_like(positions))

    @property
    def size(self) -> int:
        return self.positions.shape[0]

    def inner(self, u, v) -> complex:
        """Weighted inner product ``u^H W v``."""
        return complex(np.sum(self.weights * np.conj(u) * v))

    def norm(self, u) -> float:
        return float(np.sqrt(np.sum(self.weights * np.abs(u) ** 2)))

    def problems(self) -> list[str]:
        x, w = self.positions, self.weights
        out = []
        if x.ndim != 1 or w.ndim != 1:
            return ["space grid: positions and weights must be one-dimensional"]
        if x.shape != w.shape:
            out.append(f"space grid: {x.size} positions but {w.size} weights")
            return out
        if x.size < MIN_SPACE_SAMPLES:
            out.append(f"space grid: Nx >= {MIN_SPACE_SAMPLES} violated (Nx={x.size})")
        if not np.all(np.isfinite(x)):
            out.append("space grid: non-finite position")
        elif x.size >= 2:
            bad = np.flatnonzero(np.diff(x) <= 0)
            if bad.size:
                j = int(bad[0]) + 1
                out.append(f"space grid: positions not strictly increasing at index {j}")
        bad_w = np.flatnonzero(~(np.isfinite(w) & (w > 0)))
        if bad_w.size:
            out.append(f"space grid: weights must be finite and > 0 (index {int(bad_w[0])})")
        return out

    def __eq__(self, other):
        if not isinstance(other, SpatialGrid):
            return NotImplemented
        return (np.array_equal(self.positions, other.positions)
                and np.array_equal(self.weights, other.weights))

    __hash__ = None


@dataclass(frozen=True, eq=False)
class SignalField:
    """Real samples, one row per time step and one column per position."""

    time: TimeGrid
    space: SpatialGrid
    values: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "values", _frozen(self.values, float))

    @property
    def shape(self) -> tuple[int, int]:
        return self.values.shape


@dataclass(frozen=True, eq=False)
class AnalyticField:
    """Complex analytic counterpart of a :class:`SignalField`."""

    time: TimeGrid
    space: SpatialGrid
    values: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "values", _frozen(self.values, complex))

    @property
    def shape(self) -> tuple[int, int]:
        return self.values.shape

    @property
    def Z(self) -> np.ndarray:
        """Space-by-time matrix (the transpose of ``values``)."""
        return self.values.T

    @property
    def real(self) -> SignalField:
        return SignalField(self.time, self.space, self.values.real)


@dataclass
class ValidationReport:
    problems: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.problems

    def __bool__(self):
        return self.ok

    def __str__(self):
        return "ok" if self.ok else "; ".join(self.problems)

    def raise_if_invalid(self, what="field"):
        if not self.ok:
            raise InvalidArgumentError(f"invalid {what}: {self}")


def trapezoidal_weights(positions) -> np.ndarray:
    """Quadrature weights of the trapezoidal rule on an arbitrary increasing grid.

    End points receive half of their only neighbouring interval, interior
    points half of the span between their two neighbours, so the weights sum
    to ``x[-1] - x[0]``.
    """
    x = np.asarray(positions, dtype=float)
    if x.ndim != 1 or x.size < MIN_SPACE_SAMPLES:
        raise InvalidArgumentError("trapezoidal_weights needs at least two positions")
    if not np.all(np.isfinite(x)):
        raise InvalidArgumentError("trapezoidal_weights: non-finite position")
    steps = np.diff(x)
    if np.any(steps <= 0):
        j = int(np.flatnonzero(steps <= 0)[0]) + 1
        raise InvalidArgumentError(
            f"positions must be strictly increasing (violated at index {j})")
    w = np.empty_like(x)
    w[0] = steps[0] / 2
    w[-1] = steps[-1] / 2
    w[1:-1] = (x[2:] - x[:-2]) / 2
    return w


def uniform_grid(x_start: float, x_end: float, count: int) -> SpatialGrid:
    if not (np.isfinite(x_start) and np.isfinite(x_end)) or x_end <= x_start:
        raise InvalidArgumentError(f"need x_end > x_start, got [{x_start}, {x_end}]")
    if int(count) != count or count < MIN_SPACE_SAMPLES:
        raise InvalidArgumentError(f"count must be an integer >= 2, got {count!r}")
    return SpatialGrid.from_positions(np.linspace(x_start, x_end, int(count)))


def validate_field(field: SignalField | AnalyticField) -> ValidationReport:
    """Collect every invariant violation of ``field`` without raising."""
    report = ValidationReport()
    report.problems += field.time.problems()
    report.problems += field.space.problems()
    values = np.asarray(field.values)
    if values.ndim != 2:
        report.problems.append(f"values must be a matrix, got {values.ndim} dimension(s)")
        return report
    nt, nx = values.shape
    if nt != field.time.count:
        report.problems.append(f"values have {nt} rows but time grid has {field.time.count}")
    if nx != field.space.size:
        report.problems.append(f"values have {nx} columns but space grid has {field.space.size}")
    bad = np.argwhere(~np.isfinite(values))
    if bad.size:
        r, c = (int(i) for i in bad[0])
        more = f" (+{len(bad) - 1} more)" if len(bad) > 1 else ""
        report.problems.append(f"non-finite entry at row {r}, column {c}{more}")
    return report
