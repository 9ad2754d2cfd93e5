"""Mean and mean square of the count remainder over one shear period.

As x sweeps [0, 1) at fixed (y, T) the count is piecewise constant: row m
gains or loses a point exactly when one of its interval endpoints
-+hw_m - m*x crosses an integer.  Enumerating those crossings gives the
exact jump set (:func:`breakpoints`), and integrating the piecewise constant
remainder over the segments gives the period mean and mean square up to
floating accumulation (:func:`mean_square_breakpoints`).  A midpoint-grid
fallback (:func:`mean_square_grid`) covers regimes where the jump set would
not fit in memory, and :func:`mean_square_parseval` assembles the mean
square from the cosine spectrum instead of a sweep.

Counting convention for the integrals: point counts are strict (boundary
vectors excluded), but when sqrt(y)*T is an integer the two vectors
(0, +-T) lie on the circle for *every* x, and the closed-form decomposition
counts that column by its limiting value.  The integrators follow the
decomposition (adding 2 when that axis tie occurs, flagged on the sweep as
``axis_tie``) so that the oscillatory part integrates to zero and the closed
form of the mean holds identically; pointwise reconstruction via
:meth:`BreakpointSweep.count_at` stays strict.
"""
from __future__ import annotations

import math
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .errors import InvalidParameter, RangeExceeded, ShearCountError
from .formula import chord_length_sum
from .fourier import auto_truncation, parseval_mean_square
from .lattice import (
    DEFAULT_TIE_EPS,
    ShearPoint,
    count_rowslice,
    halfwidths,
    row_limit,
    scaled_radius,
)
from .numerics import compensated_sum, frac_snapped, snap_integer

__all__ = [
    "MAX_SWEEP_EVENTS",
    "BreakpointSweep",
    "MeanSquareReport",
    "LowerBoundWitness",
    "SweepConfig",
    "breakpoints",
    "mean_square_breakpoints",
    "mean_square_grid",
    "mean_square_parseval",
    "mean_remainder_closed",
    "mean_square_upper_bound",
    "lower_bound_witness",
    "sweep",
    "write_sweep_csv",
    "read_sweep_csv",
    "SWEEP_HEADER",
]

#: Refuse breakpoint sweeps whose projected event count exceeds this.
MAX_SWEEP_EVENTS = 10**8

_MERGE_DECIMALS = 13  # jump locations are merged after rounding to 1e-13


@dataclass(frozen=True)
class BreakpointSweep:
    """Sorted jump events of the count as a function of the shear x in [0, 1).

    ``xs``/``deltas`` give the merged event positions and signed jump sizes
    (coincident crossings are summed; mirror rows make every single crossing
    a +-2).  ``base_count`` is the strict count just above x = 0 and
    ``axis_tie`` flags the x-independent boundary column described in the
    module docstring.  The deltas of one period always sum to zero.
    """

    y: float
    T: float
    xs: np.ndarray
    deltas: np.ndarray
    base_count: int
    axis_tie: bool

    @property
    def points(self) -> list[tuple[float, int]]:
        return [(float(x), int(d)) for x, d in zip(self.xs, self.deltas)]

    def segment_counts(self) -> tuple[np.ndarray, np.ndarray]:
        """(lengths, strict counts) of the constant segments partitioning [0, 1]."""
        edges = np.concatenate([[0.0], self.xs, [1.0]])
        lengths = np.diff(edges)
        counts = self.base_count + np.concatenate([[0], np.cumsum(self.deltas)])
        return lengths, counts

    def count_at(self, x: float) -> int:
        """Strict count at a non-jump shear coordinate (x taken mod 1)."""
        xf = x - math.floor(x)
        idx = int(np.searchsorted(self.xs, xf, side="right"))
        return int(self.base_count + (int(np.sum(self.deltas[:idx])) if idx else 0))


@dataclass(frozen=True)
class MeanSquareReport:
    """One (y, T) row of the mean-square analysis.

    ``upper_bound_value`` is (T/sqrt(y)) * max(1, log(T/sqrt(y)))**2
    + y**1.5 * T and ``ratio`` divides the mean square by it.  Rows produced
    inside a sweep carry a nonempty ``error`` instead of numbers when the
    integrator refused the parameters.
    """

    y: float
    T: float
    mean_remainder: float
    mean_square: float
    method: str
    error_bound: float
    upper_bound_value: float
    ratio: float
    breakpoint_count: int
    elapsed_ms: float = 0.0
    error: str = ""


@dataclass(frozen=True)
class LowerBoundWitness:
    """Exact quantities at the integer scaled radii T = k*sqrt(y)."""

    T: float
    mean_remainder: float
    mean_square: float
    deficit: float
    floor_value: float


def mean_square_upper_bound(y: float, T: float) -> float:
    """(T/sqrt(y)) * max(1, log(T/sqrt(y)))**2 + y**1.5 * T.

    The log factor is clamped at 1 so the expression stays positive and
    monotone for small scaled radii.
    """
    scaled = T / math.sqrt(y)
    log_term = max(1.0, math.log(scaled)) if scaled > 0 else 1.0
    return scaled * log_term * log_term + y**1.5 * T


def breakpoints(y: float, T: float, tie_eps: float = DEFAULT_TIE_EPS) -> BreakpointSweep:
    """Enumerate the jump set of x -> count over one shear period.

    Row m > 0 (always together with its mirror -m) loses a point when
    hw_m - m*x crosses an integer from above, at x = (hw_m - n)/m, and gains
    one when -hw_m - m*x does, at x = (-hw_m - n)/m; only crossings interior
    to (0, 1) are events.  Projected event counts beyond MAX_SWEEP_EVENTS
    raise RangeExceeded (use the grid integrator there).
    """
    if not (y > 0 and math.isfinite(T) and T > 0):
        raise InvalidParameter(f"need y > 0 and T > 0, got y={y}, T={T}")
    if 2.0 * T * T / y > MAX_SWEEP_EVENTS:
        raise RangeExceeded(
            f"projected event count 2*T^2/y = {2 * T * T / y:.3g} exceeds {MAX_SWEEP_EVENTS:.0e}"
        )
    scaled = scaled_radius(y, T)
    M = row_limit(scaled, tie_eps)
    sy = math.sqrt(y)

    xs_parts: list[np.ndarray] = []
    delta_parts: list[np.ndarray] = []
    if M > 0:
        hw = halfwidths(y, T, np.arange(1, M + 1, dtype=float))
        for m in range(1, M + 1):
            g, _ = snap_integer(float(hw[m - 1]), tie_eps)
            # exits: integers strictly inside (g - m, g)
            n = np.arange(math.floor(g - m) + 1, math.ceil(g))
            x = (g - n) / m
            xs_parts.append(x)
            delta_parts.append(np.full(x.size, -2, dtype=np.int64))
            # entries: integers strictly inside (-g - m, -g)
            n = np.arange(math.floor(-g - m) + 1, math.ceil(-g))
            x = (-g - n) / m
            xs_parts.append(x)
            delta_parts.append(np.full(x.size, 2, dtype=np.int64))

    if xs_parts:
        xs = np.round(np.concatenate(xs_parts), _MERGE_DECIMALS)
        deltas = np.concatenate(delta_parts)
        inside = (xs > 0.0) & (xs < 1.0)
        xs, deltas = xs[inside], deltas[inside]
        order = np.argsort(xs, kind="stable")
        xs, deltas = xs[order], deltas[order]
        starts = np.flatnonzero(np.r_[True, np.diff(xs) > 0.0])
        sums = np.add.reduceat(deltas, starts) if xs.size else deltas
        xs = xs[starts]
        keep = sums != 0
        xs, deltas = xs[keep], sums[keep]
    else:
        xs = np.empty(0)
        deltas = np.empty(0, dtype=np.int64)

    # Anchor the running count at a tie-free point of the first segment;
    # cancelled event pairs can leave tie locations that no longer appear in
    # xs, so shrink deterministically until the row counter is unambiguous.
    # An axis tie (integer sqrt(y)*T) flags one tie at every x; only the
    # x-dependent ties must be avoided.
    _, axis_tie = snap_integer(sy * T, tie_eps)
    baseline_ties = 1 if axis_tie else 0
    x_base = float(xs[0]) / 2.0 if xs.size else 0.5
    for _ in range(64):
        anchor = count_rowslice(ShearPoint(x_base, y), T, tie_eps)
        if anchor.ties <= baseline_ties:
            break
        x_base *= 0.6180339887498949
    base = anchor.count
    return BreakpointSweep(y=y, T=T, xs=xs, deltas=deltas, base_count=base, axis_tie=axis_tie)


def _report_from_integral(
    y: float,
    T: float,
    mean: float,
    mean_sq: float,
    method: str,
    error_bound: float,
    breakpoint_count: int,
    elapsed_ms: float,
) -> MeanSquareReport:
    ub = mean_square_upper_bound(y, T)
    return MeanSquareReport(
        y=y,
        T=T,
        mean_remainder=mean,
        mean_square=mean_sq,
        method=method,
        error_bound=error_bound,
        upper_bound_value=ub,
        ratio=mean_sq / ub,
        breakpoint_count=breakpoint_count,
        elapsed_ms=elapsed_ms,
    )


def mean_square_breakpoints(y: float, T: float) -> MeanSquareReport:
    """Exact period mean and mean square of the remainder via the jump set.

    One pass over the sorted events maintains the running count; segment
    contributions are accumulated with compensated summation, so the result
    is exact up to a few ulps of the accumulated magnitudes (reported as
    error_bound).
    """
    t0 = time.perf_counter()
    sw = breakpoints(y, T)
    lengths, counts = sw.segment_counts()
    if sw.axis_tie:
        counts = counts + 2
    r = counts - math.pi * T * T
    mean = compensated_sum(lengths * r)
    mean_sq = compensated_sum(lengths * r * r)
    # accumulation estimate: per-term rounding of r (~eps*pi*T^2) plus the
    # summation itself (mean_sq is already the absolute term mass)
    eps = np.finfo(float).eps
    error_bound = eps * (2.0 * math.pi * T * T * compensated_sum(lengths * np.abs(r)) + (sw.xs.size + 2) * mean_sq)
    elapsed = (time.perf_counter() - t0) * 1e3
    return _report_from_integral(y, T, mean, mean_sq, "breakpoints", error_bound, int(sw.xs.size), elapsed)


def mean_remainder_closed(y: float, T: float) -> float:
    """Closed form of the period mean of the remainder.

    Rows m != 0 average to exactly twice their half-width over a full period
    of m*x mod 1, and the m = 0 column contributes its decomposition value,
    so the mean is y * chord_length_sum(T/sqrt(y)) - pi*T**2
    + (1 - 2*frac(sqrt(y)*T)).
    """
    if not (y > 0 and T > 0):
        raise InvalidParameter(f"need y > 0 and T > 0, got y={y}, T={T}")
    scaled = scaled_radius(y, T)
    return (
        y * chord_length_sum(scaled)
        - math.pi * T * T
        + (1.0 - 2.0 * frac_snapped(math.sqrt(y) * T))
    )


def mean_square_grid(y: float, T: float, grid_points: int = 1 << 16) -> MeanSquareReport:
    """Midpoint-rule approximation of the period mean and mean square.

    The integrand is piecewise constant, so the midpoint rule carries no
    smoothness order; treat the result as statistical and compare two
    resolutions to gauge it.  error_bound is left at 0 for that reason.
    """
    if grid_points < 16 or grid_points != int(grid_points):
        raise InvalidParameter(f"grid_points must be an integer >= 16, got {grid_points}")
    t0 = time.perf_counter()
    G = int(grid_points)
    _, axis_tie = snap_integer(math.sqrt(y) * T, DEFAULT_TIE_EPS)
    adj = 2 if axis_tie else 0
    area = math.pi * T * T
    r = np.empty(G)
    for j in range(G):
        x = (j + 0.5) / G
        r[j] = count_rowslice(ShearPoint(x, y), T).count + adj - area
    mean = compensated_sum(r) / G
    mean_sq = compensated_sum(r * r) / G
    elapsed = (time.perf_counter() - t0) * 1e3
    return _report_from_integral(y, T, mean, mean_sq, "grid", 0.0, 0, elapsed)


def mean_square_parseval(
    y: float, T: float, k_max: int | None = None, n_max: int | None = None
) -> MeanSquareReport:
    """Mean square assembled from the cosine spectrum.

    The remainder is the oscillatory part plus the constant
    mean_remainder_closed, and the oscillatory part has period mean zero, so
    the mean square is the Parseval value plus the squared mean; the Parseval
    error bound carries over unchanged.
    """
    t0 = time.perf_counter()
    if k_max is None or n_max is None:
        k_auto, n_auto = auto_truncation(y, T)
        k_max = k_auto if k_max is None else k_max
        n_max = n_auto if n_max is None else n_max
    value, err = parseval_mean_square(y, T, int(k_max), int(n_max))
    mu = mean_remainder_closed(y, T)
    elapsed = (time.perf_counter() - t0) * 1e3
    return _report_from_integral(y, T, mu, value + mu * mu, "parseval-assembled", err, 0, elapsed)


def lower_bound_witness(y: float, k: int) -> LowerBoundWitness:
    """Exact witnesses at T = k*sqrt(y), where the scaled radius is integer.

    deficit = pi*k**2 - chord_length_sum(k) is the area gap of the inscribed
    polygon (strictly positive), the mean is -y*deficit + (1 - 2*frac(k*y))
    and the mean square can never undercut the squared mean.
    """
    if k != int(k) or k < 1:
        raise InvalidParameter(f"need an integer k >= 1, got {k}")
    if not y > 0:
        raise InvalidParameter(f"need y > 0, got y={y}")
    k = int(k)
    T = k * math.sqrt(y)
    deficit = math.pi * k * k - chord_length_sum(float(k))
    mean = -y * deficit + (1.0 - 2.0 * frac_snapped(k * y))
    report = mean_square_breakpoints(y, T)
    floor_value = mean * mean
    if report.mean_square < floor_value * (1.0 - 1e-12) - 1e-12:
        raise ShearCountError(
            f"mean square {report.mean_square} fell below its floor {floor_value} at y={y}, k={k}"
        )
    return LowerBoundWitness(
        T=T,
        mean_remainder=mean,
        mean_square=report.mean_square,
        deficit=deficit,
        floor_value=floor_value,
    )


@dataclass(frozen=True)
class SweepConfig:
    """Grid description for :func:`sweep`."""

    y_values: tuple[float, ...]
    radius_min: float
    radius_max: float
    samples: int
    log_spaced: bool = False
    integrator: str = "breakpoints"
    grid_points: int = 1 << 16
    out: str | None = None

    def radii(self) -> np.ndarray:
        if self.samples == 0:
            return np.empty(0)
        if self.log_spaced:
            return np.geomspace(self.radius_min, self.radius_max, self.samples)
        return np.linspace(self.radius_min, self.radius_max, self.samples)


_INTEGRATORS = ("breakpoints", "grid", "parseval-assembled")


def _sweep_row(y: float, T: float, config: SweepConfig) -> MeanSquareReport:
    try:
        if config.integrator == "breakpoints":
            return mean_square_breakpoints(y, T)
        if config.integrator == "grid":
            return mean_square_grid(y, T, config.grid_points)
        return mean_square_parseval(y, T)
    except ShearCountError as exc:
        nan = float("nan")
        return MeanSquareReport(
            y=y,
            T=T,
            mean_remainder=nan,
            mean_square=nan,
            method=config.integrator,
            error_bound=nan,
            upper_bound_value=mean_square_upper_bound(y, T),
            ratio=nan,
            breakpoint_count=0,
            error=str(exc),
        )


def default_threads() -> int:
    """Worker count: SHEARCOUNT_THREADS if set, else machine parallelism."""
    raw = os.environ.get("SHEARCOUNT_THREADS")
    if raw is None:
        return os.cpu_count() or 1
    try:
        value = int(raw)
    except ValueError:
        value = 0
    if value < 1:
        raise InvalidParameter(f"SHEARCOUNT_THREADS must be a positive integer, got {raw!r}")
    return value


def sweep(config: SweepConfig, threads: int | None = None) -> list[MeanSquareReport]:
    """One report per (y, T) grid point, ordered by (y, T).

    Rows are independent and may be computed by a worker pool, but results
    are assembled in grid order and each row's arithmetic is sequential, so
    the output does not depend on the worker count.  Integrator errors are
    recorded on the affected row instead of aborting the sweep.
    """
    if config.integrator not in _INTEGRATORS:
        raise InvalidParameter(f"integrator must be one of {_INTEGRATORS}, got {config.integrator!r}")
    if config.samples < 0:
        raise InvalidParameter(f"samples must be >= 0, got {config.samples}")
    if config.samples > 0 and not (0 < config.radius_min <= config.radius_max):
        raise InvalidParameter(
            f"need 0 < radius_min <= radius_max, got {config.radius_min}, {config.radius_max}"
        )
    params = [(y, float(T)) for y in sorted(config.y_values) for T in config.radii()]
    if not params:
        return []
    workers = threads if threads is not None else default_threads()
    if workers <= 1 or len(params) == 1:
        return [_sweep_row(y, T, config) for y, T in params]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(lambda p: _sweep_row(p[0], p[1], config), params))


SWEEP_HEADER = "T,y,mean_square,mean_remainder,upper_bound,ratio,method,breakpoints,elapsed_ms"


def write_sweep_csv(reports: list[MeanSquareReport], stream, include_timing: bool = False) -> None:
    """Write the sweep schema with shortest round-trip float formatting.

    The elapsed_ms column is zeroed unless timing is requested, keeping the
    bytes of a run reproducible across machines and worker counts.
    """
    with_errors = any(r.error for r in reports)
    stream.write(SWEEP_HEADER + (",error\n" if with_errors else "\n"))
    for r in reports:
        elapsed = int(round(r.elapsed_ms)) if include_timing else 0
        row = (
            f"{r.T!r},{r.y!r},{r.mean_square!r},{r.mean_remainder!r},"
            f"{r.upper_bound_value!r},{r.ratio!r},{r.method},{r.breakpoint_count},{elapsed}"
        )
        if with_errors:
            row += "," + r.error.replace(",", ";")
        stream.write(row + "\n")


def read_sweep_csv(stream) -> list[MeanSquareReport]:
    """Parse a file produced by :func:`write_sweep_csv`."""
    header = stream.readline().strip()
    if header not in (SWEEP_HEADER, SWEEP_HEADER + ",error"):
        raise InvalidParameter(f"unexpected sweep header {header!r}")
    with_errors = header.endswith(",error")
    reports = []
    for line in stream:
        line = line.rstrip("\n")
        if not line:
            continue
        parts = line.split(",")
        reports.append(
            MeanSquareReport(
                T=float(parts[0]),
                y=float(parts[1]),
                mean_square=float(parts[2]),
                mean_remainder=float(parts[3]),
                upper_bound_value=float(parts[4]),
                ratio=float(parts[5]),
                method=parts[6],
                breakpoint_count=int(parts[7]),
                elapsed_ms=float(parts[8]),
                error_bound=0.0,
                error=parts[9] if with_errors and len(parts) > 9 else "",
            )
        )
    return reports
