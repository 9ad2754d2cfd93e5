"""Shear-lattice parameterization and two independent exact counting methods.

The lattice attached to the upper-half-plane point z = x + iy has basis
(sqrt(y), x/sqrt(y)) and (0, 1/sqrt(y)), so its vectors are

    v(m, n) = (m*sqrt(y), (m*x + n)/sqrt(y)),      m, n integers,

and the covolume is 1 for every (x, y).  Membership of v in the open disk of
radius T reduces row by row to

    (m*x + n)**2 < y*T**2 - y**2*m**2.

Two counting routines implement this test independently:

* :func:`count_enumerate` walks every candidate n in a padded interval and
  applies the strict inequality one pair at a time.  Slow on purpose; it is
  the oracle everything else is checked against.
* :func:`count_rowslice` counts each row in O(1) by counting the integers in
  the open interval (-hw - m*x, hw - m*x) with hw the row half-width, for a
  total cost O(T/sqrt(y)).

Both report a ``ties`` diagnostic: the number of rows (or individual tests)
that fell within tolerance of the disk boundary, where strict counting in
floating point is ambiguous.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidParameter, RangeExceeded
from .numerics import snap_integer, snap_integers

#: Largest scaled radius T/sqrt(y) accepted.  Beyond this, fractional parts of
#: quantities of magnitude ~sqrt(y)*T lose too many significant digits in
#: double precision for strict boundary tests to be trustworthy.
MAX_SCALED_RADIUS = 1e6

DEFAULT_TIE_EPS = 1e-12


@dataclass(frozen=True)
class ShearPoint:
    """Upper-half-plane parameter z = x + iy of the sheared lattice.

    x is the shear coordinate (the lattice is 1-periodic in x) and y > 0 the
    height.  The generated lattice always has covolume 1.
    """

    x: float
    y: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise InvalidParameter(f"shear point must be finite, got x={self.x}, y={self.y}")
        if not self.y > 0:
            raise InvalidParameter(f"shear height must satisfy y > 0, got y={self.y}")

    def basis(self) -> tuple[tuple[float, float], tuple[float, float]]:
        """The two generating vectors; their determinant is exactly 1."""
        sy = math.sqrt(self.y)
        return (sy, self.x / sy), (0.0, 1.0 / sy)


@dataclass(frozen=True)
class CountResult:
    """Lattice count inside an open disk, with boundary-tie diagnostics.

    ties == 0 means every boundary test was decisively away from the circle
    at the stated tolerance, so the count is unambiguous.
    """

    count: int
    ties: int
    method: str


def lattice_vector(z: ShearPoint, m: int, n: int) -> tuple[float, float]:
    """The lattice vector indexed by (m, n)."""
    sy = math.sqrt(z.y)
    return (m * sy, (m * z.x + n) / sy)


def shear_mod_one(x: float) -> float:
    """The shear coordinate reduced to [0, 1).

    The lattice is invariant under x -> x + 1 (the index n absorbs the
    shift), so every counting routine reduces first; this makes the
    1-periodicity of counts exact in floating point as well.
    """
    return x - math.floor(x)


def scaled_radius(z_or_y, T: float) -> float:
    """T/sqrt(y), the number of occupied rows per sign; validates the regime."""
    y = z_or_y.y if isinstance(z_or_y, ShearPoint) else float(z_or_y)
    s = T / math.sqrt(y)
    if s > MAX_SCALED_RADIUS:
        raise RangeExceeded(
            f"scaled radius T/sqrt(y) = {s:.3g} exceeds the supported {MAX_SCALED_RADIUS:.0e}"
        )
    return s


def row_limit(scaled: float, rel_eps: float = DEFAULT_TIE_EPS) -> int:
    """Largest row index m >= 1 with m strictly below the scaled radius.

    Near-integer radii are treated as exact, so the boundary row (which holds
    no interior points under strict counting) is excluded deterministically.
    """
    snapped, tie = snap_integer(scaled, rel_eps)
    if tie:
        return max(0, int(snapped) - 1)
    return max(0, int(math.floor(scaled)))


def halfwidths(y: float, T: float, ms: np.ndarray) -> np.ndarray:
    """Row half-widths sqrt(y*T**2 - y**2*m**2), factored to stay accurate
    when m is close to the scaled radius."""
    sy = math.sqrt(y)
    return sy * np.sqrt(T - ms * sy) * np.sqrt(T + ms * sy)


def _validate(T: float, tie_eps: float, y: float) -> None:
    if not (math.isfinite(T) and T > 0):
        raise InvalidParameter(f"radius must satisfy T > 0, got T={T}")
    if not tie_eps >= 0:
        raise InvalidParameter(f"tie tolerance must be >= 0, got {tie_eps}")
    if not y > 0:
        raise InvalidParameter(f"shear height must satisfy y > 0, got y={y}")


def count_enumerate(z: ShearPoint, T: float, tie_eps: float = DEFAULT_TIE_EPS) -> CountResult:
    """Count lattice vectors of norm < T by brute-force enumeration.

    For each row m a padded closed interval of candidate n is generated and
    every candidate is tested individually against the strict inequality.
    Cost is proportional to the number of candidates, about 2*T**2 in total;
    this routine deliberately shares no logic with :func:`count_rowslice`.
    """
    _validate(T, tie_eps, z.y)
    scaled_radius(z, T)
    y, x = z.y, shear_mod_one(z.x)
    yT2 = y * T * T
    tol = tie_eps * yT2

    count = 0
    ties = 0
    m_pad = int(math.floor(T / math.sqrt(y))) + 2
    for m in range(-m_pad, m_pad + 1):
        rhs = yT2 - y * y * m * m
        if rhs < -tol:
            continue
        hw = math.sqrt(max(rhs, 0.0))
        center = -m * x
        n = np.arange(math.floor(center - hw) - 1, math.ceil(center + hw) + 2)
        vals = (m * x + n) ** 2
        count += int(np.count_nonzero(vals < rhs))
        ties += int(np.count_nonzero(np.abs(vals - rhs) <= tol))
    return CountResult(count=count, ties=ties, method="enumerate")


def count_rowslice(z: ShearPoint, T: float, tie_eps: float = DEFAULT_TIE_EPS) -> CountResult:
    """Count lattice vectors of norm < T row by row in O(T/sqrt(y)).

    Each row contributes the number of integers in the open interval
    (-hw - m*x, hw - m*x), evaluated as ceil(hw - m*x) + ceil(hw + m*x) - 1
    after snapping near-integer endpoints.  Off ties this equals the floor
    difference floor(hw - m*x) - floor(-hw - m*x); at exact rational ties the
    snapped form keeps the strict-inequality semantics (boundary points are
    never counted).  ``ties`` counts rows whose interval endpoints fell within
    tolerance of an integer.
    """
    _validate(T, tie_eps, z.y)
    scaled = scaled_radius(z, T)
    y, x = z.y, shear_mod_one(z.x)
    sy = math.sqrt(y)

    # m = 0 row: |n| < sqrt(y)*T, independent of x.
    g0, tie0 = snap_integer(sy * T, tie_eps)
    count = max(2 * int(math.ceil(g0)) - 1, 1)
    ties = 1 if tie0 else 0

    M = row_limit(scaled, tie_eps)
    if M > 0:
        ms = np.arange(1, M + 1, dtype=float)
        hw = halfwidths(y, T, ms)
        lo, tie_lo = snap_integers(hw - ms * x, tie_eps)
        hi, tie_hi = snap_integers(hw + ms * x, tie_eps)
        # Rows m and -m hold the same number of points at every x.
        per_row = np.ceil(lo) + np.ceil(hi) - 1.0
        count += 2 * int(np.sum(np.maximum(per_row, 0.0)))
        ties += 2 * int(np.count_nonzero(tie_lo | tie_hi))
    return CountResult(count=count, ties=ties, method="rowslice")
