"""Small numeric helpers: compensated summation and near-integer snapping.

Boundary tests of the form "is this real an integer" are everywhere in the
counting code (floor arguments, fractional parts, row limits).  They are all
funnelled through the snap helpers below so every module applies the same
relative tolerance.
"""
from __future__ import annotations

import math

import numpy as np

_CHUNK = 1 << 15


def compensated_sum(values) -> float:
    """Sum of an array with compensated accumulation.

    Small inputs go straight to ``math.fsum`` (exactly rounded).  Large inputs
    are split into chunks summed pairwise by numpy, and the chunk partials are
    combined with ``math.fsum``; the result is deterministic and accurate to a
    few ulps regardless of length.
    """
    arr = np.asarray(values, dtype=float)
    if arr.size == 0:
        return 0.0
    if arr.size <= _CHUNK:
        return math.fsum(arr.tolist())
    partials = [float(np.sum(arr[i:i + _CHUNK])) for i in range(0, arr.size, _CHUNK)]
    return math.fsum(partials)


def snap_integer(u: float, rel_eps: float) -> tuple[float, bool]:
    """Round u to the nearest integer when within rel_eps*max(1,|u|) of it.

    Returns (possibly snapped value, snapped?).  The tolerance is relative so
    the test stays meaningful when |u| is large.
    """
    r = float(round(u))
    if abs(u - r) <= rel_eps * max(1.0, abs(u)):
        return r, True
    return u, False


def snap_integers(u: np.ndarray, rel_eps: float) -> tuple[np.ndarray, np.ndarray]:
    """Vector version of :func:`snap_integer`; returns (snapped, tie_mask)."""
    r = np.rint(u)
    tie = np.abs(u - r) <= rel_eps * np.maximum(1.0, np.abs(u))
    return np.where(tie, r, u), tie


def frac_snapped(u: float, rel_eps: float = 1e-12) -> float:
    """Fractional part of u, with near-integers treated as exact integers."""
    snapped, tie = snap_integer(u, rel_eps)
    if tie:
        return 0.0
    return u - math.floor(u)
