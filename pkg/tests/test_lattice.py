import math

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from shearcount import (
    InvalidParameter,
    RangeExceeded,
    ShearPoint,
    count_enumerate,
    count_rowslice,
    lattice_vector,
)

coords = st.floats(-2.0, 2.0)
heights = st.floats(0.5, 4.0)
radii = st.floats(1.0, 25.0, exclude_min=True)


def test_lattice_vector_square_lattice():
    z = ShearPoint(0.0, 1.0)
    assert lattice_vector(z, 1, 0) == (1.0, 0.0)
    assert lattice_vector(z, 0, 5) == (0.0, 5.0)


def test_lattice_vector_sheared():
    assert lattice_vector(ShearPoint(0.5, 1.0), 1, 0) == (1.0, 0.5)


def test_basis_is_unimodular():
    (a, b), (c, d) = ShearPoint(0.37, 2.9).basis()
    assert a * d - b * c == pytest.approx(1.0, abs=1e-15)


def test_height_must_be_positive():
    with pytest.raises(InvalidParameter):
        ShearPoint(0.0, 0.0)
    with pytest.raises(InvalidParameter):
        ShearPoint(0.0, -1.0)


def test_enumerate_examples():
    assert count_enumerate(ShearPoint(0.0, 1.0), 1.0).count == 1
    assert count_enumerate(ShearPoint(0.0, 1.0), 2.0).count == 9
    assert count_enumerate(ShearPoint(0.5, 1.0), 1.5).count == 7


def test_rowslice_examples():
    r = count_rowslice(ShearPoint(0.0, 1.0), 2.0)
    assert r.count == 9
    assert r.ties > 0  # (0, +-2) lie exactly on the circle
    assert count_rowslice(ShearPoint(0.0, 1.0), 0.5).count == 1


def test_rowslice_matches_enumerate_at_moderate_size():
    z = ShearPoint(0.3, 2.7)
    assert count_rowslice(z, 50.0).count == count_enumerate(z, 50.0).count


def test_boundary_points_are_excluded_but_flagged():
    # radius 2 on the square lattice: 4 boundary vectors, strict count 9
    enum = count_enumerate(ShearPoint(0.0, 1.0), 2.0)
    assert (enum.count, enum.method) == (9, "enumerate")
    assert enum.ties == 4


@pytest.mark.parametrize("T", [0.0, -2.0, float("nan")])
def test_invalid_radius(T):
    with pytest.raises(InvalidParameter):
        count_enumerate(ShearPoint(0.0, 1.0), T)
    with pytest.raises(InvalidParameter):
        count_rowslice(ShearPoint(0.0, 1.0), T)


def test_negative_tie_eps_rejected():
    with pytest.raises(InvalidParameter):
        count_rowslice(ShearPoint(0.0, 1.0), 2.0, tie_eps=-1e-9)


def test_scaled_radius_limit():
    with pytest.raises(RangeExceeded):
        count_rowslice(ShearPoint(0.0, 1.0), 2e6)
    with pytest.raises(RangeExceeded):
        count_enumerate(ShearPoint(0.0, 0.25), 6e5)


def test_origin_always_counted():
    assert count_rowslice(ShearPoint(0.9, 3.0), 1e-4).count == 1
    assert count_enumerate(ShearPoint(0.9, 3.0), 1e-4).count == 1


@given(coords, heights, radii)
def test_oracle_equivalence(x, y, T):
    z = ShearPoint(x, y)
    a = count_rowslice(z, T)
    b = count_enumerate(z, T)
    assume(a.ties == 0 and b.ties == 0)
    assert a.count == b.count


@given(coords, heights, radii, st.integers(-1000, 1000))
def test_shear_periodicity(x, y, T, shift):
    base = count_rowslice(ShearPoint(x, y), T).count
    assert count_rowslice(ShearPoint(x + 1.0, y), T).count == base
    assert count_rowslice(ShearPoint(x + shift, y), T).count == base


@given(coords, heights, radii)
def test_reflection_symmetry(x, y, T):
    base = count_rowslice(ShearPoint(x, y), T).count
    assert count_rowslice(ShearPoint(-x, y), T).count == base


@given(coords, heights, radii, radii)
def test_count_monotone_in_radius(x, y, T1, T2):
    lo, hi = sorted((T1, T2))
    z = ShearPoint(x, y)
    assert count_rowslice(z, lo).count <= count_rowslice(z, hi).count


@settings(max_examples=20)
@given(coords, heights)
def test_count_is_positive(x, y):
    assert count_rowslice(ShearPoint(x, y), 0.7).count >= 1


def test_gauss_order_sanity():
    # |count - pi T^2| / T stays bounded; observed max 1.45 for this z
    z = ShearPoint(0.3, 1.7)
    worst = max(
        abs(count_rowslice(z, float(T)).count - math.pi * T * T) / T
        for T in np.geomspace(1.0, 500.0, 60)
    )
    assert worst < 8.0
