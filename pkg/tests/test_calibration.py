"""Orientation-count feasibility bookkeeping."""

import pytest
from hypothesis import given
from hypothesis import strategies as st

from gyrocal import feasibility_3d, min_orientations


def test_counts_without_external_frame():
    rep = feasibility_3d(3)
    assert (rep.measurement_count, rep.parameter_count) == (9, 8)
    assert rep.feasible
    assert not feasibility_3d(2).feasible


def test_counts_with_external_frame():
    rep = feasibility_3d(4, include_external_frame=True)
    assert (rep.measurement_count, rep.parameter_count) == (12, 12)
    assert rep.feasible
    assert not feasibility_3d(3, include_external_frame=True).feasible


def test_min_orientations():
    assert min_orientations(False) == 3
    assert min_orientations(True) == 4


@given(st.integers(1, 200), st.booleans())
def test_arbitrary_axis_mode_never_becomes_feasible(k, frame):
    rep = feasibility_3d(k, frame, axis_mode="arbitrary")
    assert not rep.feasible
    # readouts grow exactly as fast as the per-orientation unknowns
    assert rep.parameter_count - rep.measurement_count == (6 if frame else 3)


@given(st.integers(3, 200))
def test_fixed_axis_mode_stays_feasible_beyond_the_threshold(k):
    assert feasibility_3d(k).feasible
    assert feasibility_3d(k + 1, include_external_frame=True).feasible


def test_input_validation():
    with pytest.raises(ValueError):
        feasibility_3d(0)
    with pytest.raises(ValueError):
        feasibility_3d(3, axis_mode="diagonal")
