"""Information matrix, bound matrix, closed-form route, and the dual-route
comparison machinery."""

import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gyrocal import (
    DegenerateCovariance,
    GyroParams,
    ProbeStats,
    SingularMatrix,
    SingularModel,
    closed_form_discrepancy_report,
    closed_form_numerators,
    coupling_matrix,
    covariance_matrix,
    crb_diag_closed_form,
    crb_matrix,
    det_m,
    ideal_bounds,
    invert_symmetric_4x4,
    qfi_matrix,
    small_misalignment_var_phi_z,
    validation_draws,
)

REFERENCE = GyroParams(0.66, 0.17, 0.02, 0.013)

phases = st.floats(-1.0, 1.0)
angles = st.floats(-0.35, 0.35)
params = st.builds(GyroParams, phases, phases, angles, angles)
lambdas = st.floats(-0.9, 0.9)


@given(params, lambdas)
@settings(max_examples=60)
def test_qfi_is_four_times_sandwiched_covariance(p, lam):
    s = ProbeStats.symmetric(10.0, lam)
    m = coupling_matrix(p).m
    expected = 4.0 * m @ covariance_matrix(s) @ m.T
    assert np.allclose(qfi_matrix(p, s).q, expected, rtol=1e-13, atol=1e-13)


@given(params, lambdas)
@settings(max_examples=30)
def test_qfi_is_symmetric(p, lam):
    q = qfi_matrix(p, ProbeStats.symmetric(2.0, lam)).q
    assert np.array_equal(q, q.T)


@given(st.lists(st.floats(-1.0, 1.0), min_size=16, max_size=16))
@settings(max_examples=60)
def test_inversion_round_trip(entries):
    r = np.array(entries).reshape(4, 4)
    a = r.T @ r + 0.1 * np.eye(4)  # symmetric, comfortably positive definite
    inv = invert_symmetric_4x4(a)
    assert np.allclose(a @ inv, np.eye(4), atol=1e-9)
    assert np.array_equal(inv, inv.T)


def test_inversion_rejects_singular_input():
    a = np.ones((4, 4))
    with pytest.raises(SingularMatrix):
        invert_symmetric_4x4(a)


def test_bound_reference_point_uncorrelated():
    # Var phi_y = 1 / (4 N var (1 - lambda^2)) independent of everything else
    b = crb_matrix(REFERENCE, ProbeStats.symmetric(10.0, 0.0))
    assert b.diagonals()[0] == pytest.approx(0.025, rel=1e-12)


def test_bound_scales_inversely_with_repetitions():
    one = crb_matrix(REFERENCE, ProbeStats.symmetric(10.0, -0.2), n=1).diagonals()
    four = crb_matrix(REFERENCE, ProbeStats.symmetric(10.0, -0.2), n=4).diagonals()
    assert np.allclose(four, one / 4.0, rtol=1e-14)


def test_non_identifiable_point_raises():
    with pytest.raises(SingularModel):
        crb_matrix(GyroParams(0.0, 0.0, 0.1, 0.05), ProbeStats.symmetric(10.0, 0.0))


@given(st.floats(0.5, 20.0), st.floats(0.5, 20.0), st.floats(-0.9, 0.9))
def test_ideal_bounds_formula(vy, vz, lam):
    c = lam * np.sqrt(vy * vz)
    by, bz = ideal_bounds(vy, vz, c)
    det2 = vy * vz - c * c
    assert by == pytest.approx(vz / (4.0 * det2), rel=1e-12)
    assert bz == pytest.approx(vy / (4.0 * det2), rel=1e-12)


def test_ideal_bounds_minimized_at_zero_cross_covariance():
    base = ideal_bounds(10.0, 10.0, 0.0)
    for c in np.linspace(-9.9, 9.9, 67):
        by, bz = ideal_bounds(10.0, 10.0, float(c))
        assert by >= base[0] and bz >= base[1]


def test_ideal_bounds_reject_non_positive_definite_block():
    with pytest.raises(DegenerateCovariance):
        ideal_bounds(10.0, 10.0, 10.0)


def test_small_misalignment_is_half_the_aligned_bound_at_zero_ratio():
    for vy, vz, c in [(10.0, 10.0, 0.0), (3.0, 7.0, 1.5), (1.0, 2.0, -0.9)]:
        half = ideal_bounds(vy, vz, c)[1] / 2.0
        assert small_misalignment_var_phi_z(0.0, vy, vz, c) == pytest.approx(
            half, rel=1e-12)


def test_closed_form_phase_terms_match_matrix_route():
    worst_y = worst_z = 0.0
    for p, lam in validation_draws(150, seed=7):
        num = crb_matrix(p, ProbeStats.symmetric(10.0, lam)).diagonals()
        cf = crb_diag_closed_form(p, 10.0, lam)
        worst_y = max(worst_y, abs(cf[0] - num[0]) / num[0])
        worst_z = max(worst_z, abs(cf[1] - num[1]) / num[1])
    assert worst_y < 1e-8
    assert worst_z < 1e-8


def test_first_numerator_is_the_squared_determinant():
    for p, lam in itertools.islice(validation_draws(20, seed=5), 20):
        d = det_m(p)
        assert closed_form_numerators(p, lam).f_y == pytest.approx(d * d, rel=1e-15)


def test_discrepancy_report_flags_the_hand_derived_angle_terms():
    report = closed_form_discrepancy_report(n_draws=200, seed=3)
    assert report.flagged() == ("f_theta", "f_delta")
    text = report.render()
    assert "FLAGGED" in text and "f_theta" in text


def test_validation_draws_are_deterministic():
    a = list(validation_draws(5, seed=42))
    b = list(validation_draws(5, seed=42))
    assert a == b
