"""Geometry layer: accumulated phases, coupling matrix, probe covariance."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gyrocal import (
    GyroParams,
    InvalidProbeStats,
    ProbeStats,
    beta,
    coupling_matrix,
    covariance_matrix,
    det_m,
    numeric_jacobian,
    phase_vector,
)

REFERENCE = GyroParams(0.66, 0.17, 0.02, 0.013)

phases = st.floats(-1.0, 1.0)
angles = st.floats(-0.35, 0.35)
params = st.builds(GyroParams, phases, phases, angles, angles)


def test_phase_vector_reference_point():
    phi = phase_vector(REFERENCE)
    expected = [0.66, 0.18316512115091804, -0.17856539353434805,
                0.6540316807712033]
    assert np.allclose(phi, expected, rtol=1e-12, atol=0.0)


def test_phase_vector_aligned_layout():
    # with both misalignments zero the second orientation re-measures the
    # same two phases with one sign flip
    phi = phase_vector(GyroParams(0.4, -0.7, 0.0, 0.0))
    assert phi.tolist() == [0.4, -0.7, 0.7, 0.4]


@given(phases, phases, st.floats(-4.0, 4.0))
def test_beta_is_a_rotation_component(u, v, alpha):
    b = beta(alpha, u, v)
    b_perp = beta(alpha + math.pi / 2.0, u, v)
    assert b * b + b_perp * b_perp == pytest.approx(u * u + v * v, rel=1e-12, abs=1e-12)


@given(params)
@settings(max_examples=60)
def test_coupling_matrix_is_the_phase_jacobian(p):
    assert np.max(np.abs(coupling_matrix(p).m - numeric_jacobian(p))) < 1e-6


@given(params)
@settings(max_examples=60)
def test_det_closed_form_matches_general_determinant(p):
    assert det_m(p) == pytest.approx(float(np.linalg.det(coupling_matrix(p).m)),
                                     rel=1e-10, abs=1e-12)


def test_det_reference_values():
    assert det_m(GyroParams(1.0, 1.0, 0.0, 0.0)) == pytest.approx(-2.0, rel=1e-15)
    assert det_m(REFERENCE) == pytest.approx(-0.23762887072405092, rel=1e-13)


@given(phases, phases)
def test_det_aligned_is_minus_twice_phase_product(u, v):
    assert det_m(GyroParams(u, v, 0.0, 0.0)) == pytest.approx(-2.0 * u * v,
                                                              rel=1e-12, abs=1e-15)


def test_coupling_matrix_carries_its_determinant():
    cm = coupling_matrix(REFERENCE)
    assert cm.det == det_m(REFERENCE)


@given(st.floats(0.1, 50.0), st.floats(0.1, 50.0), st.floats(-0.99, 0.99))
def test_covariance_block_structure(vy, vz, lam):
    s = ProbeStats(vy, vz, lam, lam)
    cov = covariance_matrix(s)
    c = lam * math.sqrt(vy * vz)
    expected = np.array([
        [vy, c, 0.0, 0.0],
        [c, vz, 0.0, 0.0],
        [0.0, 0.0, vy, c],
        [0.0, 0.0, c, vz],
    ])
    assert np.array_equal(cov, expected)
    assert np.all(np.linalg.eigvalsh(cov) > 0.0)


def test_params_reject_non_finite():
    with pytest.raises(ValueError):
        GyroParams(math.nan, 0.1, 0.0, 0.0)
    with pytest.raises(ValueError):
        GyroParams(0.1, math.inf, 0.0, 0.0)


@pytest.mark.parametrize("var, lam", [(0.0, 0.0), (-1.0, 0.0), (10.0, 1.0),
                                      (10.0, -1.0), (10.0, 1.5)])
def test_probe_stats_reject_degenerate_inputs(var, lam):
    with pytest.raises(InvalidProbeStats):
        ProbeStats.symmetric(var, lam)


def test_probe_stats_symmetric_constructor():
    s = ProbeStats.symmetric(10.0, -0.3)
    assert (s.var_y, s.var_z) == (10.0, 10.0)
    assert (s.lambda_12, s.lambda_34) == (-0.3, -0.3)
