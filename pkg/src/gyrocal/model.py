"""Geometry and probe statistics of a two-interferometer, two-orientation
rotation measurement.

Two ring interferometers with nominally orthogonal sensitive axes (y and z)
measure a rotation with Sagnac phases phi_y and phi_z.  The z interferometer
is misaligned by a small angle theta in the y-z plane.  After a repositioning
rotation of pi/2 + delta about the sensor x axis both interferometers measure
again, which makes the misalignment angles observable alongside the phases.
Each of the four number-difference observables accumulates a phase that is a
linear combination of phi_y and phi_z with coefficients set by theta and
delta; this module provides that phase map, its Jacobian with respect to the
four parameters (phi_y, phi_z, theta, delta), the Jacobian's determinant in
closed form, and the covariance matrix of the four observables for a probe
state described by its second moments.

Ordering conventions used for every 4-vector and 4x4 matrix in the package:

    parameters:   (phi_y, phi_z, theta, delta)
    observables:  (n_y, n_z, n_y', n_z')

where the primed observables belong to the second orientation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidProbeStats

PARAMETER_NAMES = ("phi_y", "phi_z", "theta", "delta")
OBSERVABLE_NAMES = ("n_y", "n_z", "n_y_prime", "n_z_prime")

HALF_PI = math.pi / 2.0


def beta(alpha: float, phi_y: float, phi_z: float) -> float:
    """Projection of the phase pair onto an axis rotated by alpha.

    beta(alpha) = phi_y * cos(alpha) - phi_z * sin(alpha).  All of the
    accumulated phases and the Jacobian entries below are values of this one
    function at shifted arguments.
    """
    return phi_y * math.cos(alpha) - phi_z * math.sin(alpha)


@dataclass(frozen=True)
class GyroParams:
    """The four estimated parameters, all in radians.

    phi_y, phi_z are the Sagnac phases of interest; theta is the in-plane
    misalignment of the z interferometer; delta is the error in the pi/2
    repositioning rotation.
    """

    phi_y: float
    phi_z: float
    theta: float
    delta: float

    def __post_init__(self) -> None:
        for name in PARAMETER_NAMES:
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")


@dataclass(frozen=True)
class ProbeStats:
    """Second moments of the probe state's number-difference observables.

    var_y and var_z are the photon-number-difference variances of the y and z
    interferometers; lambda_12 and lambda_34 are the correlation coefficients
    between the two interferometers in the first and second orientation.  The
    off-diagonal covariance within an orientation is lambda * sqrt(var_y *
    var_z); correlations across orientations vanish because the probe is
    prepared independently for each orientation.
    """

    var_y: float
    var_z: float
    lambda_12: float
    lambda_34: float

    def __post_init__(self) -> None:
        if not (self.var_y > 0.0 and self.var_z > 0.0):
            raise InvalidProbeStats("variances must be strictly positive")
        if not (abs(self.lambda_12) < 1.0 and abs(self.lambda_34) < 1.0):
            raise InvalidProbeStats("correlation coefficients must satisfy |lambda| < 1")

    @classmethod
    def symmetric(cls, var: float, lam: float) -> "ProbeStats":
        """Equal variances and a common correlation for both orientations."""
        return cls(var_y=var, var_z=var, lambda_12=lam, lambda_34=lam)


@dataclass(frozen=True, eq=False)
class CouplingMatrix:
    """Jacobian of the accumulated phases with respect to the parameters.

    m[i][j] is the derivative of phase j with respect to parameter i, and det
    is the closed-form determinant (equal to the numeric determinant of m).
    """

    m: np.ndarray
    det: float


def phase_vector(p: GyroParams) -> np.ndarray:
    """Accumulated phase multiplying each observable in the joint evolution.

    Components, in observable order:

        n_y:   phi_y
        n_z:   phi_y * sin(theta) + phi_z * cos(theta)   (= -beta(theta + pi/2))
        n_y':  -phi_y * sin(delta) - phi_z * cos(delta)  (=  beta(delta + pi/2))
        n_z':  beta(theta + delta)

    At theta = delta = 0 this reduces to (phi_y, phi_z, -phi_z, phi_y).
    """
    u, v, t, d = p.phi_y, p.phi_z, p.theta, p.delta
    return np.array([
        u,
        u * math.sin(t) + v * math.cos(t),
        -u * math.sin(d) - v * math.cos(d),
        beta(t + d, u, v),
    ])


def coupling_matrix(p: GyroParams) -> CouplingMatrix:
    """The 4x4 Jacobian of phase_vector, rows indexed by parameter.

    Rows are the gradients of the four accumulated phases; entries involving
    the phases appear through beta at shifted arguments because d(beta)/d(alpha)
    = beta(alpha + pi/2).
    """
    u, v, t, d = p.phi_y, p.phi_z, p.theta, p.delta
    g = beta(t + d + HALF_PI, u, v)
    m = np.array([
        [1.0, math.sin(t), -math.sin(d), math.cos(t + d)],
        [0.0, math.cos(t), -math.cos(d), -math.sin(t + d)],
        [0.0, beta(t, u, v), 0.0, g],
        [0.0, 0.0, -beta(d, u, v), g],
    ])
    return CouplingMatrix(m=m, det=det_m(p))


def det_m(p: GyroParams) -> float:
    """Closed-form determinant of the coupling matrix.

    Cofactor expansion along the first column gives

        det M = gamma * (beta_delta * cos(theta) + beta_theta * cos(delta))
                + beta_theta * beta_delta * sin(theta + delta)

    with gamma = beta(theta + delta + pi/2), beta_theta = beta(theta) and
    beta_delta = beta(delta).  At theta = delta = 0 this is -2 phi_y phi_z,
    and it scales as c^2 under (phi_y, phi_z) -> (c phi_y, c phi_z) since
    every factor is linear in the phases.
    """
    u, v, t, d = p.phi_y, p.phi_z, p.theta, p.delta
    g = beta(t + d + HALF_PI, u, v)
    bt = beta(t, u, v)
    bd = beta(d, u, v)
    return g * (bd * math.cos(t) + bt * math.cos(d)) + bt * bd * math.sin(t + d)


def covariance_matrix(s: ProbeStats) -> np.ndarray:
    """Covariance of the four observables: block-diagonal, one 2x2 block per
    orientation, zero across orientations."""
    c12 = s.lambda_12 * math.sqrt(s.var_y * s.var_z)
    c34 = s.lambda_34 * math.sqrt(s.var_y * s.var_z)
    return np.array([
        [s.var_y, c12, 0.0, 0.0],
        [c12, s.var_z, 0.0, 0.0],
        [0.0, 0.0, s.var_y, c34],
        [0.0, 0.0, c34, s.var_z],
    ])


def numeric_jacobian(p: GyroParams, h: float = 1e-6) -> np.ndarray:
    """Central-difference Jacobian of phase_vector; test oracle for
    coupling_matrix."""
    if not h > 0.0:
        raise ValueError("step must be positive")
    base = [p.phi_y, p.phi_z, p.theta, p.delta]
    rows = []
    for i in range(4):
        hi = list(base)
        lo = list(base)
        hi[i] += h
        lo[i] -= h
        fp = phase_vector(GyroParams(*hi))
        fm = phase_vector(GyroParams(*lo))
        rows.append((fp - fm) / (2.0 * h))
    return np.array(rows)
