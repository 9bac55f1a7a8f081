"""Scalar optimization of the probe correlation coefficient, parameter
sweeps, and grid averaging.

The probe correlation lambda between the two interferometers of one
orientation is a free design knob of the input state.  Every bound diagonal
diverges as |lambda| -> 1 (the probe covariance degenerates), so whatever
weighted combination of bound diagonals one cares about has an interior
minimum in lambda.  optimal_lambda finds it with a coarse scan followed by
golden-section refinement; sweep and averaged_lambda_opt regenerate the data
behind the usual diagnostic plots (bounds versus probe variance, versus
correlation, and the mean optimal correlation as a function of the
misalignment angles).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import EmptyGridAfterExclusion, InvalidProbeStats, SingularMatrix, SingularModel
from .fisher import SINGULARITY_GUARD, crb_matrix
from .model import GyroParams, ProbeStats, det_m

INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0

# Poles of every objective sit at lambda = +-1; the search domain stops just
# inside them.
LAMBDA_LO = -1.0 + 1e-6
LAMBDA_HI = 1.0 - 1e-6

COARSE_POINTS = 201

# Misalignment values used by the averaging command when no grid is given.
DEFAULT_NUISANCE_GRID = (-0.3, -0.2, -0.1, -0.01, 0.01, 0.1, 0.2, 0.3)


@dataclass(frozen=True)
class Objective:
    """Non-negative weights over the four bound diagonals
    (phi_y, phi_z, theta, delta)."""

    weights: tuple[float, float, float, float]

    def __post_init__(self) -> None:
        if len(self.weights) != 4 or any(w < 0.0 for w in self.weights):
            raise ValueError("weights must be four non-negative reals")

    def from_diagonals(self, diag: Sequence[float]) -> float:
        w = self.weights
        return w[0] * diag[0] + w[1] * diag[1] + w[2] * diag[2] + w[3] * diag[3]


SUM_PHASE_VAR = Objective((1.0, 1.0, 0.0, 0.0))
FULL_TRACE = Objective((1.0, 1.0, 1.0, 1.0))
VAR_PHI_Y = Objective((1.0, 0.0, 0.0, 0.0))
VAR_PHI_Z = Objective((0.0, 1.0, 0.0, 0.0))
VAR_THETA = Objective((0.0, 0.0, 1.0, 0.0))
VAR_DELTA = Objective((0.0, 0.0, 0.0, 1.0))

OBJECTIVE_NAMES = {
    "sum_phase_var": SUM_PHASE_VAR,
    "full_trace": FULL_TRACE,
    "var_phi_y": VAR_PHI_Y,
    "var_phi_z": VAR_PHI_Z,
    "var_theta": VAR_THETA,
    "var_delta": VAR_DELTA,
}


def objective_from_name(name: str, weights: Sequence[float] | None = None) -> Objective:
    """Look up an objective by name; 'weighted' requires explicit weights."""
    if name == "weighted":
        if weights is None:
            raise ValueError("objective 'weighted' requires weights")
        return Objective(tuple(float(w) for w in weights))
    try:
        return OBJECTIVE_NAMES[name]
    except KeyError:
        raise ValueError(f"unknown objective {name!r}") from None


@dataclass(frozen=True)
class OptimizationResult:
    lambda_opt: float
    objective_value: float
    evaluations: int
    bracket: tuple[float, float]


def objective_value(p: GyroParams, var: float, lam: float, obj: Objective,
                    n: int = 1) -> float:
    """The selected weighted sum of bound diagonals at one (p, var, lambda)."""
    diag = crb_matrix(p, ProbeStats.symmetric(var, lam), n).diagonals()
    return float(obj.from_diagonals(diag))


def optimal_lambda(p: GyroParams, var: float, obj: Objective = SUM_PHASE_VAR,
                   tol: float = 1e-7, n: int = 1) -> OptimizationResult:
    """Minimize the objective over lambda in [LAMBDA_LO, LAMBDA_HI].

    A 201-point coarse scan guards against local minima (the objectives are
    smooth but need not be unimodal), then golden-section search refines the
    best coarse bracket down to width tol.  lambda = 0 is always evaluated
    explicitly so the result is never worse than the uncorrelated probe.
    Identical inputs give bit-identical results.
    """
    if not tol > 0.0:
        raise ValueError("tol must be positive")

    evaluations = 0

    def f(lam: float) -> float:
        nonlocal evaluations
        evaluations += 1
        return objective_value(p, var, lam, obj, n)

    grid = np.linspace(LAMBDA_LO, LAMBDA_HI, COARSE_POINTS)
    vals = [f(float(x)) for x in grid]
    i = int(np.argmin(vals))
    best_x, best_f = float(grid[i]), vals[i]

    f0 = f(0.0)
    if f0 < best_f:
        best_x, best_f = 0.0, f0

    a = float(grid[max(i - 1, 0)])
    b = float(grid[min(i + 1, COARSE_POINTS - 1)])
    c = b - INV_PHI * (b - a)
    d = a + INV_PHI * (b - a)
    fc, fd = f(c), f(d)
    if fc < best_f:
        best_x, best_f = c, fc
    if fd < best_f:
        best_x, best_f = d, fd
    while b - a > tol:
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - INV_PHI * (b - a)
            fc = f(c)
            if fc < best_f:
                best_x, best_f = c, fc
        else:
            a, c, fc = c, d, fd
            d = a + INV_PHI * (b - a)
            fd = f(d)
            if fd < best_f:
                best_x, best_f = d, fd
    return OptimizationResult(lambda_opt=best_x, objective_value=best_f,
                              evaluations=evaluations, bracket=(a, b))


def lambda_opt_small_angle(kappa: float) -> float:
    """Optimal correlation in the vanishing-misalignment limit.

    In that limit the phase-variance sum is proportional to
    (3 + kappa^2 + 2 kappa lambda) / (1 - lambda^2) with kappa = phi_y/phi_z,
    whose stationarity condition is the quadratic

        kappa lambda^2 + (3 + kappa^2) lambda + kappa = 0.

    Returns the root in (-1, 1), computed in the cancellation-free form
    -2 kappa / (b + sqrt(b^2 - 4 kappa^2)) with b = 3 + kappa^2.  Odd in
    kappa; zero at kappa = 0.
    """
    if not math.isfinite(kappa):
        raise ValueError("kappa must be finite")
    if kappa == 0.0:
        return 0.0
    b = 3.0 + kappa * kappa
    return -2.0 * kappa / (b + math.sqrt(b * b - 4.0 * kappa * kappa))


@dataclass(frozen=True)
class SweepRow:
    """One grid point of a one-dimensional sweep.

    The four diagonals are None when the point was flagged singular (the
    bound does not exist there); lambda_opt is filled only when the sweep was
    asked to optimize at every point.
    """

    axis: str
    value: float
    var_phi_y: float | None
    var_phi_z: float | None
    var_theta: float | None
    var_delta: float | None
    singular: bool
    lambda_opt: float | None = None


SWEEP_AXES = ("phi_y", "phi_z", "theta", "delta", "var", "lambda")


def _params_with(base: GyroParams, name: str, value: float) -> GyroParams:
    fields = {f: getattr(base, f) for f in ("phi_y", "phi_z", "theta", "delta")}
    fields[name] = value
    return GyroParams(**fields)


def sweep(base: GyroParams, var: float, lam: float, axis: str,
          grid: Iterable[float], obj: Objective = SUM_PHASE_VAR,
          include_lambda_opt: bool = False, tol: float = 1e-7,
          n: int = 1) -> list[SweepRow]:
    """Bound diagonals along one axis; rows in grid order.

    Singular points (non-identifiable parameters, degenerate probe) are
    emitted as flagged rows instead of aborting, so sweeps that cross
    phi = 0 or lambda = +-1 still complete.
    """
    if axis not in SWEEP_AXES:
        raise ValueError(f"unknown sweep axis {axis!r}")
    grid = [float(x) for x in grid]
    if not grid:
        raise ValueError("grid must be non-empty")
    rows: list[SweepRow] = []
    for x in grid:
        p, v, l = base, var, lam
        if axis == "var":
            v = x
        elif axis == "lambda":
            l = x
        else:
            p = _params_with(base, axis, x)
        try:
            diag = crb_matrix(p, ProbeStats.symmetric(v, l), n).diagonals()
        except (SingularModel, SingularMatrix, InvalidProbeStats):
            rows.append(SweepRow(axis, x, None, None, None, None, True))
            continue
        lam_opt = None
        if include_lambda_opt and axis != "lambda":
            lam_opt = optimal_lambda(p, v, obj, tol, n).lambda_opt
        rows.append(SweepRow(axis, x, float(diag[0]), float(diag[1]),
                             float(diag[2]), float(diag[3]), False, lam_opt))
    return rows


def midpoint_phase_grid(count: int = 24) -> list[tuple[float, float]]:
    """count x count phase pairs at the midpoints of a uniform partition of
    [-pi, pi)^2.  Midpoints avoid the phi = 0 singular axes and make the grid
    symmetric under sign flips of either phase, which the averaging
    diagnostics rely on."""
    if count < 1:
        raise ValueError("count must be positive")
    h = 2.0 * math.pi / count
    pts = np.linspace(-math.pi + h / 2.0, math.pi - h / 2.0, count)
    return [(float(u), float(v)) for u in pts for v in pts]


@dataclass(frozen=True)
class AveragedRow:
    axis: str
    value: float
    mean_lambda_opt: float
    n_points: int


AVERAGE_MODES = ("mean_lambda_opt", "optimize_averaged")


def _phase_points_for(t: float, d: float,
                      phase_grid: Sequence[tuple[float, float]]) -> list[GyroParams]:
    pts = []
    for u, v in phase_grid:
        p = GyroParams(u, v, t, d)
        if abs(det_m(p)) <= SINGULARITY_GUARD * max(1.0, u * u + v * v):
            continue
        pts.append(p)
    if not pts:
        raise EmptyGridAfterExclusion("all phase points are singular")
    return pts


def _averaged_value(t: float, d: float, phase_grid: Sequence[tuple[float, float]],
                    var: float, obj: Objective, tol: float, mode: str) -> tuple[float, int]:
    pts = _phase_points_for(t, d, phase_grid)
    if mode == "mean_lambda_opt":
        acc = 0.0
        for p in pts:
            acc += optimal_lambda(p, var, obj, tol).lambda_opt
        return acc / len(pts), len(pts)
    # minimize the grid-averaged objective over a single shared lambda

    def mean_obj(lam: float) -> float:
        acc = 0.0
        for p in pts:
            acc += objective_value(p, var, lam, obj)
        return acc / len(pts)

    grid = np.linspace(LAMBDA_LO, LAMBDA_HI, COARSE_POINTS)
    vals = [mean_obj(float(x)) for x in grid]
    i = int(np.argmin(vals))
    a = float(grid[max(i - 1, 0)])
    b = float(grid[min(i + 1, COARSE_POINTS - 1)])
    best_x, best_f = float(grid[i]), vals[i]
    c = b - INV_PHI * (b - a)
    dd = a + INV_PHI * (b - a)
    fc, fd = mean_obj(c), mean_obj(dd)
    if fc < best_f:
        best_x, best_f = c, fc
    if fd < best_f:
        best_x, best_f = dd, fd
    while b - a > tol:
        if fc < fd:
            b, dd, fd = dd, c, fc
            c = b - INV_PHI * (b - a)
            fc = mean_obj(c)
            if fc < best_f:
                best_x, best_f = c, fc
        else:
            a, c, fc = c, dd, fd
            dd = a + INV_PHI * (b - a)
            fd = mean_obj(dd)
            if fd < best_f:
                best_x, best_f = dd, fd
    return best_x, len(pts)


def averaged_lambda_opt(theta_grid: Sequence[float], delta_grid: Sequence[float],
                        phase_grid: Sequence[tuple[float, float]] | None = None,
                        var: float = 10.0, obj: Objective = SUM_PHASE_VAR,
                        tol: float = 1e-7,
                        mode: str = "mean_lambda_opt") -> list[AveragedRow]:
    """Optimal correlation averaged over the phases, as a function of each
    misalignment angle separately.

    For every theta in theta_grid (delta held at 0) and then every delta in
    delta_grid (theta held at 0), optimizes lambda at each phase-grid point
    that passes the singularity guard.  The default mode reports the mean of
    the per-point optima; mode='optimize_averaged' instead minimizes the
    phase-averaged objective over one shared lambda.  Raises
    EmptyGridAfterExclusion when the guard removes every phase point.
    """
    if mode not in AVERAGE_MODES:
        raise ValueError(f"unknown averaging mode {mode!r}")
    if phase_grid is None:
        phase_grid = midpoint_phase_grid()
    rows: list[AveragedRow] = []
    for t in theta_grid:
        mean, npts = _averaged_value(float(t), 0.0, phase_grid, var, obj, tol, mode)
        rows.append(AveragedRow("theta", float(t), mean, npts))
    for d in delta_grid:
        mean, npts = _averaged_value(0.0, float(d), phase_grid, var, obj, tol, mode)
        rows.append(AveragedRow("delta", float(d), mean, npts))
    return rows
