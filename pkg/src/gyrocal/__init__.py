"""Quantum Cramer-Rao bounds for a pair of coupled two-orientation Sagnac
interferometers, with probe-correlation optimization and calibration
feasibility counting."""

from .calibration import FeasibilityReport, feasibility_3d, min_orientations
from .errors import (
    ConfigError,
    DegenerateCovariance,
    EmptyGridAfterExclusion,
    GyroCalError,
    InvalidProbeStats,
    SingularMatrix,
    SingularModel,
)
from .fisher import (
    BoundMatrix,
    ClosedFormNumerators,
    FisherMatrix,
    RouteComparisonReport,
    TermComparison,
    closed_form_discrepancy_report,
    closed_form_numerators,
    crb_diag_closed_form,
    crb_matrix,
    ideal_bounds,
    invert_symmetric_4x4,
    qfi_matrix,
    small_misalignment_var_phi_z,
    validation_draws,
)
from .model import (
    OBSERVABLE_NAMES,
    PARAMETER_NAMES,
    CouplingMatrix,
    GyroParams,
    ProbeStats,
    beta,
    coupling_matrix,
    covariance_matrix,
    det_m,
    numeric_jacobian,
    phase_vector,
)
from .optimize import (
    DEFAULT_NUISANCE_GRID,
    FULL_TRACE,
    SUM_PHASE_VAR,
    VAR_DELTA,
    VAR_PHI_Y,
    VAR_PHI_Z,
    VAR_THETA,
    AveragedRow,
    Objective,
    OptimizationResult,
    SweepRow,
    averaged_lambda_opt,
    lambda_opt_small_angle,
    midpoint_phase_grid,
    objective_from_name,
    objective_value,
    optimal_lambda,
    sweep,
)

__version__ = "0.1.0"

__all__ = [
    "AveragedRow",
    "BoundMatrix",
    "ClosedFormNumerators",
    "ConfigError",
    "CouplingMatrix",
    "DEFAULT_NUISANCE_GRID",
    "DegenerateCovariance",
    "EmptyGridAfterExclusion",
    "FULL_TRACE",
    "FeasibilityReport",
    "FisherMatrix",
    "GyroCalError",
    "GyroParams",
    "InvalidProbeStats",
    "OBSERVABLE_NAMES",
    "Objective",
    "OptimizationResult",
    "PARAMETER_NAMES",
    "ProbeStats",
    "RouteComparisonReport",
    "SUM_PHASE_VAR",
    "SingularMatrix",
    "SingularModel",
    "SweepRow",
    "TermComparison",
    "VAR_DELTA",
    "VAR_PHI_Y",
    "VAR_PHI_Z",
    "VAR_THETA",
    "averaged_lambda_opt",
    "beta",
    "closed_form_discrepancy_report",
    "closed_form_numerators",
    "coupling_matrix",
    "covariance_matrix",
    "crb_diag_closed_form",
    "crb_matrix",
    "det_m",
    "feasibility_3d",
    "ideal_bounds",
    "invert_symmetric_4x4",
    "lambda_opt_small_angle",
    "midpoint_phase_grid",
    "min_orientations",
    "numeric_jacobian",
    "objective_from_name",
    "objective_value",
    "optimal_lambda",
    "phase_vector",
    "qfi_matrix",
    "small_misalignment_var_phi_z",
    "sweep",
    "validation_draws",
]
