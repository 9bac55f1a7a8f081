"""Exception types shared across the package."""


class GyroCalError(Exception):
    """Base class for all errors raised by this package."""


class InvalidProbeStats(GyroCalError):
    """Probe second moments violate their constraints (|lambda| >= 1 or var <= 0)."""


class SingularMatrix(GyroCalError):
    """A matrix inversion hit a pivot below the numerical tolerance."""


class SingularModel(GyroCalError):
    """The coupling matrix is singular (or nearly so); the four parameters
    cannot be jointly identified at this point."""


class DegenerateCovariance(GyroCalError):
    """A two-observable covariance block has a non-positive determinant."""


class EmptyGridAfterExclusion(GyroCalError):
    """Every grid point was excluded by the singularity guard."""


class ConfigError(GyroCalError):
    """Malformed or inconsistent run configuration."""
