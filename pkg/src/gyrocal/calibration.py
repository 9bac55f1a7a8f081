"""Counting argument for multi-orientation calibration of a three-axis
gyroscope assembly.

Each calibration orientation k contributes one rotation-rate magnitude
unknown, and every orientation yields three scalar readouts.  The instrument
itself carries five internal unknowns: two scale factors beyond a reference
axis and three inter-axis misalignment angles.  Mounting the assembly with an
unknown rigid rotation relative to the table adds three more.  Calibration is
feasible once the readout count reaches the unknown count.

The counting changes qualitatively if each orientation is allowed an
arbitrary, independent rotation axis: then every orientation brings three
fresh unknowns (axis direction plus magnitude) against its three readouts,
and the deficit from the instrument constants can never be repaid.
"""

from __future__ import annotations

from dataclasses import dataclass

INSTRUMENT_UNKNOWNS = 5
EXTERNAL_FRAME_UNKNOWNS = 3
READOUTS_PER_ORIENTATION = 3

AXIS_MODES = ("fixed", "arbitrary")


@dataclass(frozen=True)
class FeasibilityReport:
    orientations: int
    include_external_frame: bool
    axis_mode: str
    parameter_count: int
    measurement_count: int
    feasible: bool


def feasibility_3d(k: int, include_external_frame: bool = False,
                   axis_mode: str = "fixed") -> FeasibilityReport:
    """Can k orientations determine all unknowns?

    axis_mode='fixed': each orientation has a known rotation axis, so it adds
    a single magnitude unknown; unknowns total k + 5 (+3 with an unknown
    external frame).  axis_mode='arbitrary': each orientation adds three
    unknowns (axis and magnitude), totalling 3k + 3 (+3); since readouts also
    grow as 3k, the instrument constants are never recoverable in that mode.
    """
    if k < 1:
        raise ValueError("orientation count must be positive")
    if axis_mode not in AXIS_MODES:
        raise ValueError(f"unknown axis mode {axis_mode!r}")
    measurements = READOUTS_PER_ORIENTATION * k
    if axis_mode == "fixed":
        parameters = k + INSTRUMENT_UNKNOWNS
    else:
        parameters = 3 * k + EXTERNAL_FRAME_UNKNOWNS
    if include_external_frame:
        parameters += EXTERNAL_FRAME_UNKNOWNS
    return FeasibilityReport(
        orientations=k,
        include_external_frame=include_external_frame,
        axis_mode=axis_mode,
        parameter_count=parameters,
        measurement_count=measurements,
        feasible=measurements >= parameters,
    )


def min_orientations(include_external_frame: bool = False) -> int:
    """Smallest k with 3k >= k + 5 (+3 if the mounting frame is unknown)."""
    k = 1
    while not feasibility_3d(k, include_external_frame).feasible:
        k += 1
    return k
