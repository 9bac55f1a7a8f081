"""Command-line front end: JSON config ingestion, subcommand dispatch, and
CSV emission.

Output is deterministic CSV (lower-case scientific notation, ten significant
digits, LF line endings) so runs can be diffed against committed golden
files.  Exit codes: 0 success, 1 invalid configuration or arguments,
2 non-identifiable model, 3 internal numeric failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

import numpy as np

from .calibration import AXIS_MODES, feasibility_3d
from .errors import (
    ConfigError,
    DegenerateCovariance,
    EmptyGridAfterExclusion,
    InvalidProbeStats,
    SingularMatrix,
    SingularModel,
)
from .fisher import crb_matrix
from .model import PARAMETER_NAMES, GyroParams, ProbeStats
from .optimize import (
    AVERAGE_MODES,
    DEFAULT_NUISANCE_GRID,
    SWEEP_AXES,
    averaged_lambda_opt,
    midpoint_phase_grid,
    objective_from_name,
    optimal_lambda,
    objective_value,
    sweep,
)

# Keys accepted in a JSON config file.  Flags override file values.
KNOWN_KEYS = frozenset({
    "phi_y", "phi_z", "theta", "delta", "n_var", "lambda", "n_measurements",
    "objective", "weights", "tol", "axis", "start", "stop", "count", "grid",
    "theta_grid", "delta_grid", "phase_count", "mode",
})

# Phase pairs of the built-in benchmark table, in presentation order.
BENCHMARK_PAIRS = (
    (0.01, 0.01), (0.01, -0.30),
    (0.20, 0.01), (0.20, 0.20), (0.20, -0.30),
    (-0.30, 0.01), (-0.30, 0.20), (-0.30, -0.30),
)
BENCHMARK_THETA = 0.02
BENCHMARK_DELTA = 0.013
BENCHMARK_VAR = 10.0


def fmt(x: float) -> str:
    x = float(x)
    if x == 0.0:
        x = 0.0  # normalize -0.0 so output is sign-stable
    return f"{x:.9e}"


class _Parser(argparse.ArgumentParser):
    """argparse exits 2 on bad arguments by default; this project reserves 2
    for singular models, so argument errors are remapped to 1."""

    def error(self, message: str) -> None:  # type: ignore[override]
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


_REQUIRED = object()


def _load_config_file(path: str) -> dict:
    try:
        with open(path) as fh:
            raw = json.load(fh)
    except OSError as e:
        raise ConfigError(f"cannot read config file: {e}") from None
    except json.JSONDecodeError as e:
        raise ConfigError(f"config file is not valid JSON: {e}") from None
    if not isinstance(raw, dict):
        raise ConfigError("config file must hold a JSON object")
    unknown = sorted(set(raw) - KNOWN_KEYS)
    if unknown:
        raise ConfigError(f"unknown config keys: {', '.join(unknown)}")
    return raw


def _merged(args: argparse.Namespace, keys: Sequence[str]) -> dict:
    cfg = _load_config_file(args.config) if getattr(args, "config", None) else {}
    for key in keys:
        attr = "lam" if key == "lambda" else key
        val = getattr(args, attr, None)
        if val is not None:
            cfg[key] = val
    return cfg


def _number(cfg: dict, key: str, default=_REQUIRED) -> float:
    if key not in cfg:
        if default is _REQUIRED:
            raise ConfigError(f"missing required key '{key}'")
        return default
    v = cfg[key]
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise ConfigError(f"key '{key}' must be a number")
    return float(v)


def _integer(cfg: dict, key: str, default=_REQUIRED, minimum: int = 1) -> int:
    if key not in cfg:
        if default is _REQUIRED:
            raise ConfigError(f"missing required key '{key}'")
        return default
    v = cfg[key]
    if isinstance(v, bool) or not isinstance(v, int):
        raise ConfigError(f"key '{key}' must be an integer")
    if v < minimum:
        raise ConfigError(f"key '{key}' must be >= {minimum}")
    return v


def _number_list(cfg: dict, key: str, default=_REQUIRED) -> list[float]:
    if key not in cfg:
        if default is _REQUIRED:
            raise ConfigError(f"missing required key '{key}'")
        return list(default)
    v = cfg[key]
    if isinstance(v, str):
        try:
            v = [float(tok) for tok in v.split(",") if tok.strip()]
        except ValueError:
            raise ConfigError(f"key '{key}' must be a comma-separated number list") from None
    if not isinstance(v, (list, tuple)) or not v or any(
            isinstance(x, bool) or not isinstance(x, (int, float)) for x in v):
        raise ConfigError(f"key '{key}' must be a non-empty number list")
    return [float(x) for x in v]


def _lambda_checked(cfg: dict, default: float = 0.0) -> float:
    lam = _number(cfg, "lambda", default)
    if not abs(lam) < 1.0:
        raise ConfigError("lambda out of range")
    return lam


def _objective(cfg: dict):
    name = cfg.get("objective", "sum_phase_var")
    if not isinstance(name, str):
        raise ConfigError("key 'objective' must be a string")
    weights = _number_list(cfg, "weights", None) if "weights" in cfg else None
    try:
        return objective_from_name(name, weights)
    except ValueError as e:
        raise ConfigError(str(e)) from None


def _params(cfg: dict, phase_default=_REQUIRED) -> GyroParams:
    try:
        return GyroParams(
            phi_y=_number(cfg, "phi_y", phase_default),
            phi_z=_number(cfg, "phi_z", phase_default),
            theta=_number(cfg, "theta", 0.0),
            delta=_number(cfg, "delta", 0.0),
        )
    except ValueError as e:
        raise ConfigError(str(e)) from None


def _emit(lines: list[str], output: str | None) -> None:
    text = "\n".join(lines) + "\n"
    if output:
        with open(output, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_crb(args: argparse.Namespace) -> int:
    cfg = _merged(args, ("phi_y", "phi_z", "theta", "delta", "n_var", "lambda",
                         "n_measurements"))
    p = _params(cfg)
    lam = _lambda_checked(cfg)
    stats = ProbeStats.symmetric(_number(cfg, "n_var"), lam)
    n = _integer(cfg, "n_measurements", 1)
    diag = crb_matrix(p, stats, n).diagonals()
    lines = ["param,variance_bound"]
    for name, d in zip(PARAMETER_NAMES, diag):
        lines.append(f"{name},{fmt(d)}")
    _emit(lines, args.output)
    return 0


def cmd_optimize(args: argparse.Namespace) -> int:
    cfg = _merged(args, ("phi_y", "phi_z", "theta", "delta", "n_var",
                         "n_measurements", "objective", "weights", "tol"))
    p = _params(cfg)
    var = _number(cfg, "n_var")
    n = _integer(cfg, "n_measurements", 1)
    obj = _objective(cfg)
    tol = _number(cfg, "tol", 1e-7)
    res = optimal_lambda(p, var, obj, tol, n)
    lines = [
        "lambda_opt,objective_value,evaluations,bracket_lo,bracket_hi",
        f"{fmt(res.lambda_opt)},{fmt(res.objective_value)},{res.evaluations},"
        f"{fmt(res.bracket[0])},{fmt(res.bracket[1])}",
    ]
    _emit(lines, args.output)
    return 0


def _sweep_grid(cfg: dict) -> list[float]:
    if "grid" in cfg:
        return _number_list(cfg, "grid")
    start = _number(cfg, "start")
    stop = _number(cfg, "stop")
    count = _integer(cfg, "count")
    return [float(x) for x in np.linspace(start, stop, count)]


def cmd_sweep(args: argparse.Namespace) -> int:
    cfg = _merged(args, ("phi_y", "phi_z", "theta", "delta", "n_var", "lambda",
                         "n_measurements", "objective", "weights", "tol",
                         "axis", "start", "stop", "count", "grid"))
    axis = cfg.get("axis")
    if axis not in SWEEP_AXES:
        raise ConfigError(f"key 'axis' must be one of {', '.join(SWEEP_AXES)}")
    grid = _sweep_grid(cfg)
    # the swept quantity needs no base value; placeholders are never used
    p = GyroParams(
        phi_y=_number(cfg, "phi_y", 0.0 if axis == "phi_y" else _REQUIRED),
        phi_z=_number(cfg, "phi_z", 0.0 if axis == "phi_z" else _REQUIRED),
        theta=_number(cfg, "theta", 0.0),
        delta=_number(cfg, "delta", 0.0),
    )
    var = _number(cfg, "n_var", 1.0 if axis == "var" else _REQUIRED)
    lam = _lambda_checked(cfg) if axis != "lambda" else 0.0
    n = _integer(cfg, "n_measurements", 1)
    obj = _objective(cfg)
    tol = _number(cfg, "tol", 1e-7)
    rows = sweep(p, var, lam, axis, grid, obj, args.include_lambda_opt, tol, n)
    header = f"{axis},var_phi_y,var_phi_z,var_theta,var_delta,singular"
    if args.include_lambda_opt:
        header += ",lambda_opt"
    lines = [header]
    for r in rows:
        if r.singular:
            cells = [fmt(r.value), "", "", "", "", "1"]
        else:
            cells = [fmt(r.value), fmt(r.var_phi_y), fmt(r.var_phi_z),
                     fmt(r.var_theta), fmt(r.var_delta), "0"]
        if args.include_lambda_opt:
            cells.append("" if r.lambda_opt is None else fmt(r.lambda_opt))
        lines.append(",".join(cells))
    _emit(lines, args.output)
    return 0


def cmd_average(args: argparse.Namespace) -> int:
    cfg = _merged(args, ("n_var", "objective", "weights", "tol", "theta_grid",
                         "delta_grid", "phase_count", "mode"))
    theta_grid = _number_list(cfg, "theta_grid", DEFAULT_NUISANCE_GRID)
    delta_grid = _number_list(cfg, "delta_grid", DEFAULT_NUISANCE_GRID)
    phase_count = _integer(cfg, "phase_count", 24)
    var = _number(cfg, "n_var", 10.0)
    obj = _objective(cfg)
    tol = _number(cfg, "tol", 1e-7)
    mode = cfg.get("mode", "mean_lambda_opt")
    if mode not in AVERAGE_MODES:
        raise ConfigError(f"key 'mode' must be one of {', '.join(AVERAGE_MODES)}")
    rows = averaged_lambda_opt(theta_grid, delta_grid,
                               midpoint_phase_grid(phase_count), var, obj, tol,
                               mode)
    lines = ["axis,value,mean_lambda_opt,points"]
    for r in rows:
        lines.append(f"{r.axis},{fmt(r.value)},{fmt(r.mean_lambda_opt)},{r.n_points}")
    _emit(lines, args.output)
    return 0


def cmd_table1(args: argparse.Namespace) -> int:
    lines = ["phi_y,phi_z,sum_lambda0,sum_lambda_opt,lambda_opt"]
    for u, v in BENCHMARK_PAIRS:
        p = GyroParams(u, v, BENCHMARK_THETA, BENCHMARK_DELTA)
        sum0 = objective_value(p, BENCHMARK_VAR, 0.0, n=1,
                               obj=objective_from_name("sum_phase_var"))
        res = optimal_lambda(p, BENCHMARK_VAR, tol=1e-7)
        lines.append(f"{fmt(u)},{fmt(v)},{fmt(sum0)},{fmt(res.objective_value)},"
                     f"{fmt(res.lambda_opt)}")
    _emit(lines, args.output)
    return 0


def cmd_feasibility(args: argparse.Namespace) -> int:
    rep = feasibility_3d(args.orientations, args.include_frame, args.axis_mode)
    line = (f"K={rep.orientations} measurements={rep.measurement_count} "
            f"parameters={rep.parameter_count} "
            f"feasible={'true' if rep.feasible else 'false'}")
    _emit([line], args.output)
    return 0


def _add_common(sp: argparse.ArgumentParser, *, phases: bool = True,
                lam: bool = False, objective: bool = False) -> None:
    sp.add_argument("--config", metavar="PATH",
                    help="JSON config file; flags override its keys")
    if phases:
        sp.add_argument("--phi-y", dest="phi_y", type=float,
                        help="interferometer phase, first axis (radians)")
        sp.add_argument("--phi-z", dest="phi_z", type=float,
                        help="interferometer phase, second axis (radians)")
        sp.add_argument("--theta", type=float,
                        help="intra-pair misalignment angle (radians, default 0)")
        sp.add_argument("--delta", type=float,
                        help="second-orientation misalignment angle (radians, default 0)")
        sp.add_argument("--n-var", dest="n_var", type=float,
                        help="photon-number variance of each probe mode (dimensionless)")
        sp.add_argument("--n-measurements", dest="n_measurements", type=int,
                        help="independent repetitions (default 1)")
    if lam:
        sp.add_argument("--lambda", dest="lam", type=float,
                        help="probe correlation coefficient, |lambda| < 1 (default 0)")
    if objective:
        sp.add_argument("--objective",
                        help="sum_phase_var (default), full_trace, var_phi_y, "
                             "var_phi_z, var_theta, var_delta, or weighted")
        sp.add_argument("--weights",
                        help="comma-separated weights for --objective weighted")
        sp.add_argument("--tol", type=float,
                        help="optimizer bracket tolerance (default 1e-7)")
    sp.add_argument("--output", metavar="PATH",
                    help="write CSV here instead of standard output")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="gyrocal",
        description="Quantum estimation bounds for a pair of coupled "
                    "two-orientation Sagnac interferometers.  All angles are "
                    "radians; probe variances are dimensionless photon-number "
                    "variances.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("crb", help="bound diagonals at one parameter point")
    _add_common(sp, lam=True)
    sp.set_defaults(func=cmd_crb)

    sp = sub.add_parser("optimize", help="minimize an objective over the probe correlation")
    _add_common(sp, objective=True)
    sp.set_defaults(func=cmd_optimize)

    sp = sub.add_parser("sweep", help="bound diagonals along one swept axis")
    _add_common(sp, lam=True, objective=True)
    sp.add_argument("--axis", help=f"one of {', '.join(SWEEP_AXES)}")
    sp.add_argument("--start", type=float, help="sweep start")
    sp.add_argument("--stop", type=float, help="sweep stop")
    sp.add_argument("--count", type=int, help="number of grid points")
    sp.add_argument("--grid", help="explicit comma-separated grid (overrides start/stop/count)")
    sp.add_argument("--include-lambda-opt", action="store_true",
                    help="append the per-point optimal correlation")
    sp.set_defaults(func=cmd_sweep)

    sp = sub.add_parser("average", help="phase-averaged optimal correlation vs misalignment")
    _add_common(sp, phases=False, objective=True)
    sp.add_argument("--n-var", dest="n_var", type=float,
                    help="photon-number variance of each probe mode (default 10)")
    sp.add_argument("--theta-grid", dest="theta_grid",
                    help="comma-separated misalignment values (first angle)")
    sp.add_argument("--delta-grid", dest="delta_grid",
                    help="comma-separated misalignment values (second angle)")
    sp.add_argument("--phase-count", dest="phase_count", type=int,
                    help="phase grid resolution per axis (default 24)")
    sp.add_argument("--mode", choices=AVERAGE_MODES,
                    help="mean of per-point optima (default) or one shared optimum")
    sp.set_defaults(func=cmd_average)

    sp = sub.add_parser("table1", help="built-in benchmark table of phase-variance sums")
    sp.add_argument("--output", metavar="PATH",
                    help="write CSV here instead of standard output")
    sp.set_defaults(func=cmd_table1)

    sp = sub.add_parser("feasibility", help="orientation-count feasibility for 3D calibration")
    sp.add_argument("--orientations", type=int, required=True,
                    help="number of calibration orientations K")
    sp.add_argument("--include-frame", action="store_true",
                    help="count an unknown mounting rotation as three extra parameters")
    sp.add_argument("--axis-mode", choices=AXIS_MODES, default="fixed",
                    help="whether each orientation's rotation axis is known")
    sp.add_argument("--output", metavar="PATH",
                    help="write the report here instead of standard output")
    sp.set_defaults(func=cmd_feasibility)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, InvalidProbeStats, EmptyGridAfterExclusion, ValueError) as e:
        print(f"gyrocal: error: {e}", file=sys.stderr)
        return 1
    except SingularModel as e:
        print(f"gyrocal: error: {e}", file=sys.stderr)
        return 2
    except (SingularMatrix, DegenerateCovariance, ArithmeticError) as e:
        print(f"gyrocal: error: numeric failure: {e}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
