#!/usr/bin/env python3
"""Regenerate the CSV datasets behind the usual diagnostic figures.

Writes into --out-dir (default figure_data/):

  var_sweep.csv        bound diagonals vs probe variance, log grid, lambda = 0
  lambda_sweep.csv     bound diagonals vs probe correlation at the reference point
  kappa_curve.csv      small-angle optimal correlation vs phase ratio
  averaged_lambda.csv  phase-averaged optimal correlation vs each misalignment

The averaging pass visits a 24 x 24 phase grid per misalignment value and
takes a couple of minutes; --fast shrinks the grid for a smoke run.
"""

import argparse
import sys
from pathlib import Path

import numpy as np

from gyrocal import (
    DEFAULT_NUISANCE_GRID,
    GyroParams,
    averaged_lambda_opt,
    lambda_opt_small_angle,
    midpoint_phase_grid,
    sweep,
)
from gyrocal.cli import fmt

REFERENCE = GyroParams(0.66, 0.17, 0.02, 0.013)
REFERENCE_VAR = 10.0


def write_csv(path: Path, header: str, rows: list[list[str]]) -> None:
    with open(path, "w", newline="") as fh:
        fh.write(header + "\n")
        for cells in rows:
            fh.write(",".join(cells) + "\n")
    print(f"wrote {path}")


def sweep_rows(rows) -> list[list[str]]:
    out = []
    for r in rows:
        if r.singular:
            out.append([fmt(r.value), "", "", "", "", "1"])
        else:
            out.append([fmt(r.value), fmt(r.var_phi_y), fmt(r.var_phi_z),
                        fmt(r.var_theta), fmt(r.var_delta), "0"])
    return out


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__,
                                 formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--out-dir", default="figure_data")
    ap.add_argument("--fast", action="store_true",
                    help="8 x 8 phase grid and looser tolerance for the averaging pass")
    args = ap.parse_args()
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)

    var_grid = [float(x) for x in np.logspace(0.0, 2.0, 41)]
    rows = sweep(REFERENCE, 1.0, 0.0, "var", var_grid)
    write_csv(out / "var_sweep.csv",
              "var,var_phi_y,var_phi_z,var_theta,var_delta,singular",
              sweep_rows(rows))

    lam_grid = [float(x) for x in np.linspace(-0.9, 0.9, 181)]
    rows = sweep(REFERENCE, REFERENCE_VAR, 0.0, "lambda", lam_grid)
    write_csv(out / "lambda_sweep.csv",
              "lambda,var_phi_y,var_phi_z,var_theta,var_delta,singular",
              sweep_rows(rows))

    kappa_grid = [float(x) for x in np.linspace(-5.0, 5.0, 201)]
    write_csv(out / "kappa_curve.csv", "kappa,lambda_opt_small_angle",
              [[fmt(k), fmt(lambda_opt_small_angle(k))] for k in kappa_grid])

    phase_grid = midpoint_phase_grid(8 if args.fast else 24)
    tol = 1e-5 if args.fast else 1e-7
    avg = averaged_lambda_opt(DEFAULT_NUISANCE_GRID, DEFAULT_NUISANCE_GRID,
                              phase_grid, REFERENCE_VAR, tol=tol)
    write_csv(out / "averaged_lambda.csv", "axis,value,mean_lambda_opt,points",
              [[r.axis, fmt(r.value), fmt(r.mean_lambda_opt), str(r.n_points)]
               for r in avg])
    return 0


if __name__ == "__main__":
    sys.exit(main())
