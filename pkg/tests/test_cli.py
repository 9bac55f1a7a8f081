"""Command-line behavior: config handling, output format, exit codes,
byte determinism, and golden files."""

import json

import pytest

CANONICAL = ("--phi-y", "0.66", "--phi-z", "0.17", "--theta", "0.02",
             "--delta", "0.013", "--n-var", "10")


def test_crb_output_shape_and_reference_row(run_cli):
    res = run_cli("crb", *CANONICAL, "--lambda", "0")
    assert res.returncode == 0
    lines = res.stdout.decode().splitlines()
    assert lines[0] == "param,variance_bound"
    assert lines[1] == "phi_y,2.500000000e-02"
    assert len(lines) == 5
    assert res.stdout.endswith(b"\n") and b"\r" not in res.stdout


def test_crb_is_byte_deterministic(run_cli):
    a = run_cli("crb", *CANONICAL, "--lambda", "-0.3")
    b = run_cli("crb", *CANONICAL, "--lambda", "-0.3")
    assert a.stdout == b.stdout


def test_flags_override_config_file(run_cli, tmp_path):
    cfg = tmp_path / "run.json"
    cfg.write_text(json.dumps({"phi_y": 0.01, "phi_z": 0.17, "theta": 0.02,
                               "delta": 0.013, "n_var": 10.0}))
    overridden = run_cli("crb", "--config", str(cfg), "--phi-y", "0.66")
    pure_flags = run_cli("crb", *CANONICAL)
    assert overridden.returncode == 0
    assert overridden.stdout == pure_flags.stdout


def test_unknown_config_key_is_rejected(run_cli, tmp_path):
    cfg = tmp_path / "bad.json"
    cfg.write_text(json.dumps({"phi_y": 0.66, "phi_z": 0.17, "n_var": 10.0,
                               "phí": 1.0}))
    res = run_cli("crb", "--config", str(cfg))
    assert res.returncode == 1
    assert b"unknown config keys" in res.stderr


def test_missing_required_key_is_rejected(run_cli):
    res = run_cli("crb", "--phi-y", "0.66", "--phi-z", "0.17")
    assert res.returncode == 1
    assert b"n_var" in res.stderr


def test_lambda_out_of_range_exits_one(run_cli):
    res = run_cli("crb", *CANONICAL, "--lambda", "1.0")
    assert res.returncode == 1
    assert b"lambda out of range" in res.stderr


def test_singular_model_exits_two(run_cli):
    res = run_cli("crb", "--phi-y", "0", "--phi-z", "0", "--n-var", "10")
    assert res.returncode == 2
    assert b"singular model" in res.stderr


def test_argument_errors_exit_one(run_cli):
    assert run_cli().returncode == 1
    assert run_cli("feasibility").returncode == 1
    assert run_cli("sweep", *CANONICAL, "--axis", "nonsense", "--start", "0",
                   "--stop", "1", "--count", "3").returncode == 1


def test_table1_matches_golden(run_cli, golden_dir):
    res = run_cli("table1")
    assert res.returncode == 0
    assert res.stdout == (golden_dir / "table1.csv").read_bytes()


def test_sweep_config_matches_golden(run_cli, golden_dir):
    res = run_cli("sweep", "--config", str(golden_dir / "sweep_lambda.json"))
    assert res.returncode == 0
    assert res.stdout == (golden_dir / "sweep_lambda.csv").read_bytes()


def test_variance_sweep_tracks_the_inverse_law(run_cli):
    res = run_cli("sweep", *CANONICAL, "--axis", "var", "--grid", "1,10,100")
    lines = res.stdout.decode().splitlines()
    var_phi_y = [float(line.split(",")[1]) for line in lines[1:]]
    assert var_phi_y == pytest.approx([0.25, 0.025, 0.0025], rel=1e-9)


def test_sweep_emits_singular_rows_in_band(run_cli):
    res = run_cli("sweep", "--phi-z", "0.17", "--n-var", "10", "--axis",
                  "phi_y", "--grid=-0.2,0,0.2")
    assert res.returncode == 0
    lines = res.stdout.decode().splitlines()
    assert lines[2] == "0.000000000e+00,,,,,1"
    assert lines[1].endswith(",0") and lines[3].endswith(",0")


def test_optimize_row(run_cli):
    res = run_cli("optimize", *CANONICAL)
    assert res.returncode == 0
    header, row = res.stdout.decode().splitlines()
    assert header == "lambda_opt,objective_value,evaluations,bracket_lo,bracket_hi"
    cells = row.split(",")
    assert float(cells[0]) == pytest.approx(-0.24994, abs=1e-4)
    assert int(cells[2]) > 200


def test_output_flag_writes_identical_bytes(run_cli, tmp_path):
    out = tmp_path / "crb.csv"
    res_file = run_cli("crb", *CANONICAL, "--output", str(out))
    res_stdout = run_cli("crb", *CANONICAL)
    assert res_file.returncode == 0 and res_file.stdout == b""
    assert out.read_bytes() == res_stdout.stdout


def test_feasibility_report_lines(run_cli):
    res = run_cli("feasibility", "--orientations", "3")
    assert res.stdout == b"K=3 measurements=9 parameters=8 feasible=true\n"
    res = run_cli("feasibility", "--orientations", "3", "--include-frame")
    assert res.stdout == b"K=3 measurements=9 parameters=11 feasible=false\n"
    res = run_cli("feasibility", "--orientations", "7", "--axis-mode", "arbitrary")
    assert res.stdout == b"K=7 measurements=21 parameters=24 feasible=false\n"


def test_average_small_run(run_cli):
    res = run_cli("average", "--theta-grid", "0.1", "--delta-grid", "0.1",
                  "--phase-count", "4", "--tol", "1e-5")
    assert res.returncode == 0
    lines = res.stdout.decode().splitlines()
    assert lines[0] == "axis,value,mean_lambda_opt,points"
    assert len(lines) == 3
    assert lines[1].startswith("theta,") and lines[2].startswith("delta,")
    assert all(line.endswith(",16") for line in lines[1:])


def test_weighted_objective_requires_weights(run_cli):
    res = run_cli("optimize", *CANONICAL, "--objective", "weighted")
    assert res.returncode == 1
    res = run_cli("optimize", *CANONICAL, "--objective", "weighted",
                  "--weights", "0,0,1,1")
    assert res.returncode == 0
