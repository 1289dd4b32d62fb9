import json
import math

import pytest

from ticov.cli import main, manifest_path


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


@pytest.fixture
def path_graph_file(tmp_path):
    p = tmp_path / "path.txt"
    p.write_text("n=3\n0 1\n1 2\n")
    return p


def test_index_path_graph(capsys, path_graph_file):
    code, out, _ = run_cli(capsys, "index", str(path_graph_file), "--f", "randic")
    assert code == 0
    tx = float(out.splitlines()[0].split("=")[1])
    assert tx == pytest.approx(math.sqrt(2.0), abs=1e-8)
    assert "T_1 = 2" in out
    assert "degree histogram: 1:2 2:1" in out


def test_index_empty_graph(capsys, tmp_path):
    p = tmp_path / "empty.txt"
    p.write_text("n=4\n")
    code, out, _ = run_cli(capsys, "index", str(p), "--f", "id")
    assert code == 0
    assert "T_X = 0.0" in out
    assert "T_1 = 0" in out


def test_index_self_loop_exits_2_naming_line(capsys, tmp_path):
    p = tmp_path / "bad.txt"
    p.write_text("n=2\n0 0\n")
    code, _, err = run_cli(capsys, "index", str(p), "--f", "id")
    assert code == 2
    assert "line 2" in err


def test_index_missing_file_exits_nonzero(capsys, tmp_path):
    code, _, err = run_cli(capsys, "index", str(tmp_path / "nope.txt"), "--f", "id")
    assert code == 1
    assert "error" in err


def test_exact_constant_variance_identity(capsys):
    code, out, _ = run_cli(capsys, "exact", "--n", "4", "--p", "0.5", "--f", "const:1")
    assert code == 0
    assert "cov_exact = 1.5" in out


def test_exact_n3_identity(capsys):
    code, out, _ = run_cli(capsys, "exact", "--n", "3", "--p", "0.5", "--f", "id")
    assert code == 0
    assert "cov_exact = 2.8125" in out
    assert "e_txt1 = 7.875" in out


def test_exact_two_vertices(capsys):
    code, out, _ = run_cli(capsys, "exact", "--n", "2", "--p", "0.3", "--f", "id")
    assert code == 0
    assert "e_tx = 0.3" in out


def test_exact_rejects_p_above_one(capsys):
    code, _, err = run_cli(capsys, "exact", "--n", "4", "--p", "1.5", "--f", "id")
    assert code == 2
    assert "error" in err


def test_exact_superlinear_function_reports_na(capsys):
    code, out, _ = run_cli(capsys, "exact", "--n", "10", "--p", "0.2", "--f", "pow:2")
    assert code == 0
    assert "cov_asymptotic_coeff = n/a" in out


def test_exact_superlinear_with_cap(capsys):
    code, out, _ = run_cli(
        capsys, "exact", "--n", "10", "--p", "0.2", "--f", "pow:2", "--max-terms", "2000"
    )
    assert code == 0
    assert "cov_asymptotic_coeff = n/a" not in out


def test_alpha_and_p_mutually_exclusive(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["exact", "--n", "4", "--p", "0.5", "--alpha", "2", "--f", "id"])
    assert exc.value.code == 2


def test_oracle_passes_and_exits_zero(capsys):
    code, out, _ = run_cli(capsys, "oracle", "--n", "4", "--p", "0.5", "--f", "id")
    assert code == 0
    assert "E[T_X]" in out
    assert "12.0" in out
    assert "independence_dev" in out
    assert "all deltas < 1e-09: yes" in out


def test_oracle_exit_3_when_tolerance_impossible(capsys, monkeypatch):
    # force the verification gate shut to exercise the failure exit code
    monkeypatch.setattr("ticov.cli.ORACLE_REL_TOL", 1e-300)
    code, out, _ = run_cli(capsys, "oracle", "--n", "3", "--p", "0.5", "--f", "randic")
    assert code == 3
    assert "NO" in out


def test_oracle_budget_exceeded(capsys):
    code, _, err = run_cli(capsys, "oracle", "--n", "8", "--p", "0.5", "--f", "id")
    assert code == 2
    assert "error" in err


def test_dfk_reports_gap(capsys):
    code, out, _ = run_cli(capsys, "dfk", "--n", "100", "--alpha", "2", "--f", "id", "--k", "1")
    assert code == 0
    lines = dict(line.split(" = ") for line in out.strip().splitlines())
    assert float(lines["dfk_exact"]) == pytest.approx(1 + 98 * 0.02)
    assert float(lines["dfk_poisson"]) == pytest.approx(3.0, abs=1e-9)
    assert float(lines["gap"]) == pytest.approx(2 * 2.0 / 100, abs=1e-9)


def test_simulate_writes_csv_and_manifest(capsys, tmp_path):
    out_csv = tmp_path / "sim.csv"
    code, out, _ = run_cli(
        capsys,
        "simulate",
        "--n", "30", "--alpha", "2", "--f", "id",
        "--samples", "500", "--seed", "5", "--out", str(out_csv),
    )
    assert code == 0
    text = out_csv.read_text()
    header, row = text.strip().split("\n")
    assert header.startswith("n,alpha,p,d1_exact,d2_exact,d1_poisson,d2_poisson,")
    assert row.startswith("30,")
    manifest = json.loads(manifest_path(out_csv).read_text())
    assert manifest["subcommand"] == "simulate"
    assert manifest["seed"] == 5
    assert manifest["parameters"]["samples"] == 500
    assert "timestamp" in manifest


def test_simulate_same_seed_is_byte_identical(capsys, tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    for out in (a, b):
        code, _, _ = run_cli(
            capsys,
            "simulate",
            "--n", "25", "--alpha", "1.5", "--f", "randic",
            "--samples", "400", "--seed", "9", "--out", str(out),
        )
        assert code == 0
    assert a.read_bytes() == b.read_bytes()


def test_simulate_rejects_single_sample(capsys, tmp_path):
    code, _, err = run_cli(
        capsys,
        "simulate",
        "--n", "25", "--alpha", "1.5", "--f", "id",
        "--samples", "1", "--seed", "0", "--out", str(tmp_path / "x.csv"),
    )
    assert code == 2
    assert "2 samples" in err


def test_sweep_grid_and_worker_invariance(capsys, tmp_path):
    outs = []
    for name, workers in [("w1.csv", "1"), ("w3.csv", "3")]:
        out_csv = tmp_path / name
        code, _, _ = run_cli(
            capsys,
            "sweep",
            "--n", "20,30", "--alpha", "2", "--f", "id",
            "--samples", "300", "--seed", "4", "--workers", workers,
            "--out", str(out_csv),
        )
        assert code == 0
        outs.append(out_csv.read_bytes())
    assert outs[0] == outs[1]
    lines = outs[0].decode().strip().split("\n")
    assert len(lines) == 3  # header + 2 cells


def test_sweep_manifest_round_trip_reproduces_csv(capsys, tmp_path):
    first = tmp_path / "first.csv"
    code, _, _ = run_cli(
        capsys,
        "sweep",
        "--n", "15,25", "--alpha", "1,2", "--f", "randic",
        "--samples", "200", "--seed", "31", "--out", str(first),
    )
    assert code == 0
    manifest = json.loads(manifest_path(first).read_text())
    params = manifest["parameters"]
    second = tmp_path / "second.csv"
    argv = [
        "sweep",
        "--n", ",".join(str(v) for v in params["n"]),
        "--alpha", ",".join(str(v) for v in params["alpha"]),
        "--f", params["f"],
        "--samples", str(params["samples"]),
        "--seed", str(manifest["seed"]),
        "--workers", str(params["workers"]),
        "--out", str(second),
    ]
    assert main(argv) == 0
    capsys.readouterr()
    assert first.read_bytes() == second.read_bytes()


def test_decorrelate_prints_exact_zero(capsys):
    code, out, _ = run_cli(capsys, "decorrelate", "--n", "100", "--alpha", "2", "--f", "id")
    assert code == 0
    assert "cov_after = 0.0" in out
    assert "shifted = shift:id:" in out


def test_decorrelate_randic(capsys):
    code, out, _ = run_cli(capsys, "decorrelate", "--n", "50", "--alpha", "1", "--f", "randic")
    assert code == 0
    assert "cov_after = 0.0" in out


def test_decorrelate_zero_function_no_op(capsys):
    code, out, _ = run_cli(capsys, "decorrelate", "--n", "20", "--alpha", "2", "--f", "const:0")
    assert code == 0
    assert "d1 = 0.0" in out
    assert "cov_before = 0.0" in out
    assert "cov_after = 0.0" in out


def test_cov0_identity_not_zero(capsys):
    code, out, _ = run_cli(capsys, "cov0", "--alpha", "2", "--f", "id", "--jmax", "3")
    assert code == 0
    assert "zero_covariance = no" in out
    assert "c_0 = 0.5" in out
    assert "c_1 = 2.0" in out


def test_cov0_shifted_is_zero(capsys):
    code, out, _ = run_cli(capsys, "cov0", "--alpha", "2", "--f", "shift:id:3.0", "--jmax", "2")
    assert code == 0
    # the limit of d_{f}(1) for f = id - 3 at alpha = 2 is (1 + 2) - 3 = 0
    assert "zero_covariance = yes" in out


def test_bad_function_spec_exits_2(capsys):
    code, _, err = run_cli(capsys, "exact", "--n", "4", "--p", "0.5", "--f", "nope")
    assert code == 2
    assert "function spec" in err
