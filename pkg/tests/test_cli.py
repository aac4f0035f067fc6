"""In-process tests of the command-line interface."""

import json

import pytest

from stokesgreen.cli import EXIT_CONFIG, EXIT_NUMERICAL, EXIT_OK, main


def run(argv):
    return main(argv)


class TestKernelCommand:
    def test_writes_csv(self, tmp_path):
        out = tmp_path / "kernel.csv"
        rc = run(["kernel", "--xi", "1", "0", "--nu", "1.0", "--t", "0.5",
                  "--grid", "0:4:8", "--out", str(out)])
        assert rc == EXIT_OK
        text = out.read_text()
        header, *rest = text.splitlines()
        assert header.startswith("#")
        assert "y,z,entry,part,re,im" in text
        assert any(line.split(",")[3] == "R2" for line in rest if "," in line
                   and not line.startswith("#") and line[0].isdigit())

    def test_deterministic(self, tmp_path):
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        args = ["kernel", "--xi", "2", "1", "--nu", "0.5", "--t", "0.3",
                "--grid", "0:4:8"]
        assert run(args + ["--out", str(a)]) == EXIT_OK
        assert run(args + ["--out", str(b)]) == EXIT_OK
        assert a.read_bytes() == b.read_bytes()

    def test_general_bc(self, tmp_path):
        out = tmp_path / "g.csv"
        rc = run(["kernel", "--xi", "2", "0", "--nu", "1.0", "--t", "0.3",
                  "--grid", "0:4:8", "--general-bc", "alpha=0.5,beta=0,gamma=0,c0=1",
                  "--out", str(out)])
        assert rc == EXIT_OK
        assert "general-bc" in out.read_text()


class TestResolventCommand:
    def test_runs_and_reports_residual(self, tmp_path):
        out = tmp_path / "res.csv"
        rc = run(["resolvent", "--xi", "1", "0", "--nu", "1.0",
                  "--lambda", "3.0", "0.0", "--grid", "0:12:128",
                  "--seed", "7", "--out", str(out)])
        assert rc == EXIT_OK
        text = out.read_text()
        resid = [l for l in text.splitlines() if "boundary_residual=" in l][0]
        assert float(resid.split("boundary_residual=")[1]) < 1e-10

    def test_seed_changes_data(self, tmp_path):
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        base = ["resolvent", "--grid", "0:12:64"]
        run(base + ["--seed", "1", "--out", str(a)])
        run(base + ["--seed", "2", "--out", str(b)])
        assert a.read_bytes() != b.read_bytes()


class TestSolveCommand:
    def test_solve_with_oracle(self, tmp_path):
        out = tmp_path / "solve.csv"
        rc = run(["solve", "--xi", "1", "0", "--nu", "0.5", "--t", "0.4",
                  "--grid", "0:12:256", "--seed", "0", "--oracle",
                  "--out", str(out)])
        assert rc == EXIT_OK
        report = json.loads((tmp_path / "solve.csv.oracle.json").read_text())
        assert report["pass"]
        assert all(e < 1e-3 for e in report["max_rel_errors"].values())


class TestVerifyCommand:
    def test_small_sweep(self, tmp_path):
        out = tmp_path / "verify.json"
        rc = run(["verify", "--xi", "1", "0", "--grid", "0:10:512",
                  "--tol", "1e-3", "--out", str(out)])
        assert rc == EXIT_OK
        report = json.loads(out.read_text())
        assert report["pass"]
        names = {c["name"] for c in report["checks"]}
        assert names == {"kernel_bound_certificate", "resolvent_sector_bound",
                         "biot_savart_roundtrip"}


class TestBiotSavartCommand:
    def test_roundtrip_and_traces(self, tmp_path):
        out = tmp_path / "bs.json"
        rc = run(["biot-savart", "--xi", "2", "1", "--grid", "0:20:1024",
                  "--tol", "1e-3", "--out", str(out)])
        assert rc == EXIT_OK
        report = json.loads(out.read_text())
        assert report["pass"]
        assert report["trace_identity_errors"]["dirichlet"] < 1e-6


class TestConfigAndErrors:
    def test_config_defaults_and_flag_override(self, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"nu": 0.5, "seed": 9, "grid": "0:4:8"}))
        a = tmp_path / "a.csv"
        b = tmp_path / "b.csv"
        # config-supplied nu
        assert run(["--config", str(cfg), "kernel", "--t", "0.3",
                    "--out", str(a)]) == EXIT_OK
        assert "nu=0.5" in a.read_text()
        # flag overrides config
        assert run(["--config", str(cfg), "kernel", "--t", "0.3", "--nu", "1.0",
                    "--out", str(b)]) == EXIT_OK
        assert "nu=1" in b.read_text()

    def test_bad_config_path(self):
        assert run(["--config", "/nonexistent.json", "kernel"]) == EXIT_CONFIG

    def test_config_error_codes(self):
        assert run(["kernel", "--nu", "-1.0"]) == EXIT_CONFIG
        assert run(["kernel", "--tol", "2.0"]) == EXIT_CONFIG
        assert run(["kernel", "--t", "-0.5"]) == EXIT_CONFIG
        assert run(["kernel", "--grid", "1:5:64", "--out", "-"]) == EXIT_CONFIG

    def test_numerical_error_code(self, capsys):
        # lambda on the negative real branch cut -> numerical failure exit
        rc = run(["resolvent", "--xi", "1", "0", "--nu", "1.0",
                  "--lambda", "-2.0", "0.0", "--grid", "0:10:64"])
        assert rc == EXIT_NUMERICAL
        assert "numerical error" in capsys.readouterr().err
