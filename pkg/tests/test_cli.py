"""Tests for the command-line interface.

Exit statuses follow the usual convention: 0 on success, 1 when any check
fails numerically, 2 on usage errors.  Report streams are JSON lines with a
fixed field order so byte-identical reruns are a meaningful guarantee.
"""

import json
import subprocess
import sys

import pytest

from qmb import QBase, qgamma, qpoch, theta
from qmb.cli import RunConfig, main

REPORT_FIELDS = ["id", "seed", "index", "params", "lhs", "rhs",
                 "rel_residual", "status", "reason", "n_terms", "n_nodes"]


def run_lines(path):
    with open(path, "rb") as fh:
        raw = fh.read()
    lines = raw.decode("utf-8").splitlines()
    return [json.loads(line) for line in lines], raw


class TestList:
    def test_catalog_listing(self, capsys):
        assert main(["--list"]) == 0
        out = capsys.readouterr().out.splitlines()
        assert len(out) == 37
        assert any(line.startswith("VWP87_FOUR ") for line in out)


class TestEval:
    def test_theta_matches_library(self, capsys):
        assert main(["eval", "theta", "--z", "0.3+0j", "--q", "0.5"]) == 0
        got = complex(capsys.readouterr().out.strip())
        assert abs(got - theta(0.3, QBase(0.5))) < 1e-15

    def test_qpoch_matches_library(self, capsys):
        assert main(["eval", "qpoch", "--a", "0.2+0.1j", "--q", "0.4",
                     "--n", "5"]) == 0
        got = complex(capsys.readouterr().out.strip())
        assert abs(got - qpoch(0.2 + 0.1j, QBase(0.4), 5)) < 1e-15

    def test_qgamma_matches_library(self, capsys):
        assert main(["eval", "qgamma", "--x", "1.5", "--q", "0.3"]) == 0
        got = complex(capsys.readouterr().out.strip())
        assert abs(got - qgamma(1.5, QBase(0.3))) < 1e-14

    def test_extended_precision_prints_more_digits(self, capsys):
        assert main(["eval", "theta", "--z", "0.3+0j", "--q", "0.5",
                     "--precision", "extended"]) == 0
        text = capsys.readouterr().out.strip()
        real_part = text.strip("()").split()[0]
        assert len(real_part.replace("-", "").replace(".", "")) >= 25
        assert abs(float(real_part) - theta(0.3, QBase(0.5)).real) < 1e-14

    def test_unknown_primitive(self):
        # The argument parser owns this rejection and exits with the
        # usage status.
        with pytest.raises(SystemExit) as exc:
            main(["eval", "nosuch", "--q", "0.5"])
        assert exc.value.code == 2


class TestCheck:
    def test_report_stream_schema(self, tmp_path):
        out = tmp_path / "report.jsonl"
        code = main(["check", "--id", "WP32_SUM2", "--seed", "5",
                     "--count", "3", "--out", str(out)])
        assert code == 0
        rows, _ = run_lines(out)
        summary = rows[-1]
        assert list(summary) == ["total", "pass", "fail", "skipped"]
        assert summary["total"] == 3
        assert summary["pass"] + summary["fail"] + summary["skipped"] == 3
        for index, row in enumerate(rows[:-1]):
            expected = [f for f in REPORT_FIELDS
                        if f != "reason" or "reason" in row]
            assert list(row) == expected
            assert row["id"] == "WP32_SUM2"
            assert row["seed"] == 5
            assert row["index"] == index
            assert list(row["params"]) == ["q", "a", "b", "c", "z"]
            assert row["status"] in ("Pass", "Fail", "Skipped")
            if row["status"] == "Pass":
                assert row["rel_residual"] < 1e-8

    def test_byte_identical_reruns(self, tmp_path):
        a, b = tmp_path / "a.jsonl", tmp_path / "b.jsonl"
        for path in (a, b):
            assert main(["check", "--id", "THETA_RATIO_*", "--seed", "3",
                         "--count", "2", "--out", str(path)]) == 0
        assert a.read_bytes() == b.read_bytes()

    def test_parallel_output_matches_serial(self, tmp_path):
        serial, parallel = tmp_path / "s.jsonl", tmp_path / "p.jsonl"
        args = ["check", "--id", "WP32_*", "--seed", "1", "--count", "2"]
        assert main(args + ["--out", str(serial)]) == 0
        assert main(args + ["--out", str(parallel), "--jobs", "4"]) == 0
        assert serial.read_bytes() == parallel.read_bytes()

    def test_unknown_id_is_usage_error(self, capsys):
        assert main(["check", "--id", "NOSUCH"]) == 2
        assert "NOSUCH" in capsys.readouterr().err

    def test_extended_precision_rejected(self, capsys):
        assert main(["check", "--id", "WP32_SUM2",
                     "--precision", "extended"]) == 2

    def test_no_command_is_usage_error(self):
        assert main([]) == 2


class TestSweep:
    def test_sweep_over_free_scale(self, tmp_path):
        out = tmp_path / "sweep.jsonl"
        code = main(["sweep", "--id", "VWP87_FOUR", "--seed", "2",
                     "--count", "2", "--param", "h",
                     "--values", "0.8,1.1,0.95+0.3j", "--out", str(out)])
        assert code == 0
        rows, _ = run_lines(out)
        # Two sampled base points, each swept over three values.
        assert rows[-1]["total"] == 6
        assert rows[-1]["fail"] == 0

    def test_sweep_needs_single_id(self, capsys):
        assert main(["sweep", "--id", "WP32_*", "--param", "h",
                     "--values", "1.0"]) == 2

    def test_sweep_rejects_unknown_param(self, capsys):
        assert main(["sweep", "--id", "VWP87_FOUR", "--param", "nosuch",
                     "--values", "1.0"]) == 2


class TestPrecisionEnv:
    def test_env_overrides_flag(self, capsys, monkeypatch):
        monkeypatch.setenv("QMB_PRECISION", "extended")
        assert main(["eval", "theta", "--z", "0.3+0j", "--q", "0.5",
                     "--precision", "binary64"]) == 0
        text = capsys.readouterr().out.strip()
        mantissa = text.replace("-", "").replace(".", "")
        assert len(mantissa) >= 25

    def test_invalid_env_value(self, capsys, monkeypatch):
        monkeypatch.setenv("QMB_PRECISION", "bogus")
        assert main(["eval", "theta", "--z", "0.3+0j", "--q", "0.5"]) == 2


class TestRunConfig:
    def test_validation(self):
        with pytest.raises(ValueError):
            RunConfig(command="check", tol=0.0)
        with pytest.raises(ValueError):
            RunConfig(command="check", count=0)
        with pytest.raises(ValueError):
            RunConfig(command="nosuch")
        with pytest.raises(ValueError):
            RunConfig(command="check", jobs=0)
        with pytest.raises(ValueError):
            RunConfig(command="check", precision="float128")


class TestSubprocess:
    def test_module_entry_point_round_trip(self, tmp_path):
        # One end-to-end run through a real interpreter: the installed
        # console path is `python3 -m qmb.cli`.
        out = tmp_path / "sub.jsonl"
        proc = subprocess.run(
            [sys.executable, "-m", "qmb.cli", "check", "--id",
             "GR_PROD_EXPANSION", "--seed", "0", "--count", "2",
             "--out", str(out)],
            capture_output=True, text=True, timeout=120)
        assert proc.returncode == 0, proc.stderr
        rows, _ = run_lines(out)
        assert rows[-1]["fail"] == 0
