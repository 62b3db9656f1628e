import json
import subprocess
import sys
from pathlib import Path

import numpy as np
import pytest

from mcfqc.linalg import matrix_to_literal
from mcfqc.presets import BOUND6_M, DEMO_CROSSTALK_5

FAST_SEARCH = ["--restarts", "5", "--max-iters", "5000"]


def run_cli(*args):
    return subprocess.run(
        [sys.executable, "-m", "mcfqc", *args],
        capture_output=True,
        text=True,
    )


def write_demo_channel(path: Path, alpha=-0.8) -> Path:
    cfg = {"d": 5, "P": matrix_to_literal(DEMO_CROSSTALK_5), "alpha": {"uniform": alpha}}
    target = path / "channel.json"
    target.write_text(json.dumps(cfg), encoding="utf-8")
    return target


def write_bound6(path: Path, m=None) -> Path:
    m = BOUND6_M if m is None else m
    target = path / "m6.json"
    target.write_text(json.dumps({"d": m.shape[0], "M": matrix_to_literal(m)}), encoding="utf-8")
    return target


class TestExitCodes:
    def test_no_arguments_prints_usage(self):
        proc = run_cli()
        assert proc.returncode == 1
        assert "usage" in proc.stderr.lower()

    def test_unknown_subcommand(self):
        proc = run_cli("frobnicate")
        assert proc.returncode == 1
        assert "usage" in proc.stderr.lower()

    def test_missing_input_file_is_io_error(self, tmp_path):
        proc = run_cli("channel-check", "--input", str(tmp_path / "nope.json"))
        assert proc.returncode == 2

    def test_invalid_json_is_validation_error(self, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text("{not json", encoding="utf-8")
        proc = run_cli("channel-check", "--input", str(bad))
        assert proc.returncode == 1


class TestChannelCheck:
    def test_demo_channel_reports_cptp(self, tmp_path):
        cfg = write_demo_channel(tmp_path)
        proc = run_cli("channel-check", "--input", str(cfg))
        assert proc.returncode == 0
        obj = json.loads(proc.stdout)
        assert obj["cptp"]["tp_ok"] is True
        assert obj["cptp"]["cp_ok"] is True
        assert obj["tolerances"] == {"psd_floor": 1e-10, "eq_tol": 1e-10}

    def test_tolerance_overrides_are_reported(self, tmp_path):
        cfg = write_demo_channel(tmp_path)
        proc = run_cli("channel-check", "--input", str(cfg), "--eq-tol", "1e-8")
        obj = json.loads(proc.stdout)
        assert obj["tolerances"]["eq_tol"] == 1e-8


class TestApplyAndChoi:
    def test_apply_default_state(self, tmp_path):
        cfg = write_demo_channel(tmp_path)
        proc = run_cli("apply", "--input", str(cfg))
        assert proc.returncode == 0
        obj = json.loads(proc.stdout)
        diag = [row[i] for i, row in enumerate(obj["state"]["mat"])]
        assert np.allclose(diag, [0.22, 0.24, 0.12, 0.24, 0.18], atol=1e-12)

    def test_apply_with_state_file(self, tmp_path):
        cfg = write_demo_channel(tmp_path, alpha=-1.0)
        state = tmp_path / "state.json"
        state.write_text(json.dumps({"mat": matrix_to_literal(np.eye(5) / 5)}), encoding="utf-8")
        proc = run_cli("apply", "--input", str(cfg), "--state", str(state))
        assert proc.returncode == 0

    def test_choi(self, tmp_path):
        cfg = write_demo_channel(tmp_path)
        proc = run_cli("choi", "--input", str(cfg))
        assert proc.returncode == 0
        obj = json.loads(proc.stdout)
        assert obj["choi"]["d_a"] == 5
        hat = np.array(obj["hat_block"])
        assert hat.shape == (5, 5)


class TestCertify:
    def test_writes_report_and_csv(self, tmp_path):
        cfg = write_demo_channel(tmp_path)
        outdir = tmp_path / "out"
        proc = run_cli(
            "certify", "--input", str(cfg), "--outdir", str(outdir), "--csv", *FAST_SEARCH
        )
        assert proc.returncode == 0
        report = json.loads((outdir / "report.json").read_text())
        names = {v["name"] for v in report["verdicts"]}
        assert names == {"ppt", "cldui-ppt", "realignment", "cldui-realignment"}
        assert (outdir / "output_state.csv").exists()

    def test_non_cp_channel_needs_force(self, tmp_path):
        cfg = write_demo_channel(tmp_path, alpha=-1.2)
        proc = run_cli("certify", "--input", str(cfg), *FAST_SEARCH)
        assert proc.returncode == 1
        assert "completely positive" in proc.stderr
        proc = run_cli("certify", "--input", str(cfg), "--force", *FAST_SEARCH)
        assert proc.returncode == 0
        obj = json.loads(proc.stdout)
        assert obj["warnings"] == ["unphysical parameters"]


class TestDesign:
    def test_bound6_designs_a_cptp_channel(self, tmp_path):
        m6 = write_bound6(tmp_path)
        proc = run_cli("design", "--input", str(m6))
        assert proc.returncode == 0
        obj = json.loads(proc.stdout)
        assert obj["cptp"]["tp_ok"] and obj["cptp"]["cp_ok"]
        p = np.array(obj["channel"]["P"])
        assert p[0, 1] == pytest.approx(0.25, abs=1e-15)

    def test_asymmetric_matrix_is_rejected(self, tmp_path):
        m = BOUND6_M.copy()
        m[0, 1] += 1e-3
        m6 = write_bound6(tmp_path, m)
        proc = run_cli("design", "--input", str(m6))
        assert proc.returncode == 1
        assert "not symmetric" in proc.stderr

    def test_mass_constraint_violation_is_named(self, tmp_path):
        m = 0.9 * BOUND6_M
        m6 = write_bound6(tmp_path, m)
        proc = run_cli("design", "--input", str(m6))
        assert proc.returncode == 1
        assert "sum to 1/d" in proc.stderr

    def test_weight_list_input_form(self, tmp_path):
        d = 3
        target = tmp_path / "p.json"
        target.write_text(
            json.dumps({"d": d, "p": {"ii": [1 / 9, 1 / 9, 1 / 9], "ij": [2 / 9] * 3}}),
            encoding="utf-8",
        )
        proc = run_cli("design", "--input", str(target))
        assert proc.returncode == 0
        obj = json.loads(proc.stdout)
        assert obj["cptp"]["tp_ok"]


class TestCpTest:
    def test_small_dnn_is_separable(self, tmp_path):
        rng = np.random.default_rng(0)
        g = rng.random((3, 2))
        m = g @ g.T
        target = tmp_path / "m.json"
        target.write_text(json.dumps({"d": 3, "M": matrix_to_literal(m)}), encoding="utf-8")
        proc = run_cli("cp-test", "--input", str(target), *FAST_SEARCH)
        assert proc.returncode == 0
        obj = json.loads(proc.stdout)
        assert obj["classification"] == "separable"

    def test_bound6_is_candidate(self, tmp_path):
        m6 = write_bound6(tmp_path)
        proc = run_cli("cp-test", "--input", str(m6), *FAST_SEARCH)
        obj = json.loads(proc.stdout)
        assert obj["classification"] == "ppt-entangled-candidate"
        assert obj["dnn"] is True
        assert obj["search"]["found"] is False


class TestSweep:
    def test_writes_table_and_heatmaps(self, tmp_path):
        cfg = tmp_path / "sweep.json"
        cfg.write_text(
            json.dumps({"d": 5, "P": matrix_to_literal(np.eye(5)), "grid": [0.0, -1.25, -2.0]}),
            encoding="utf-8",
        )
        outdir = tmp_path / "out"
        proc = run_cli("sweep", "--input", str(cfg), "--outdir", str(outdir), *FAST_SEARCH)
        assert proc.returncode == 0
        table = json.loads((outdir / "sweep.json").read_text())
        assert [row["cp_ok"] for row in table["rows"]] == [True, True, False]
        assert (outdir / "action_alpha_-1.25.csv").exists()


class TestDemoFig1:
    def test_outputs_match_closed_forms(self, tmp_path):
        outdir = tmp_path / "fig1"
        proc = run_cli("demo-fig1", "--outdir", str(outdir))
        assert proc.returncode == 0
        expected_diag = DEMO_CROSSTALK_5.sum(axis=0) / 5
        for alpha in (0.0, -0.8, -1.0, -1.2):
            rows = [
                [float(x) for x in line.split(",")]
                for line in (outdir / f"heatmap_alpha_{alpha:g}.csv").read_text().splitlines()
            ]
            mat = np.array(rows)
            assert np.allclose(np.diag(mat), expected_diag, atol=1e-12)
            off = ~np.eye(5, dtype=bool)
            assert np.allclose(mat[off], abs(1 + alpha) / 5, atol=1e-12)
        summary = json.loads((outdir / "summary.json").read_text())
        assert len(summary["rows"]) == 4
        assert (outdir / "crosstalk_table.json").exists()

    def test_byte_stable_across_runs(self, tmp_path):
        out1, out2 = tmp_path / "a", tmp_path / "b"
        assert run_cli("demo-fig1", "--outdir", str(out1)).returncode == 0
        assert run_cli("demo-fig1", "--outdir", str(out2)).returncode == 0
        for name in ("summary.json", "heatmap_alpha_-0.8.csv", "crosstalk_table.json"):
            assert (out1 / name).read_bytes() == (out2 / name).read_bytes()


class TestDemoBound6:
    def test_pinned_outcome_with_reduced_budget(self, tmp_path):
        outdir = tmp_path / "b6"
        proc = run_cli("demo-bound6", "--outdir", str(outdir), *FAST_SEARCH)
        assert proc.returncode == 0, proc.stderr
        report = json.loads((outdir / "report.json").read_text())
        assert report["cptp"]["tp_ok"] and report["cptp"]["cp_ok"]
        assert report["ds_section"]["classification"] == "ppt-entangled-candidate"
        assert (outdir / "pair_weight_matrix.json").exists()

    def test_byte_stable_across_runs(self, tmp_path):
        out1, out2 = tmp_path / "a", tmp_path / "b"
        for out in (out1, out2):
            assert run_cli("demo-bound6", "--outdir", str(out), *FAST_SEARCH).returncode == 0
        assert (out1 / "report.json").read_bytes() == (out2 / "report.json").read_bytes()
