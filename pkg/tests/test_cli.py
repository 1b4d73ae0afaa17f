"""End-to-end command-line tests through a real interpreter, so argument
parsing, exit codes, stream separation, and output formats are all covered
as a user would hit them."""

import json
import os
import subprocess
import sys

import pytest


def run_cli(*args, env_extra=None):
    env = os.environ.copy()
    if env_extra:
        env.update(env_extra)
    return subprocess.run([sys.executable, "-m", "hypersum", *args],
                          capture_output=True, text=True, env=env, timeout=300)


def json_lines(proc):
    return [json.loads(line) for line in proc.stdout.splitlines()]


class TestHyp2f1Command:
    def test_x_zero(self):
        proc = run_cli("hyp2f1", "--a", "0.5", "--b", "1", "--c", "2", "--x", "0")
        assert proc.returncode == 0
        rec = json_lines(proc)[0]
        assert rec["value"] == 1.0
        assert rec["status"] == "ok"

    def test_unit_argument(self):
        proc = run_cli("hyp2f1", "--a", "0.5", "--b", "1", "--c", "2", "--x", "1")
        assert proc.returncode == 0
        rec = json_lines(proc)[0]
        assert rec["value"] == pytest.approx(2.0, rel=1e-14)
        assert rec["method"] == "GaussPoint"

    def test_unit_argument_small_c_exits_2(self):
        proc = run_cli("hyp2f1", "--a", "0.5", "--b", "1", "--c", "1", "--x", "1")
        assert proc.returncode == 2
        assert json_lines(proc)[0]["status"] == "DomainError"
        assert "error" in proc.stderr

    def test_general_series_route(self):
        proc = run_cli("hyp2f1", "--a", "0.3", "--b", "1.7", "--c", "2.2", "--x", "0.41")
        rec = json_lines(proc)[0]
        assert rec["value"] == pytest.approx(1.1250354463099930076, rel=1e-12)


class TestSumCommand:
    def test_geometric_point(self):
        proc = run_cli("sum", "--eta", "1", "--c", "2", "--x", "0")
        assert proc.returncode == 0
        rec = json_lines(proc)[0]
        assert rec["value"] == pytest.approx(2.0, rel=1e-13)
        assert rec["method"] == "auto"
        assert rec["continuation"] is False

    def test_divergent_exits_2(self):
        proc = run_cli("sum", "--eta", "0.4", "--c", "2", "--x", "0.5")
        assert proc.returncode == 2
        assert json_lines(proc)[0]["status"] == "NotConvergent"

    def test_routes_agree(self):
        a = json_lines(run_cli("sum", "--eta", "2", "--c", "2.5", "--x", "0.5",
                               "--method", "direct"))[0]
        b = json_lines(run_cli("sum", "--eta", "2", "--c", "2.5", "--x", "0.5",
                               "--method", "closed"))[0]
        assert a["value"] == pytest.approx(b["value"], rel=1e-9)
        assert a["method"] == "direct"
        assert b["method"] == "closed"

    def test_slow_convergence_exits_3(self):
        proc = run_cli("sum", "--eta", "0.501", "--c", "2", "--x", "0.25",
                       "--method", "direct",
                       env_extra={"HYPERSUM_MAX_TERMS": "2000"})
        assert proc.returncode == 3
        assert json_lines(proc)[0]["status"] == "SlowConvergence"


class TestProgenyCommand:
    def test_pmf_rows(self):
        proc = run_cli("progeny", "pmf", "--lambda", "0.6", "--lmax", "5")
        assert proc.returncode == 0
        recs = json_lines(proc)
        assert len(recs) == 5
        assert recs[0]["p"] == pytest.approx(0.625, rel=1e-13)
        assert recs[4]["p"] == pytest.approx(0.02175, rel=1e-12)
        assert [r["ell"] for r in recs] == [1, 2, 3, 4, 5]

    def test_pgf_is_proper_at_one(self):
        proc = run_cli("progeny", "pgf", "--lambda", "0.6", "--z", "1")
        rec = json_lines(proc)[0]
        assert rec["value"] == pytest.approx(1.0, rel=1e-12)
        assert rec["route"] == "hypergeometric"

    def test_pgf_beyond_radius_uses_surd(self):
        proc = run_cli("progeny", "pgf", "--lambda", "0.6", "--z", "12")
        assert json_lines(proc)[0]["route"] == "elementary"

    def test_general_running_sum(self):
        proc = run_cli("progeny", "general", "--c", "2.5", "--x", "0.49",
                       "--lmax", "8")
        recs = json_lines(proc)
        sums = [r["running_sum"] for r in recs]
        assert all(b > a for a, b in zip(sums, sums[1:]))
        assert sums[-1] < 1.0
        assert recs[6]["q"] == pytest.approx(0.012759031367243320982, rel=1e-12)

    def test_bad_lambda_exits_2(self):
        proc = run_cli("progeny", "pmf", "--lambda", "1.0", "--lmax", "3")
        assert proc.returncode == 2

    def test_csv_format(self):
        proc = run_cli("progeny", "pmf", "--lambda", "0.6", "--lmax", "3",
                       "--format", "csv")
        lines = proc.stdout.splitlines()
        assert lines[0] == "lambda,ell,p,status"
        assert len(lines) == 4
        assert lines[1].split(",")[1] == "1"


class TestSimulateCommand:
    def test_record_fields_and_determinism(self):
        args = ("simulate", "--lambda", "0.6", "--n", "2000", "--seed", "9")
        a = run_cli(*args)
        b = run_cli(*args)
        assert a.returncode == 0
        assert a.stdout == b.stdout
        rec = json_lines(a)[0]
        assert rec["chi_square"] < rec["threshold_0999"]
        assert rec["censored"] == 0
        assert rec["empirical_counts"]["1"] > 1000

    def test_workers_do_not_change_output(self):
        base = ("simulate", "--lambda", "0.6", "--n", "4000", "--seed", "21")
        one = run_cli(*base, "--workers", "1")
        two = run_cli(*base, "--workers", "2")
        assert one.stdout == two.stdout

    def test_non_half_alpha_has_no_analytic_cells(self):
        proc = run_cli("simulate", "--alpha", "0.3", "--lambda", "0.6",
                       "--n", "500", "--seed", "4")
        rec = json_lines(proc)[0]
        assert rec["chi_square"] is None
        assert rec["dof"] is None


class TestVerifyCommand:
    def test_suite_passes(self):
        proc = run_cli("verify", "--suite", "theorem2")
        assert proc.returncode == 0
        rec = json_lines(proc)[0]
        assert rec["pass"] is True
        assert rec["status"] == "ok"


class TestOutputRedirect:
    def test_out_writes_file(self, tmp_path):
        target = tmp_path / "rows.json"
        proc = run_cli("--out", str(target), "progeny", "pmf",
                       "--lambda", "0.6", "--lmax", "2")
        assert proc.returncode == 0
        assert proc.stdout == ""
        recs = [json.loads(line) for line in target.read_text().splitlines()]
        assert len(recs) == 2
        assert recs[0]["p"] == pytest.approx(0.625, rel=1e-13)
