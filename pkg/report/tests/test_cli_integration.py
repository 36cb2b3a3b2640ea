"""End-to-end: drive the benchmark CLI, then render figures from its files."""

import json
import os
import shutil
import subprocess
import sys

import pytest

TACBENCH = shutil.which("tacbench")
needs_bench = pytest.mark.skipif(TACBENCH is None, reason="tacbench CLI not installed")

CLI = [sys.executable, "-m", "tacreport.cli"]


def run(cmd, **kw):
    return subprocess.run(cmd, capture_output=True, text=True, **kw)


@pytest.fixture(scope="module")
def bench_run(tmp_path_factory):
    root = tmp_path_factory.mktemp("bench")
    spec = {"n_prismatic": 1, "n_revolute": 1, "n_helical": 0,
            "bezier_counts": [[3, 1]], "seed": 11}
    spec_path = root / "spec.json"
    spec_path.write_text(json.dumps(spec))
    suite = root / "suite"
    out = root / "run"
    assert run([TACBENCH, "generate", "--spec", str(spec_path), "--out", str(suite)]).returncode == 0
    assert run([TACBENCH, "run", "--suite", str(suite), "--out", str(out)]).returncode == 0
    return root, out


@needs_bench
class TestAgainstRealBenchOutputs:
    def test_box_plots_from_run(self, bench_run, tmp_path):
        _, out = bench_run
        for kind in ("time-box", "eff-box", "jerk-box"):
            res = run(CLI + [kind, "--in", str(out / "metrics.csv"),
                             "--out", str(tmp_path / f"{kind}.png")])
            assert res.returncode == 0, res.stderr

    def test_trajectory_and_temporal_from_logs(self, bench_run, tmp_path):
        _, out = bench_run
        logs = sorted(os.listdir(out / "logs"))
        log = str(out / "logs" / logs[0])
        res = run(CLI + ["trajectory", "--in", log, "--out", str(tmp_path / "traj.png")])
        assert res.returncode == 0, res.stderr
        res = run(CLI + ["eff-temporal", "--in", log, "--out", str(tmp_path / "eff.png")])
        assert res.returncode == 0, res.stderr

    def test_sweep_figure_from_run(self, bench_run, tmp_path):
        root, _ = bench_run
        # prismatic-only sweep
        spec = root / "spec_p.json"
        spec.write_text(json.dumps({"n_prismatic": 2, "n_revolute": 0,
                                    "bezier_counts": [], "seed": 12}))
        suite = root / "suite_p"
        sweep_out = root / "sweep"
        assert run([TACBENCH, "generate", "--spec", str(spec), "--out", str(suite)]).returncode == 0
        assert run([TACBENCH, "sweep", "--suite", str(suite), "--thetas", "0,30",
                    "--out", str(sweep_out)]).returncode == 0
        res = run(CLI + ["sweep", "--in", str(sweep_out / "sweep_summary.json"),
                         "--out", str(tmp_path / "sweep.png")])
        assert res.returncode == 0, res.stderr

    def test_figures_byte_stable(self, bench_run, tmp_path):
        _, out = bench_run
        a, b = str(tmp_path / "a.png"), str(tmp_path / "b.png")
        for target in (a, b):
            res = run(CLI + ["time-box", "--in", str(out / "metrics.csv"), "--out", target])
            assert res.returncode == 0, res.stderr
        assert open(a, "rb").read() == open(b, "rb").read()


class TestCliErrors:
    def test_missing_input_exits_2(self, tmp_path):
        res = run(CLI + ["time-box", "--in", "/does/not/exist.csv",
                         "--out", str(tmp_path / "x.png")])
        assert res.returncode == 2

    def test_malformed_csv_exits_2(self, tmp_path):
        bad = tmp_path / "bad.csv"
        bad.write_text("nope\n")
        res = run(CLI + ["time-box", "--in", str(bad), "--out", str(tmp_path / "x.png")])
        assert res.returncode == 2
        assert "header" in res.stderr
