import os

import pytest

from tacreport.figures import FigureSpec, plot


class TestBoxFigures:
    @pytest.mark.parametrize("kind", ["time-box", "eff-box", "rsd-box", "jerk-box"])
    def test_renders(self, kind, metrics_csv, tmp_path):
        out = str(tmp_path / f"{kind}.png")
        path = plot(FigureSpec(kind=kind, inputs=(metrics_csv,), output=out))
        assert os.path.getsize(path) > 1000

    def test_category_filter(self, metrics_csv, tmp_path):
        out = str(tmp_path / "f.png")
        plot(FigureSpec(kind="time-box", inputs=(metrics_csv,), output=out,
                        category="revolute"))
        assert os.path.getsize(out) > 1000

    def test_single_row_degenerate(self, metrics_csv, tmp_path):
        lines = open(metrics_csv).read().splitlines()
        single = tmp_path / "one.csv"
        single.write_text("\n".join(lines[:2]) + "\n")
        out = str(tmp_path / "one.png")
        plot(FigureSpec(kind="time-box", inputs=(str(single),), output=out))
        assert os.path.getsize(out) > 1000


class TestTemporalAndTrajectory:
    def test_eff_temporal(self, episode_log_path, tmp_path):
        out = str(tmp_path / "eff_t.png")
        plot(FigureSpec(kind="eff-temporal", inputs=(episode_log_path,), output=out))
        assert os.path.getsize(out) > 1000

    def test_trajectory_has_three_labeled_series(self, episode_log_path, tmp_path):
        # render as SVG and count the legend entries
        out = str(tmp_path / "traj.svg")
        plot(FigureSpec(kind="trajectory", inputs=(episode_log_path,), output=out))
        svg = open(out).read()
        for label in ("actual handle", "predicted handle", "gripper"):
            assert label in svg, label

    def test_schema_version_embedded(self, episode_log_path, tmp_path):
        out = str(tmp_path / "traj.svg")
        plot(FigureSpec(kind="trajectory", inputs=(episode_log_path,), output=out))
        assert "bench schema v1" in open(out).read()


class TestSweepFigure:
    def test_renders(self, sweep_summary_path, tmp_path):
        out = str(tmp_path / "sweep.png")
        plot(FigureSpec(kind="sweep", inputs=(sweep_summary_path,), output=out))
        assert os.path.getsize(out) > 1000


class TestDeterminism:
    @pytest.mark.parametrize("ext", ["png", "svg"])
    def test_byte_stable_across_invocations(self, metrics_csv, tmp_path, ext):
        a = str(tmp_path / f"a.{ext}")
        b = str(tmp_path / f"b.{ext}")
        plot(FigureSpec(kind="time-box", inputs=(metrics_csv,), output=a))
        plot(FigureSpec(kind="time-box", inputs=(metrics_csv,), output=b))
        assert open(a, "rb").read() == open(b, "rb").read()


class TestSpecValidation:
    def test_unknown_kind(self, metrics_csv):
        with pytest.raises(ValueError):
            FigureSpec(kind="pie", inputs=(metrics_csv,), output="x.png")

    def test_missing_input(self):
        with pytest.raises(FileNotFoundError):
            FigureSpec(kind="time-box", inputs=("/nope.csv",), output="x.png")
