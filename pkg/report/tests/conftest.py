import gzip
import json
import math

import numpy as np
import pytest

CSV_HEADER = (
    "object_id,category,method,outcome,steps,completion_time_s,"
    "mean_action_eff_pct,action_eff_rsd,time_weighted_jerk_s3"
)


@pytest.fixture
def metrics_csv(tmp_path):
    rng = np.random.default_rng(0)
    lines = [CSV_HEADER]
    for cat in ("prismatic", "revolute", "bezier2", "bezier3"):
        for i in range(6):
            for method, t_mu, e_mu, j_mu in (
                ("proactive", 6.0, 0.3, 0.5),
                ("reactive", 60.0, 0.03, 8.0),
            ):
                t = t_mu * (1 + 0.1 * rng.standard_normal())
                e = e_mu * (1 + 0.1 * rng.standard_normal())
                j = j_mu * (1 + 0.1 * rng.standard_normal())
                lines.append(
                    f"{cat}-{i:03d},{cat},{method},SUCCESS,300,{t!r},{e!r},{0.5!r},{j!r}"
                )
    path = tmp_path / "metrics.csv"
    path.write_text("\n".join(lines) + "\n")
    (tmp_path / "run_summary.json").write_text(json.dumps({"schema_version": 1}))
    return str(path)


def identity_pose_list(x=0.0, y=0.0):
    return [1.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 1.0, x, y, 0.0]


@pytest.fixture
def episode_log_path(tmp_path):
    """Synthetic circular-arc episode in the documented JSONL format."""
    records = [
        {
            "type": "header", "schema_version": 1, "object_id": "revolute-000",
            "category": "revolute", "method": "proactive", "seed": 1,
            "control_rate": 60.0, "efficiency_scale": math.pi / 3.0,
            "success_s": math.pi / 3.0, "initial_q": [0.0] * 6,
        }
    ]
    r = 0.3
    n = 120
    for i in range(1, n + 1):
        th = prev_th = 1.1 * i / n
        c, s = math.cos(th), math.sin(th)
        pose = [c, -s, 0.0, s, c, 0.0, 0.0, 0.0, 1.0, r * math.sin(th), r * (1 - math.cos(th)), 0.0]
        records.append(
            {
                "type": "step", "i": i, "t": i / 60.0,
                "g": pose, "h": pose, "est": pose, "s": th,
                "v": [0.05, 0.0, 0.0], "w": [0.0, 0.0, 0.0], "dur": 1 / 60.0,
                "alpha": 1.0, "q": [0.0] * 6, "qd": [0.0] * 6,
                "dev_mean": 1e-6, "dev_max": 2e-6, "mode": "proactive",
            }
        )
    records.append({"type": "outcome", "outcome": "SUCCESS", "reason": None,
                    "steps": n, "time": n / 60.0})
    path = tmp_path / "revolute-000__proactive.jsonl.gz"
    data = "\n".join(json.dumps(r) for r in records) + "\n"
    with open(path, "wb") as raw:
        with gzip.GzipFile(filename="", fileobj=raw, mode="wb", mtime=0) as fh:
            fh.write(data.encode())
    return str(path)


@pytest.fixture
def sweep_summary_path(tmp_path):
    doc = {
        "schema_version": 1,
        "thetas": [0.0, 30.0, 60.0],
        "results": {
            "0.0": {"mean_time": 5.0, "mean_eff": 0.33, "success_rate": 1.0, "flagged": False},
            "30.0": {"mean_time": 5.9, "mean_eff": 0.28, "success_rate": 1.0, "flagged": False},
            "60.0": {"mean_time": 10.2, "mean_eff": 0.16, "success_rate": 1.0, "flagged": False},
        },
    }
    path = tmp_path / "sweep_summary.json"
    path.write_text(json.dumps(doc))
    return str(path)
