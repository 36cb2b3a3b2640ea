"""Benchmark harness: batched episode execution, metrics, statistics, IO.

File formats (all UTF-8, versioned by ``schema_version``):

* suite.json      one document per suite: seed, generation spec, model list.
* config JSON     experiment configuration, see ``load_experiment_config``.
* metrics.csv     fixed header ``CSV_HEADER``; floats serialized with repr so
                  parsing reproduces the values bit-exactly.
* episode logs    line-delimited JSON, one record per step, optionally gzip
                  (deterministic: mtime pinned to 0).

Episodes are seeded per (suite seed, object id, method), so results are
independent of the worker-pool size; rows are canonicalized by
(object id, method) before serialization.
"""

from __future__ import annotations

import concurrent.futures
import csv
import gzip
import io
import json
import math
import os
import zlib
from dataclasses import dataclass, field, asdict, replace

import numpy as np
from scipy.special import stdtr

from .contact import SensorConfig
from .control import BaselineConfig, BaseVelocity, Command, ControlConfig
from .geom import Pose, Twist
from .objects import (
    ArticulationModel,
    SuiteSpec,
    model_from_dict,
    model_to_dict,
)
from .sim import (
    EpisodeLog,
    FreeFlyingRobot,
    SimConfig,
    StepRecord,
    run_episode,
)

SCHEMA_VERSION = 1
CSV_HEADER = (
    "object_id,category,method,outcome,steps,completion_time_s,"
    "mean_action_eff_pct,action_eff_rsd,time_weighted_jerk_s3"
)
METHODS = ("proactive", "reactive")


class ConfigError(ValueError):
    """Invalid experiment configuration; maps to CLI exit code 2."""


# ---------------------------------------------------------------------------
# experiment configuration


@dataclass
class BaseVelocityPolicy:
    magnitude: float = 0.05
    direction: str = "angle_offset"  # path_tangent_at_start | angle_offset
    angle_deg: float = 10.0          # rough-direction misalignment
    enforce_slip_bound: bool = True

    def __post_init__(self):
        if self.magnitude <= 0:
            raise ConfigError("base velocity magnitude must be positive")
        if self.direction not in ("path_tangent_at_start", "angle_offset"):
            raise ConfigError(f"unknown base direction {self.direction!r}")


@dataclass
class ExperimentConfig:
    # Two pads by default: a parallel-gripper squeeze keeps the mirrored pad
    # engaged whichever way the handle pulls, so lost grip always shows up as
    # a measurable deviation instead of a silently emptied contact set.
    sensor: SensorConfig = field(default_factory=lambda: SensorConfig(pads=2))
    control: ControlConfig = field(default_factory=ControlConfig)
    sim: SimConfig = field(default_factory=SimConfig)
    base_velocity: BaseVelocityPolicy = field(default_factory=BaseVelocityPolicy)
    methods: tuple[str, ...] = METHODS
    jobs: int = 1

    def validate(self) -> None:
        bound = self.sensor.gamma * self.sim.control_rate
        if self.base_velocity.enforce_slip_bound and self.base_velocity.magnitude > bound:
            raise ConfigError(
                f"base velocity {self.base_velocity.magnitude} exceeds the slip bound "
                f"gamma*f = {bound}; set enforce_slip_bound=false to run anyway"
            )
        for m in self.methods:
            if m not in METHODS:
                raise ConfigError(f"unknown method {m!r}")
        if self.jobs < 1:
            raise ConfigError("jobs must be >= 1")


def _build(cls, data: dict, path: str):
    try:
        return cls(**data)
    except TypeError as exc:
        raise ConfigError(f"{path}: {exc}") from None
    except ValueError as exc:
        raise ConfigError(f"{path}: {exc}") from None


def experiment_config_from_dict(doc: dict) -> ExperimentConfig:
    doc = dict(doc)
    version = doc.pop("schema_version", SCHEMA_VERSION)
    if version != SCHEMA_VERSION:
        raise ConfigError(f"unsupported schema_version {version}")
    known = {"sensor", "control", "sim", "base_velocity", "methods", "jobs"}
    unknown = set(doc) - known
    if unknown:
        raise ConfigError(f"unknown config keys: {sorted(unknown)}")
    control_doc = dict(doc.get("control", {}))
    baseline = _build(BaselineConfig, control_doc.pop("baseline", {}), "control.baseline")
    control = _build(ControlConfig, {**control_doc, "baseline": baseline}, "control")
    cfg = ExperimentConfig(
        sensor=_build(SensorConfig, doc.get("sensor", {}), "sensor"),
        control=control,
        sim=_build(SimConfig, doc.get("sim", {}), "sim"),
        base_velocity=_build(BaseVelocityPolicy, doc.get("base_velocity", {}), "base_velocity"),
        methods=tuple(doc.get("methods", METHODS)),
        jobs=int(doc.get("jobs", 1)),
    )
    cfg.validate()
    return cfg


def load_experiment_config(path: str | None) -> ExperimentConfig:
    if path is None:
        cfg = ExperimentConfig()
        cfg.validate()
        return cfg
    with open(path, "r", encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"{path}: invalid JSON ({exc})") from None
    return experiment_config_from_dict(doc)


def make_base_velocity(obj: ArticulationModel, policy: BaseVelocityPolicy,
                       extra_angle_deg: float = 0.0) -> BaseVelocity:
    """Gripper-frame base twist along the (possibly offset) start tangent.

    The rough direction is the path tangent at the start rotated by the
    configured angle about the board normal (z), expressed in the grasp-time
    gripper frame.
    """
    theta = math.radians(extra_angle_deg)
    if policy.direction == "angle_offset":
        theta += math.radians(policy.angle_deg)
    tangent = obj.start_tangent()
    c, s = math.cos(theta), math.sin(theta)
    rot_z = np.array([[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]])
    d_world = rot_z @ tangent
    r0 = obj.pose_at(obj.domain[0]).rotation
    return BaseVelocity(Twist(r0.T @ (policy.magnitude * d_world), np.zeros(3)))


# ---------------------------------------------------------------------------
# metrics


@dataclass(frozen=True)
class MetricsRow:
    object_id: str
    category: str
    method: str
    outcome: str
    steps: int
    completion_time_s: float | None
    mean_action_eff_pct: float | None
    action_eff_rsd: float | None
    time_weighted_jerk_s3: float | None


def metric_time(log: EpisodeLog) -> float:
    """Model time from task initiation to completion (success only)."""
    if log.outcome != "SUCCESS":
        raise ValueError(f"time metric undefined for outcome {log.outcome_label}")
    return log.final_time


def metric_action_efficiency(log: EpisodeLog) -> tuple[float, float]:
    """(mean per-step progress in percent of the success scale, RSD).

    Per-step efficiency is the parameter increment normalized by the
    category's success scale; regressions count negative. RSD is the
    population standard deviation over the mean, +inf when the mean is zero.
    """
    if len(log.records) < 2:
        raise ValueError("need at least 2 steps")
    s = log.s_series()
    eff = np.diff(s) / log.efficiency_scale * 100.0
    mean = float(np.mean(eff))
    if mean == 0.0:
        return 0.0, math.inf
    return mean, float(np.std(eff) / abs(mean))


def metric_jerk(log: EpisodeLog, aggregate: str = "mean") -> float:
    """Completion-time-weighted mean |third derivative| of joint trajectories.

    Joint series are resampled at a uniform 60 Hz before the third-order
    central difference; `aggregate` picks mean (default) or max over joints
    and samples.
    """
    if len(log.records) < 4:
        raise ValueError("insufficient samples")
    t = log.time_series()
    q = np.vstack([log.initial_q] + [r.q for r in log.records])
    total = t[-1]
    h = 1.0 / 60.0
    n_samples = int(math.floor(total / h)) + 1
    if n_samples < 5:
        raise ValueError("insufficient samples")
    grid = np.arange(n_samples) * h
    resampled = np.column_stack([np.interp(grid, t, q[:, j]) for j in range(q.shape[1])])
    jerk = (
        resampled[4:] - 2.0 * resampled[3:-1] + 2.0 * resampled[1:-3] - resampled[:-4]
    ) / (2.0 * h ** 3)
    mag = np.abs(jerk)
    if aggregate == "mean":
        agg = float(np.mean(mag))
    elif aggregate == "max":
        agg = float(np.max(mag))
    else:
        raise ValueError(f"unknown aggregate {aggregate!r}")
    return float(total) * agg


def metrics_row(log: EpisodeLog) -> MetricsRow:
    time_s = log.final_time if log.outcome == "SUCCESS" else None
    try:
        eff_mean, eff_rsd = metric_action_efficiency(log)
    except ValueError:
        eff_mean, eff_rsd = None, None
    try:
        jerk = metric_jerk(log)
    except ValueError:
        jerk = None
    return MetricsRow(
        object_id=log.object_id,
        category=log.category,
        method=log.method,
        outcome=log.outcome_label,
        steps=len(log.records),
        completion_time_s=time_s,
        mean_action_eff_pct=eff_mean,
        action_eff_rsd=eff_rsd,
        time_weighted_jerk_s3=jerk,
    )


def success_rate(rows: list[MetricsRow]) -> float:
    if not rows:
        return 0.0
    return sum(1 for r in rows if r.outcome == "SUCCESS") / len(rows)


# ---------------------------------------------------------------------------
# statistics


@dataclass(frozen=True)
class WelchResult:
    t: float
    dof: float
    p: float
    mean_a: float
    mean_b: float
    sd_a: float
    sd_b: float
    n_a: int
    n_b: int

    @property
    def mean_ratio_b_over_a(self) -> float:
        return self.mean_b / self.mean_a if self.mean_a != 0 else math.inf


def welch_t_test(a, b) -> WelchResult:
    """Two-sided Welch unequal-variance t-test with Satterthwaite dof."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if len(a) < 2 or len(b) < 2:
        raise ValueError("need at least 2 samples per side")
    ma, mb = float(np.mean(a)), float(np.mean(b))
    va, vb = float(np.var(a, ddof=1)), float(np.var(b, ddof=1))
    sa, sb = va / len(a), vb / len(b)
    se2 = sa + sb
    if se2 == 0.0:
        t = 0.0 if ma == mb else math.copysign(math.inf, ma - mb)
        dof = float(len(a) + len(b) - 2)
        p = 1.0 if t == 0.0 else 0.0
    else:
        t = (ma - mb) / math.sqrt(se2)
        dof = se2 ** 2 / (sa ** 2 / (len(a) - 1) + sb ** 2 / (len(b) - 1))
        p = 2.0 * float(stdtr(dof, -abs(t)))
        p = min(max(p, 5e-324), 1.0)
    return WelchResult(t, dof, p, ma, mb, math.sqrt(va), math.sqrt(vb), len(a), len(b))


_COMPARE_METRICS = ("completion_time_s", "mean_action_eff_pct", "time_weighted_jerk_s3")


def compare(rows_a: list[MetricsRow], rows_b: list[MetricsRow]) -> dict:
    """Per-metric Welch comparison of two methods plus per-category stats.

    Only successful rows enter the statistics. Side a is conventionally the
    proactive method; ratios are reported as mean_b / mean_a.
    """
    ok_a = [r for r in rows_a if r.outcome == "SUCCESS"]
    ok_b = [r for r in rows_b if r.outcome == "SUCCESS"]
    if len(ok_a) < 2 or len(ok_b) < 2:
        raise ValueError("need at least 2 successful rows per side")

    def values(rows, metric):
        return [getattr(r, metric) for r in rows if getattr(r, metric) is not None]

    report = {
        "schema_version": SCHEMA_VERSION,
        "n_a": len(rows_a),
        "n_b": len(rows_b),
        "success_rate_a": success_rate(rows_a),
        "success_rate_b": success_rate(rows_b),
        "metrics": {},
        "categories": {},
    }
    for metric in _COMPARE_METRICS:
        va, vb = values(ok_a, metric), values(ok_b, metric)
        if len(va) < 2 or len(vb) < 2:
            continue
        res = welch_t_test(va, vb)
        report["metrics"][metric] = {
            "t": res.t,
            "dof": res.dof,
            "p": res.p,
            "mean_a": res.mean_a,
            "mean_b": res.mean_b,
            "sd_a": res.sd_a,
            "sd_b": res.sd_b,
            "mean_ratio_b_over_a": res.mean_ratio_b_over_a,
        }
    for cat in sorted({r.category for r in rows_a} | {r.category for r in rows_b}):
        cat_entry = {}
        for side, rows in (("a", ok_a), ("b", ok_b)):
            sel = [r for r in rows if r.category == cat]
            for metric in _COMPARE_METRICS:
                vals = values(sel, metric)
                if vals:
                    cat_entry[f"{metric}_mean_{side}"] = float(np.mean(vals))
                    cat_entry[f"{metric}_sd_{side}"] = float(np.std(vals, ddof=1)) if len(vals) > 1 else 0.0
        report["categories"][cat] = cat_entry
    return report


# ---------------------------------------------------------------------------
# suite and CSV serialization


def suite_to_json(models: list[ArticulationModel], spec: SuiteSpec | None = None) -> str:
    doc = {
        "schema_version": SCHEMA_VERSION,
        "seed": spec.seed if spec is not None else None,
        "spec": asdict(spec) if spec is not None else None,
        "models": [model_to_dict(m) for m in models],
    }
    return json.dumps(doc, indent=1, sort_keys=True)


def suite_from_json(text: str) -> list[ArticulationModel]:
    doc = json.loads(text)
    if doc.get("schema_version") != SCHEMA_VERSION:
        raise ConfigError(f"unsupported suite schema_version {doc.get('schema_version')}")
    return [model_from_dict(d) for d in doc["models"]]


def write_suite(models: list[ArticulationModel], out_dir: str, spec: SuiteSpec | None = None) -> str:
    os.makedirs(out_dir, exist_ok=True)
    path = os.path.join(out_dir, "suite.json")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(suite_to_json(models, spec))
    return path


def read_suite(suite_dir: str) -> list[ArticulationModel]:
    path = suite_dir if suite_dir.endswith(".json") else os.path.join(suite_dir, "suite.json")
    if not os.path.exists(path):
        raise ConfigError(f"suite file not found: {path}")
    with open(path, "r", encoding="utf-8") as fh:
        return suite_from_json(fh.read())


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(float(value))  # plain-float repr even for numpy scalars
    return str(value)


def rows_to_csv(rows: list[MetricsRow]) -> str:
    lines = [CSV_HEADER]
    for r in rows:
        lines.append(
            ",".join(
                [
                    r.object_id,
                    r.category,
                    r.method,
                    r.outcome,
                    str(r.steps),
                    _fmt(r.completion_time_s),
                    _fmt(r.mean_action_eff_pct),
                    _fmt(r.action_eff_rsd),
                    _fmt(r.time_weighted_jerk_s3),
                ]
            )
        )
    return "\n".join(lines) + "\n"


def _parse_float(text: str) -> float | None:
    if text == "":
        return None
    return float(text)


def rows_from_csv(text: str) -> list[MetricsRow]:
    reader = csv.reader(io.StringIO(text))
    header = next(reader)
    if ",".join(header) != CSV_HEADER:
        raise ConfigError(f"unexpected CSV header: {','.join(header)!r}")
    rows = []
    for rec in reader:
        if not rec:
            continue
        rows.append(
            MetricsRow(
                object_id=rec[0],
                category=rec[1],
                method=rec[2],
                outcome=rec[3],
                steps=int(rec[4]),
                completion_time_s=_parse_float(rec[5]),
                mean_action_eff_pct=_parse_float(rec[6]),
                action_eff_rsd=_parse_float(rec[7]),
                time_weighted_jerk_s3=_parse_float(rec[8]),
            )
        )
    return rows


# ---------------------------------------------------------------------------
# episode log serialization


def _pose_to_list(p: Pose | None) -> list | None:
    if p is None:
        return None
    return [float(x) for x in np.concatenate([p.rotation.ravel(), p.translation])]


def _pose_from_list(values) -> Pose | None:
    if values is None:
        return None
    a = np.asarray(values, dtype=float)
    return Pose(a[:9].reshape(3, 3), a[9:12])


def _nan_to_none(x: float) -> float | None:
    return None if math.isnan(x) else x


def episode_log_to_lines(log: EpisodeLog):
    yield json.dumps(
        {
            "type": "header",
            "schema_version": SCHEMA_VERSION,
            "object_id": log.object_id,
            "category": log.category,
            "method": log.method,
            "seed": log.seed,
            "control_rate": log.control_rate,
            "efficiency_scale": log.efficiency_scale,
            "success_s": log.success_s,
            "initial_q": [float(x) for x in log.initial_q],
        }
    )
    for r in log.records:
        yield json.dumps(
            {
                "type": "step",
                "i": r.step,
                "t": r.t,
                "g": _pose_to_list(r.gripper),
                "h": _pose_to_list(r.handle),
                "est": _pose_to_list(r.estimate),
                "s": r.s,
                "v": [float(x) for x in r.command.twist.linear],
                "w": [float(x) for x in r.command.twist.angular],
                "dur": r.command.duration,
                "alpha": r.alpha,
                "q": [float(x) for x in r.q],
                "qd": [float(x) for x in r.qdot],
                "dev_mean": _nan_to_none(r.dev_mean),
                "dev_max": _nan_to_none(r.dev_max),
                "mode": r.mode,
            }
        )
    yield json.dumps(
        {
            "type": "outcome",
            "outcome": log.outcome,
            "reason": log.failure_reason,
            "steps": len(log.records),
            "time": log.final_time,
            "reanchors": log.reanchors,
        }
    )


def write_episode_log(log: EpisodeLog, path: str) -> None:
    data = "\n".join(episode_log_to_lines(log)) + "\n"
    if path.endswith(".gz"):
        # filename and mtime pinned so archives are byte-stable across runs
        with open(path, "wb") as raw:
            with gzip.GzipFile(filename="", fileobj=raw, mode="wb", mtime=0) as fh:
                fh.write(data.encode("utf-8"))
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(data)


def read_episode_log(path: str) -> EpisodeLog:
    if path.endswith(".gz"):
        with gzip.open(path, "rt", encoding="utf-8") as fh:
            lines = fh.read().splitlines()
    else:
        with open(path, "r", encoding="utf-8") as fh:
            lines = fh.read().splitlines()
    header = json.loads(lines[0])
    if header.get("type") != "header":
        raise ConfigError(f"{path}: missing log header")
    log = EpisodeLog(
        object_id=header["object_id"],
        category=header["category"],
        method=header["method"],
        seed=header["seed"],
        control_rate=header["control_rate"],
        efficiency_scale=header["efficiency_scale"],
        success_s=header["success_s"],
        initial_q=np.asarray(header["initial_q"], dtype=float),
    )
    for line in lines[1:]:
        rec = json.loads(line)
        if rec["type"] == "step":
            nan = float("nan")
            log.records.append(
                StepRecord(
                    step=rec["i"],
                    t=rec["t"],
                    gripper=_pose_from_list(rec["g"]),
                    handle=_pose_from_list(rec["h"]),
                    estimate=_pose_from_list(rec["est"]),
                    s=rec["s"],
                    command=Command(
                        Twist(np.asarray(rec["v"]), np.asarray(rec["w"])), rec["dur"]
                    ),
                    alpha=rec["alpha"],
                    q=np.asarray(rec["q"], dtype=float),
                    qdot=np.asarray(rec["qd"], dtype=float),
                    dev_mean=rec["dev_mean"] if rec["dev_mean"] is not None else nan,
                    dev_max=rec["dev_max"] if rec["dev_max"] is not None else nan,
                    mode=rec["mode"],
                )
            )
        elif rec["type"] == "outcome":
            log.outcome = rec["outcome"]
            log.failure_reason = rec["reason"]
            log.reanchors = rec.get("reanchors", 0)
    return log


# ---------------------------------------------------------------------------
# suite execution


def episode_seed(suite_seed: int, object_id: str, method: str) -> int:
    """Stable per-episode seed, independent of execution order."""
    key = np.random.SeedSequence(
        [suite_seed, zlib.crc32(object_id.encode()), zlib.crc32(method.encode())]
    )
    return int(key.generate_state(1)[0])


def _run_one(args) -> tuple:
    model_doc, method, cfg, log_dir, extra_angle = args
    obj = model_from_dict(model_doc)
    base = make_base_velocity(obj, cfg.base_velocity, extra_angle_deg=extra_angle)
    seed = episode_seed(cfg.sim.rng_seed, obj.object_id, method)
    log = run_episode(
        method, obj, FreeFlyingRobot(), cfg.sensor, cfg.control, cfg.sim, base, seed
    )
    row = metrics_row(log)
    log_path = None
    if log_dir is not None:
        log_path = os.path.join(log_dir, f"{obj.object_id}__{method}.jsonl.gz")
        write_episode_log(log, log_path)
    return row, log_path


def run_suite(
    models: list[ArticulationModel],
    cfg: ExperimentConfig,
    out_dir: str | None = None,
    extra_angle_deg: float = 0.0,
) -> tuple[list[MetricsRow], list[str]]:
    """Run every (object, method) episode; returns canonically ordered rows.

    Logs stream to <out_dir>/logs as gzip JSONL when out_dir is given.
    Parallelism never changes results: episodes are independently seeded and
    rows are sorted by (object id, method) at the end.
    """
    cfg.validate()
    log_dir = None
    if out_dir is not None:
        log_dir = os.path.join(out_dir, "logs")
        os.makedirs(log_dir, exist_ok=True)
    tasks = [
        (model_to_dict(m), method, cfg, log_dir, extra_angle_deg)
        for m in models
        for method in cfg.methods
    ]
    results = []
    if cfg.jobs > 1:
        with concurrent.futures.ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            results = list(pool.map(_run_one, tasks, chunksize=1))
    else:
        results = [_run_one(t) for t in tasks]
    results.sort(key=lambda pair: (pair[0].object_id, pair[0].method))
    rows = [r for r, _ in results]
    paths = [p for _, p in results if p is not None]
    if out_dir is not None:
        with open(os.path.join(out_dir, "metrics.csv"), "w", encoding="utf-8") as fh:
            fh.write(rows_to_csv(rows))
        summary = {
            "schema_version": SCHEMA_VERSION,
            "methods": list(cfg.methods),
            "suite_seed": cfg.sim.rng_seed,
            "episodes": len(rows),
            "success_rate": success_rate(rows),
            "per_method": {
                m: success_rate([r for r in rows if r.method == m]) for m in cfg.methods
            },
        }
        with open(os.path.join(out_dir, "run_summary.json"), "w", encoding="utf-8") as fh:
            json.dump(summary, fh, indent=1, sort_keys=True)
            fh.write("\n")
    return rows, paths


def angle_sweep(
    models: list[ArticulationModel],
    cfg: ExperimentConfig,
    thetas: list[float],
    out_dir: str | None = None,
) -> dict:
    """Re-run a prismatic suite with the base direction rotated by each theta.

    Returns {theta: {rows, mean_time, mean_eff, success_rate, flagged}};
    |theta| >= 90 deg runs are flagged (failures expected there).
    """
    for m in models:
        if m.kind != "prismatic":
            raise ConfigError("angle sweep requires a prismatic suite")
    # Sweep angles replace the configured rough-direction offset.
    sweep_cfg = replace(cfg, base_velocity=replace(cfg.base_velocity, direction="path_tangent_at_start"))
    out = {}
    for theta in thetas:
        theta_dir = None
        if out_dir is not None:
            theta_dir = os.path.join(out_dir, f"theta_{theta:+07.2f}".replace("+", "p").replace("-", "m"))
            os.makedirs(theta_dir, exist_ok=True)
        rows, _ = run_suite(models, sweep_cfg, out_dir=theta_dir, extra_angle_deg=theta)
        ok = [r for r in rows if r.outcome == "SUCCESS"]
        times = [r.completion_time_s for r in ok if r.completion_time_s is not None]
        effs = [r.mean_action_eff_pct for r in ok if r.mean_action_eff_pct is not None]
        out[theta] = {
            "rows": rows,
            "mean_time": float(np.mean(times)) if times else None,
            "mean_eff": float(np.mean(effs)) if effs else None,
            "success_rate": success_rate(rows),
            "flagged": abs(theta) >= 90.0,
        }
    if out_dir is not None:
        summary = {
            "schema_version": SCHEMA_VERSION,
            "thetas": thetas,
            "results": {
                str(theta): {k: v for k, v in res.items() if k != "rows"}
                for theta, res in out.items()
            },
        }
        with open(os.path.join(out_dir, "sweep_summary.json"), "w", encoding="utf-8") as fh:
            json.dump(summary, fh, indent=1, sort_keys=True)
            fh.write("\n")
    return out


# ---------------------------------------------------------------------------
# suite presets


def desk_suite_spec(seed: int = 0) -> SuiteSpec:
    """Compact 80-object suite: 20 prismatic, 20 revolute, 40 Bezier (orders 2-5)."""
    return SuiteSpec(
        n_prismatic=20,
        n_revolute=20,
        n_helical=0,
        bezier_counts=((2, 10), (3, 10), (4, 10), (5, 10)),
        seed=seed,
    )


def paper_suite_spec(seed: int = 0) -> SuiteSpec:
    """Full-scale suite: 50 prismatic, 50 revolute, 100 Bezier (orders 2-5)."""
    return SuiteSpec(seed=seed)
