"""Readers for the benchmark's documented output formats.

This package talks to the benchmark only through its files: metrics.csv
(fixed header), run_summary.json / sweep_summary.json, and gzip JSONL episode
logs. Nothing here imports the benchmark package.
"""

from __future__ import annotations

import gzip
import json
import os
from dataclasses import dataclass

CSV_HEADER = (
    "object_id,category,method,outcome,steps,completion_time_s,"
    "mean_action_eff_pct,action_eff_rsd,time_weighted_jerk_s3"
)


class ParseError(ValueError):
    """Input file does not match the documented benchmark format."""


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


def _parse_float(text: str) -> float | None:
    if text == "":
        return None
    return float(text)


def read_metrics_csv(path: str) -> list[MetricsRow]:
    """Parse metrics.csv; malformed lines raise ParseError naming the line."""
    with open(path, "r", encoding="utf-8") as fh:
        lines = fh.read().splitlines()
    if not lines or lines[0] != CSV_HEADER:
        raise ParseError(f"{path}:1: header does not match the documented format")
    rows = []
    for lineno, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        parts = line.split(",")
        if len(parts) != 9:
            raise ParseError(f"{path}:{lineno}: expected 9 fields, got {len(parts)}")
        try:
            rows.append(
                MetricsRow(
                    object_id=parts[0],
                    category=parts[1],
                    method=parts[2],
                    outcome=parts[3],
                    steps=int(parts[4]),
                    completion_time_s=_parse_float(parts[5]),
                    mean_action_eff_pct=_parse_float(parts[6]),
                    action_eff_rsd=_parse_float(parts[7]),
                    time_weighted_jerk_s3=_parse_float(parts[8]),
                )
            )
        except ValueError as exc:
            raise ParseError(f"{path}:{lineno}: {exc}") from None
    return rows


@dataclass
class EpisodeLog:
    """Minimal view of an episode log: enough to draw figures."""

    object_id: str
    category: str
    method: str
    efficiency_scale: float
    schema_version: int
    times: list[float]
    s_values: list[float]
    gripper_xy: list[tuple[float, float]]
    handle_xy: list[tuple[float, float]]
    estimates: list[list[float] | None]  # 12-float poses or None
    outcome: str | None = None


def read_episode_log(path: str) -> EpisodeLog:
    opener = gzip.open if path.endswith(".gz") else open
    with opener(path, "rt", encoding="utf-8") as fh:
        lines = fh.read().splitlines()
    if not lines:
        raise ParseError(f"{path}: empty log")
    header = json.loads(lines[0])
    if header.get("type") != "header":
        raise ParseError(f"{path}:1: missing log header record")
    log = EpisodeLog(
        object_id=header["object_id"],
        category=header["category"],
        method=header["method"],
        efficiency_scale=header["efficiency_scale"],
        schema_version=header.get("schema_version", 1),
        times=[],
        s_values=[],
        gripper_xy=[],
        handle_xy=[],
        estimates=[],
    )
    for lineno, line in enumerate(lines[1:], start=2):
        rec = json.loads(line)
        if rec["type"] == "step":
            log.times.append(rec["t"])
            log.s_values.append(rec["s"])
            log.gripper_xy.append((rec["g"][9], rec["g"][10]))
            log.handle_xy.append((rec["h"][9], rec["h"][10]))
            log.estimates.append(rec["est"])
        elif rec["type"] == "outcome":
            log.outcome = rec["outcome"]
        else:
            raise ParseError(f"{path}:{lineno}: unknown record type {rec.get('type')!r}")
    return log


def read_sweep_summary(path: str) -> dict:
    with open(path, "r", encoding="utf-8") as fh:
        doc = json.load(fh)
    if "results" not in doc or "thetas" not in doc:
        raise ParseError(f"{path}: not a sweep summary document")
    return doc


def sidecar_schema_version(input_path: str) -> str:
    """Schema version from a run_summary.json next to the input, if any."""
    candidate = os.path.join(os.path.dirname(os.path.abspath(input_path)), "run_summary.json")
    if os.path.exists(candidate):
        try:
            with open(candidate, "r", encoding="utf-8") as fh:
                return str(json.load(fh).get("schema_version", "1"))
        except (OSError, json.JSONDecodeError):
            return "1"
    return "1"


def predicted_positions(log: EpisodeLog) -> list[tuple[float, float]]:
    """Next-pose predictions reconstructed from consecutive pose estimates.

    The constant-velocity model advances the latest estimate by the delta
    between the two most recent ones; only the planar (x, y) track is needed
    for the overlay.
    """
    import numpy as np

    preds = []
    prev = None
    for est in log.estimates:
        if est is not None and prev is not None:
            r_prev = np.array(prev[:9]).reshape(3, 3)
            t_prev = np.array(prev[9:12])
            r_cur = np.array(est[:9]).reshape(3, 3)
            t_cur = np.array(est[9:12])
            # delta = inv(prev) * cur; predicted = cur * delta
            r_delta = r_prev.T @ r_cur
            t_delta = r_prev.T @ (t_cur - t_prev)
            t_pred = r_cur @ t_delta + t_cur
            preds.append((float(t_pred[0]), float(t_pred[1])))
        if est is not None:
            prev = est
    return preds
