"""Figure rendering for benchmark outputs.

All figures are deterministic: the Agg backend, a pinned style, a fixed SVG
hash salt, and stripped date metadata keep repeated invocations byte-stable.
Each figure embeds the benchmark schema version it was produced from as a
footer note.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from . import io as bio

# Series colors shared across figures: measured handle track in blue,
# predictions in orange, the gripper in green, contact markers in red.
PALETTE = {
    "actual": "tab:blue",
    "predicted": "tab:orange",
    "gripper": "tab:green",
    "contacts": "tab:red",
}
METHOD_COLORS = {"proactive": "tab:red", "reactive": "tab:blue"}

FIGURE_KINDS = (
    "time-box",
    "eff-box",
    "rsd-box",
    "jerk-box",
    "eff-temporal",
    "trajectory",
    "sweep",
)

plt.rcParams.update(
    {
        "figure.figsize": (6.4, 4.0),
        "figure.dpi": 120,
        "savefig.dpi": 120,
        "font.size": 9,
        "axes.grid": True,
        "grid.alpha": 0.3,
        "svg.hashsalt": "tacreport",
    }
)


@dataclass(frozen=True)
class FigureSpec:
    kind: str
    inputs: tuple[str, ...]
    output: str
    category: str | None = None  # optional category filter for box plots

    def __post_init__(self):
        if self.kind not in FIGURE_KINDS:
            raise ValueError(f"unknown figure kind {self.kind!r}")
        if not self.inputs:
            raise ValueError("at least one input path required")
        for p in self.inputs:
            if not os.path.exists(p):
                raise FileNotFoundError(p)


def _save(fig, spec: FigureSpec, schema_version: str) -> str:
    fig.text(0.995, 0.005, f"bench schema v{schema_version}",
             ha="right", va="bottom", fontsize=6, color="0.5")
    ext = os.path.splitext(spec.output)[1].lower()
    metadata = None
    if ext == ".svg":
        metadata = {"Date": None}
    elif ext == ".pdf":
        metadata = {"CreationDate": None}
    elif ext == ".png":
        metadata = {"Software": "tacreport"}
    fig.savefig(spec.output, metadata=metadata)
    plt.close(fig)
    return spec.output


def _category_order(rows):
    def key(cat):
        # prismatic, revolute, helical, then bezier orders ascending
        rank = {"prismatic": 0, "revolute": 1, "helical": 2}
        return (rank.get(cat, 3), cat)

    return sorted({r.category for r in rows}, key=key)


def _metric_box(spec: FigureSpec, metric: str, label: str, log_scale: bool = False):
    rows = bio.read_metrics_csv(spec.inputs[0])
    if spec.category:
        rows = [r for r in rows if r.category == spec.category]
    cats = _category_order(rows)
    methods = sorted({r.method for r in rows})
    fig, ax = plt.subplots()
    width = 0.8 / max(len(methods), 1)
    for mi, method in enumerate(methods):
        data, positions = [], []
        for ci, cat in enumerate(cats):
            vals = [
                getattr(r, metric)
                for r in rows
                if r.method == method and r.category == cat
                and getattr(r, metric) is not None and math.isfinite(getattr(r, metric))
            ]
            if vals:
                data.append(vals)
                positions.append(ci + (mi - (len(methods) - 1) / 2.0) * width)
        if not data:
            continue
        color = METHOD_COLORS.get(method, f"C{mi}")
        box = ax.boxplot(
            data, positions=positions, widths=width * 0.9, whis=1.5,
            patch_artist=True, showfliers=True,
            flierprops={"markersize": 2, "markerfacecolor": color},
            medianprops={"color": "black"},
        )
        for patch in box["boxes"]:
            patch.set_facecolor(color)
            patch.set_alpha(0.55)
        ax.plot([], [], color=color, label=method)
    ax.set_xticks(range(len(cats)))
    ax.set_xticklabels(cats, rotation=20)
    ax.set_ylabel(label)
    if log_scale:
        ax.set_yscale("log")
    ax.legend()
    fig.tight_layout()
    return fig, bio.sidecar_schema_version(spec.inputs[0])


def _plot_time_box(spec: FigureSpec):
    return _metric_box(spec, "completion_time_s", "completion time [s]", log_scale=True)


def _plot_eff_box(spec: FigureSpec):
    return _metric_box(spec, "mean_action_eff_pct", "mean action efficiency [%/step]")


def _plot_rsd_box(spec: FigureSpec):
    return _metric_box(spec, "action_eff_rsd", "action efficiency RSD")


def _plot_jerk_box(spec: FigureSpec):
    return _metric_box(spec, "time_weighted_jerk_s3", "time-weighted jerk [s^-3]", log_scale=True)


def _plot_eff_temporal(spec: FigureSpec):
    fig, ax = plt.subplots()
    version = "1"
    for path in spec.inputs:
        log = bio.read_episode_log(path)
        version = str(log.schema_version)
        t = np.asarray(log.times)
        s = np.concatenate([[0.0], np.asarray(log.s_values)])
        eff = np.diff(s) / log.efficiency_scale * 100.0
        color = METHOD_COLORS.get(log.method)
        ax.plot(t, eff, label=f"{log.object_id} ({log.method})", lw=0.9, color=color)
    ax.set_xlabel("time [s]")
    ax.set_ylabel("per-step action efficiency [%]")
    ax.legend()
    fig.tight_layout()
    return fig, version


def _plot_trajectory(spec: FigureSpec):
    log = bio.read_episode_log(spec.inputs[0])
    fig, ax = plt.subplots()
    handle = np.asarray(log.handle_xy)
    gripper = np.asarray(log.gripper_xy)
    predicted = np.asarray(bio.predicted_positions(log))
    ax.plot(handle[:, 0], handle[:, 1], color=PALETTE["actual"],
            lw=1.6, label="actual handle")
    if len(predicted):
        ax.plot(predicted[:, 0], predicted[:, 1], color=PALETTE["predicted"],
                lw=1.0, ls="--", label="predicted handle")
    ax.plot(gripper[:, 0], gripper[:, 1], color=PALETTE["gripper"],
            lw=1.0, label="gripper")
    ax.set_aspect("equal", adjustable="datalim")
    ax.set_xlabel("x [m]")
    ax.set_ylabel("y [m]")
    ax.set_title(f"{log.object_id} ({log.method}, {log.outcome})", fontsize=9)
    ax.legend()
    fig.tight_layout()
    return fig, str(log.schema_version)


def _plot_sweep(spec: FigureSpec):
    doc = bio.read_sweep_summary(spec.inputs[0])
    thetas = sorted(float(k) for k in doc["results"].keys())
    eff = [doc["results"][_key(doc, t)]["mean_eff"] for t in thetas]
    times = [doc["results"][_key(doc, t)]["mean_time"] for t in thetas]
    fig, ax1 = plt.subplots()
    ax1.plot(thetas, eff, "o-", color=PALETTE["actual"], label="mean action efficiency")
    ax1.set_xlabel("base direction offset theta [deg]")
    ax1.set_ylabel("mean action efficiency [%/step]", color=PALETTE["actual"])
    ax2 = ax1.twinx()
    ax2.plot(thetas, times, "s--", color=PALETTE["predicted"], label="mean completion time")
    ax2.set_ylabel("mean completion time [s]", color=PALETTE["predicted"])
    ax2.grid(False)
    fig.tight_layout()
    return fig, str(doc.get("schema_version", "1"))


def _key(doc, theta: float) -> str:
    for k in doc["results"].keys():
        if float(k) == theta:
            return k
    raise bio.ParseError(f"theta {theta} missing from sweep summary")


_RENDERERS = {
    "time-box": _plot_time_box,
    "eff-box": _plot_eff_box,
    "rsd-box": _plot_rsd_box,
    "jerk-box": _plot_jerk_box,
    "eff-temporal": _plot_eff_temporal,
    "trajectory": _plot_trajectory,
    "sweep": _plot_sweep,
}


def plot(spec: FigureSpec) -> str:
    """Render one figure to spec.output and return the written path."""
    fig, version = _RENDERERS[spec.kind](spec)
    return _save(fig, spec, version)
