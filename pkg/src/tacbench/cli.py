"""Command-line interface for suite generation, benchmark runs, and analysis.

Exit codes: 0 success, 2 configuration error, 3 runtime failure.
"""

from __future__ import annotations

import argparse
import glob
import json
import os
import sys
from dataclasses import asdict

from . import bench
from .bench import ConfigError
from .objects import SuiteSpec, generate_suite
from .sim import ConfigurationError


def _suite_spec_from_arg(spec_arg: str, seed: int | None) -> SuiteSpec:
    if spec_arg == "desk":
        spec = bench.desk_suite_spec()
    elif spec_arg == "paper":
        spec = bench.paper_suite_spec()
    else:
        with open(spec_arg, "r", encoding="utf-8") as fh:
            try:
                doc = json.load(fh)
            except json.JSONDecodeError as exc:
                raise ConfigError(f"{spec_arg}: invalid JSON ({exc})") from None
        doc.pop("schema_version", None)
        if "bezier_counts" in doc:
            doc["bezier_counts"] = tuple(tuple(x) for x in doc["bezier_counts"])
        for key in ("prismatic_travel", "revolute_radius", "revolute_sweep", "helical_pitch"):
            if key in doc:
                doc[key] = tuple(doc[key])
        try:
            spec = SuiteSpec(**doc)
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"{spec_arg}: {exc}") from None
    if seed is not None:
        spec_doc = asdict(spec)
        spec_doc["seed"] = seed
        spec_doc["bezier_counts"] = tuple(tuple(x) for x in spec_doc["bezier_counts"])
        spec = SuiteSpec(**spec_doc)
    return spec


def cmd_generate(args) -> int:
    spec = _suite_spec_from_arg(args.spec, args.seed)
    models = generate_suite(spec)
    path = bench.write_suite(models, args.out, spec)
    print(f"wrote {len(models)} models to {path}")
    return 0


def cmd_run(args) -> int:
    models = bench.read_suite(args.suite)
    cfg = bench.load_experiment_config(args.config)
    if args.method != "both":
        cfg.methods = (args.method,)
    if args.jobs is not None:
        cfg.jobs = args.jobs
    cfg.validate()
    rows, _ = bench.run_suite(models, cfg, out_dir=args.out)
    rate = bench.success_rate(rows)
    print(f"{len(rows)} episodes, success rate {rate:.3f}; outputs in {args.out}")
    return 0


def cmd_metrics(args) -> int:
    paths = sorted(
        glob.glob(os.path.join(args.logs, "*.jsonl"))
        + glob.glob(os.path.join(args.logs, "*.jsonl.gz"))
    )
    if not paths:
        raise ConfigError(f"no episode logs found under {args.logs}")
    rows = [bench.metrics_row(bench.read_episode_log(p)) for p in paths]
    rows.sort(key=lambda r: (r.object_id, r.method))
    with open(args.out, "w", encoding="utf-8") as fh:
        fh.write(bench.rows_to_csv(rows))
    print(f"wrote {len(rows)} rows to {args.out}")
    return 0


def cmd_compare(args) -> int:
    with open(args.a, "r", encoding="utf-8") as fh:
        rows_a = bench.rows_from_csv(fh.read())
    with open(args.b, "r", encoding="utf-8") as fh:
        rows_b = bench.rows_from_csv(fh.read())
    try:
        report = bench.compare(rows_a, rows_b)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    with open(args.out, "w", encoding="utf-8") as fh:
        json.dump(report, fh, indent=1, sort_keys=True)
        fh.write("\n")
    print(f"wrote comparison report to {args.out}")
    return 0


def cmd_sweep(args) -> int:
    models = bench.read_suite(args.suite)
    cfg = bench.load_experiment_config(args.config)
    if args.jobs is not None:
        cfg.jobs = args.jobs
    thetas = [float(x) for x in args.thetas.split(",") if x.strip() != ""]
    if not thetas:
        raise ConfigError("no sweep angles given")
    flagged = [t for t in thetas if abs(t) >= 90.0]
    if flagged:
        print(f"note: |theta| >= 90 deg runs are expected to fail: {flagged}")
    results = bench.angle_sweep(models, cfg, thetas, out_dir=args.out)
    for theta in thetas:
        res = results[theta]
        print(
            f"theta={theta:+.1f} deg: success {res['success_rate']:.2f}, "
            f"mean time {res['mean_time']}, mean eff {res['mean_eff']}"
        )
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tacbench",
        description="Articulated-object manipulation benchmark harness",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="generate an object suite")
    p.add_argument("--spec", required=True, help="suite spec JSON file, or 'desk'/'paper'")
    p.add_argument("--seed", type=int, default=None, help="override the spec seed")
    p.add_argument("--out", required=True, help="output directory")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("run", help="run a suite and emit metrics.csv plus logs")
    p.add_argument("--suite", required=True, help="directory containing suite.json")
    p.add_argument("--method", choices=["proactive", "reactive", "both"], default="both")
    p.add_argument("--config", default=None, help="experiment config JSON")
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--jobs", type=int, default=None, help="worker processes")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("metrics", help="recompute metrics.csv from stored logs")
    p.add_argument("--logs", required=True, help="directory of episode logs")
    p.add_argument("--out", required=True, help="output CSV path")
    p.set_defaults(func=cmd_metrics)

    p = sub.add_parser("compare", help="Welch comparison of two metrics CSVs")
    p.add_argument("--a", required=True, help="metrics CSV, side a (proactive)")
    p.add_argument("--b", required=True, help="metrics CSV, side b (reactive)")
    p.add_argument("--out", required=True, help="output report JSON")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("sweep", help="base-direction angle sweep on a prismatic suite")
    p.add_argument("--suite", required=True)
    p.add_argument("--thetas", required=True, help="comma-separated degrees, e.g. 0,15,30")
    p.add_argument("--config", default=None)
    p.add_argument("--out", required=True)
    p.add_argument("--jobs", type=int, default=None)
    p.set_defaults(func=cmd_sweep)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, ConfigurationError, FileNotFoundError) as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # runtime failure
        print(f"runtime failure: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
