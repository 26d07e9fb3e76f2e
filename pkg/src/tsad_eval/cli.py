"""Command-line entry point: ``tsad-eval {evaluate,curves,simulate,cases}``.

Comma-separated flag values expand to the cross product of runs. Exit codes:
0 success, 1 file/I-O error, 2 invalid flags or inputs.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

import numpy as np

from . import io
from .analytic import CurveSpec, f1_curve
from .core import DecaySpec, check_same_length
from .metrics import compute_metrics
from .protocols import PA, PADF, PAK, PRECISION_MODES, PROTOCOLS, ProtocolConfig, score
from .simulate import SUITES, build_scenario, run_baseline, run_suite
from .thresholding import ThresholdSpec, evaluate_scores

EXIT_OK, EXIT_IO, EXIT_USAGE = 0, 1, 2
SEED_ENV = "TSAD_EVAL_SEED"


class UsageError(Exception):
    pass


def _split(text: str, cast, name: str) -> list:
    items = [t.strip() for t in text.split(",") if t.strip()]
    if not items:
        raise UsageError(f"--{name} needs at least one value")
    try:
        return [cast(t) for t in items]
    except ValueError:
        raise UsageError(f"--{name}: cannot parse {text!r}") from None


def _configs(args) -> list[ProtocolConfig]:
    protocols = _split(args.protocol, str, "protocol")
    for p in protocols:
        if p not in PROTOCOLS:
            raise UsageError(f"unknown protocol {p!r}; choose from {', '.join(PROTOCOLS)}")
    ks = _split(args.k, float, "k")
    ds = _split(args.d, float, "d")
    modes = _split(args.precision_mode, str, "precision-mode")
    for k in ks:
        if not 0 <= k <= 100:
            raise UsageError(f"--k must lie in [0, 100], got {k:g}")
    for d in ds:
        if not 0 < d <= 1:
            raise UsageError(f"--d must lie in (0, 1], got {d:g}")
    for m in modes:
        if m not in PRECISION_MODES:
            raise UsageError(f"--precision-mode must be one of {', '.join(PRECISION_MODES)}")
    if not args.beta > 0:
        raise UsageError("--beta must be positive")

    configs = []
    for p in protocols:
        if p == PAK:
            configs += [ProtocolConfig(PAK, k=k, beta=args.beta) for k in ks]
        elif p == PADF:
            configs += [
                ProtocolConfig(PADF, decay=DecaySpec.exponential(d), precision_mode=m, beta=args.beta)
                for d in ds
                for m in modes
            ]
        else:
            configs.append(ProtocolConfig(p, beta=args.beta))
    return configs


def _threshold_spec(args, required: bool) -> ThresholdSpec | None:
    if args.threshold is not None:
        return ThresholdSpec.fixed(args.threshold)
    if args.sweep:
        return ThresholdSpec()
    if required:
        raise UsageError("scores need either --threshold X or --sweep")
    return None


def cmd_evaluate(args) -> int:
    if (args.scores is None) == (args.predictions is None):
        raise UsageError("give exactly one of --scores or --predictions")
    if args.predictions is not None and (args.sweep or args.threshold is not None):
        raise UsageError("--threshold/--sweep apply to --scores only")
    if args.scores is not None and args.prob:
        raise UsageError("--prob applies to --predictions only")
    configs = _configs(args)
    labels = io.read_series(args.labels, "labels")

    reports = []
    if args.scores is not None:
        spec = _threshold_spec(args, required=True)
        scores = io.read_series(args.scores, "scores")
        check_same_length(labels, scores)
        for cfg in configs:
            _, report = evaluate_scores(labels, scores, cfg, spec)
            reports.append(report)
    else:
        kind = "predictions-prob" if args.prob else "predictions-binary"
        preds = io.read_series(args.predictions, kind)
        check_same_length(labels, preds)
        if args.prob and any(cfg.protocol != PADF for cfg in configs):
            raise UsageError("probabilistic predictions are scored with --protocol padf only")
        for cfg in configs:
            reports.append(compute_metrics(score(labels, preds, cfg), cfg.beta, protocol=cfg))

    io.write_report(reports if len(reports) > 1 else reports[0], args.out)
    return EXIT_OK


def parse_grid(text: str) -> np.ndarray:
    """``start:stop:step`` inclusive of ``stop`` (within half a step)."""
    parts = text.split(":")
    if len(parts) != 3:
        raise UsageError(f"--theta-grid must be start:stop:step, got {text!r}")
    try:
        start, stop, step = (float(p) for p in parts)
    except ValueError:
        raise UsageError(f"--theta-grid: cannot parse {text!r}") from None
    if step <= 0 or stop < start:
        raise UsageError(f"--theta-grid {text!r} is empty")
    if start < 0 or stop > 1:
        raise UsageError("--theta-grid must stay inside [0, 1]")
    count = int(np.floor((stop - start) / step + 0.5)) + 1
    return np.round(start + step * np.arange(count), 12)


def cmd_curves(args) -> int:
    grid = parse_grid(args.theta_grid)
    ns = _split(args.n, int, "n")
    ds = _split(args.d, float, "d")
    protocols = _split(args.protocol, str, "protocol")
    if any(n < 1 for n in ns):
        raise UsageError("--n values must be positive")
    if any(not 0 < d <= 1 for d in ds):
        raise UsageError("--d values must lie in (0, 1]")
    if not 0 < args.anomaly_ratio < 1:
        raise UsageError("--anomaly-ratio must lie in (0, 1)")
    specs = []
    for proto in protocols:
        if proto not in (PA, PADF):
            raise UsageError("curves support --protocol pa and padf")
        for n in ns:
            if proto == PA:
                specs.append(CurveSpec(PA, n, args.anomaly_ratio, 1.0))
            else:
                specs += [CurveSpec(PADF, n, args.anomaly_ratio, d) for d in ds]
    io.write_curve(f1_curve(grid, specs), args.out)
    return EXIT_OK


def _seed(args) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get(SEED_ENV)
    if env is None:
        return 0
    try:
        return int(env)
    except ValueError:
        raise UsageError(f"{SEED_ENV} must be an integer, got {env!r}") from None


def cmd_simulate(args) -> int:
    if args.trials < 1:
        raise UsageError("--trials must be >= 1")
    if args.sweep and args.threshold is not None:
        raise UsageError("use either --threshold or --sweep")
    configs = _configs(args)
    seed = _seed(args)
    spec = _threshold_spec(args, required=False) or ThresholdSpec()
    labels = io.read_series(args.labels, "labels")
    stats = [run_baseline(labels, cfg, args.trials, seed, spec) for cfg in configs]
    io.write_stats(stats, args.out)
    return EXIT_OK


def cmd_cases(args) -> int:
    if args.suite not in SUITES:
        raise UsageError(f"unknown suite {args.suite!r}; known: {', '.join(sorted(SUITES))}")
    if not 0 < args.d <= 1:
        raise UsageError("--d must lie in (0, 1]")
    if args.precision_mode not in PRECISION_MODES:
        raise UsageError(f"--precision-mode must be one of {', '.join(PRECISION_MODES)}")
    cfg = ProtocolConfig(PADF, decay=DecaySpec.exponential(args.d), precision_mode=args.precision_mode)
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)

    rows = run_suite(args.suite, cfg)
    table = []
    for case, report in rows:
        labels, preds = build_scenario(case.spec)
        io.write_series(out_dir / f"case_{case.name}_labels.csv", labels)
        io.write_series(out_dir / f"case_{case.name}_predictions.csv", preds)
        table.append(
            [case.name, case.description, f"{report.precision:.6f}",
             f"{report.recall:.6f}", f"{report.f1:.6f}"]
        )
    header = ["case", "description", "precision", "recall", "f1"]
    (out_dir / "table.csv").write_text(io.csv_text(header, table), encoding="utf-8")

    print(f"PAdf d={args.d:g} ({args.precision_mode} precision)")
    print("case " + " ".join(f"{r[0]:>5}" for r in table))
    print("f1   " + " ".join(f"{float(r[4]):5.3f}" for r in table))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tsad-eval",
        description="Evaluate time-series anomaly detectors under raw, PA, PA%K and PAdf.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def protocol_flags(p, default_protocol):
        p.add_argument("--protocol", default=default_protocol,
                       help="comma list of raw, pa, pak, padf")
        p.add_argument("--k", default="20", help="PA%%K percentage(s), comma list")
        p.add_argument("--d", default="0.9", help="PAdf decay rate(s), comma list")
        p.add_argument("--precision-mode", default="decayed",
                       help="PAdf precision: decayed, adjusted, or both as a comma list")
        p.add_argument("--beta", type=float, default=1.0)

    ev = sub.add_parser("evaluate", help="score saved detector output")
    ev.add_argument("--labels", required=True, type=Path)
    ev.add_argument("--scores", type=Path)
    ev.add_argument("--predictions", type=Path)
    ev.add_argument("--prob", action="store_true",
                    help="predictions are anomaly probabilities, not 0/1")
    ev.add_argument("--threshold", type=float)
    ev.add_argument("--sweep", action="store_true", help="pick the best-F threshold")
    protocol_flags(ev, "raw,pa,pak,padf")
    ev.add_argument("--out", required=True, type=Path, help="report .json or .csv")
    ev.set_defaults(func=cmd_evaluate)

    cu = sub.add_parser("curves", help="analytic F1 curves of the random-score model")
    cu.add_argument("--n", default="500", help="segment length(s), comma list")
    cu.add_argument("--anomaly-ratio", type=float, default=0.05)
    cu.add_argument("--d", default="1.0,0.9,0.7")
    cu.add_argument("--protocol", default="padf", help="pa, padf, or both")
    cu.add_argument("--theta-grid", default="0:1:0.001")
    cu.add_argument("--out", required=True, type=Path)
    cu.set_defaults(func=cmd_curves)

    si = sub.add_parser("simulate", help="Monte-Carlo random-score baseline")
    si.add_argument("--labels", required=True, type=Path)
    protocol_flags(si, "raw,pa,pak,padf")
    si.add_argument("--trials", type=int, default=5)
    si.add_argument("--seed", type=int, default=None,
                    help=f"defaults to ${SEED_ENV}, then 0")
    si.add_argument("--threshold", type=float)
    si.add_argument("--sweep", action="store_true")
    si.add_argument("--out", required=True, type=Path)
    si.set_defaults(func=cmd_simulate)

    ca = sub.add_parser("cases", help="generate and score the delay/false-alarm case suite")
    ca.add_argument("--suite", default="appendix-d")
    ca.add_argument("--d", type=float, default=0.9)
    ca.add_argument("--precision-mode", default="adjusted")
    ca.add_argument("--out-dir", required=True, type=Path)
    ca.set_defaults(func=cmd_cases)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"tsad-eval: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (OSError, io.SeriesFormatError) as exc:
        print(f"tsad-eval: error: {exc}", file=sys.stderr)
        return EXIT_IO
    except ValueError as exc:
        print(f"tsad-eval: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
