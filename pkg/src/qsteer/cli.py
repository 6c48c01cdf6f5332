"""Command line interface.

Exit codes: 0 success, 1 a verify run found bound violations, 2 input error
(bad flags, malformed or invalid state files, out-of-range parameters).
"""

from __future__ import annotations

import argparse
import json
import sys

from . import harness, measures
from .errors import QSteerError
from .states import SamplerConfig, state_from_json

TABLE_FIELDS = (
    "concurrence",
    "f_value",
    "steerability",
    "purity",
    "q_value",
    "coherence_a",
    "coherence_b",
    "lower_bound",
    "upper_bound",
)


def _parse_ranks(text: str):
    if text == "uniform":
        return "uniform"
    return int(text)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qsteer",
        description="Two-qubit concurrence/steerability toolkit",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="report every measure for one state file")
    p.add_argument("--in", dest="in_path", required=True, help="state JSON file")
    p.add_argument("--format", choices=("table", "json"), default="table")
    p.add_argument("--out", default=None, help="write the report here instead of stdout")

    p = sub.add_parser("sample", help="random-state scatter run, CSV output")
    p.add_argument("--count", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--measure", choices=("ginibre", "haar-pure"), default="ginibre")
    p.add_argument("--ranks", type=_parse_ranks, default="uniform",
                   help="1..4 or 'uniform'")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out", required=True)

    p = sub.add_parser("channel-sweep", help="closed forms vs pipeline for one family")
    p.add_argument("--family", choices=("ad", "pd", "wu"), required=True)
    p.add_argument("--theta-steps", type=int, default=50)
    p.add_argument("--eta-steps", type=int, default=50)
    p.add_argument("--p-steps", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)

    p = sub.add_parser("wu-scan", help="classify the (purity, C) plane")
    p.add_argument("--grid", default="400x400", help="purity-steps x C-steps")
    p.add_argument("--out", required=True)

    p = sub.add_parser("verify", help="falsification run against both bounds")
    p.add_argument("--count", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--measure", choices=("ginibre", "haar-pure"), default="ginibre")
    p.add_argument("--ranks", type=_parse_ranks, default="uniform")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out", default=None, help="also write the summary JSON here")
    return parser


def _write_text(path, text: str) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", newline="") as fh:
            fh.write(text)


def _analyze(args) -> int:
    with open(args.in_path) as fh:
        obj = json.load(fh)
    rho = state_from_json(obj)
    rep = measures.report(rho)
    lower_fires = rep.concurrence**2 + rep.purity > 1.0
    if args.format == "json":
        payload = rep.as_dict()
        payload["steering_by_lower_bound"] = bool(lower_fires)
        payload["steerable"] = rep.steerability > 0.0
        text = json.dumps(payload, indent=2) + "\n"
    else:
        lines = [f"{name:<22}{getattr(rep, name)!r}" for name in TABLE_FIELDS]
        sv = ", ".join(repr(x) for x in rep.singular_values)
        lam = ", ".join(repr(x) for x in rep.lam)
        lines.append(f"{'singular_values':<22}{sv}")
        lines.append(f"{'lam':<22}{lam}")
        lines.append(f"{'classification':<22}{rep.classification}")
        if lower_fires:
            lines.append(
                f"{'steering (C,purity)':<22}yes (C^2 + purity - 1 = "
                f"{rep.concurrence**2 + rep.purity - 1.0!r} > 0)"
            )
        else:
            lines.append(f"{'steering (C,purity)':<22}no (C^2 + purity <= 1)")
        if rep.steerability > 0.0:
            lines.append(f"{'steering (S > 0)':<22}yes (S = {rep.steerability!r})")
        else:
            lines.append(f"{'steering (S > 0)':<22}no (S = 0)")
        text = "\n".join(lines) + "\n"
    _write_text(args.out, text)
    return 0


def _sample(args) -> int:
    cfg = SamplerConfig(measure=args.measure, ranks=args.ranks,
                        seed=args.seed, count=args.count)
    ranks, rows = harness.scatter_table(cfg, workers=args.workers)
    harness.write_scatter_csv(args.out, ranks, rows)
    return 0


def _channel_sweep(args) -> int:
    records = harness.run_family_sweep(
        args.family,
        theta_steps=args.theta_steps,
        eta_steps=args.eta_steps,
        p_steps=args.p_steps,
        seed=args.seed,
    )
    harness.write_sweep_csv(args.out, records)
    return 0


def _wu_scan(args) -> int:
    try:
        left, _, right = args.grid.partition("x")
        purity_steps, c_steps = int(left), int(right)
    except ValueError:
        raise QSteerError(f"--grid must look like '400x400', got {args.grid!r}") from None
    result = harness.run_region_scan(purity_steps, c_steps)
    harness.write_region_csv(args.out, result)
    stem = args.out[:-4] if args.out.endswith(".csv") else args.out
    harness.write_boundary_csv(stem + "_boundary.csv", result.criterion_boundary)
    harness.write_boundary_csv(stem + "_werner.csv", result.werner_envelope)
    return 0


def _verify(args) -> int:
    cfg = SamplerConfig(measure=args.measure, ranks=args.ranks,
                        seed=args.seed, count=args.count)
    summary = harness.run_falsification(cfg, workers=args.workers)
    payload = summary.as_dict()
    payload["seed"] = args.seed
    payload["measure"] = args.measure
    payload["ranks"] = str(args.ranks)
    text = json.dumps(payload, indent=2) + "\n"
    sys.stdout.write(text)
    if args.out is not None:
        _write_text(args.out, text)
    return 1 if summary.violations else 0


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    handler = {
        "analyze": _analyze,
        "sample": _sample,
        "channel-sweep": _channel_sweep,
        "wu-scan": _wu_scan,
        "verify": _verify,
    }[args.command]
    try:
        return handler(args)
    except (QSteerError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
