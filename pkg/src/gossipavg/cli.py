"""Command-line front end.

    gossipavg [--seed S] [--threads K] simulate --config cfg.json
    gossipavg [--seed S] [--threads K] sweep-p  --config cfg.json
    gossipavg [--seed S] [--threads K] sweep-d  --config cfg.json
    gossipavg [--seed S] analyze --graph <path|gen:n,d> --field <spec>
                                 --p <real> [--eps E] [--out report.json]

Exit codes: 0 success, 2 config error, 3 connectivity failure, 4 I/O
error.  --seed overrides the config's master seed; --threads only
changes wall time, never results (runs are seeded by run index and rows
are sorted before write).
"""

from __future__ import annotations

import argparse
import json
import sys

from . import harness
from .graph import GraphConnectivityError

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_CONNECTIVITY = 3
EXIT_IO = 4


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gossipavg",
        description="Gossip-averaging Monte-Carlo harness and analysis front end",
    )
    parser.add_argument("--seed", type=int, default=None, metavar="S",
                        help="override the config's master seed")
    parser.add_argument("--threads", type=int, default=1, metavar="K",
                        help="worker processes for sweep cells (default 1; "
                             "results are identical for any K)")
    sub = parser.add_subparsers(dest="command", required=True)

    for name, doc in (
        ("simulate", "run the configured cells once"),
        ("sweep-p", "sweep the activation probability grid"),
        ("sweep-d", "sweep the density scaling factor grid"),
    ):
        cmd = sub.add_parser(name, help=doc)
        cmd.add_argument("--config", required=True, metavar="PATH",
                         help="experiment config JSON")

    ana = sub.add_parser("analyze", help="evaluate the closed-form bounds")
    ana.add_argument("--graph", required=True, metavar="SRC",
                     help="graph dump path, or gen:n,d to generate one")
    ana.add_argument("--field", required=True, metavar="SPEC",
                     help="field spec: linear | gaussian_bumps | spike:<node> | "
                          "random_normal:<seed> | inline JSON object")
    ana.add_argument("--p", required=True, type=float,
                     help="activation probability in [0, 1]")
    ana.add_argument("--eps", type=float, default=0.01,
                     help="epsilon for the averaging-time bound (default 0.01)")
    ana.add_argument("--out", default=None, metavar="PATH",
                     help="write the report JSON here instead of stdout")
    return parser


def _run_sweep(args, runner) -> None:
    cfg = harness.with_seed(harness.load_config(args.config), args.seed)
    if args.threads < 1:
        raise harness.ConfigError(f"--threads must be >= 1, got {args.threads}")
    runner(cfg, threads=args.threads)


def _run_analyze(args) -> None:
    report = harness.analyze(
        args.graph, args.field, args.p,
        master_seed=args.seed if args.seed is not None else 0,
        epsilon=args.eps,
    )
    text = json.dumps(report.to_json_dict(), indent=2)
    if args.out is None:
        print(text)
    else:
        try:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(text + "\n")
        except OSError as exc:
            raise OSError(f"writing report to {args.out}: {exc}") from exc


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "simulate":
            _run_sweep(args, harness.run_experiment)
        elif args.command == "sweep-p":
            _run_sweep(args, harness.sweep_p)
        elif args.command == "sweep-d":
            _run_sweep(args, harness.sweep_d)
        else:
            _run_analyze(args)
    except harness.ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except GraphConnectivityError as exc:
        print(f"connectivity failure: {exc}", file=sys.stderr)
        return EXIT_CONNECTIVITY
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
