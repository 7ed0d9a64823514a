"""Command line front end: one `render` subcommand."""

import argparse
import sys

from .plotting import KINDS, PlotJob, SchemaError, render

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_IO = 4


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gossip-plots",
        description="Render experiment CSVs into figures.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    rp = sub.add_parser("render", help="draw one figure from CSV inputs")
    rp.add_argument("--kind", required=True,
                    choices=[k.replace("_", "-") for k in KINDS])
    rp.add_argument("--in", dest="inputs", required=True, nargs="+",
                    metavar="CSV", help="one or more experiment CSV files")
    rp.add_argument("--out", required=True, help="output image path")
    rp.add_argument("--log-y", action="store_true",
                    help="log-scale the error axis")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        job = PlotJob(
            kind=args.kind.replace("-", "_"),
            inputs=tuple(args.inputs),
            output_path=args.out,
            log_y=args.log_y,
        )
        path = render(job)
    except (SchemaError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    print(path)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
