"""Command-line front end: `nineroots verify <suite> [--json] [--data DIR]`."""

from __future__ import annotations

import argparse
import os
import sys

from .enriques import DATA_ENV
from .suites import SUITE_NAMES, report_emit, run_suite


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nineroots",
        description="Exact verification suites for rank-nine rational-curve "
                    "configurations on Enriques surfaces in characteristic two.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    ver = sub.add_parser("verify", help="run a verification suite")
    ver.add_argument("suite", choices=SUITE_NAMES)
    ver.add_argument("--json", action="store_true", help="emit JSON instead of text")
    ver.add_argument("--data", metavar="DIR", default=None,
                     help=f"data directory (overrides ${DATA_ENV})")
    ver.add_argument("--field-degree", type=int, default=None, metavar="K",
                     help="constant-field degree for torsion enumeration (<= 4)")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    data_dir = args.data or os.environ.get(DATA_ENV)
    try:
        report = run_suite(args.suite, data_dir=data_dir,
                           field_degree=args.field_degree)
    except FileNotFoundError as exc:
        print(f"error: missing data file: {exc}", file=sys.stderr)
        return 1
    out = report_emit(report, "json" if args.json else "text")
    sys.stdout.write(out.decode())
    return 0 if report.ok else 1


if __name__ == "__main__":
    sys.exit(main())
