"""
Command-line entry point.

    diracshell phase-shifts --preset fig1 --output eta.csv
    diracshell xsec --config scenario.cfg --output xsec.csv
    diracshell born --preset fig4 --output born.csv
    diracshell compare --preset fig3 --output cmp.csv

Exit codes: 0 success, 2 invalid scenario, 3 numeric domain error.
"""

from __future__ import annotations

import argparse
import sys

from . import reports
from .errors import DomainError, ScenarioError
from .scenario import PRESETS, load_scenario

EXIT_VALIDATION = 2
EXIT_DOMAIN = 3

COMMANDS = {
    "phase-shifts": "partial-wave",
    "xsec": "partial-wave",
    "born": "born",
    "compare": "compare",
}


def build_parser():
    parser = argparse.ArgumentParser(
        prog="diracshell",
        description="Dirac scattering off concentric delta shells: phase shifts, cross sections, Born totals.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    helps = {
        "phase-shifts": "phase shifts per channel over an energy scan",
        "xsec": "cumulative partial-wave total cross sections",
        "born": "Born total cross section, closed form and quadrature",
        "compare": "partial-wave vs Born totals with a text summary",
    }
    for name, text in helps.items():
        p = sub.add_parser(name, help=text)
        src = p.add_mutually_exclusive_group(required=True)
        src.add_argument("--config", help="key = value scenario file")
        src.add_argument("--preset", choices=sorted(PRESETS))
        p.add_argument("--output", help="CSV path (default: stdout)")
        p.add_argument("--workers", type=int, default=1, help="worker processes (output is identical)")
        if name == "born":
            p.add_argument("--closed-form", choices=("derived", "printed"), default="derived",
                           help="closed-form variant for sigma_closed")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        sc = load_scenario(COMMANDS[args.command], config=args.config, preset=args.preset, output=args.output)
    except ScenarioError as exc:
        print("invalid scenario:", file=sys.stderr)
        for problem in exc.problems:
            print(f"  - {problem}", file=sys.stderr)
        return EXIT_VALIDATION
    except OSError as exc:
        print(f"cannot read config: {exc}", file=sys.stderr)
        return EXIT_VALIDATION

    workers = max(1, args.workers)
    try:
        if args.command == "phase-shifts":
            text = reports.run_phase_shifts(sc, workers)
        elif args.command == "xsec":
            text = reports.run_cross_sections(sc, workers)
        elif args.command == "born":
            text = reports.run_born(sc, workers, printed=args.closed_form == "printed")
        else:
            text, summary = reports.run_compare(sc, workers)
            print(summary, end="", file=sys.stderr if sc.output_path is None else sys.stdout)
    except DomainError as exc:
        print(f"numeric domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    if sc.output_path is None:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
