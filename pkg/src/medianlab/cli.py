from __future__ import annotations

import argparse

from . import __version__
from .checks.status import EXIT_INTERRUPTED, exit_code_for_error
from .commands import burling as burling_cmd
from .commands import chromatic as chromatic_cmd
from .commands import init as init_cmd
from .commands import lift as lift_cmd
from .commands import report as report_cmd
from .commands import verify as verify_cmd
from .commands.chromatic import TARGETS
from .console import Ansi, configure_console_output, paint, print_error
from .errors import MedianlabError


def _positive(value: str) -> int:
    number = int(value)
    if number < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return number


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="medianlab", description="Median graphs, event structures and lifted box families")
    parser.add_argument("--version", action="version", version=f"medianlab {__version__}")
    parser.add_argument("--config", help="Optional path to .medianlab.yml")
    parser.add_argument("--no-progress", "-P", action="store_true", help="Disable the live progress bar")

    sub = parser.add_subparsers(dest="command", required=True)

    p_burling = sub.add_parser("burling", help="Build the Burling box family B(n)")
    p_burling.add_argument("--n", type=_positive, required=True, help="Family index (B(n) needs n + 1 colours)")
    p_burling.add_argument("--out", "-o", required=True, help="Box hypergraph JSON to write")
    p_burling.add_argument("--snap", action="store_true", help="Write the family snapped to integer planes")
    p_burling.set_defaults(func=burling_cmd.run)

    p_lift = sub.add_parser("lift", help="Lift a box hypergraph to a median graph")
    p_lift.add_argument("--boxes", "-b", required=True, help="Box hypergraph JSON")
    p_lift.add_argument("--out", "-o", required=True, help="Lifted graph JSON to write")
    p_lift.add_argument("--dot", help="Also write a DOT rendering")
    p_lift.set_defaults(func=lift_cmd.run)

    p_verify = sub.add_parser("verify", help="Run median and lifting checks on a graph file")
    p_verify.add_argument("--graph", "-g", required=True, help="Graph or lifted graph JSON")
    p_verify.add_argument("--checks", "-c", help="Comma-separated checks (default from config)")
    p_verify.add_argument("--mode", "-m", choices=["exhaustive", "sampled"], help="Median check mode")
    p_verify.add_argument("--samples", "-n", type=_positive, help="Triplets drawn in sampled mode")
    p_verify.add_argument("--seed", "-s", type=int, help="Seed for sampled checks")
    p_verify.add_argument("--basepoint", type=int, help="Basepoint for Θ on plain graphs")
    p_verify.add_argument("--out", "-o", help="Verdict JSON to write")
    p_verify.add_argument("--dot", help="Also write a DOT rendering")
    p_verify.set_defaults(func=verify_cmd.run)

    p_chromatic = sub.add_parser("chromatic", help="Exact chromatic number of a derived graph")
    p_chromatic.add_argument("--graph", "-g", required=True, help="Graph, lifted graph or box JSON")
    p_chromatic.add_argument("--target", "-t", choices=TARGETS, default="pointed-contact")
    p_chromatic.add_argument("--basepoint", type=int, help="Basepoint (default α for lifts, first vertex otherwise)")
    p_chromatic.add_argument("--budget", type=float, help="Wall-clock seconds for the exact search")
    p_chromatic.add_argument("--max-nodes", type=_positive, help="Search node budget")
    p_chromatic.add_argument("--out", "-o", help="Result JSON to write")
    p_chromatic.set_defaults(func=chromatic_cmd.run)

    p_report = sub.add_parser("report", help="Full pipeline for B(1)..B(n-max) plus the chain prefix")
    p_report.add_argument("--n-max", type=_positive, required=True)
    p_report.add_argument("--out", "-o", help="Report JSON to write")
    p_report.add_argument("--checks", "-c", help="Comma-separated checks (default from config)")
    p_report.add_argument("--seed", "-s", type=int, help="Seed for sampled checks")
    p_report.add_argument("--workers", "-j", type=int, help="Parallel rows (0 = one per spare CPU)")
    p_report.add_argument("--timings", action="store_true", help="Include runtimes in the JSON")
    p_report.set_defaults(func=report_cmd.run)

    p_init = sub.add_parser("init", help="Write a default .medianlab.yml")
    p_init.add_argument("--overwrite", action="store_true", help="Replace an existing file")
    p_init.set_defaults(func=init_cmd.run)

    return parser


def main(argv: list[str] | None = None) -> int:
    try:
        parser = build_parser()
        args = parser.parse_args(argv)
        configure_console_output()
        return int(args.func(args))
    except MedianlabError as exc:
        print_error(f"{exc.code}: {exc}")
        if exc.witness is not None:
            print_error(f"witness: {exc.witness}")
        return exit_code_for_error(exc)
    except KeyboardInterrupt:
        configure_console_output()
        print(paint("Interrupted by user.", Ansi.YELLOW))
        return EXIT_INTERRUPTED
