from __future__ import annotations

from pathlib import Path

from ..checks.runner import CheckSettings, ReportOptions, run_report
from .common import load_config, parse_checks


def run(args) -> int:
    config = load_config(args)
    if args.workers is not None:
        config.workers = args.workers
    options = ReportOptions(
        n_max=args.n_max,
        config=config,
        checks=parse_checks(args.checks, config),
        settings=CheckSettings.from_config(config),
        out=Path(args.out) if args.out else None,
        timings=args.timings,
        no_progress=args.no_progress,
    )
    return run_report(options)
