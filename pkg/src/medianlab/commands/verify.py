from __future__ import annotations

from pathlib import Path

from ..checks.runner import CheckSettings, VerifyOptions, run_verify
from ..graphs.graph import write_json
from .common import load_config, parse_checks


def run(args) -> int:
    config = load_config(args)
    settings = CheckSettings.from_config(
        config,
        mode=args.mode,
        samples=args.samples,
        basepoint=args.basepoint,
    )
    options = VerifyOptions(
        graph_path=Path(args.graph),
        checks=parse_checks(args.checks, config),
        settings=settings,
        dot=Path(args.dot) if args.dot else None,
    )
    results, code = run_verify(options)
    if args.out:
        write_json(Path(args.out), {"checks": [result.to_payload() for result in results]})
    return code
