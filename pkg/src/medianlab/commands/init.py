from __future__ import annotations

from pathlib import Path

from ..config.budget_file import CONFIG_NAME, write_default_config


def run(args) -> int:
    path = Path(args.config).resolve() if args.config else Path.cwd() / CONFIG_NAME
    if write_default_config(path, args.overwrite):
        print(f"{path.name}: created")
    else:
        print(f"{path.name}: preserved (use --overwrite to replace it)")
    return 0
