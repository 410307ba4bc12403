from __future__ import annotations

from pathlib import Path

from ..config.budget_file import BudgetConfig, load_budget_config


def load_config(args) -> BudgetConfig:
    """Budget file from `--config` or the working directory, with `--seed` applied on top."""
    config = load_budget_config(Path.cwd(), getattr(args, "config", None))
    seed = getattr(args, "seed", None)
    if seed is not None:
        config.seed = seed
    return config


def parse_checks(raw: str | None, config: BudgetConfig) -> list[str]:
    if not raw:
        return list(config.checks)
    return [name.strip() for name in raw.split(",") if name.strip()]
