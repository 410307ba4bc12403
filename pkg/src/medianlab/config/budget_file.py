from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

from ..errors import SchemaError


CONFIG_NAME = ".medianlab.yml"
DEFAULT_CHECKS = [
    "theta",
    "median",
    "census",
    "orientation",
    "crossing",
    "intersection",
    "degree",
    "coloring",
    "cliques",
    "amalgam",
    "cube",
]


@dataclass
class BudgetConfig:
    path: Path | None = None
    seed: int = 0
    max_burling_n: int = 3
    max_chain_blocks: int = 2
    max_lift_vertices: int = 200_000
    exhaustive_vertices: int = 2000
    domain_limit: int = 100_000
    samples: int = 1_000_000
    max_nodes: int = 2_000_000
    max_seconds: float = 1800.0
    checks: list[str] = field(default_factory=lambda: list(DEFAULT_CHECKS))
    workers: int = 0


def default_config_text() -> str:
    checks = "".join(f"    - {name}\n" for name in DEFAULT_CHECKS)
    return f"""version: 1
seed: 0
limits:
  max_burling_n: 3
  max_chain_blocks: 2
  max_lift_vertices: 200000
  exhaustive_vertices: 2000
  domain_limit: 100000
median:
  samples: 1000000
solver:
  max_nodes: 2000000
  max_seconds: 1800
report:
  workers: 0
  checks:
{checks}"""


def find_budget_file(root: Path, explicit_path: str | None = None) -> Path | None:
    if explicit_path:
        candidate = Path(explicit_path)
        return candidate if candidate.is_absolute() else (root / candidate)
    candidate = root / CONFIG_NAME
    return candidate if candidate.exists() else None


def load_budget_config(root: Path, explicit_path: str | None = None) -> BudgetConfig:
    """Defaults, overridden by `.medianlab.yml` (or `explicit_path`) when present."""
    path = find_budget_file(root, explicit_path)
    if path is None:
        return BudgetConfig()
    if not path.exists():
        raise SchemaError(f"config file not found: {path}")

    payload = _parse_budget_file(path.read_text(encoding="utf-8"))
    limits = _section(payload, "limits")
    median = _section(payload, "median")
    solver = _section(payload, "solver")
    report = _section(payload, "report")
    config = BudgetConfig(path=path)
    config.seed = _integer(payload, "seed", config.seed)
    config.max_burling_n = _integer(limits, "max_burling_n", config.max_burling_n)
    config.max_chain_blocks = _integer(limits, "max_chain_blocks", config.max_chain_blocks)
    config.max_lift_vertices = _integer(limits, "max_lift_vertices", config.max_lift_vertices)
    config.exhaustive_vertices = _integer(limits, "exhaustive_vertices", config.exhaustive_vertices)
    config.domain_limit = _integer(limits, "domain_limit", config.domain_limit)
    config.samples = _integer(median, "samples", config.samples)
    config.max_nodes = _integer(solver, "max_nodes", config.max_nodes)
    config.max_seconds = _number(solver, "max_seconds", config.max_seconds)
    config.workers = _integer(report, "workers", config.workers)
    checks = report.get("checks")
    if isinstance(checks, list):
        config.checks = [str(value) for value in checks]
    return config


def write_default_config(path: Path, overwrite: bool) -> bool:
    if path.exists() and not overwrite:
        return False
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(default_config_text(), encoding="utf-8")
    return True


def _section(payload: dict[str, object], name: str) -> dict[str, object]:
    value = payload.get(name)
    return value if isinstance(value, dict) else {}


def _integer(container: dict[str, object], key: str, default: int) -> int:
    value = container.get(key)
    if value is None:
        return default
    try:
        return int(str(value))
    except ValueError:
        raise SchemaError(f"config value {key} must be an integer, got {value!r}") from None


def _number(container: dict[str, object], key: str, default: float) -> float:
    value = container.get(key)
    if value is None:
        return default
    try:
        return float(str(value))
    except ValueError:
        raise SchemaError(f"config value {key} must be a number, got {value!r}") from None


def _parse_budget_file(text: str) -> dict[str, object]:
    payload: dict[str, object] = {}
    section: str | None = None
    nested_key: str | None = None

    for raw_line in text.splitlines():
        if not raw_line.strip() or raw_line.lstrip().startswith("#"):
            continue
        indent = len(raw_line) - len(raw_line.lstrip(" "))
        line = raw_line.strip()

        if indent == 0:
            nested_key = None
            if line.endswith(":"):
                section = line[:-1]
                payload.setdefault(section, {})
                continue
            key, _, value = line.partition(":")
            payload[key.strip()] = _parse_scalar(value.strip())
            section = None
            continue

        if section is None:
            continue
        container = payload.setdefault(section, {})
        if not isinstance(container, dict):
            continue

        if indent == 2:
            if line.endswith(":"):
                nested_key = line[:-1]
                container[nested_key] = []
            else:
                key, _, value = line.partition(":")
                container[key.strip()] = _parse_scalar(value.strip())
                nested_key = key.strip()
            continue

        if indent == 4 and line.startswith("- ") and nested_key:
            target = container.setdefault(nested_key, [])
            if isinstance(target, list):
                target.append(_parse_scalar(line[2:].strip()))

    return payload


def _parse_scalar(value: str):
    if value == "":
        return None
    if value == "[]":
        return []
    lower = value.lower()
    if lower == "true":
        return True
    if lower == "false":
        return False
    return value
