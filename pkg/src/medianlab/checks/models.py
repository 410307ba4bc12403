from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class CheckResult:
    name: str
    status: str
    duration: float
    detail: str = ""
    witness: object = None
    measured: dict[str, object] = field(default_factory=dict)

    def to_payload(self, *, timings: bool = False) -> dict[str, object]:
        payload: dict[str, object] = {"name": self.name, "status": self.status}
        if self.detail:
            payload["detail"] = self.detail
        if self.witness is not None:
            payload["witness"] = _jsonable(self.witness)
        if self.measured:
            payload["measured"] = _jsonable(self.measured)
        if timings:
            payload["seconds"] = round(self.duration, 3)
        return payload


def _jsonable(value: object) -> object:
    if isinstance(value, dict):
        return {str(key): _jsonable(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(item) for item in value]
    if isinstance(value, (set, frozenset)):
        return sorted(_jsonable(item) for item in value)  # type: ignore[type-var]
    if isinstance(value, (bool, int, float, str)) or value is None:
        return value
    return str(value)
