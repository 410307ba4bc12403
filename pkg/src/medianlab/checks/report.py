from __future__ import annotations

import sys
import threading
import time
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from ..console import Ansi, paint
from .models import CheckResult
from .status import STATUS_ERROR, STATUS_FAIL, STATUS_LIMIT, STATUS_PASS, STATUS_SKIP


BAR_WIDTH = 24
REFRESH_SECONDS = 0.25


def supports_live_progress() -> bool:
    return sys.stdout.isatty()


@dataclass
class RowTally:
    """Finished report rows, keyed by status, plus the most recent row label."""

    total: int = 1
    finished: dict[str, int] = field(default_factory=dict)
    last: str = ""
    started: float = field(default_factory=time.time)

    @property
    def done(self) -> int:
        return sum(self.finished.values())

    def record(self, label: str, status: str) -> None:
        self.finished[status] = self.finished.get(status, 0) + 1
        self.last = label

    def line(self) -> str:
        minutes, seconds = divmod(int(time.time() - self.started), 60)
        filled = min(BAR_WIDTH, self.done * BAR_WIDTH // self.total)
        bar = "=" * filled + "-" * (BAR_WIDTH - filled)
        bad = self.finished.get(STATUS_FAIL, 0) + self.finished.get(STATUS_ERROR, 0)
        parts = [f"[{bar}] {self.done}/{self.total}"]
        if self.last:
            parts.append(f"last {self.last}")
        if bad:
            parts.append(paint(f"{bad} failing", Ansi.RED))
        parts.append(paint(f"{minutes:02d}:{seconds:02d}", Ansi.DIM))
        return " ".join(parts)


class ProgressReporter:
    """One-line live tally of report rows; a no-op when stdout is not a terminal."""

    def __init__(self, enabled: bool):
        self.enabled = enabled and supports_live_progress()
        self.tally = RowTally()
        self._lock = threading.Lock()
        self._stop = threading.Event()
        self._thread: threading.Thread | None = None
        self._shown = ""

    def start(self, total: int) -> None:
        self.tally = RowTally(total=max(1, total))
        if not self.enabled:
            return
        self._stop.clear()
        self._thread = threading.Thread(target=self._tick, daemon=True)
        self._thread.start()

    def advance(self, label: str, status: str) -> None:
        with self._lock:
            self.tally.record(label, status)
            self._draw()

    def stop(self) -> None:
        if self._thread is None:
            return
        self._stop.set()
        self._thread.join(timeout=1.0)
        self._thread = None
        with self._lock:
            self._erase()

    def _tick(self) -> None:
        while not self._stop.wait(REFRESH_SECONDS):
            with self._lock:
                self._draw()

    def _draw(self) -> None:
        if not self.enabled:
            return
        line = self.tally.line()
        sys.stdout.write("\r" + line + " " * max(0, len(self._shown) - len(line)))
        sys.stdout.flush()
        self._shown = line

    def _erase(self) -> None:
        if self._shown:
            sys.stdout.write("\r" + " " * len(self._shown) + "\r")
            sys.stdout.flush()
            self._shown = ""


def print_stage(name: str) -> None:
    print(f"\n{paint(f'[{name}]', Ansi.BOLD)}")


def print_result(name: str, status: str, duration: float | None, *, extra: str = "", log: str = "") -> None:
    icon, color = _status_style(status)
    line = f"{paint(icon, color)} {name}: {paint(status.lower(), color)}"
    if duration is not None:
        line = f"{line} {paint(f'({duration:.1f}s)', Ansi.DIM)}"
    if extra:
        line = f"{line} {extra}"
    print(line)
    if log:
        print(paint(log, Ansi.DIM))


def print_check(result: CheckResult, *, timings: bool = True) -> None:
    log = ""
    if result.witness is not None and result.status != STATUS_PASS:
        log = f"witness: {result.witness}"
    print_result(result.name, result.status, result.duration if timings else None, extra=result.detail, log=log)


def print_summary(groups: Sequence[tuple[str, Iterable[CheckResult]]]) -> None:
    print(f"\n{paint('[summary]', Ansi.BOLD)}")
    for name, results in groups:
        _print_group(name, list(results))


def _print_group(name: str, results: list[CheckResult]) -> None:
    if not results:
        print(f"{name}: {paint('skipped', Ansi.DIM)}")
        return
    counts = {STATUS_PASS: 0, STATUS_FAIL: 0, STATUS_LIMIT: 0, STATUS_ERROR: 0, STATUS_SKIP: 0}
    for result in results:
        counts[result.status] = counts.get(result.status, 0) + 1
    print(
        f"{name}: "
        f"{paint(f'pass={counts[STATUS_PASS]}', Ansi.GREEN)} "
        f"{paint(f'fail={counts[STATUS_FAIL]}', Ansi.RED)} "
        f"{paint(f'limit={counts[STATUS_LIMIT]}', Ansi.YELLOW)} "
        f"{paint(f'error={counts[STATUS_ERROR]}', Ansi.MAGENTA)} "
        f"{paint(f'skip={counts[STATUS_SKIP]}', Ansi.DIM)}"
    )


def _status_style(status: str) -> tuple[str, str]:
    if status == STATUS_PASS:
        return "✔", Ansi.GREEN
    if status == STATUS_SKIP:
        return "-", Ansi.DIM
    if status == STATUS_FAIL:
        return "✘", Ansi.RED
    if status == STATUS_LIMIT:
        return "✘", Ansi.YELLOW
    return "✘", Ansi.MAGENTA
