from __future__ import annotations

from typing import Iterable

from ..errors import DomainTooLargeError, MedianlabError, ResourceLimitError

STATUS_PASS = "PASS"
STATUS_FAIL = "FAIL"
STATUS_LIMIT = "LIMIT"
STATUS_ERROR = "ERROR"
STATUS_SKIP = "SKIP"

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_LIMIT = 2
EXIT_FAILED = 3
EXIT_INTERRUPTED = 130


def status_for_error(exc: MedianlabError) -> str:
    if isinstance(exc, (ResourceLimitError, DomainTooLargeError)):
        return STATUS_LIMIT
    return STATUS_ERROR


def exit_code_for_error(exc: MedianlabError) -> int:
    return EXIT_LIMIT if status_for_error(exc) == STATUS_LIMIT else EXIT_INPUT


def exit_code_for(statuses: Iterable[str]) -> int:
    """A failed verification outranks a hit limit, which outranks an input error."""
    seen = set(statuses)
    if STATUS_FAIL in seen:
        return EXIT_FAILED
    if STATUS_LIMIT in seen:
        return EXIT_LIMIT
    if STATUS_ERROR in seen:
        return EXIT_INPUT
    return EXIT_OK
