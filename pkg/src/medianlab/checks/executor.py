from __future__ import annotations

import os
from concurrent.futures import FIRST_COMPLETED, ThreadPoolExecutor, wait
from typing import Callable, Iterable, TypeVar


ItemT = TypeVar("ItemT")
ResultT = TypeVar("ResultT")


def default_workers(requested: int, items: int) -> int:
    """0 means one worker per spare CPU."""
    if requested <= 0:
        requested = (os.cpu_count() or 1) - 1
    return max(1, min(items, requested))


def run_ordered(
    items: Iterable[ItemT],
    worker: Callable[[ItemT], ResultT],
    *,
    max_workers: int = 1,
    on_result: Callable[[ItemT, ResultT], None] | None = None,
) -> list[ResultT]:
    """Run `worker` over `items` on a thread pool and return results in input order.

    `on_result` fires in completion order. A worker exception is re-raised once
    every submitted item has finished.
    """
    pending = list(items)
    if not pending:
        return []
    results: dict[int, ResultT] = {}
    failure: BaseException | None = None
    with ThreadPoolExecutor(max_workers=max(1, max_workers)) as executor:
        in_flight = {executor.submit(worker, item): position for position, item in enumerate(pending)}
        while in_flight:
            done_futures, _ = wait(in_flight.keys(), return_when=FIRST_COMPLETED)
            for future in done_futures:
                position = in_flight.pop(future)
                try:
                    result = future.result()
                except BaseException as exc:  # noqa: BLE001
                    failure = failure or exc
                    continue
                results[position] = result
                if on_result:
                    on_result(pending[position], result)
    if failure is not None:
        raise failure
    return [results[position] for position in range(len(pending))]
