"""Process-pool fan-out over independent slices of an enumeration."""
from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Iterable, Iterator, TypeVar

T = TypeVar("T")
R = TypeVar("R")


def default_workers() -> int:
    env = os.environ.get("AN_WORKERS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return os.cpu_count() or 1


def map_ordered(fn: Callable[[T], R], tasks: Iterable[T], workers: int) -> Iterator[R]:
    """Results in task order.  Sequential (and lazy) when ``workers <= 1``."""
    tasks = list(tasks)
    if workers <= 1 or len(tasks) <= 1:
        yield from map(fn, tasks)
        return
    with ProcessPoolExecutor(max_workers=workers) as pool:
        yield from pool.map(fn, tasks, chunksize=max(1, len(tasks) // (4 * workers)))


def first_element_slices(nv: int, k: int) -> list[tuple[int, int]]:
    """One slice per admissible minimum element of a ``k``-subset of ``range(nv)``."""
    return [(f, f + 1) for f in range(max(0, nv - k + 1))]
