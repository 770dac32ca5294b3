"""
Deterministic fan-out of per-sample tasks.

Each task index owns a random stream seeded by (seed, stream, index), so
results do not depend on how tasks are scheduled. Distinct stages of one
experiment use distinct stream numbers.
"""

import concurrent.futures as futures
from collections.abc import Callable
from typing import Optional, TypeVar

import numpy as np

from teichproj.config import get_settings

T = TypeVar("T")

Task = Callable[[int, np.random.Generator], T]


def task_rng(seed: int, index: int, stream: int = 0) -> np.random.Generator:
    return np.random.default_rng([seed, stream, index])


def fan_out(
    task: Task[T],
    count: int,
    seed: int,
    max_workers: Optional[int] = None,
    stream: int = 0,
) -> list[T]:
    """
    Run task(index, rng) for index in range(count); results in index order.

    Tasks run on a thread pool when max_workers > 1.
    """
    workers = max_workers if max_workers is not None else get_settings().max_workers
    if workers <= 1 or count <= 1:
        return [task(index, task_rng(seed, index, stream)) for index in range(count)]

    with futures.ThreadPoolExecutor(max_workers=workers) as executor:
        jobs = [executor.submit(task, index, task_rng(seed, index, stream)) for index in range(count)]
        return [job.result() for job in jobs]
