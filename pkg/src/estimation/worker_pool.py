"""
Process pool for embarrassingly parallel integer counts.

Every task returns an int and results are summed, so the total never depends
on worker count or completion order.
"""

from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Sequence, Tuple

from src.core.logging_controller import debug


def sum_over_tasks(func: Callable[..., int], tasks: Sequence[Tuple], workers: int = 1) -> int:
    """
    Sum func(*task) over all tasks.

    Args:
        func: module-level function (must be picklable)
        tasks: argument tuples
        workers: processes to use; 1 runs inline
    """
    workers = max(1, min(int(workers), len(tasks)))
    if workers == 1:
        return sum(func(*task) for task in tasks)

    debug(f"Dispatching {len(tasks)} tasks to {workers} worker processes")
    with ProcessPoolExecutor(max_workers=workers) as pool:
        futures = [pool.submit(func, *task) for task in tasks]
        return sum(future.result() for future in futures)
