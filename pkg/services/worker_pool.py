"""
Order-preserving map over a process pool with an optional progress bar.
"""

import logging
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, List, Sequence, TypeVar

from tqdm import tqdm

logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")


def chunked(items: Sequence[T], size: int) -> List[Sequence[T]]:
    """Split items into consecutive chunks of at most ``size``."""
    size = max(1, size)
    return [items[i:i + size] for i in range(0, len(items), size)]


def parallel_map(func: Callable[[T], R], tasks: Sequence[T], workers: int,
                 desc: str = "", show_progress: bool = False) -> List[R]:
    """Apply func to every task; results come back in task order.

    Args:
        func: Picklable top-level function
        tasks: Work items
        workers: Process count; 1 runs in the calling process
        desc: Progress bar label
        show_progress: Draw a tqdm bar on stderr
    """
    if workers <= 1 or len(tasks) <= 1:
        iterator = map(func, tasks)
        return list(tqdm(iterator, total=len(tasks), desc=desc, disable=not show_progress))
    logger.debug("%s: %d tasks on %d workers", desc, len(tasks), workers)
    with ProcessPoolExecutor(max_workers=workers) as pool:
        iterator = pool.map(func, tasks)
        return list(tqdm(iterator, total=len(tasks), desc=desc, disable=not show_progress))
