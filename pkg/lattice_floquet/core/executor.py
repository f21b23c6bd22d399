"""Ordered parallel execution for grid sweeps and verification checks."""

import os
import logging
from concurrent.futures import ThreadPoolExecutor
from contextlib import contextmanager
from typing import Callable, Iterable, Iterator, List, Optional, TypeVar

from lattice_floquet.core.config import env_threads
from lattice_floquet.core.log import stderr_console

logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")


def worker_count(requested: Optional[int] = None) -> int:
    """
    Resolve how many worker threads to use.

    Args:
        requested: Explicit thread count from config or CLI

    Returns:
        Positive thread count, capped by LATTICE_FLOQUET_THREADS when set
    """
    count = requested or os.cpu_count() or 1
    cap = env_threads()
    if cap is not None:
        count = min(count, cap)
    return max(1, count)


def map_ordered(
    fn: Callable[[T], R],
    items: Iterable[T],
    threads: Optional[int] = None,
) -> List[R]:
    """
    Apply fn to every item, possibly in parallel, keeping input order.

    Results come back in the order of items regardless of which worker
    finished first, so reductions over them are deterministic.

    Args:
        fn: Function to apply
        items: Inputs
        threads: Requested worker count (see worker_count)

    Returns:
        List of results aligned with items
    """
    work = list(items)
    count = min(worker_count(threads), max(1, len(work)))
    if count == 1:
        return [fn(item) for item in work]

    logger.debug("Running %d tasks on %d threads", len(work), count)
    with ThreadPoolExecutor(max_workers=count) as pool:
        return list(pool.map(fn, work))


@contextmanager
def with_status(message: str, enabled: bool = True) -> Iterator[None]:
    """
    Show a spinner on stderr while a long computation runs.

    Args:
        message: Status text
        enabled: When False, run silently
    """
    if enabled and stderr_console.is_terminal:
        with stderr_console.status(message, spinner="dots"):
            yield
    else:
        yield
