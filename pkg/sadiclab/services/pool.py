"""Bounded worker pool for independent report rows"""
import logging
import os
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, List, TypeVar

from sadiclab.config import settings

logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")


def worker_count() -> int:
    """SADIC_THREADS when set, otherwise the CPU count capped at 4"""
    if settings.SADIC_THREADS:
        return settings.SADIC_THREADS
    return min(4, os.cpu_count() or 1)


def ordered_map(fn: Callable[[T], R], items: Iterable[T]) -> List[R]:
    """Map fn over items on the pool; results keep the input order"""
    work = list(items)
    workers = min(worker_count(), len(work))
    if workers <= 1:
        return [fn(item) for item in work]
    logger.debug(f"fanning out {len(work)} rows to {workers} workers")
    with ThreadPoolExecutor(max_workers=workers) as executor:
        return list(executor.map(fn, work))
