"""
Worker pool for aspine.
Round-robin fan-out of work items with a barrier at the end of every call,
and an associative OR reduction over bitmap rows.
"""

from concurrent.futures import ThreadPoolExecutor
from typing import Callable, List, Sequence, TypeVar

import numpy as np

T = TypeVar("T")
R = TypeVar("R")


class WorkerPool:
    """Fixed pool of ``workers`` threads; a single worker runs everything inline."""

    def __init__(self, workers: int = 1):
        if workers < 1:
            raise ValueError("workers must be at least 1")
        self.workers = workers
        self._executor = ThreadPoolExecutor(max_workers=workers) if workers > 1 else None

    def map_partitions(self, fn: Callable[[Sequence[T]], R], items: Sequence[T]) -> List[R]:
        """
        Run ``fn`` on round-robin slices of ``items``.

        Args:
            fn: Function applied to one slice
            items: Work items; item i goes to worker i % workers

        Returns:
            One result per non-empty slice, in worker order
        """
        if self._executor is None or len(items) < 2:
            return [fn(items)]
        slices = [items[k::self.workers] for k in range(self.workers)]
        futures = [self._executor.submit(fn, part) for part in slices if len(part)]
        return [future.result() for future in futures]

    def or_reduce(self, rows: np.ndarray) -> np.ndarray:
        """OR of all rows of a (n, words) uint64 matrix; zeros when n == 0."""
        words = rows.shape[1]
        if len(rows) == 0:
            return np.zeros(words, dtype=np.uint64)
        if self._executor is None or len(rows) < 2:
            return np.bitwise_or.reduce(rows, axis=0)
        chunks = [chunk for chunk in np.array_split(rows, self.workers) if len(chunk)]
        futures = [self._executor.submit(np.bitwise_or.reduce, chunk, 0) for chunk in chunks]
        partials = np.stack([future.result() for future in futures])
        return np.bitwise_or.reduce(partials, axis=0)

    def close(self):
        if self._executor is not None:
            self._executor.shutdown(wait=True)
            self._executor = None

    def __enter__(self):
        return self

    def __exit__(self, *exc):
        self.close()
