"""
Order-preserving fan-out over a process pool.

Work is submitted in batches with a bounded number of batches in flight, so memory stays flat however long the
input is, and results come back in submission order whatever the worker scheduling.
"""

import logging
from collections import deque
from concurrent.futures import ProcessPoolExecutor

logger = logging.getLogger(__name__)


def ordered_map(func, batches, workers=1, initializer=None, initargs=(), max_in_flight=None):
    """
    Yield `func(batch)` for every batch, in input order.

    `workers` of 1 runs everything in the calling process (after calling `initializer` there).
    `max_in_flight` caps submitted-but-unconsumed batches; defaults to four per worker.
    """
    if workers < 1:
        raise ValueError("workers must be >= 1, got {}".format(workers))

    if workers == 1:
        if initializer is not None:
            initializer(*initargs)
        for batch in batches:
            yield func(batch)
        return

    max_in_flight = max_in_flight or workers * 4
    with ProcessPoolExecutor(max_workers=workers, initializer=initializer, initargs=initargs) as executor:
        pending = deque()
        for batch in batches:
            pending.append(executor.submit(func, batch))
            if len(pending) >= max_in_flight:
                yield pending.popleft().result()
        while pending:
            yield pending.popleft().result()


__all__ = ["ordered_map"]
