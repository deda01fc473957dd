"""
Ordered, memory-bounded fan-out over a process pool.

Results come back in input order whatever the worker count, and at most
`window` chunks are in flight, so streaming inputs stay streaming.
"""

from __future__ import annotations

from collections import deque
from itertools import islice
from multiprocessing import Pool


def chunked(items, size):
    """Group an iterable into lists of at most size items"""
    iterator = iter(items)
    while True:
        chunk = list(islice(iterator, size))
        if not chunk:
            return
        yield chunk


def ordered_map(func, items, workers=1, window=None):
    """Yield func(item) for every item, in input order"""
    if workers <= 1:
        for item in items:
            yield func(item)
        return

    window = window or workers * 4
    with Pool(workers) as pool:
        pending = deque()
        for item in items:
            pending.append(pool.apply_async(func, (item,)))
            if len(pending) >= window:
                yield pending.popleft().get()
        while pending:
            yield pending.popleft().get()
