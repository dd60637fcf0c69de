"""Worker-pool helpers; results always come back in input order."""

import os
from concurrent.futures import ThreadPoolExecutor

ENV_THREADS = "REACHKIT_THREADS"


def worker_count():
    raw = os.environ.get(ENV_THREADS)
    if raw:
        try:
            n = int(raw)
        except ValueError:
            raise ValueError(f"{ENV_THREADS} must be an integer, got {raw!r}") from None
        if n < 1:
            raise ValueError(f"{ENV_THREADS} must be >= 1, got {n}")
        return n
    return os.cpu_count() or 1


def ordered_map(fn, items):
    """``list(map(fn, items))``, fanned out over at most :func:`worker_count` threads."""
    items = list(items)
    workers = min(worker_count(), len(items))
    if workers <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))
