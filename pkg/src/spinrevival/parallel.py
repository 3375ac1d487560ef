import os
from concurrent.futures import ThreadPoolExecutor

WORKERS_ENV = "SPINREVIVAL_WORKERS"


def worker_count(requested=None):
    """Resolve the worker count: explicit argument, then ``$SPINREVIVAL_WORKERS``,
    then the CPU count."""
    if requested is None:
        raw = os.environ.get(WORKERS_ENV, "").strip()
        if raw:
            try:
                requested = int(raw)
            except ValueError:
                raise ValueError(f"{WORKERS_ENV} must be an integer, got {raw!r}") from None
    if requested is None:
        requested = os.cpu_count() or 1
    return max(1, int(requested))


def ordered_map(fn, items, workers=None):
    """``list(map(fn, items))``, evaluated on a thread pool when useful.

    Results are always returned in input order.
    """
    items = list(items)
    n = min(worker_count(workers), len(items))
    if n <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=n) as pool:
        return list(pool.map(fn, items))
