"""Order-preserving parallel map capped by the VERTEXGLUE_THREADS environment variable."""
from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor


def thread_cap() -> int:
    raw = os.environ.get("VERTEXGLUE_THREADS", "1")
    try:
        n = int(raw)
    except ValueError:
        raise ValueError(f"VERTEXGLUE_THREADS must be a positive integer, got {raw!r}") from None
    return max(1, n)


def pmap(fn, items) -> list:
    """list(map(fn, items)), run in worker processes when more than one is allowed.

    Results come back in input order, so reductions stay deterministic.
    """
    items = list(items)
    n = min(thread_cap(), len(items))
    if n <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=n) as ex:
        return list(ex.map(fn, items))
