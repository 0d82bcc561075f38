"""Deterministic chunked scans over canonical index ranges.

Workers receive disjoint index ranges; results are concatenated in range
order, so the output does not depend on the number of workers.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor

from . import core
from .errors import CapacityExceeded

CHUNK = 1 << 15


def chunks(total: int, size: int = CHUNK):
    for start in range(0, total, size):
        yield start, min(start + size, total)


def scan(func, total: int, args=(), jobs: int = 1, limit: int | None = None, chunk: int = CHUNK) -> list:
    """Run ``func(*args, start, stop)`` over ``[0, total)`` and concatenate.

    ``func`` returns a list for its range and must be picklable when
    ``jobs > 1``.
    """
    limit = core.MAX_SCAN if limit is None else limit
    if total > limit:
        raise CapacityExceeded(f"scan of {total} candidates exceeds the guard of {limit}")
    ranges = list(chunks(total, chunk))
    if jobs <= 1 or len(ranges) == 1:
        parts = [func(*args, a, b) for a, b in ranges]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            futures = [pool.submit(func, *args, a, b) for a, b in ranges]
            parts = [f.result() for f in futures]
    out = []
    for p in parts:
        out.extend(p)
    return out
