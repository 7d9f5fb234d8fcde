"""Process-pool fan-out for independent computations.

Results come back in submission order, so a run with several workers
produces exactly what the serial run produces.
"""

import logging
import multiprocessing

from django.conf import settings

logger = logging.getLogger(__name__)


def default_workers():
    return max(1, int(settings.BRANCHQ_JOBS))


def run_parallel(func, items, workers=None):
    """Map a module-level ``func`` over ``items``, keeping their order."""
    items = list(items)
    workers = default_workers() if workers is None else workers
    if workers <= 1 or len(items) <= 1:
        return [func(item) for item in items]
    workers = min(workers, len(items))
    logger.info('Running %d tasks on %d workers', len(items), workers)
    pool = multiprocessing.Pool(workers)
    try:
        return list(pool.imap(func, items))
    finally:
        pool.close()
        pool.join()


def split_range(total, parts):
    """Cut range(total) into at most ``parts`` contiguous (start, stop) slices."""
    parts = max(1, min(parts, total))
    step, extra = divmod(total, parts)
    slices, start = [], 0
    for index in range(parts):
        stop = start + step + (1 if index < extra else 0)
        slices.append((start, stop))
        start = stop
    return slices
