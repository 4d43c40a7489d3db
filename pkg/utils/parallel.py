import multiprocessing as mp
import os

THREADS_ENV = 'HYPERLIM_THREADS'


def num_workers():
    """Pool size from HYPERLIM_THREADS; 1 inside a pool worker, which cannot start children."""
    if mp.current_process().daemon:
        return 1
    value = os.environ.get(THREADS_ENV, '').strip()
    if not value:
        return 1
    try:
        workers = int(value)
    except ValueError:
        return 1
    return max(1, min(workers, mp.cpu_count()))


def pool_map(func, items):
    """Map ``func`` over ``items``, in a process pool when HYPERLIM_THREADS > 1.

    Only the outermost call pools; nested calls run serially in the worker.
    Results keep the order of ``items``; ``func`` must be picklable.
    """
    items = list(items)
    workers = min(num_workers(), len(items))
    if workers <= 1:
        return [func(item) for item in items]
    
    pool = mp.Pool(workers)
    try:
        results = pool.map(func, items)
    finally:
        pool.close()
        pool.join()
    return results
