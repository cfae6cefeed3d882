"""Deterministic blocked evaluation and compensated summation.

Work is cut into blocks whose boundaries depend only on the block size,
and results are combined in block order, so the worker count never
changes an output bit.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor

DEFAULT_BLOCK_SIZE = 64


def blocks(items, block_size: int = DEFAULT_BLOCK_SIZE) -> list:
    items = list(items)
    if block_size < 1:
        raise ValueError("block_size must be >= 1")
    return [items[i : i + block_size] for i in range(0, len(items), block_size)]


def blocked_map(func, tasks, workers: int = 1) -> list:
    """``[func(t) for t in tasks]``, optionally spread over processes."""
    tasks = list(tasks)
    if workers <= 1 or len(tasks) <= 1:
        return [func(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(func, tasks))


def csum(values) -> complex:
    """Correctly rounded sum of complex values (real and imaginary parts
    each summed with ``math.fsum``, which is order independent)."""
    values = list(values)
    return complex(math.fsum(v.real for v in values), math.fsum(v.imag for v in values))


def fsum_array(arr) -> complex | float:
    """``math.fsum`` over a numpy array, complex aware."""
    import numpy as np

    arr = np.asarray(arr).ravel()
    if np.iscomplexobj(arr):
        return complex(math.fsum(arr.real.tolist()), math.fsum(arr.imag.tolist()))
    return math.fsum(arr.tolist())
