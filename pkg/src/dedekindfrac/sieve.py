"""Sieve tables shared by the denominator and set-generator modules."""

from __future__ import annotations

from functools import lru_cache

import numpy as np


def _table_size(limit: int) -> int:
    return 1 << max(limit, 1).bit_length()


def prime_mask(limit: int) -> np.ndarray:
    """Boolean array ``is_prime[0..limit]`` (a view of a cached table)."""
    return _prime_mask(_table_size(limit))[: limit + 1]


@lru_cache(maxsize=8)
def _prime_mask(limit: int) -> np.ndarray:
    is_prime = np.ones(max(limit, 1) + 1, dtype=bool)
    is_prime[:2] = False
    for i in range(2, int(limit**0.5) + 1):
        if is_prime[i]:
            is_prime[i * i :: i] = False
    is_prime.flags.writeable = False
    return is_prime


@lru_cache(maxsize=4)
def primes_upto(limit: int) -> np.ndarray:
    """All primes ``p <= limit`` as an int64 array (read-only)."""
    if limit < 2:
        out = np.zeros(0, dtype=np.int64)
    else:
        out = np.nonzero(prime_mask(limit))[0].astype(np.int64)
    out.flags.writeable = False
    return out


def largest_prime_factor(limit: int) -> np.ndarray:
    """``gpf[n]`` for ``0 <= n <= limit``; gpf[0] = 0, gpf[1] = 1."""
    return _largest_prime_factor(_table_size(limit))[: limit + 1]


@lru_cache(maxsize=8)
def _largest_prime_factor(limit: int) -> np.ndarray:
    gpf = np.ones(limit + 1, dtype=np.int64)
    gpf[0] = 0
    for p in primes_upto(limit):
        gpf[p::p] = p  # increasing p, so the last write is the largest
    gpf.flags.writeable = False
    return gpf
