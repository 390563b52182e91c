"""Prime generation and primality testing.

A classic sieve of Eratosthenes over numpy bool arrays backs bulk
enumeration.  The largest sieve built so far is kept in memory and
reused for smaller requests; optionally the bit-packed sieve is
persisted to a cache directory keyed by its limit, so repeated runs
at the same horizon skip the rebuild.  One-off primality queries
above the sieved range fall back to a deterministic Miller-Rabin
test.
"""

from __future__ import annotations

import os
from typing import Iterator

import numpy as np

# Witnesses making Miller-Rabin deterministic for all n < 3.3e24,
# far beyond any horizon this package accepts.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

_SEGMENT = 1 << 18

# Largest sieve built in this process: (limit, bool array of size limit+1).
_cache_limit = 0
_cache_bits: np.ndarray | None = None


def _build_sieve(limit: int) -> np.ndarray:
    is_prime = np.ones(limit + 1, dtype=bool)
    is_prime[:2] = False
    for p in range(2, int(limit**0.5) + 1):
        if is_prime[p]:
            is_prime[p * p :: p] = False
    return is_prime


def _cache_path(cache_dir: str, limit: int) -> str:
    return os.path.join(cache_dir, f"prime_bits_{limit}.npy")


def sieve_bools(limit: int, cache_dir: str | None = None) -> np.ndarray:
    """Boolean primality table for 0..limit, memoized across calls.

    With ``cache_dir`` set, the packed table is loaded from or saved to
    ``prime_bits_<limit>.npy`` there; a file of the wrong length is
    regenerated.
    """
    global _cache_limit, _cache_bits
    if limit < 2:
        limit = 2
    if _cache_bits is not None and limit <= _cache_limit:
        return _cache_bits[: limit + 1]

    table = None
    if cache_dir is not None:
        path = _cache_path(cache_dir, limit)
        if os.path.exists(path):
            try:
                packed = np.load(path)
                unpacked = np.unpackbits(packed)[: limit + 1].astype(bool)
                if unpacked.size == limit + 1:
                    table = unpacked
            except (OSError, ValueError):
                table = None
    if table is None:
        table = _build_sieve(limit)
        if cache_dir is not None:
            os.makedirs(cache_dir, exist_ok=True)
            np.save(_cache_path(cache_dir, limit), np.packbits(table))

    if limit > _cache_limit:
        _cache_limit, _cache_bits = limit, table
    return table


def primes_upto(limit: int, cache_dir: str | None = None) -> np.ndarray:
    """All primes <= limit as an int64 array."""
    if limit < 2:
        return np.empty(0, dtype=np.int64)
    return np.flatnonzero(sieve_bools(limit, cache_dir)).astype(np.int64)


def iter_primes(limit: int) -> Iterator[int]:
    """Yield primes <= limit in increasing order.

    Small limits reuse the memoized table; large ones run segment by
    segment so the first primes appear without sieving the whole range.
    """
    if limit < 2:
        return
    if limit <= max(_cache_limit, _SEGMENT):
        yield from primes_upto(limit).tolist()
        return
    root = int(limit**0.5) + 1
    base = primes_upto(root)
    yield from base[base <= limit].tolist()
    lo = root + 1
    while lo <= limit:
        hi = min(lo + _SEGMENT - 1, limit)
        seg = np.ones(hi - lo + 1, dtype=bool)
        for p in base.tolist():
            if p * p > hi:
                break
            start = max(p * p, ((lo + p - 1) // p) * p)
            seg[start - lo :: p] = False
        yield from (np.flatnonzero(seg) + lo).tolist()
        lo = hi + 1


def is_prime(n: int) -> bool:
    """Deterministic primality test for positive integers."""
    if n < 2:
        return False
    if _cache_bits is not None and n <= _cache_limit:
        return bool(_cache_bits[n])
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True
