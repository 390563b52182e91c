"""Reciprocal-sum accumulation, exact and floating point.

Exact sums are unreduced (numerator, denominator) pairs combined by
balanced binary splitting, normalized once at the end; gmpy2 integers
keep the large multiplications fast.  Floating-point sums use numpy
pairwise summation for arrays and Neumaier compensation for plain
iterables, so either path is accurate to well below the package's
tightest tolerance.
"""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np
from gmpy2 import mpq, mpz

_ONE = mpz(1)


def _split(denoms: Sequence[int], lo: int, hi: int) -> tuple:
    if hi - lo == 1:
        return _ONE, mpz(denoms[lo])
    mid = (lo + hi) // 2
    n1, d1 = _split(denoms, lo, mid)
    n2, d2 = _split(denoms, mid, hi)
    return n1 * d2 + n2 * d1, d1 * d2


def exact_reciprocal_sum(denoms: Sequence[int]) -> mpq:
    """Exact rational value of sum(1/d for d in denoms)."""
    if len(denoms) == 0:
        return mpq(0)
    n, d = _split(denoms, 0, len(denoms))
    return mpq(n, d)


def float_reciprocal_sum(denoms: Iterable[int]) -> float:
    """Compensated floating-point value of sum(1/d for d in denoms)."""
    if isinstance(denoms, np.ndarray):
        if denoms.size == 0:
            return 0.0
        return float(np.sum(1.0 / denoms.astype(np.float64)))
    total = 0.0
    comp = 0.0
    for d in denoms:
        x = 1.0 / d
        t = total + x
        if abs(total) >= abs(x):
            comp += (total - t) + x
        else:
            comp += (x - t) + total
        total = t
    return total + comp
