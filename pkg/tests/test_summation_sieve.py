"""Reciprocal summation back ends and the prime sieve."""

from fractions import Fraction

import numpy as np
import pytest
from gmpy2 import mpq

from ultraharmonic import sieve
from ultraharmonic.summation import exact_reciprocal_sum, float_reciprocal_sum

# sum(1/n for n in 1..10) as a reduced fraction
H_10 = mpq(7381, 2520)


def test_exact_sum_small_harmonic_prefix():
    assert exact_reciprocal_sum(list(range(1, 11))) == H_10


def test_exact_sum_matches_fraction_arithmetic():
    denoms = list(range(1, 500)) + [7, 7, 11]
    want = sum(Fraction(1, d) for d in denoms)
    got = exact_reciprocal_sum(denoms)
    assert got == mpq(want.numerator, want.denominator)


def test_exact_sum_empty():
    assert exact_reciprocal_sum([]) == 0


def test_float_sum_paths_agree():
    denoms = list(range(1, 2000))
    from_list = float_reciprocal_sum(denoms)
    from_array = float_reciprocal_sum(np.array(denoms, dtype=np.int64))
    exact = float(exact_reciprocal_sum(denoms))
    assert from_list == pytest.approx(exact, abs=1e-12)
    assert from_array == pytest.approx(exact, abs=1e-12)


def test_float_sum_empty():
    assert float_reciprocal_sum([]) == 0.0
    assert float_reciprocal_sum(np.empty(0, dtype=np.int64)) == 0.0


PRIMES_100 = [
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47,
    53, 59, 61, 67, 71, 73, 79, 83, 89, 97,
]


def test_primes_upto_prefix():
    assert sieve.primes_upto(100).tolist() == PRIMES_100
    assert sieve.primes_upto(1).size == 0


def test_prime_count_at_one_million():
    # pi(10^6), a standard table value
    assert sieve.primes_upto(10**6).size == 78498


def test_iter_primes_matches_table():
    assert list(sieve.iter_primes(100)) == PRIMES_100
    assert list(sieve.iter_primes(1)) == []


def test_iter_primes_segmented_path(monkeypatch):
    """Past the memoized table the iterator sieves segment by segment."""
    monkeypatch.setattr(sieve, "_cache_limit", 0)
    monkeypatch.setattr(sieve, "_cache_bits", None)
    limit = sieve._SEGMENT + 1000
    got = list(sieve.iter_primes(limit))
    want = np.flatnonzero(sieve._build_sieve(limit)).tolist()
    assert got == want


def test_is_prime_agrees_with_sieve():
    table = sieve._build_sieve(3000)
    for n in range(1, 3001):
        assert sieve.is_prime(n) == bool(table[n]), n


def test_is_prime_large_values():
    assert sieve.is_prime(2**31 - 1)  # Mersenne prime
    assert sieve.is_prime(10**9 + 7)
    assert not sieve.is_prime(561)  # Carmichael number
    assert not sieve.is_prime((2**31 - 1) * 7)
    assert not sieve.is_prime(1)


def test_sieve_disk_cache_round_trip(tmp_path, monkeypatch):
    monkeypatch.setattr(sieve, "_cache_limit", 0)
    monkeypatch.setattr(sieve, "_cache_bits", None)
    first = sieve.sieve_bools(5000, cache_dir=str(tmp_path)).copy()
    assert (tmp_path / "prime_bits_5000.npy").exists()
    monkeypatch.setattr(sieve, "_cache_limit", 0)
    monkeypatch.setattr(sieve, "_cache_bits", None)
    second = sieve.sieve_bools(5000, cache_dir=str(tmp_path))
    assert np.array_equal(first, second)
