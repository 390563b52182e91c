"""Arithmetic-progression search and its brute-force ground truth."""

from random import Random

import pytest

from ultraharmonic.config import Config
from ultraharmonic.errors import ConfigError
from ultraharmonic.progressions import APWitness, find_ap, longest_ap, verify_witness
from ultraharmonic.sets import AP, Finite, NATURALS, Powers, Primes


def _brute_find(values, k):
    present = set(values)
    hits = []
    for a in values:
        for b in values:
            if b <= a:
                continue
            d = b - a
            if all(a + i * d in present for i in range(k)):
                hits.append((a, d))
    return min(hits) if hits else None


def _brute_longest(values, k_cap=12):
    present = set(values)
    best = None
    for a in values:
        for b in values:
            if b <= a:
                continue
            d = b - a
            length = 1
            term = a
            while length < k_cap and term + d in present:
                term += d
                length += 1
            if length >= 3:
                key = (-length, a, d)
                if best is None or key < best:
                    best = key
    return None if best is None else (best[1], best[2], -best[0])


def test_ten_primes_in_progression():
    w = find_ap(Primes(), 10, 2100)
    assert (w.start, w.diff, w.length) == (199, 210, 10)
    assert verify_witness(Primes(), w)


def test_find_ap_picks_the_minimal_witness():
    w = find_ap(NATURALS, 3, 100)
    assert (w.start, w.diff) == (1, 1)
    # no progression through 2 stays prime, so the first triple starts at 3
    w = find_ap(Primes(), 3, 100)
    assert (w.start, w.diff, w.length) == (3, 2, 3)
    got = _brute_find(list(Primes().upto(100)), 3)
    assert (w.start, w.diff) == got


def test_find_ap_none_when_absent():
    assert find_ap(Powers(2), 3, 100) is None
    assert find_ap(Finite((1, 2, 4)), 3, 100) is None


def test_find_ap_validation():
    with pytest.raises(ValueError):
        find_ap(Primes(), 2, 100)
    with pytest.raises(ConfigError):
        find_ap(Primes(), 3, 10**9)


def test_witness_terms_and_verification():
    w = APWitness(199, 210, 10)
    assert w.terms()[0] == 199 and w.terms()[-1] == 2089
    assert verify_witness(Primes(), w)
    assert not verify_witness(Primes(), APWitness(199, 210, 11))
    assert w.to_dict() == {"start": 199, "diff": 210, "length": 10}


def test_longest_ap_on_a_small_set():
    e = Finite.of([1, 2, 3, 5, 7, 9])
    w = longest_ap(e, 9)
    # exhaustive search gives the odd run 1,3,5,7,9
    assert (w.start, w.diff, w.length) == (1, 2, 5)


def test_longest_ap_tie_breaking_and_cap():
    w = longest_ap(Finite((1, 2, 3)), 3)
    assert (w.start, w.diff, w.length) == (1, 1, 3)
    w = longest_ap(NATURALS, 50, 5)
    assert (w.start, w.diff, w.length) == (1, 1, 5)
    assert longest_ap(Powers(2), 100) is None


def test_longest_ap_guards():
    with pytest.raises(ValueError):
        longest_ap(Primes(), 100, 2)
    with pytest.raises(ConfigError):
        longest_ap(NATURALS, 5000)  # too many elements to pair up
    with pytest.raises(ConfigError):
        longest_ap(Primes(), 10**9)


def test_longest_ap_matches_brute_force_on_random_sets():
    rng = Random(37)
    for _ in range(120):
        size = rng.randint(1, 25)
        values = sorted(rng.sample(range(1, 121), size))
        e = Finite(tuple(values))
        w = longest_ap(e, values[-1])
        got = None if w is None else (w.start, w.diff, w.length)
        assert got == _brute_longest(values), values


def test_search_respects_config_cap():
    cfg = Config(horizon_cap=500, checkpoints=(500,))
    assert find_ap(Primes(), 4, 500, config=cfg) is not None
    with pytest.raises(ConfigError):
        find_ap(Primes(), 4, 501, config=cfg)
