"""Enumeration and membership semantics of the expression nodes.

``member`` and ``upto`` define what a set expression means; every
test here checks one of them against hand-frozen prefixes or against
a brute-force model built from the other.
"""

from random import Random

import pytest

from ultraharmonic.corpus import expression_corpus
from ultraharmonic.errors import InputError, InsufficientDataError
from ultraharmonic.rules import simplify
from ultraharmonic.sets import (
    AP,
    Difference,
    Finite,
    FromFile,
    Intersection,
    KthPowers,
    LeftShift,
    NATURALS,
    Powers,
    Primes,
    Shifted,
    Sumset,
    Union,
    elements,
    first_element,
    first_n,
    left_shift,
    shift,
)

# primes below 30, from any printed table
PRIMES_30 = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]


def test_finite_enumeration_and_membership():
    f = Finite((2, 4, 9))
    assert elements(f, 100) == [2, 4, 9]
    assert elements(f, 4) == [2, 4]
    assert f.member(4) and not f.member(3)
    assert 9 in f and 10 not in f


def test_finite_of_sorts_and_dedupes():
    assert Finite.of([9, 2, 4, 2]) == Finite((2, 4, 9))


def test_finite_rejects_bad_values():
    with pytest.raises(ValueError):
        Finite((3, 2))
    with pytest.raises(ValueError):
        Finite((0, 1))
    with pytest.raises(ValueError):
        Finite((1, 1))


def test_ap_prefix():
    assert elements(AP(3, 4), 20) == [3, 7, 11, 15, 19]
    assert AP(3, 4).member(19)
    assert not AP(3, 4).member(4)
    assert not AP(3, 4).member(2)


def test_naturals_is_the_unit_progression():
    assert NATURALS == AP(1, 1)
    assert elements(NATURALS, 5) == [1, 2, 3, 4, 5]


def test_ap_validation():
    with pytest.raises(ValueError):
        AP(0, 2)
    with pytest.raises(ValueError):
        AP(1, 0)


def test_powers_start_at_the_base():
    # pow(2) is {2, 4, 8, ...}: the empty product is not included
    assert elements(Powers(2), 100) == [2, 4, 8, 16, 32, 64]
    assert not Powers(2).member(1)
    assert Powers(3).member(81)
    assert not Powers(3).member(12)
    with pytest.raises(ValueError):
        Powers(1)


def test_kth_powers_include_one():
    assert elements(KthPowers(2), 50) == [1, 4, 9, 16, 25, 36, 49]
    assert KthPowers(3).member(1)
    assert KthPowers(3).member(27_000)
    assert not KthPowers(3).member(26_999)
    with pytest.raises(ValueError):
        KthPowers(1)


def test_primes_prefix():
    assert elements(Primes(), 30) == PRIMES_30
    assert Primes().member(29)
    assert not Primes().member(1)
    assert not Primes().member(91)  # 7 * 13


def test_shifted_primes_prefix():
    # {p + 10} intersected with [1, 30]
    assert elements(shift(Primes(), 10), 30) == [12, 13, 15, 17, 21, 23, 27, 29]
    s = Shifted(Primes(), 10)
    assert s.member(12) and not s.member(11)
    assert not s.member(10)


def test_left_shift_drops_below_one():
    # {p - 1} keeps only positive results
    assert elements(left_shift(Primes(), 1), 10) == [1, 2, 4, 6, 10]
    e = LeftShift(Finite((3, 5)), 4)
    assert elements(e, 10) == [1]
    assert e.member(1) and not e.member(2)


def test_shift_validation():
    with pytest.raises(ValueError):
        Shifted(Primes(), 0)
    with pytest.raises(ValueError):
        LeftShift(Primes(), -2)


def test_union_merges_without_duplicates():
    u = Union((AP(1, 3), AP(1, 4)))
    got = elements(u, 25)
    want = sorted(set(elements(AP(1, 3), 25)) | set(elements(AP(1, 4), 25)))
    assert got == want


def test_intersection_and_difference_against_model():
    a, b = AP(1, 2), Primes()
    inter = Intersection((a, b))
    diff = Difference(a, b)
    model_a = set(elements(a, 200))
    model_b = set(elements(b, 200))
    assert elements(inter, 200) == sorted(model_a & model_b)
    assert elements(diff, 200) == sorted(model_a - model_b)


def test_sumset_against_model():
    s = Sumset(Primes(), Powers(2))
    lhs = set(elements(Primes(), 150))
    rhs = set(elements(Powers(2), 150))
    want = sorted(x + y for x in lhs for y in rhs if x + y <= 150)
    assert elements(s, 150) == sorted(set(want))
    assert s.member(7)  # 3 + 4
    assert not s.member(2)


def test_sumset_enumeration_respects_horizon():
    # interleaved merge streams must keep per-offset bounds straight
    cases = [
        Sumset(AP(2, 6), Powers(5)),
        Sumset(AP(20, 24), Powers(5)),
        Sumset(NATURALS, Powers(5)),
        Sumset(Primes(), Powers(3)),
    ]
    for raw in cases:
        e = simplify(raw)
        got = elements(e, 2000)
        assert all(v <= 2000 for v in got)
        av = elements(raw.left, 2000)
        bv = elements(raw.right, 2000)
        want = sorted({x + y for x in av for y in bv if x + y <= 2000})
        assert got == want


def test_operator_sugar_builds_nodes():
    a, b = AP(1, 2), Primes()
    assert isinstance(a | b, Union)
    assert isinstance(a & b, Intersection)
    assert isinstance(a - b, Difference)
    assert isinstance(a + b, Sumset)
    assert a + 3 == Shifted(a, 3)
    assert 3 + a == Shifted(a, 3)
    assert a - 2 == LeftShift(a, 2)


def test_upto_rejects_nonpositive_horizon():
    with pytest.raises(ValueError):
        list(Primes().upto(0))


def test_enumeration_is_sorted_and_matches_membership():
    """Random expressions: upto() agrees with member() on every point."""
    horizon = 300
    for e in expression_corpus(40, seed=11, depth=3):
        got = elements(e, horizon)
        assert got == sorted(set(got))
        members = {n for n in range(1, horizon + 1) if e.member(n)}
        assert set(got) == members, str(e)


def test_fromfile_round_trip(tmp_path):
    p = tmp_path / "vals.txt"
    p.write_text("3\n5\n\n9\n")
    e = FromFile.load(str(p))
    assert e.elements == (3, 5, 9)
    assert elements(e, 6) == [3, 5]
    assert e.member(5) and not e.member(4)


def test_fromfile_rejects_bad_input(tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text("3\nx\n")
    with pytest.raises(InputError):
        FromFile.load(str(bad))
    bad.write_text("5\n3\n")
    with pytest.raises(InputError):
        FromFile.load(str(bad))
    bad.write_text("0\n")
    with pytest.raises(InputError):
        FromFile.load(str(bad))
    with pytest.raises(InputError):
        FromFile.load(str(tmp_path / "missing.txt"))


def test_first_n_and_first_element():
    assert first_n(Primes(), 4, 100) == [2, 3, 5, 7]
    assert first_element(Powers(7), 100) == 7
    assert first_element(Finite(()), 100) is None
    with pytest.raises(InsufficientDataError) as info:
        first_n(Powers(2), 10, 100)
    assert info.value.progress == [2, 4, 8, 16, 32, 64]


def test_random_sumsets_respect_membership():
    rng = Random(23)
    horizon = 400
    for _ in range(25):
        left = rng.choice(
            [AP(rng.randint(1, 9), rng.randint(1, 9)), Primes(), Powers(rng.randint(2, 5))]
        )
        right = rng.choice(
            [AP(rng.randint(1, 9), rng.randint(2, 9)), Powers(rng.randint(2, 5)), KthPowers(2)]
        )
        raw = Sumset(left, right)
        got = elements(raw, horizon)
        members = {n for n in range(1, horizon + 1) if raw.member(n)}
        assert set(got) == members, str(raw)
