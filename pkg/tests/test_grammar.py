"""Concrete syntax: parsing, printing, precedence, error positions."""

import pytest

from ultraharmonic.corpus import expression_corpus
from ultraharmonic.errors import ParseError
from ultraharmonic.grammar import parse, to_text
from ultraharmonic.sets import (
    AP,
    Difference,
    Finite,
    Intersection,
    KthPowers,
    LeftShift,
    NATURALS,
    Powers,
    Primes,
    Shifted,
    Sumset,
    Union,
)


def test_atoms():
    assert parse("N") == NATURALS
    assert parse("primes") == Primes()
    assert parse("ap(3,4)") == AP(3, 4)
    assert parse("pow(2)") == Powers(2)
    assert parse("kth(3)") == KthPowers(3)
    assert parse("finite{2,4,9}") == Finite((2, 4, 9))


def test_whitespace_is_free():
    assert parse(" ap( 3 , 4 ) ") == AP(3, 4)


def test_operators_and_precedence():
    # & binds tighter than |
    e = parse("ap(1,2) | ap(1,3) & primes")
    assert e == Union((AP(1, 2), Intersection((AP(1, 3), Primes()))))
    e = parse("(ap(1,2) | ap(1,3)) & primes")
    assert e == Intersection((Union((AP(1, 2), AP(1, 3))), Primes()))


def test_shift_and_difference_chain_left():
    e = parse("primes + 4 - 2")
    assert e == LeftShift(Shifted(Primes(), 4), 2)
    e = parse("ap(1,2) \\ finite{9} + 5")
    assert e == Shifted(Difference(AP(1, 2), Finite((9,))), 5)


def test_sumset_takes_full_expressions():
    e = parse("sumset(primes | pow(2), ap(1,3))")
    assert e == Sumset(Union((Primes(), Powers(2))), AP(1, 3))


def test_round_trip_on_fixed_forms():
    for text in [
        "N",
        "primes",
        "ap(3,4)",
        "pow(2) | kth(3)",
        "primes & ap(1,4)",
        "ap(1,2) \\ finite{9,12}",
        "primes + 4",
        "ap(5,6) - 2",
        "sumset(primes,pow(2))",
        "(primes | pow(2)) & ap(1,3)",
    ]:
        assert to_text(parse(text)) == text


def test_round_trip_on_random_corpus():
    for e in expression_corpus(60, seed=17, depth=3):
        assert parse(to_text(e)) == e


def test_error_positions_are_one_based():
    with pytest.raises(ParseError) as info:
        parse("nope")
    assert info.value.position == 1
    with pytest.raises(ParseError) as info:
        parse("ap(3;4)")
    assert info.value.position == 5
    assert "syntax error at position" in str(info.value)


def test_parse_failures():
    for text in [
        "",
        "ap(3,4",
        "ap(3)",
        "finite{}",
        "finite{1,}",
        "pow(x)",
        "primes |",
        "primes extra",
        'file("unterminated',
        "ap(0,4)",  # constructor rejection surfaces as a parse error
    ]:
        with pytest.raises(ParseError):
            parse(text)


def test_file_atom_round_trip(tmp_path):
    p = tmp_path / "s.txt"
    p.write_text("4\n7\n")
    e = parse(f'file("{p}")')
    assert e.elements == (4, 7)
    assert to_text(e) == f'file("{p}")'


def test_empty_finite_prints_but_does_not_parse():
    text = to_text(Finite(()))
    assert text == "finite{}"
    with pytest.raises(ParseError):
        parse(text)
