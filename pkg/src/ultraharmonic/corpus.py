"""Seeded random families of set expressions for the property suites.

Every generator draws from an explicit ``random.Random`` so suites
replay exactly.  Expressions stay inside the printable grammar: no
file-backed sets and no empty finite literals, so parse/print
round-trips hold across the whole corpus.
"""

from __future__ import annotations

from random import Random

from .harmonic import classify
from .sets import (
    AP,
    Difference,
    Finite,
    Intersection,
    KthPowers,
    LeftShift,
    NATURALS,
    Powers,
    Primes,
    SetExpr,
    Shifted,
    Sumset,
    Union,
)
from .verdict import ANHARMONIC, HARMONIC, NO, YES


def random_finite(rng: Random, max_size: int = 25, max_value: int = 120) -> Finite:
    size = rng.randint(1, min(max_size, max_value))
    return Finite.of(rng.sample(range(1, max_value + 1), size))


def _harmonic_leaf(rng: Random) -> SetExpr:
    roll = rng.random()
    if roll < 0.55:
        return AP(rng.randint(1, 60), rng.randint(1, 15))
    if roll < 0.85:
        return Primes()
    return NATURALS


def _anharmonic_leaf(rng: Random) -> SetExpr:
    roll = rng.random()
    if roll < 0.4:
        return Powers(rng.randint(2, 9))
    if roll < 0.7:
        return KthPowers(rng.randint(2, 6))
    return random_finite(rng, max_size=10)


def _definite_candidate(rng: Random, want: str, depth: int) -> SetExpr:
    if depth == 0:
        return _harmonic_leaf(rng) if want == HARMONIC else _anharmonic_leaf(rng)
    other = ANHARMONIC if want == HARMONIC else HARMONIC
    roll = rng.random()
    d = depth - 1
    if roll < 0.30:
        return _harmonic_leaf(rng) if want == HARMONIC else _anharmonic_leaf(rng)
    if roll < 0.42:
        return Shifted(_definite_candidate(rng, want, d), rng.randint(1, 30))
    if roll < 0.52:
        return LeftShift(_definite_candidate(rng, want, d), rng.randint(1, 30))
    if roll < 0.72:
        parts = [_definite_candidate(rng, want, d) for _ in range(rng.randint(2, 3))]
        if want == HARMONIC and rng.random() < 0.6:
            # a divergent part still dominates convergent company
            parts[rng.randrange(len(parts))] = _definite_candidate(rng, other, d)
        return Union(tuple(parts))
    if roll < 0.84:
        if want == HARMONIC:
            return Difference(
                _definite_candidate(rng, HARMONIC, d),
                _definite_candidate(rng, ANHARMONIC, d),
            )
        return Difference(
            _definite_candidate(rng, ANHARMONIC, d),
            _definite_candidate(rng, rng.choice((HARMONIC, ANHARMONIC)), d),
        )
    if want == HARMONIC:
        a = _definite_candidate(rng, HARMONIC, d)
        b = _definite_candidate(rng, rng.choice((HARMONIC, ANHARMONIC)), d)
        return Sumset(a, b) if rng.random() < 0.5 else Sumset(b, a)
    return Intersection(
        (_definite_candidate(rng, rng.choice((HARMONIC, ANHARMONIC)), d),
         _anharmonic_leaf(rng))
    )


def random_definite_of(rng: Random, want: str, depth: int = 2) -> SetExpr:
    """An expression the classifier provably assigns ``want``.

    Candidates are built so the verdict should follow by construction;
    each one is verified before being returned, since folds can
    degenerate (a left shift can empty a finite set, emptying a sumset
    built on it).
    """
    for _ in range(32):
        cand = _definite_candidate(rng, want, depth)
        if classify(cand, diagnostics=False).value == want:
            return cand
    return _harmonic_leaf(rng) if want == HARMONIC else _anharmonic_leaf(rng)


def random_definite(rng: Random, depth: int = 2) -> tuple[SetExpr, str]:
    want = rng.choice((HARMONIC, ANHARMONIC))
    return random_definite_of(rng, want, depth), want


def random_union_case(rng: Random) -> tuple[Union, list[str]]:
    """A union of definite-verdict components, with the component tags."""
    k = rng.randint(2, 5)
    pairs = [random_definite(rng, depth=rng.randint(0, 2)) for _ in range(k)]
    return Union(tuple(e for e, _ in pairs)), [v for _, v in pairs]


def random_leaf(rng: Random) -> SetExpr:
    roll = rng.random()
    if roll < 0.3:
        return AP(rng.randint(1, 60), rng.randint(1, 15))
    if roll < 0.45:
        return Primes()
    if roll < 0.6:
        return Powers(rng.randint(2, 9))
    if roll < 0.75:
        return KthPowers(rng.randint(2, 6))
    if roll < 0.95:
        return random_finite(rng, max_size=12, max_value=150)
    return NATURALS


def random_expr(rng: Random, depth: int = 3) -> SetExpr:
    """An arbitrary printable expression, definite or not."""
    if depth == 0:
        return random_leaf(rng)
    roll = rng.random()
    d = depth - 1
    if roll < 0.30:
        return random_leaf(rng)
    if roll < 0.42:
        return Shifted(random_expr(rng, d), rng.randint(1, 40))
    if roll < 0.52:
        return LeftShift(random_expr(rng, d), rng.randint(1, 40))
    if roll < 0.68:
        parts = tuple(random_expr(rng, d) for _ in range(rng.randint(2, 3)))
        return Union(parts)
    if roll < 0.80:
        return Intersection((random_expr(rng, d), random_expr(rng, d)))
    if roll < 0.90:
        return Difference(random_expr(rng, d), random_expr(rng, d))
    return Sumset(random_expr(rng, d), random_expr(rng, d))


def expression_corpus(count: int, seed: int, depth: int = 3) -> list[SetExpr]:
    """``count`` expressions with pairwise distinct printed forms."""
    from .grammar import to_text

    rng = Random(seed)
    seen: set[str] = set()
    out: list[SetExpr] = []
    while len(out) < count:
        e = random_expr(rng, depth=rng.randint(1, depth))
        text = to_text(e)
        if text not in seen:
            seen.add(text)
            out.append(e)
    return out


_TRANSLATION_FAMILIES = ("ap", "ap", "primes", "shifted-ap", "union", "squares")


def random_translation_triple(rng: Random) -> tuple[SetExpr, int, int]:
    """(infinite set, shift s <= 1000, prefix length N) with N past N(s).

    The prefix length is capped per family so the N-th element stays
    below the default horizon.
    """
    kind = rng.choice(_TRANSLATION_FAMILIES)
    cap = 10_000
    if kind == "ap":
        e: SetExpr = AP(rng.randint(1, 100), rng.randint(1, 50))
    elif kind == "primes":
        e = Primes()
    elif kind == "shifted-ap":
        e = Shifted(AP(rng.randint(1, 50), rng.randint(1, 30)), rng.randint(1, 500))
    elif kind == "union":
        first = AP(rng.randint(1, 60), rng.randint(1, 20))
        second = Primes() if rng.random() < 0.5 else AP(rng.randint(1, 60), rng.randint(1, 20))
        e = Union((first, second))
    else:
        e = KthPowers(2)
        cap = 3000
    s = rng.randint(1, 1000)
    threshold = sum(1 for _ in e.upto(s - 1)) + 1 if s > 1 else 1
    n = threshold + rng.randint(1, cap - threshold)
    return e, s, n


def random_extraction_pair(rng: Random) -> tuple[SetExpr, SetExpr, int]:
    """(harmonic set, anharmonic infinite set, count) for extraction runs."""
    roll = rng.random()
    if roll < 0.4:
        a: SetExpr = AP(rng.randint(1, 20), rng.randint(1, 10))
    elif roll < 0.6:
        a = Primes()
    elif roll < 0.8:
        a = Union((AP(rng.randint(1, 20), rng.randint(2, 12)), AP(rng.randint(1, 20), rng.randint(2, 12))))
    else:
        a = Shifted(AP(rng.randint(1, 15), rng.randint(1, 8)), rng.randint(1, 20))
    roll = rng.random()
    if roll < 0.5:
        b: SetExpr = Powers(rng.randint(2, 7))
        k = rng.randint(4, 7)
    elif roll < 0.8:
        b = KthPowers(rng.randint(2, 5))
        k = rng.randint(4, 10)
    else:
        b = Shifted(Powers(rng.randint(2, 5)), rng.randint(1, 25))
        k = rng.randint(4, 7)
    return a, b, k


def _psyn_yes_leaf(rng: Random) -> SetExpr:
    e: SetExpr = AP(rng.randint(1, 50), rng.randint(1, 12))
    if rng.random() < 0.3:
        e = Shifted(e, rng.randint(1, 40))
    return e


def _psyn_no_leaf(rng: Random) -> SetExpr:
    roll = rng.random()
    if roll < 0.3:
        e: SetExpr = random_finite(rng, max_size=12, max_value=100)
    elif roll < 0.55:
        e = Powers(rng.randint(2, 8))
    elif roll < 0.8:
        e = KthPowers(rng.randint(2, 5))
    else:
        e = Primes()
    if rng.random() < 0.25:
        e = Shifted(e, rng.randint(1, 30))
    return e


def random_psyndetic_case(rng: Random) -> tuple[SetExpr, str]:
    """An expression with a forced piecewise-syndeticity verdict.

    Unions resolve from their parts; difference cases are supersets of
    a progression tail, so the expected verdict stays Yes.
    """
    roll = rng.random()
    if roll < 0.6:
        k = rng.randint(2, 4)
        want_yes = rng.random() < 0.5
        parts = [_psyn_no_leaf(rng) for _ in range(k)]
        if want_yes:
            parts[rng.randrange(k)] = _psyn_yes_leaf(rng)
        return Union(tuple(parts)), YES if want_yes else NO
    base: SetExpr = AP(rng.randint(1, 30), rng.randint(1, 10))
    if rng.random() < 0.4:
        base = Union((base, _psyn_no_leaf(rng)))
    drop = random_finite(rng, max_size=6, max_value=80)
    return Difference(base, drop), YES


def _ap_refinement(rng: Random, length: int) -> list[SetExpr]:
    # nested progressions: every pairwise intersection folds to the finer one
    a, d = rng.randint(1, 24), rng.randint(1, 9)
    out: list[SetExpr] = [AP(a, d)]
    for _ in range(length - 1):
        a, d = a + rng.randint(0, 4) * d, d * rng.randint(2, 4)
        out.append(AP(a, d))
    return out


def random_harmonic_base_exprs(rng: Random) -> list[SetExpr]:
    """Base expressions that all classify Harmonic, compatible by nesting."""
    roll = rng.random()
    if roll < 0.5:
        return _ap_refinement(rng, rng.randint(2, 3))
    if roll < 0.65:
        return [Primes()]
    if roll < 0.85:
        return _ap_refinement(rng, 2) + [NATURALS]
    return [Shifted(AP(rng.randint(1, 20), rng.randint(1, 8)), rng.randint(1, 15))]


def random_counterpart_base_exprs(rng: Random) -> list[SetExpr]:
    """Base expressions for the non-pinned side of a Glazer sum."""
    roll = rng.random()
    if roll < 0.35:
        return random_harmonic_base_exprs(rng)
    if roll < 0.55:
        return [Powers(rng.randint(2, 6))]
    if roll < 0.7:
        return [KthPowers(rng.randint(2, 4))]
    if roll < 0.8:
        return [Powers(2), Powers(rng.choice((4, 8)))]
    if roll < 0.9:
        return [random_finite(rng, max_size=8, max_value=60)]
    b = rng.randint(2, 6)
    return [Powers(b), AP(rng.randint(1, b), 1)]
