"""Named property suites behind the ``experiment`` command.

Each suite returns a list of {"property", "passed", "details"} records
whose contents are fully deterministic: corpus seeds are fixed and
wall times never enter the records, so repeated runs of the same suite
serialize byte-identically.
"""

from __future__ import annotations

import math
from fractions import Fraction
from random import Random

import numpy as np

from .config import Config, DEFAULT_CONFIG
from .corpus import (
    expression_corpus,
    random_counterpart_base_exprs,
    random_extraction_pair,
    random_finite,
    random_harmonic_base_exprs,
    random_translation_triple,
    random_union_case,
)
from .errors import InsufficientDataError
from .filters import FilterBase, definition_check, glazer_sum_base, principal_sum
from .grammar import to_text
from .harmonic import (
    EULER_MASCHERONI,
    MEISSEL_MERTENS,
    ResidueMod,
    anharmonic_subset,
    check_translation_inequality,
    classify,
    correction_series,
    hindman_identity_check,
    partial_sums,
    partition_classify,
)
from .progressions import find_ap, longest_ap
from .sets import AP, Finite, KthPowers, NATURALS, Powers, Primes, first_n
from .verdict import ANHARMONIC, HARMONIC, UNKNOWN


def _record(prop: str, passed: bool, details=None) -> dict:
    return {"property": prop, "passed": bool(passed), "details": details}


def fact1(config: Config = DEFAULT_CONFIG) -> list[dict]:
    """Partition regularity: union verdicts and residue-class splits."""
    rng = Random(101)
    records = []

    failures = []
    for _ in range(200):
        e, tags = random_union_case(rng)
        want = HARMONIC if HARMONIC in tags else ANHARMONIC
        got = classify(e, config=config, diagnostics=False).value
        if got != want:
            failures.append(to_text(e))
    records.append(
        _record(
            "union of definite sets classifies from its components (200 cases)",
            not failures,
            {"failures": failures},
        )
    )

    bad = []
    for r in range(2, 11):
        classes = partition_classify(NATURALS, ResidueMod(r), config=config)
        if not all(c.verdict.value == HARMONIC for c in classes):
            bad.append(r)
    records.append(
        _record(
            "every residue class of N is harmonic, symbolically (r <= 10)",
            not bad,
            {"failing_moduli": bad},
        )
    )

    classes = partition_classify(Powers(2), ResidueMod(3), config=config)
    records.append(
        _record(
            "residue classes of pow(2) mod 3 are anharmonic",
            all(c.verdict.value == ANHARMONIC for c in classes),
            {"verdicts": [c.verdict.value for c in classes]},
        )
    )

    horizon = min(10**7, config.horizon_cap)
    classes = partition_classify(
        Primes(), ResidueMod(10), config=config, checkpoints=[horizon]
    )
    finite_ok = True
    sums = {}
    for c in classes:
        if isinstance(c.expr, Finite):
            if c.expr.values and c.verdict.value != ANHARMONIC:
                finite_ok = False
        elif c.verdict.value == UNKNOWN and c.verdict.diagnostic is not None:
            sums[c.label] = float(c.verdict.diagnostic.sums[-1])
    records.append(
        _record(
            "primes mod 10: singleton classes anharmonic, residue classes "
            "1,3,7,9 unknown with partial sum > 0.4",
            finite_ok and len(sums) == 4 and all(s > 0.4 for s in sums.values()),
            {"partial_sums": sums, "horizon": horizon},
        )
    )
    return records


def fact2(config: Config = DEFAULT_CONFIG) -> list[dict]:
    """Translation inequality: shifted reciprocals dominate half rates."""
    records = []
    pinned = [(AP(1, 1), 3, 10), (Primes(), 10, 100), (AP(5, 7), 1, 2)]
    bad = []
    for e, s, n in pinned:
        t = check_translation_inequality(e, s, n, config=config)
        if not t.holds:
            bad.append([to_text(e), s, n])
    records.append(
        _record("pinned translation examples hold", not bad, {"failures": bad})
    )

    rng = Random(202)
    failures = []
    for _ in range(100):
        e, s, n = random_translation_triple(rng)
        t = check_translation_inequality(e, s, n, config=config)
        if not t.holds:
            failures.append([to_text(e), s, n])
    records.append(
        _record(
            "100 random (set, shift, prefix) triples hold with exact rationals",
            not failures,
            {"failures": failures},
        )
    )
    return records


def _identity_block(a_lo: int, a_hi: int) -> int:
    """Count identity failures for a in [a_lo, a_hi) over all 1 <= x < a.

    Works the subtraction as generic fraction arithmetic (cross
    multiply, reduce by the gcd) so the check does not assume the
    algebraic simplification it is testing.
    """
    failures = 0
    for a in range(a_lo, a_hi):
        x = np.arange(1, a, dtype=np.int64)
        num = a * (a - x) - x * (a - x)
        den = a * (a - x) * (a - x)
        g = np.gcd(num, den)
        failures += int(np.count_nonzero((num // g != 1) | (den // g != a)))
    return failures


def fact3_identity(config: Config = DEFAULT_CONFIG) -> list[dict]:
    """The reciprocal decomposition behind left-shift invariance."""
    records = []
    failures = _identity_block(2, 10**4 + 1)
    records.append(
        _record(
            "1/a = 1/(a-x) - x/(a(a-x)) exactly for all 1 <= x < a <= 10^4",
            failures == 0,
            {"failing_pairs": failures},
        )
    )

    rng = Random(303)
    spot = [(5, 2), (10**4, 9999)]
    spot += [(a, rng.randint(1, a - 1)) for a in rng.sample(range(2, 10**4), 200)]
    bad = [[a, x] for a, x in spot if not hindman_identity_check(a, x).equal]
    records.append(
        _record(
            "spot checks through the exact-rational interface",
            not bad,
            {"failures": bad},
        )
    )

    horizon = min(10**6, config.horizon_cap)
    errs = {}
    for x in (1, 2, 5):
        got = correction_series(NATURALS, x, horizon)
        oracle = float(Fraction(1, x) * sum(Fraction(1, m) for m in range(1, x + 1)))
        errs[str(x)] = abs(float(got) - oracle)
    records.append(
        _record(
            "correction series for N telescopes to (1/x) * H_x within 1e-6",
            all(err < 1e-6 for err in errs.values()),
            {"errors": errs, "horizon": horizon},
        )
    )
    return records


def extraction(config: Config = DEFAULT_CONFIG) -> list[dict]:
    """Anharmonic subsets extracted from harmonic sets."""
    records = []
    pinned = [
        (AP(1, 1), Powers(2), 4, [3, 5, 9, 17]),
        (Primes(), Powers(2), 5, [3, 5, 11, 17, 37]),
        (Primes(), KthPowers(2), 4, [2, 5, 11, 17]),
    ]
    bad = []
    for a, b, k, want in pinned:
        got = anharmonic_subset(a, b, k, config=config)
        if got != want:
            bad.append([to_text(a), to_text(b), got, want])
    records.append(
        _record("pinned extraction vectors", not bad, {"failures": bad})
    )

    rng = Random(404)
    checked = 0
    failures = []
    while checked < 20:
        a, b, k = random_extraction_pair(rng)
        try:
            cs = anharmonic_subset(a, b, k, config=config)
            bs = first_n(b, k, config.horizon_cap)
        except InsufficientDataError:
            continue
        checked += 1
        if any(c <= p for c, p in zip(cs, bs)):
            failures.append([to_text(a), to_text(b), "elementwise"])
            continue
        c_sum = Fraction(0)
        b_sum = Fraction(0)
        for c, p in zip(cs, bs):
            c_sum += Fraction(1, c)
            b_sum += Fraction(1, p)
            if not c_sum < b_sum:
                failures.append([to_text(a), to_text(b), "prefix-sum"])
                break
    records.append(
        _record(
            "20 random pairs: elementwise dominance and strict prefix-sum "
            "domination",
            not failures,
            {"failures": failures},
        )
    )
    return records


def glazer_principal(config: Config = DEFAULT_CONFIG) -> list[dict]:
    """Principal addition agrees with the definition evaluation."""
    corpus = expression_corpus(100, seed=505, depth=2)
    mismatches = []
    for e in corpus:
        for n in range(1, 201):
            for m in range(1, 201):
                direct = definition_check(e, n, m)
                summed = e.member(principal_sum(n, m).point)
                if direct != summed:
                    mismatches.append([to_text(e), n, m])
    return [
        _record(
            "e(n) + e(m) = e(n+m) against the definition for all n, m <= 200 "
            "over a 100-expression corpus",
            not mismatches,
            {"corpus_size": len(corpus), "mismatches": mismatches[:10]},
        )
    ]


def glazer_ideal(config: Config = DEFAULT_CONFIG) -> list[dict]:
    """Harmonic bases absorb under Glazer sums on either side."""
    records = []
    rng = Random(606)
    for side in ("left", "right"):
        failures = []
        for _ in range(50):
            harmonic_exprs = random_harmonic_base_exprs(rng)
            other_exprs = random_counterpart_base_exprs(rng)
            F = FilterBase.build(harmonic_exprs, horizon=2000)
            G = FilterBase.build(other_exprs, horizon=2000)
            if side == "right":
                F, G = G, F
            H = glazer_sum_base(F, G, horizon=2000)
            for el in H.elements:
                if classify(el, config=config, diagnostics=False).value != HARMONIC:
                    failures.append([F.texts(), G.texts(), to_text(el)])
        records.append(
            _record(
                f"50 random pairs with the {side} base harmonic: every sum-base "
                "element classifies harmonic",
                not failures,
                {"failures": failures[:5]},
            )
        )
    return records


def _brute_longest(values: list[int], k_cap: int) -> tuple[int, int, int] | None:
    """Exhaustive longest-progression search over an explicit value list."""
    present = set(values)
    best = None
    for start in values:
        for second in values:
            if second <= start:
                continue
            d = second - start
            length = 2
            term = second
            while length < k_cap and term + d in present:
                term += d
                length += 1
            if length >= 3:
                key = (-length, start, d)
                if best is None or key < best:
                    best = key
    if best is None:
        return None
    return (best[1], best[2], -best[0])


def vdw_desk(config: Config = DEFAULT_CONFIG) -> list[dict]:
    """Desk-scale progression searches with a brute-force cross-check."""
    records = []
    w = find_ap(Primes(), 10, 2100, config=config)
    got = None if w is None else (w.start, w.diff, w.length)
    records.append(
        _record(
            "ten primes in progression below 2100 at (199, 210, 10)",
            got == (199, 210, 10),
            {"witness": list(got) if got else None},
        )
    )

    rng = Random(707)
    mismatches = []
    for _ in range(500):
        fin = random_finite(rng, max_size=25, max_value=120)
        horizon = max(fin.values) if fin.values else 1
        w = longest_ap(fin, horizon, config=config)
        got = None if w is None else (w.start, w.diff, w.length)
        want = _brute_longest(list(fin.values), k_cap=12)
        if got != want:
            mismatches.append([list(fin.values), got, want])
    records.append(
        _record(
            "longest progression agrees with brute force on 500 random "
            "finite sets",
            not mismatches,
            {"mismatches": mismatches[:5]},
        )
    )
    return records


def mertens(config: Config = DEFAULT_CONFIG) -> list[dict]:
    """Summation oracles for the harmonic series and the prime series."""
    records = []
    horizon = min(10**6, config.horizon_cap)
    diag = partial_sums(NATURALS, [horizon], exact=True, config=config)
    target = math.log(horizon) + EULER_MASCHERONI
    err = abs(float(diag.sums[0]) - target)
    records.append(
        _record(
            "exact harmonic sum matches ln(10^6) + gamma within 1e-6",
            err < 1e-6,
            {"sum": float(diag.sums[0]), "target": target, "error": err},
        )
    )

    horizon = min(10**7, config.horizon_cap)
    diag = partial_sums(Primes(), [horizon], exact=False, config=config)
    target = math.log(math.log(horizon)) + MEISSEL_MERTENS
    err = abs(float(diag.sums[0]) - target)
    records.append(
        _record(
            "prime reciprocal sum matches ln ln(10^7) + M within 0.05",
            err < 0.05,
            {"sum": float(diag.sums[0]), "target": target, "error": err},
        )
    )
    return records


SUITES = {
    "fact1": fact1,
    "fact2": fact2,
    "fact3-identity": fact3_identity,
    "extraction": extraction,
    "glazer-principal": glazer_principal,
    "glazer-ideal": glazer_ideal,
    "vdw-desk": vdw_desk,
    "mertens": mertens,
}


def run_suite(name: str, config: Config = DEFAULT_CONFIG) -> list[dict]:
    if name not in SUITES:
        known = ", ".join(sorted(SUITES))
        raise ValueError(f"unknown experiment {name!r}; expected one of {known}")
    return SUITES[name](config)
