"""Three-valued divergence classification of set expressions.

A set is *harmonic* when the sum of its reciprocals diverges and
*anharmonic* when it converges.  The classifier applies a closed set
of symbolic rules to the simplified expression:

* finite sets, geometric powers and perfect k-th powers are anharmonic;
* arithmetic progressions and the primes are harmonic;
* a finite union is harmonic exactly when some part is;
* translation either way preserves both definite verdicts, the left
  direction because dropping boundary terms and a convergent
  correction series cannot change divergence;
* subsets of anharmonic sets (intersections, differences) are
  anharmonic, and removing an anharmonic part from a harmonic set
  leaves it harmonic;
* a sumset with a harmonic factor contains a translate of it, hence
  is harmonic.

Anything the rules do not reach is Unknown and gets partial-sum
diagnostics instead of a certificate.  Notably there is no rule for
irreducible progression-and-primes intersections: reporting those as
harmonic would smuggle in a deep theorem the rule system does not
carry, so they stay Unknown with supporting numerics.

The module also hosts the numeric side: checkpointed partial sums,
the translation tail inequality, the telescoping identity behind left
shifts with its correction series, partition classification, and
extraction of sparse subsequences from harmonic sets.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np
from gmpy2 import mpq

from .config import Config, DEFAULT_CONFIG
from .errors import ConfigError, InputError, InsufficientDataError
from .rules import provably_infinite, simplify
from .sets import (
    AP,
    Difference,
    Finite,
    FromFile,
    Intersection,
    KthPowers,
    LeftShift,
    Powers,
    Primes,
    SetExpr,
    Shifted,
    Sumset,
    Union,
    first_n,
)
from .summation import exact_reciprocal_sum, float_reciprocal_sum
from .verdict import ANHARMONIC, HARMONIC, Rule, UNKNOWN, Verdict

#: Limits of (partial harmonic/prime sums minus their logarithmic term).
EULER_MASCHERONI = 0.5772156649
MEISSEL_MERTENS = 0.2614972128

_CHUNK = 1 << 16


def _label(e: SetExpr) -> str:
    from .grammar import to_text

    return to_text(e)


def _classify_node(e: SetExpr) -> tuple[str, Rule | None]:
    if isinstance(e, Finite):
        return ANHARMONIC, Rule("Finite anharmonic", f"{len(e.values)} elements")
    if isinstance(e, AP):
        return HARMONIC, Rule("AP harmonic", f"first {e.first}, step {e.diff}")
    if isinstance(e, Primes):
        return HARMONIC, Rule("Primes harmonic", "reciprocal sum diverges")
    if isinstance(e, Powers):
        return ANHARMONIC, Rule("Powers anharmonic", f"base {e.base}")
    if isinstance(e, KthPowers):
        return ANHARMONIC, Rule("KthPowers anharmonic", f"exponent {e.k}")
    if isinstance(e, FromFile):
        return UNKNOWN, None
    if isinstance(e, Shifted):
        value, cert = _classify_node(e.inner)
        if value == UNKNOWN:
            return UNKNOWN, None
        return value, Rule("translation-invariant", f"right shift {e.shift}", (cert,))
    if isinstance(e, LeftShift):
        value, cert = _classify_node(e.inner)
        if value == UNKNOWN:
            return UNKNOWN, None
        note = f"left shift {e.shift}"
        if value == ANHARMONIC:
            note += ", correction series bounded"
        return value, Rule("translation-invariant", note, (cert,))
    if isinstance(e, Union):
        results = [_classify_node(p) for p in e.parts]
        for (value, cert), part in zip(results, e.parts):
            if value == HARMONIC:
                return HARMONIC, Rule(
                    "union-has-divergent-part", _label(part), (cert,)
                )
        if all(value == ANHARMONIC for value, _ in results):
            return ANHARMONIC, Rule(
                "union-of-convergent-parts",
                f"{len(results)} parts",
                tuple(cert for _, cert in results),
            )
        return UNKNOWN, None
    if isinstance(e, Intersection):
        for part in e.parts:
            value, cert = _classify_node(part)
            if value == ANHARMONIC:
                return ANHARMONIC, Rule("subset-of-convergent", _label(part), (cert,))
        return UNKNOWN, None
    if isinstance(e, Difference):
        lv, lc = _classify_node(e.left)
        if lv == ANHARMONIC:
            return ANHARMONIC, Rule("subset-of-convergent", _label(e.left), (lc,))
        rv, rc = _classify_node(e.right)
        if lv == HARMONIC and rv == ANHARMONIC:
            return HARMONIC, Rule(
                "removing-convergent-part", _label(e.right), (lc, rc)
            )
        return UNKNOWN, None
    if isinstance(e, Sumset):
        from .rules import provably_nonempty

        for factor, other in ((e.left, e.right), (e.right, e.left)):
            value, cert = _classify_node(factor)
            if value == HARMONIC and provably_nonempty(other):
                return HARMONIC, Rule(
                    "sumset-contains-translate",
                    f"translate of {_label(factor)}",
                    (cert,),
                )
        return UNKNOWN, None
    return UNKNOWN, None


def classify(
    e: SetExpr,
    *,
    config: Config = DEFAULT_CONFIG,
    checkpoints: Sequence[int] | None = None,
    diagnostics: bool = True,
) -> Verdict:
    """Classify ``e`` as harmonic, anharmonic, or unknown.

    Definite verdicts carry the symbolic derivation; unknown ones carry
    checkpointed partial sums unless ``diagnostics`` is disabled.
    """
    value, cert = _classify_node(simplify(e))
    if value != UNKNOWN:
        return Verdict(value, certificate=cert)
    if not diagnostics:
        return Verdict(UNKNOWN)
    diag = partial_sums(
        e, checkpoints, exact=config.precision == "exact", config=config
    )
    return Verdict(UNKNOWN, diagnostic=diag)


@dataclass
class PartialSumDiag:
    """Reciprocal partial sums of one set at increasing horizons."""

    checkpoints: tuple[int, ...]
    sums: tuple
    counts: tuple[int, ...]
    exact: bool

    def to_dict(self) -> dict:
        return {
            "exact": self.exact,
            "table": [
                {"horizon": h, "terms": c, "sum": float(s)}
                for h, c, s in zip(self.checkpoints, self.counts, self.sums)
            ],
        }


def partial_sums(
    e: SetExpr,
    checkpoints: Sequence[int] | None = None,
    *,
    exact: bool = False,
    config: Config = DEFAULT_CONFIG,
) -> PartialSumDiag:
    """Sum reciprocals of ``e`` up to each checkpoint horizon.

    Exact mode keeps a rational total and refuses runs with more than
    ``config.exact_term_cap`` terms; double mode streams through numpy.
    """
    cps = tuple(checkpoints) if checkpoints is not None else config.checkpoints
    if not cps or any(c < 1 for c in cps):
        raise ConfigError("checkpoints must be positive integers")
    if list(cps) != sorted(set(cps)):
        raise ConfigError("checkpoints must be strictly increasing")
    if cps[-1] > config.horizon_cap:
        raise ConfigError(
            f"checkpoint {cps[-1]} exceeds the horizon cap {config.horizon_cap}"
        )

    sums: list = []
    counts: list[int] = []
    total = mpq(0) if exact else 0.0
    count = 0
    buffer: list[int] = []
    it = iter(e.upto(cps[-1]))
    value = next(it, None)

    def flush():
        nonlocal total
        if not buffer:
            return
        if exact:
            total += exact_reciprocal_sum(buffer)
        else:
            total += float_reciprocal_sum(np.array(buffer, dtype=np.int64))
        buffer.clear()

    for cp in cps:
        while value is not None and value <= cp:
            buffer.append(value)
            count += 1
            if exact and count > config.exact_term_cap:
                raise ConfigError(
                    f"exact mode capped at {config.exact_term_cap} terms"
                )
            if len(buffer) >= _CHUNK:
                flush()
            value = next(it, None)
        flush()
        sums.append(total)
        counts.append(count)
    return PartialSumDiag(cps, tuple(sums), tuple(counts), exact)


@dataclass
class TranslationCheck:
    """Exact verification of the translated-tail lower bound.

    For the first ``terms`` elements a_1 < ... < a_N and a shift s,
    with t the first index where a_t >= s, checks

        sum 1/(a_n + s)  >=  sum_{n<=t} 1/(a_n + s) + sum_{n>t} 1/(2 a_n).
    """

    shift: int
    terms: int
    threshold_index: int
    lhs: mpq
    rhs: mpq
    holds: bool

    def to_dict(self) -> dict:
        return {
            "shift": self.shift,
            "terms": self.terms,
            "threshold_index": self.threshold_index,
            "lhs": float(self.lhs),
            "rhs": float(self.rhs),
            "margin": float(self.lhs - self.rhs),
            "holds": self.holds,
        }


def check_translation_inequality(
    e: SetExpr, shift: int, terms: int, *, config: Config = DEFAULT_CONFIG
) -> TranslationCheck:
    """Evaluate the tail bound exactly over the first ``terms`` elements.

    Needs enough elements below the horizon cap and more terms than the
    threshold index (the first position reaching ``shift``), otherwise
    the bound's tail is empty and nothing is being tested.
    """
    if shift < 1:
        raise ValueError("shift must be a positive integer")
    elems = first_n(e, terms, config.horizon_cap)
    threshold = next((i for i, a in enumerate(elems, start=1) if a >= shift), None)
    if threshold is None or threshold >= terms:
        raise ValueError(
            f"need more than {threshold or terms} terms so the tail past "
            f"the first element reaching {shift} is nonempty"
        )
    lhs = exact_reciprocal_sum([a + shift for a in elems])
    head = exact_reciprocal_sum([a + shift for a in elems[:threshold]])
    tail = exact_reciprocal_sum([2 * a for a in elems[threshold:]])
    rhs = head + tail
    return TranslationCheck(shift, terms, threshold, lhs, rhs, bool(lhs >= rhs))


@dataclass
class IdentityCheck:
    """One instance of the telescoping identity 1/a = 1/(a-x) - x/(a(a-x))."""

    a: int
    x: int
    lhs: Fraction
    rhs: Fraction
    equal: bool

    def to_dict(self) -> dict:
        return {
            "a": self.a,
            "x": self.x,
            "lhs": str(self.lhs),
            "rhs": str(self.rhs),
            "equal": self.equal,
        }


def hindman_identity_check(a: int, x: int) -> IdentityCheck:
    """Verify 1/a = 1/(a-x) - x/(a(a-x)) in exact rationals; needs a > x >= 1."""
    if not 1 <= x < a:
        raise ValueError("need a > x >= 1")
    lhs = Fraction(1, a)
    rhs = Fraction(1, a - x) - Fraction(x, a * (a - x))
    return IdentityCheck(a, x, lhs, rhs, lhs == rhs)


def correction_series(
    e: SetExpr, x: int, horizon: int, *, exact: bool = False
) -> mpq | float:
    """Sum 1/(a(a-x)) over elements a of ``e`` with 0 < a - x <= horizon.

    Scaled by x this is the total discrepancy between reciprocals of
    ``e`` and of its left translate by x; it stays bounded as the
    horizon grows, which is exactly why left translation preserves
    divergence.  For e = N the series telescopes to (1/x) * H_x.
    """
    if x < 1:
        raise ValueError("shift must be a positive integer")
    if horizon < 1:
        raise ValueError("horizon must be a positive integer")
    denoms = [a * (a - x) for a in e.upto(horizon + x) if a > x]
    if exact:
        return exact_reciprocal_sum(denoms)
    return float_reciprocal_sum(np.array(denoms, dtype=np.int64))


@dataclass(frozen=True)
class ResidueMod:
    """Color positive integers by residue class modulo ``modulus``."""

    modulus: int

    def __post_init__(self):
        if self.modulus < 2:
            raise ValueError("modulus must be at least 2")


@dataclass(frozen=True)
class Blocks:
    """Color position n by ``pattern[(n-1) % len(pattern)]``."""

    pattern: str

    def __post_init__(self):
        if not self.pattern:
            raise ValueError("pattern must be nonempty")


@dataclass(frozen=True)
class FileColoring:
    """Explicit coloring from a file of ``n label`` lines covering 1..max."""

    path: str


@dataclass
class ColorClass:
    label: str
    expr: SetExpr
    verdict: Verdict

    def to_dict(self) -> dict:
        return {
            "label": self.label,
            "expr": _label(self.expr),
            "verdict": self.verdict.to_dict(),
        }


def _file_coloring_classes(e: SetExpr, spec: FileColoring) -> list[tuple[str, SetExpr]]:
    colors: dict[int, str] = {}
    try:
        with open(spec.path, "r", encoding="utf-8") as fh:
            for lineno, raw in enumerate(fh, start=1):
                line = raw.strip()
                if not line:
                    continue
                fields = line.split()
                if len(fields) != 2:
                    raise InputError(
                        f"{spec.path}:{lineno}: expected 'n label', got {line!r}"
                    )
                try:
                    n = int(fields[0])
                except ValueError:
                    raise InputError(
                        f"{spec.path}:{lineno}: not an integer: {fields[0]!r}"
                    ) from None
                if n < 1:
                    raise InputError(f"{spec.path}:{lineno}: positions start at 1")
                if n in colors:
                    raise InputError(f"{spec.path}:{lineno}: duplicate position {n}")
                colors[n] = fields[1]
    except OSError as exc:
        raise InputError(f"cannot read coloring file {spec.path}: {exc}") from exc
    if not colors:
        raise InputError(f"{spec.path}: empty coloring")
    top = max(colors)
    missing = next((n for n in range(1, top + 1) if n not in colors), None)
    if missing is not None:
        raise InputError(f"{spec.path}: no color for position {missing}")
    out = []
    for label in sorted(set(colors.values())):
        members = tuple(n for n in range(1, top + 1) if colors[n] == label and e.member(n))
        out.append((label, FromFile(f"{spec.path}#{label}", members)))
    return out


def partition_classify(
    e: SetExpr,
    coloring,
    *,
    config: Config = DEFAULT_CONFIG,
    checkpoints: Sequence[int] | None = None,
) -> list[ColorClass]:
    """Split ``e`` by a coloring and classify every color class.

    When the ambient set is harmonic and all classes but one are
    definitely anharmonic, the remaining class inherits a harmonic
    verdict: a finite union of convergent pieces cannot exhaust a
    divergent sum.
    """
    if isinstance(coloring, ResidueMod):
        pairs = [
            (f"{i} mod {coloring.modulus}", Intersection((e, AP(i, coloring.modulus))))
            for i in range(1, coloring.modulus + 1)
        ]
    elif isinstance(coloring, Blocks):
        length = len(coloring.pattern)
        pairs = []
        for label in sorted(set(coloring.pattern)):
            support = tuple(
                AP(i, length)
                for i in range(1, length + 1)
                if coloring.pattern[i - 1] == label
            )
            carrier = support[0] if len(support) == 1 else Union(support)
            pairs.append((label, Intersection((e, carrier))))
    elif isinstance(coloring, FileColoring):
        pairs = _file_coloring_classes(e, coloring)
    else:
        raise TypeError(f"unsupported coloring {coloring!r}")

    classes = [
        ColorClass(
            label,
            simplify(expr),
            classify(expr, config=config, checkpoints=checkpoints),
        )
        for label, expr in pairs
    ]

    open_slots = [c for c in classes if c.verdict.value != ANHARMONIC]
    if len(open_slots) == 1 and open_slots[0].verdict.value == UNKNOWN:
        parent = classify(e, config=config, diagnostics=False)
        if parent.value == HARMONIC:
            slot = open_slots[0]
            siblings = tuple(
                c.verdict.certificate
                for c in classes
                if c is not slot and c.verdict.certificate is not None
            )
            slot.verdict = Verdict(
                HARMONIC,
                certificate=Rule(
                    "partition-residual-divergence",
                    "ambient set divergent, all sibling classes convergent",
                    (parent.certificate,) + siblings,
                ),
                diagnostic=slot.verdict.diagnostic,
            )
    return classes


def anharmonic_subset(
    a: SetExpr, b: SetExpr, count: int, *, config: Config = DEFAULT_CONFIG
) -> list[int]:
    """Extract ``count`` elements of harmonic ``a`` dominating sparse ``b``.

    Walks the elements of ``b`` in order and records the first element
    of ``a`` beyond each, skipping repeats.  Each extracted element
    exceeds a distinct element of ``b``, so the reciprocal sum of the
    result is dominated by the convergent sum over ``b``: the extracted
    subsequence is anharmonic even though it came from a harmonic set.
    """
    if count < 1:
        raise ValueError("count must be a positive integer")
    if classify(a, config=config, diagnostics=False).value != HARMONIC:
        raise ValueError("source set must classify harmonic")
    if classify(b, config=config, diagnostics=False).value != ANHARMONIC:
        raise ValueError("pacing set must classify anharmonic")
    if not provably_infinite(b):
        raise ValueError("pacing set must be provably infinite")
    out: list[int] = []
    a_iter = iter(a.upto(config.horizon_cap))
    current = next(a_iter, None)
    for pace in b.upto(config.horizon_cap):
        while current is not None and current <= pace:
            current = next(a_iter, None)
        if current is None:
            break
        if not out or current > out[-1]:
            out.append(current)
            if len(out) == count:
                return out
    raise InsufficientDataError(
        f"extracted {len(out)} of {count} elements within {config.horizon_cap}",
        progress=out,
    )
