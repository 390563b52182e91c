"""Gap structure: profiles, piecewise-syndeticity verdicts, composite runs.

A set is piecewise syndetic when a single gap bound b admits
arbitrarily long stretches of consecutive elements with gaps <= b.  A
finite enumeration can never settle that, so definite verdicts come
only from symbolic structure; gap profiles are the numeric diagnostic.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import factorial

import numpy as np

from .config import Config, DEFAULT_CONFIG
from .errors import ConfigError, InsufficientDataError
from .rules import contains, provably_nonempty, simplify
from .sets import (
    AP,
    Difference,
    Finite,
    FromFile,
    KthPowers,
    LeftShift,
    Powers,
    Primes,
    SetExpr,
    Shifted,
    Sumset,
    Union,
)
from .verdict import NO, Rule, UNKNOWN, Verdict, YES

_FACTORIAL_CAP = 20
_DIAG_HORIZON = 10**4
_GAPS_IN_JSON = 10**4


@dataclass
class GapProfile:
    """Successive gaps of one enumerated prefix and their window structure.

    ``profile[b]`` is the largest number of consecutive elements whose
    successive gaps all stay <= b; it is non-decreasing in b and covers
    the whole prefix at b = max_gap.
    """

    horizon: int
    count: int
    gaps: tuple[int, ...]
    profile: dict[int, int]
    max_gap: int

    def to_dict(self) -> dict:
        arr = np.array(self.gaps)
        histogram = {
            str(v): int(c) for v, c in zip(*np.unique(arr, return_counts=True))
        }
        out = {
            "horizon": self.horizon,
            "count": self.count,
            "max_gap": self.max_gap,
            "gap_histogram": histogram,
            "profile": {str(b): n for b, n in sorted(self.profile.items())},
        }
        if len(self.gaps) <= _GAPS_IN_JSON:
            out["gaps"] = list(self.gaps)
        else:
            out["gaps_omitted"] = len(self.gaps)
        return out


def _longest_run(mask: np.ndarray) -> int:
    if not mask.any():
        return 0
    padded = np.concatenate(([False], mask, [False]))
    edges = np.diff(padded.astype(np.int8))
    starts = np.flatnonzero(edges == 1)
    ends = np.flatnonzero(edges == -1)
    return int((ends - starts).max())


def gap_profile(e: SetExpr, horizon: int, *, config: Config = DEFAULT_CONFIG) -> GapProfile:
    """Exact gap profile of the elements of ``e`` up to ``horizon``."""
    if horizon > config.horizon_cap:
        raise ConfigError(f"horizon {horizon} exceeds the cap {config.horizon_cap}")
    elems = np.fromiter(e.upto(horizon), dtype=np.int64)
    if elems.size < 2:
        raise InsufficientDataError(
            f"need at least 2 elements below {horizon}, found {elems.size}"
        )
    gaps = np.diff(elems)
    profile = {
        int(b): _longest_run(gaps <= b) + 1 for b in np.unique(gaps).tolist()
    }
    return GapProfile(
        horizon=horizon,
        count=int(elems.size),
        gaps=tuple(gaps.tolist()),
        profile=profile,
        max_gap=int(gaps.max()),
    )


def _psyn_node(e: SetExpr) -> tuple[str, Rule | None]:
    if isinstance(e, Finite):
        return NO, Rule("finite-set", "no arbitrarily long windows")
    if isinstance(e, AP):
        return YES, Rule("constant-gaps", f"every gap equals {e.diff}")
    if isinstance(e, Primes):
        return NO, Rule(
            "factorial-composite-runs",
            "for every bound b the b integers from (b+1)!+2 on are composite",
        )
    if isinstance(e, Powers):
        return NO, Rule(
            "gaps-grow-without-bound", f"gap after {e.base}^k is {e.base}^k ({e.base}-1)"
        )
    if isinstance(e, KthPowers):
        return NO, Rule(
            "gaps-grow-without-bound", f"gap after n^{e.k} exceeds {e.k} n^{e.k - 1}"
        )
    if isinstance(e, Shifted):
        value, cert = _psyn_node(e.inner)
        if value == UNKNOWN:
            return UNKNOWN, None
        return value, Rule("translation-invariant", f"right shift {e.shift}", (cert,))
    if isinstance(e, LeftShift):
        value, cert = _psyn_node(e.inner)
        if value == UNKNOWN:
            return UNKNOWN, None
        return value, Rule("translation-invariant", f"left shift {e.shift}", (cert,))
    if isinstance(e, Union):
        results = [_psyn_node(p) for p in e.parts]
        for (value, cert), part in zip(results, e.parts):
            if value == YES:
                from .harmonic import _label

                return YES, Rule("union-has-syndetic-part", _label(part), (cert,))
        if all(value == NO for value, _ in results):
            return NO, Rule(
                "no-part-piecewise-syndetic",
                "piecewise syndeticity is partition regular",
                tuple(cert for _, cert in results),
            )
        return UNKNOWN, None
    if isinstance(e, Sumset):
        for factor, other in ((e.left, e.right), (e.right, e.left)):
            value, cert = _psyn_node(factor)
            if value == YES and provably_nonempty(other):
                from .harmonic import _label

                return YES, Rule(
                    "sumset-contains-translate",
                    f"translate of {_label(factor)}",
                    (cert,),
                )
        return UNKNOWN, None
    return UNKNOWN, None


def _ap_subterms(e: SetExpr, out: list[AP]) -> None:
    if isinstance(e, AP):
        out.append(e)
    elif isinstance(e, (Shifted, LeftShift)):
        _ap_subterms(e.inner, out)
    elif isinstance(e, Union):
        for p in e.parts:
            _ap_subterms(p, out)
    elif isinstance(e, Difference):
        _ap_subterms(e.left, out)
    elif isinstance(e, Sumset):
        _ap_subterms(e.left, out)
        _ap_subterms(e.right, out)


def _finite_ceiling(e: SetExpr) -> int:
    """Largest value mentioned by any finite part, 0 when none."""
    if isinstance(e, Finite):
        return max(e.values) if e.values else 0
    if isinstance(e, FromFile):
        return max(e.elements) if e.elements else 0
    if isinstance(e, (Shifted, LeftShift)):
        return _finite_ceiling(e.inner) + e.shift
    if isinstance(e, Union):
        return max(_finite_ceiling(p) for p in e.parts)
    if isinstance(e, (Difference, Sumset)):
        return max(_finite_ceiling(e.left), _finite_ceiling(e.right))
    return 0


def _superset_of_syndetic(e: SetExpr) -> Rule | None:
    """Find a progression provably inside ``e``; its bounded gaps transfer up."""
    candidates: list[AP] = []
    _ap_subterms(e, candidates)
    ceiling = _finite_ceiling(e)
    tails = []
    for ap in candidates:
        if ceiling >= ap.first:
            skip = (ceiling + 1 - ap.first + ap.diff - 1) // ap.diff
            tails.append(AP(ap.first + skip * ap.diff, ap.diff))
    seen = []
    for cand in candidates + tails:
        if cand in seen:
            continue
        seen.append(cand)
        if len(seen) > 16:
            break
        got = contains(e, cand, horizon=64)
        if got.verdict == YES:
            return Rule(
                "superset-of-syndetic",
                f"contains ap({cand.first},{cand.diff})",
                (got.derivation,),
            )
    return None


def classify_psyndetic(
    e: SetExpr,
    *,
    config: Config = DEFAULT_CONFIG,
    diagnostics: bool = True,
    diag_horizon: int = _DIAG_HORIZON,
) -> Verdict:
    """Three-valued piecewise-syndeticity verdict for ``e``.

    Yes and No come from the symbolic rules only; everything else is
    Unknown with a gap profile over a modest horizon attached.
    """
    s = simplify(e)
    value, cert = _psyn_node(s)
    if value == UNKNOWN:
        rule = _superset_of_syndetic(s)
        if rule is not None:
            value, cert = YES, rule
    if value != UNKNOWN:
        return Verdict(value, certificate=cert)
    if not diagnostics:
        return Verdict(UNKNOWN)
    try:
        diag = gap_profile(e, min(diag_horizon, config.horizon_cap), config=config)
    except InsufficientDataError:
        diag = None
    return Verdict(UNKNOWN, diagnostic=diag)


@dataclass
class GapCertificate:
    """A run of ``length`` consecutive integers outside a set, with divisors.

    ``divisors`` maps each position in start..start+length-1 to a
    proper divisor proving compositeness.
    """

    bound: int
    start: int
    length: int
    divisors: dict[int, int]

    def verify(self) -> bool:
        if len(self.divisors) != self.length:
            return False
        for offset in range(self.length):
            value = self.start + offset
            d = self.divisors.get(value)
            if d is None or not (1 < d < value) or value % d:
                return False
        return True

    def to_dict(self) -> dict:
        return {
            "bound": self.bound,
            "start": str(self.start),
            "length": self.length,
            "divisors": {str(v): d for v, d in sorted(self.divisors.items())},
        }


def prime_gap_certificate(b: int, *, config: Config = DEFAULT_CONFIG) -> GapCertificate:
    """Certify b consecutive composites starting at (b+1)! + 2.

    Each position (b+1)!+i for i in 2..b+1 is divisible by i, so no
    gap bound b survives everywhere: the primes are not syndetic.
    """
    if b < 1:
        raise ValueError("bound must be a positive integer")
    if b > _FACTORIAL_CAP:
        raise ConfigError(f"factorial certificates capped at b = {_FACTORIAL_CAP}")
    base = factorial(b + 1)
    divisors = {base + i: i for i in range(2, b + 2)}
    return GapCertificate(bound=b, start=base + 2, length=b, divisors=divisors)
