"""Arithmetic-progression search inside symbolic sets.

Searches work over the enumerated prefix up to a horizon, using a
hash set for membership so only differences that actually occur
between elements are ever tried; results are deterministic, minimal
under the documented orderings.
"""

from __future__ import annotations

from dataclasses import dataclass

from .config import Config, DEFAULT_CONFIG
from .errors import ConfigError
from .sets import SetExpr

#: Most elements longest_ap will scan; the pair loop is quadratic.
_LONGEST_ELEMENT_CAP = 4096

DEFAULT_K_CAP = 12


@dataclass(frozen=True)
class APWitness:
    """A k-term progression start, start+diff, ..., start+(length-1)*diff."""

    start: int
    diff: int
    length: int

    def terms(self) -> list[int]:
        return [self.start + i * self.diff for i in range(self.length)]

    def to_dict(self) -> dict:
        return {"start": self.start, "diff": self.diff, "length": self.length}


def verify_witness(e: SetExpr, w: APWitness) -> bool:
    """True iff every term of the witness belongs to ``e``."""
    return all(e.member(t) for t in w.terms())


def find_ap(
    e: SetExpr, k: int, horizon: int, *, config: Config = DEFAULT_CONFIG
) -> APWitness | None:
    """Smallest k-term progression in ``e`` below ``horizon``.

    Minimal by (start, diff) lexicographically; None when the prefix
    holds no such progression.  Candidate differences are gaps to later
    elements, checked by chain extension against a hash set.
    """
    if k < 3:
        raise ValueError("progression length must be at least 3")
    if horizon > config.horizon_cap:
        raise ConfigError(f"horizon {horizon} exceeds the cap {config.horizon_cap}")
    elems = list(e.upto(horizon))
    present = set(elems)
    for idx, start in enumerate(elems):
        # d <= span/(k-1), else the chain leaves the horizon early
        limit = (horizon - start) // (k - 1)
        for later in elems[idx + 1 :]:
            d = later - start
            if d > limit:
                break
            term = later
            steps = 2
            while steps < k and term + d in present:
                term += d
                steps += 1
            if steps == k:
                return APWitness(start, d, k)
    return None


def longest_ap(
    e: SetExpr, horizon: int, k_cap: int = DEFAULT_K_CAP, *, config: Config = DEFAULT_CONFIG
) -> APWitness | None:
    """Longest progression in the prefix, capped at ``k_cap`` terms.

    Ties break by (length descending, start, diff).  None when not even
    a 3-term progression exists.  Refuses prefixes beyond a few
    thousand elements, since all element pairs are candidate seeds.
    """
    if k_cap < 3:
        raise ValueError("length cap must be at least 3")
    if horizon > config.horizon_cap:
        raise ConfigError(f"horizon {horizon} exceeds the cap {config.horizon_cap}")
    elems = list(e.upto(horizon))
    if len(elems) > _LONGEST_ELEMENT_CAP:
        raise ConfigError(
            f"longest_ap scans all element pairs; {len(elems)} elements "
            f"exceed the {_LONGEST_ELEMENT_CAP} cap, lower the horizon"
        )
    present = set(elems)
    best: APWitness | None = None
    for idx, start in enumerate(elems):
        for later in elems[idx + 1 :]:
            d = later - start
            if start - d in present:
                continue  # not a chain head; the full chain was seen earlier
            term = later
            length = 2
            while length < k_cap and term + d in present:
                term += d
                length += 1
            if length >= 3 and (best is None or length > best.length):
                best = APWitness(start, d, length)
    return best
