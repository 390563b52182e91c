"""Symbolic descriptions of subsets of the positive integers.

Every set is an immutable expression tree built from a few primitive
families (finite sets, arithmetic progressions, geometric powers,
perfect powers, the primes, file-backed lists) and closed under
union, intersection, difference, translation in both directions, and
pairwise sumset.  The universe is {1, 2, 3, ...}; left translation
``A - x`` means ``{y >= 1 : y + x in A}``, so results never dip below 1.

Two total operations define the semantics: ``member(n)`` decides
membership and ``upto(horizon)`` enumerates all elements <= horizon in
increasing order.  Everything else in the package (simplification,
classification, containment) must agree with these two.
"""

from __future__ import annotations

import bisect
import heapq
import math
from dataclasses import dataclass, field
from typing import Iterable, Iterator

from .errors import InputError, InsufficientDataError
from . import sieve


class SetExpr:
    """Base class for set expression nodes."""

    __slots__ = ()

    def member(self, n: int) -> bool:
        """True when the positive integer ``n`` belongs to this set."""
        raise NotImplementedError

    def _iter(self, horizon: int) -> Iterator[int]:
        raise NotImplementedError

    def upto(self, horizon: int) -> Iterator[int]:
        """Yield the elements <= horizon in strictly increasing order."""
        if horizon < 1:
            raise ValueError("horizon must be a positive integer")
        return self._iter(horizon)

    def __contains__(self, n: int) -> bool:
        return self.member(n)

    def __or__(self, other: "SetExpr") -> "SetExpr":
        if not isinstance(other, SetExpr):
            return NotImplemented
        return Union((self, other))

    def __and__(self, other: "SetExpr") -> "SetExpr":
        if not isinstance(other, SetExpr):
            return NotImplemented
        return Intersection((self, other))

    def __add__(self, other) -> "SetExpr":
        if isinstance(other, int):
            return Shifted(self, other)
        if isinstance(other, SetExpr):
            return Sumset(self, other)
        return NotImplemented

    def __radd__(self, other) -> "SetExpr":
        if isinstance(other, int):
            return Shifted(self, other)
        return NotImplemented

    def __sub__(self, other) -> "SetExpr":
        if isinstance(other, int):
            return LeftShift(self, other)
        if isinstance(other, SetExpr):
            return Difference(self, other)
        return NotImplemented

    def __str__(self) -> str:
        from .grammar import to_text

        return to_text(self)


def _check_positive(value: int, what: str) -> None:
    if not isinstance(value, int) or isinstance(value, bool) or value < 1:
        raise ValueError(f"{what} must be a positive integer, got {value!r}")


@dataclass(frozen=True)
class Finite(SetExpr):
    """An explicitly listed finite set; ``values`` may be empty."""

    values: tuple[int, ...] = ()

    def __post_init__(self):
        prev = 0
        for v in self.values:
            _check_positive(v, "finite set element")
            if v <= prev:
                raise ValueError("finite set values must be strictly increasing")
            prev = v

    @classmethod
    def of(cls, values: Iterable[int]) -> "Finite":
        """Build from any iterable, sorting and deduplicating."""
        return cls(tuple(sorted(set(values))))

    def member(self, n: int) -> bool:
        return n in self.values

    def _iter(self, horizon: int) -> Iterator[int]:
        for v in self.values:
            if v > horizon:
                return
            yield v


@dataclass(frozen=True)
class AP(SetExpr):
    """Arithmetic progression {first, first + diff, first + 2*diff, ...}."""

    first: int
    diff: int

    def __post_init__(self):
        _check_positive(self.first, "progression start")
        _check_positive(self.diff, "progression step")

    def member(self, n: int) -> bool:
        return n >= self.first and (n - self.first) % self.diff == 0

    def _iter(self, horizon: int) -> Iterator[int]:
        return iter(range(self.first, horizon + 1, self.diff))


#: The whole universe {1, 2, 3, ...}.
NATURALS = AP(1, 1)


@dataclass(frozen=True)
class Powers(SetExpr):
    """Geometric powers {base, base^2, base^3, ...} for base >= 2."""

    base: int

    def __post_init__(self):
        if not isinstance(self.base, int) or self.base < 2:
            raise ValueError(f"power base must be an integer >= 2, got {self.base!r}")

    def member(self, n: int) -> bool:
        if n < self.base:
            return False
        while n % self.base == 0:
            n //= self.base
        return n == 1

    def _iter(self, horizon: int) -> Iterator[int]:
        v = self.base
        while v <= horizon:
            yield v
            v *= self.base


def _kth_root(n: int, k: int) -> int:
    """Largest r with r**k <= n."""
    if n < 1:
        return 0
    r = int(round(n ** (1.0 / k)))
    while r**k > n:
        r -= 1
    while (r + 1) ** k <= n:
        r += 1
    return r


@dataclass(frozen=True)
class KthPowers(SetExpr):
    """Perfect k-th powers {1, 2^k, 3^k, ...} for a fixed exponent k >= 2."""

    k: int

    def __post_init__(self):
        if not isinstance(self.k, int) or self.k < 2:
            raise ValueError(f"power exponent must be an integer >= 2, got {self.k!r}")

    def member(self, n: int) -> bool:
        if n < 1:
            return False
        return _kth_root(n, self.k) ** self.k == n

    def _iter(self, horizon: int) -> Iterator[int]:
        r = 1
        while r**self.k <= horizon:
            yield r**self.k
            r += 1


@dataclass(frozen=True)
class Primes(SetExpr):
    """The prime numbers."""

    def member(self, n: int) -> bool:
        return sieve.is_prime(n) if n >= 2 else False

    def _iter(self, horizon: int) -> Iterator[int]:
        return sieve.iter_primes(horizon)


@dataclass(frozen=True)
class Shifted(SetExpr):
    """Right translation {a + shift : a in inner}."""

    inner: SetExpr
    shift: int

    def __post_init__(self):
        _check_positive(self.shift, "shift amount")

    def member(self, n: int) -> bool:
        return n > self.shift and self.inner.member(n - self.shift)

    def _iter(self, horizon: int) -> Iterator[int]:
        if horizon <= self.shift:
            return
        for v in self.inner._iter(horizon - self.shift):
            yield v + self.shift


@dataclass(frozen=True)
class LeftShift(SetExpr):
    """Left translation {y >= 1 : y + shift in inner}."""

    inner: SetExpr
    shift: int

    def __post_init__(self):
        _check_positive(self.shift, "shift amount")

    def member(self, n: int) -> bool:
        return n >= 1 and self.inner.member(n + self.shift)

    def _iter(self, horizon: int) -> Iterator[int]:
        for v in self.inner._iter(horizon + self.shift):
            if v > self.shift:
                yield v - self.shift


@dataclass(frozen=True)
class Union(SetExpr):
    """Union of one or more parts."""

    parts: tuple[SetExpr, ...]

    def __post_init__(self):
        if not self.parts:
            raise ValueError("union needs at least one part")

    def member(self, n: int) -> bool:
        return any(p.member(n) for p in self.parts)

    def _iter(self, horizon: int) -> Iterator[int]:
        merged = heapq.merge(*(p._iter(horizon) for p in self.parts))
        prev = 0
        for v in merged:
            if v != prev:
                yield v
                prev = v


# Rough enumeration cost rank: prefer iterating sparse, cheap families.
def _iter_rank(e: SetExpr) -> int:
    if isinstance(e, (Finite, FromFile)):
        return 0
    if isinstance(e, (Powers, KthPowers)):
        return 1
    if isinstance(e, AP):
        return 2 if e.diff > 1 else 3
    if isinstance(e, Primes):
        return 3
    if isinstance(e, (Shifted, LeftShift)):
        return _iter_rank(e.inner)
    return 4


def _count_estimate(e: SetExpr, n: int) -> float:
    """Rough element count of ``e`` below ``n``, for orientation choices."""
    if n < 1:
        return 0.0
    if isinstance(e, Finite):
        return float(len(e.values))
    if isinstance(e, FromFile):
        return float(len(e.elements))
    if isinstance(e, AP):
        return max(0.0, (n - e.first) / e.diff + 1)
    if isinstance(e, Powers):
        return math.log(n, e.base) if n >= e.base else 0.0
    if isinstance(e, KthPowers):
        return n ** (1.0 / e.k)
    if isinstance(e, Primes):
        return n / math.log(n) if n > 2 else 1.0
    if isinstance(e, Shifted):
        return _count_estimate(e.inner, n - e.shift)
    if isinstance(e, LeftShift):
        return _count_estimate(e.inner, n + e.shift)
    if isinstance(e, Union):
        return sum(_count_estimate(p, n) for p in e.parts)
    if isinstance(e, Intersection):
        return min(_count_estimate(p, n) for p in e.parts)
    if isinstance(e, Difference):
        return _count_estimate(e.left, n)
    return float(n)


def _hard_member(e: SetExpr) -> bool:
    """Whether membership tests on ``e`` cost more than a few operations.

    Sumsets that fail to fold answer membership by scanning one side;
    bulk callers should enumerate them into a mask instead.
    """
    if isinstance(e, Sumset):
        red = e._reduced()
        if isinstance(red, Sumset):
            return True
        return _hard_member(red)
    if isinstance(e, (Union, Intersection)):
        return any(_hard_member(p) for p in e.parts)
    if isinstance(e, Difference):
        return _hard_member(e.left) or _hard_member(e.right)
    if isinstance(e, (Shifted, LeftShift)):
        return _hard_member(e.inner)
    return False


def _member_mask(e: SetExpr, horizon: int) -> "np.ndarray":
    """Boolean membership table of ``e`` over [0, horizon]."""
    import numpy as np

    mask = np.zeros(horizon + 1, dtype=bool)
    idx = np.fromiter(e._iter(horizon), dtype=np.int64)
    mask[idx] = True
    return mask


@dataclass(frozen=True)
class Intersection(SetExpr):
    """Intersection of one or more parts."""

    parts: tuple[SetExpr, ...]

    def __post_init__(self):
        if not self.parts:
            raise ValueError("intersection needs at least one part")

    def member(self, n: int) -> bool:
        return all(p.member(n) for p in self.parts)

    def _iter(self, horizon: int) -> Iterator[int]:
        ranked = sorted(range(len(self.parts)), key=lambda i: _iter_rank(self.parts[i]))
        lead = self.parts[ranked[0]]
        rest = [self.parts[i] for i in ranked[1:]]
        # enumerate hard-membership parts once instead of probing them
        cheap = [p for p in rest if not _hard_member(p)]
        mask = None
        for p in rest:
            if _hard_member(p):
                m = _member_mask(p, horizon)
                mask = m if mask is None else mask & m
        for v in lead._iter(horizon):
            if mask is not None and not mask[v]:
                continue
            if all(p.member(v) for p in cheap):
                yield v


@dataclass(frozen=True)
class Difference(SetExpr):
    """Elements of ``left`` that are not in ``right``."""

    left: SetExpr
    right: SetExpr

    def member(self, n: int) -> bool:
        return self.left.member(n) and not self.right.member(n)

    def _iter(self, horizon: int) -> Iterator[int]:
        if _hard_member(self.right):
            mask = _member_mask(self.right, horizon)
            for v in self.left._iter(horizon):
                if not mask[v]:
                    yield v
            return
        for v in self.left._iter(horizon):
            if not self.right.member(v):
                yield v


@dataclass(frozen=True)
class Sumset(SetExpr):
    """Pairwise sums {a + b : a in left, b in right}."""

    left: SetExpr
    right: SetExpr

    def _reduced(self) -> SetExpr:
        from .rules import simplify

        return simplify(self)

    def member(self, n: int) -> bool:
        if n < 2:
            return False
        red = self._reduced()
        if not isinstance(red, Sumset):
            return red.member(n)
        a, b = red.left, red.right
        # iterate the sparser side, probe the denser one
        if _count_estimate(b, n - 1) < _count_estimate(a, n - 1):
            a, b = b, a
        return any(b.member(n - u) for u in a._iter(n - 1))

    def _iter(self, horizon: int) -> Iterator[int]:
        red = self._reduced()
        if not isinstance(red, Sumset):
            yield from red._iter(horizon)
            return
        a, b = red.left, red.right
        # the sparser side supplies the translate offsets
        if _count_estimate(b, horizon - 1) < _count_estimate(a, horizon - 1):
            a, b = b, a
        offsets = list(a._iter(horizon - 1))
        if not offsets:
            return

        def translate(u: int) -> Iterator[int]:
            for v in b._iter(horizon - u):
                yield u + v

        if len(offsets) <= 512:
            merged = heapq.merge(*(translate(u) for u in offsets))
            prev = 0
            for v in merged:
                if v != prev:
                    yield v
                    prev = v
            return
        # Dense fallback: one boolean array, OR-ed translate by translate.
        import numpy as np

        hits = np.zeros(horizon + 1, dtype=bool)
        bvals = np.fromiter(b._iter(horizon - offsets[0]), dtype=np.int64)
        for u in offsets:
            sums = bvals[bvals <= horizon - u] + u
            hits[sums] = True
        yield from np.flatnonzero(hits).tolist()


@dataclass(frozen=True)
class FromFile(SetExpr):
    """A set given only by an explicit sorted list loaded from a file.

    Unlike ``Finite`` this keeps its data provenance: downstream
    analyses treat the listed elements as a sample of an otherwise
    unknown set rather than as a complete description.
    """

    path: str
    elements: tuple[int, ...] = field(hash=False)

    def __post_init__(self):
        prev = 0
        for v in self.elements:
            _check_positive(v, "file set element")
            if v <= prev:
                raise ValueError("file set values must be strictly increasing")
            prev = v

    @classmethod
    def load(cls, path: str) -> "FromFile":
        """Read one positive integer per line, strictly increasing."""
        values = []
        try:
            with open(path, "r", encoding="utf-8") as fh:
                for lineno, line in enumerate(fh, start=1):
                    text = line.strip()
                    if not text:
                        continue
                    try:
                        v = int(text)
                    except ValueError:
                        raise InputError(
                            f"{path}:{lineno}: not a decimal integer: {text!r}"
                        ) from None
                    values.append(v)
        except OSError as exc:
            raise InputError(f"cannot read set file {path}: {exc}") from exc
        prev = 0
        for i, v in enumerate(values, start=1):
            if v < 1:
                raise InputError(f"{path}: element {v} is not positive")
            if v <= prev:
                raise InputError(f"{path}: values must be strictly increasing")
            prev = v
        return cls(path, tuple(values))

    def member(self, n: int) -> bool:
        i = bisect.bisect_left(self.elements, n)
        return i < len(self.elements) and self.elements[i] == n

    def _iter(self, horizon: int) -> Iterator[int]:
        for v in self.elements:
            if v > horizon:
                return
            yield v


def shift(e: SetExpr, s: int) -> Shifted:
    """The right translate s + e = {s + a : a in e}."""
    return Shifted(e, s)


def left_shift(e: SetExpr, x: int) -> LeftShift:
    """The left translate e - x = {a - x : a in e, a > x}."""
    return LeftShift(e, x)


def elements(e: SetExpr, horizon: int) -> list[int]:
    """All elements of ``e`` up to ``horizon`` as a list."""
    return list(e.upto(horizon))


def first_n(e: SetExpr, count: int, horizon: int) -> list[int]:
    """The first ``count`` elements of ``e``, scanning no further than ``horizon``.

    Raises InsufficientDataError (with the partial list attached) when
    the horizon is exhausted first.
    """
    out: list[int] = []
    for v in e.upto(horizon):
        out.append(v)
        if len(out) == count:
            return out
    raise InsufficientDataError(
        f"only {len(out)} of {count} elements found below {horizon}", progress=out
    )


def first_element(e: SetExpr, horizon: int) -> int | None:
    """Smallest element of ``e`` up to ``horizon``, or None."""
    return next(iter(e.upto(horizon)), None)
