"""Semantics-preserving rewriting and symbolic containment.

``simplify`` drives a bottom-up rewrite to a fixpoint.  The notable
rewrites:

* intersections of progressions fold by the Chinese remainder theorem;
* a progression whose start and step share a factor g > 1 meets the
  primes in at most the single element g;
* finite parts absorb intersections and differences outright, since
  membership is decidable;
* translations push through every boolean operation and into sumset
  factors, so shift chains collapse onto the primitive families;
* the sumset of two progressions is a numerical-semigroup translate:
  finitely many exceptional values, then a full progression tail.

``contains`` answers subset questions three-valued: Yes only with a
symbolic derivation, No only with an explicit counterexample element,
Unknown otherwise.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd

from . import sieve
from .sets import (
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
    SetExpr,
    Shifted,
    Sumset,
    Union,
)
from .verdict import NO, Rule, UNKNOWN, Verdict, YES

_MAX_PASSES = 32
_DISTRIBUTE_CAP = 16
_SEMIGROUP_CAP = 1 << 20
_FINITE_SPREAD_CAP = 8


def _crt_meet(a1: int, d1: int, a2: int, d2: int) -> tuple[int, int] | None:
    """Common (first, diff) of AP(a1,d1) and AP(a2,d2), or None if disjoint."""
    g = gcd(d1, d2)
    if (a2 - a1) % g:
        return None
    m = d2 // g
    step = d1 // g * d2
    t = ((a2 - a1) // g * pow(d1 // g, -1, m)) % m if m > 1 else 0
    x = a1 + d1 * t
    lo = max(a1, a2)
    if x < lo:
        x += (lo - x + step - 1) // step * step
    return x, step


def _ap_subset(inner: AP, outer: AP) -> bool:
    return (
        inner.first >= outer.first
        and inner.diff % outer.diff == 0
        and (inner.first - outer.first) % outer.diff == 0
    )


def _semigroup_sumset(a: AP, b: AP) -> SetExpr | None:
    """Closed form for AP + AP, or None when the table would be too big."""
    base = a.first + b.first
    g = gcd(a.diff, b.diff)
    p, q = a.diff // g, b.diff // g
    if p == 1 or q == 1:
        return AP(base, g)
    if p * q > _SEMIGROUP_CAP:
        return None
    conductor = (p - 1) * (q - 1)
    reach = bytearray(conductor)
    reach[0] = 1
    for i in range(conductor):
        if reach[i]:
            if i + p < conductor:
                reach[i + p] = 1
            if i + q < conductor:
                reach[i + q] = 1
    tail = AP(base + conductor * g, g)
    exceptional = tuple(base + k * g for k in range(conductor) if reach[k])
    if not exceptional:
        return tail
    return Union((Finite(exceptional), tail))


def _shift_down(e: SetExpr, s: int) -> SetExpr:
    """Rewrite Shifted(e, s) one step; ``e`` is already simplified."""
    if isinstance(e, Finite):
        return Finite(tuple(v + s for v in e.values))
    if isinstance(e, AP):
        return AP(e.first + s, e.diff)
    if isinstance(e, Shifted):
        return Shifted(e.inner, e.shift + s)
    if isinstance(e, Union):
        return Union(tuple(Shifted(p, s) for p in e.parts))
    if isinstance(e, Intersection):
        return Intersection(tuple(Shifted(p, s) for p in e.parts))
    if isinstance(e, Difference):
        return Difference(Shifted(e.left, s), Shifted(e.right, s))
    if isinstance(e, Sumset):
        return Sumset(Shifted(e.left, s), e.right)
    return Shifted(e, s)


def _leftshift_down(e: SetExpr, x: int) -> SetExpr:
    """Rewrite LeftShift(e, x) one step; ``e`` is already simplified."""
    if isinstance(e, Finite):
        return Finite(tuple(v - x for v in e.values if v > x))
    if isinstance(e, AP):
        if e.first > x:
            first = e.first - x
        else:
            skip = (x + 1 - e.first + e.diff - 1) // e.diff
            first = e.first + skip * e.diff - x
        return AP(first, e.diff)
    if isinstance(e, LeftShift):
        return LeftShift(e.inner, e.shift + x)
    if isinstance(e, Shifted):
        if x == e.shift:
            return e.inner
        if x > e.shift:
            return LeftShift(e.inner, x - e.shift)
        return Shifted(e.inner, e.shift - x)
    if isinstance(e, Union):
        return Union(tuple(LeftShift(p, x) for p in e.parts))
    if isinstance(e, Intersection):
        return Intersection(tuple(LeftShift(p, x) for p in e.parts))
    if isinstance(e, Difference):
        return Difference(LeftShift(e.left, x), LeftShift(e.right, x))
    return LeftShift(e, x)


def _fold_union(parts: tuple[SetExpr, ...]) -> SetExpr:
    flat: list[SetExpr] = []
    for p in parts:
        if isinstance(p, Union):
            flat.extend(p.parts)
        else:
            flat.append(p)
    out: list[SetExpr] = []
    finite_values: set[int] = set()
    finite_at = -1
    for p in flat:
        if p == NATURALS:
            return NATURALS
        if isinstance(p, Finite):
            if finite_at < 0:
                finite_at = len(out)
                out.append(p)
            finite_values.update(p.values)
        elif p not in out:
            out.append(p)
    if finite_at >= 0:
        merged = Finite(tuple(sorted(finite_values)))
        if merged.values:
            out[finite_at] = merged
        else:
            del out[finite_at]
    if not out:
        return Finite(())
    if len(out) == 1:
        return out[0]
    return Union(tuple(out))


def _fold_intersection(parts: tuple[SetExpr, ...]) -> SetExpr:
    flat: list[SetExpr] = []
    for p in parts:
        if isinstance(p, Intersection):
            flat.extend(p.parts)
        elif p != NATURALS:
            if p not in flat:
                flat.append(p)
    if not flat:
        return NATURALS

    finites = [p for p in flat if isinstance(p, Finite)]
    if finites:
        lead = min(finites, key=lambda f: len(f.values))
        others = [p for p in flat if p is not lead]
        kept = tuple(v for v in lead.values if all(o.member(v) for o in others))
        return Finite(kept)

    aps = [p for p in flat if isinstance(p, AP)]
    rest = [p for p in flat if not isinstance(p, AP)]
    folded: AP | None = None
    if aps:
        first, diff = aps[0].first, aps[0].diff
        for nxt in aps[1:]:
            met = _crt_meet(first, diff, nxt.first, nxt.diff)
            if met is None:
                return Finite(())
            first, diff = met
        folded = AP(first, diff)

    if folded is not None and any(isinstance(p, Primes) for p in rest):
        g = gcd(folded.first, folded.diff)
        if g > 1:
            candidates: tuple[int, ...]
            if folded.first == g and sieve.is_prime(g):
                candidates = (g,)
            else:
                candidates = ()
            others = [p for p in rest if not isinstance(p, Primes)]
            kept = tuple(v for v in candidates if all(o.member(v) for o in others))
            return Finite(kept)

    merged: list[SetExpr] = []
    placed = False
    for p in flat:
        if isinstance(p, AP):
            if not placed and folded is not None:
                merged.append(folded)
                placed = True
        else:
            merged.append(p)
    if len(merged) == 1:
        return merged[0]

    unions = [p for p in merged if isinstance(p, Union)]
    if len(unions) == 1 and len(unions[0].parts) <= _DISTRIBUTE_CAP:
        u = unions[0]
        others = [p for p in merged if p is not u]
        carrier = others[0] if len(others) == 1 else Intersection(tuple(others))
        return Union(tuple(Intersection((carrier, part)) for part in u.parts))

    return Intersection(tuple(merged))


def _fold_difference(left: SetExpr, right: SetExpr) -> SetExpr:
    if isinstance(right, Finite) and not right.values:
        return left
    if isinstance(left, Finite):
        return Finite(tuple(v for v in left.values if not right.member(v)))
    if left == right or right == NATURALS:
        return Finite(())
    return Difference(left, right)


def _fold_sumset(left: SetExpr, right: SetExpr) -> SetExpr:
    for side in (left, right):
        if isinstance(side, Finite) and not side.values:
            return Finite(())
    if isinstance(left, Finite) and isinstance(right, Finite):
        if len(left.values) * len(right.values) <= _SEMIGROUP_CAP:
            return Finite.of(u + v for u in left.values for v in right.values)
    for a, b in ((left, right), (right, left)):
        if isinstance(a, Finite) and len(a.values) == 1:
            return Shifted(b, a.values[0])
        if isinstance(a, Finite) and len(a.values) <= _FINITE_SPREAD_CAP:
            return Union(tuple(Shifted(b, v) for v in a.values))
        if isinstance(a, Union) and len(a.parts) <= _FINITE_SPREAD_CAP:
            return Union(tuple(Sumset(p, b) for p in a.parts))
    if isinstance(left, AP) and isinstance(right, AP):
        closed = _semigroup_sumset(left, right)
        if closed is not None:
            return closed
    return Sumset(left, right)


def _rewrite(e: SetExpr) -> SetExpr:
    if isinstance(e, (Finite, AP, Powers, KthPowers, Primes, FromFile)):
        return e
    if isinstance(e, Shifted):
        return _shift_down(simplify(e.inner), e.shift)
    if isinstance(e, LeftShift):
        return _leftshift_down(simplify(e.inner), e.shift)
    if isinstance(e, Union):
        return _fold_union(tuple(simplify(p) for p in e.parts))
    if isinstance(e, Intersection):
        return _fold_intersection(tuple(simplify(p) for p in e.parts))
    if isinstance(e, Difference):
        return _fold_difference(simplify(e.left), simplify(e.right))
    if isinstance(e, Sumset):
        return _fold_sumset(simplify(e.left), simplify(e.right))
    return e


@lru_cache(maxsize=None)
def simplify(e: SetExpr) -> SetExpr:
    """Rewrite ``e`` to a fixpoint without changing its elements."""
    for _ in range(_MAX_PASSES):
        nxt = _rewrite(e)
        if nxt == e:
            return nxt
        e = nxt
    return e


def provably_nonempty(e: SetExpr) -> bool:
    """True when the simplified expression certainly has an element."""
    e = simplify(e)
    if isinstance(e, (AP, Powers, KthPowers, Primes)):
        return True
    if isinstance(e, (Finite, FromFile)):
        return bool(e.values if isinstance(e, Finite) else e.elements)
    if isinstance(e, Shifted):
        return provably_nonempty(e.inner)
    if isinstance(e, LeftShift):
        return provably_infinite(e.inner)
    if isinstance(e, Union):
        return any(provably_nonempty(p) for p in e.parts)
    if isinstance(e, Sumset):
        return provably_nonempty(e.left) and provably_nonempty(e.right)
    return False


def provably_infinite(e: SetExpr) -> bool:
    """True when the simplified expression certainly has infinitely many elements."""
    e = simplify(e)
    if isinstance(e, (AP, Powers, KthPowers, Primes)):
        return True
    if isinstance(e, (Shifted, LeftShift)):
        return provably_infinite(e.inner)
    if isinstance(e, Union):
        return any(provably_infinite(p) for p in e.parts)
    if isinstance(e, Sumset):
        return (provably_infinite(e.left) and provably_nonempty(e.right)) or (
            provably_infinite(e.right) and provably_nonempty(e.left)
        )
    return False


@dataclass
class Containment:
    """Three-valued answer to ``b subset of a``.

    ``witness`` is an element of b outside a when the verdict is no;
    ``derivation`` is the symbolic rule tree when the verdict is yes.
    """

    verdict: str
    witness: int | None = None
    derivation: Rule | None = None

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "witness": self.witness,
            "derivation": self.derivation.to_dict() if self.derivation else None,
        }

    def as_verdict(self) -> Verdict:
        return Verdict(self.verdict, certificate=self.derivation)


def _yes(rule: Rule) -> Containment:
    return Containment(YES, derivation=rule)


def _symbolic_yes(a: SetExpr, b: SetExpr, depth: int) -> Rule | None:
    """Derivation for ``b subset of a``, or None when no rule applies."""
    if isinstance(b, Finite) and not b.values:
        return Rule("empty-subset")
    if a == b:
        return Rule("equal-expressions")
    if a == NATURALS:
        return Rule("universe-superset")
    if depth <= 0:
        return None

    if isinstance(b, (Finite, FromFile)):
        values = b.values if isinstance(b, Finite) else b.elements
        if all(a.member(v) for v in values):
            return Rule("finite-membership", f"{len(values)} elements checked")
        return None
    if isinstance(a, AP) and isinstance(b, AP):
        if _ap_subset(b, a):
            return Rule(
                "progression-embedding",
                f"step {a.diff} divides {b.diff}, starts aligned",
            )
        return None

    if isinstance(b, Union):
        children = []
        for p in b.parts:
            sub = _symbolic_yes(a, p, depth - 1)
            if sub is None:
                return None
            children.append(sub)
        return Rule("union-parts", children=tuple(children))
    if isinstance(a, Union):
        for p in a.parts:
            sub = _symbolic_yes(p, b, depth - 1)
            if sub is not None:
                return Rule("within-union-part", children=(sub,))
    if isinstance(b, Intersection):
        for p in b.parts:
            sub = _symbolic_yes(a, p, depth - 1)
            if sub is not None:
                return Rule("intersection-refines", children=(sub,))
    if isinstance(a, Intersection):
        children = []
        for p in a.parts:
            sub = _symbolic_yes(p, b, depth - 1)
            if sub is None:
                children = []
                break
            children.append(sub)
        if children:
            return Rule("meets-every-part", children=tuple(children))
    if isinstance(b, Difference):
        sub = _symbolic_yes(a, b.left, depth - 1)
        if sub is not None:
            return Rule("difference-within", children=(sub,))
    if isinstance(a, Difference):
        sub = _symbolic_yes(a.left, b, depth - 1)
        if sub is not None:
            clash = simplify(Intersection((b, a.right)))
            if isinstance(clash, Finite) and not clash.values:
                return Rule(
                    "difference-avoids",
                    "subtracted part provably disjoint",
                    children=(sub,),
                )
    if isinstance(a, Shifted) and isinstance(b, Shifted) and a.shift == b.shift:
        sub = _symbolic_yes(a.inner, b.inner, depth - 1)
        if sub is not None:
            return Rule("translate-both-sides", f"shift {a.shift}", children=(sub,))
    if isinstance(a, LeftShift) and isinstance(b, LeftShift) and a.shift == b.shift:
        sub = _symbolic_yes(a.inner, b.inner, depth - 1)
        if sub is not None:
            return Rule("translate-both-sides", f"left shift {a.shift}", children=(sub,))
    if isinstance(a, Sumset):
        if isinstance(b, Sumset):
            sl = _symbolic_yes(a.left, b.left, depth - 1)
            sr = _symbolic_yes(a.right, b.right, depth - 1)
            if sl is not None and sr is not None:
                return Rule("sumset-componentwise", children=(sl, sr))
        if isinstance(b, Shifted):
            for factor, other in ((a.left, a.right), (a.right, a.left)):
                if other.member(b.shift):
                    sub = _symbolic_yes(factor, b.inner, depth - 1)
                    if sub is not None:
                        return Rule(
                            "sumset-translate",
                            f"offset {b.shift} lies in the other factor",
                            children=(sub,),
                        )
    return None


def contains(a: SetExpr, b: SetExpr, horizon: int = 10_000) -> Containment:
    """Decide whether every element of ``b`` lies in ``a``.

    Yes requires a symbolic derivation; No requires a concrete element
    of ``b`` found below ``horizon`` (finite sets are checked in full);
    anything else is Unknown.
    """
    if horizon < 1:
        raise ValueError("horizon must be a positive integer")
    sa, sb = simplify(a), simplify(b)

    rule = _symbolic_yes(sa, sb, depth=8)
    if rule is not None:
        return _yes(rule)

    if isinstance(sb, (Finite, FromFile)):
        values = sb.values if isinstance(sb, Finite) else sb.elements
        for v in values:
            if not sa.member(v):
                return Containment(NO, witness=v)
        return _yes(Rule("finite-membership", f"{len(values)} elements checked"))

    for v in sb.upto(horizon):
        if not sa.member(v):
            return Containment(NO, witness=v)
    return Containment(UNKNOWN)
