"""Principal ultrafilters and filter bases under Glazer addition.

The principal layer is exact: e(n) + e(m) = e(n + m), checkable
directly from the definition p + q = {A : {x : A - x in p} in q}.

Filter bases approximate general ultrafilters.  A base is a finite
list of nonempty sets, canonicalized so every pairwise intersection
either folds into a base element or is flagged irreducible, with the
finite intersection property (FIP) checked over pairs and triples.
Glazer addition at base level is the sumset base {F_i (+) G_j}: any
set containing some F_i (+) G_j satisfies the definition's membership
criterion against the generated filters, because F_i lies inside its
left shift by every element of G_j.

Verdicts here are base-certified: quantifiers over filter members run
over base elements (including adjoined intersections), which is the
finitary shadow of the full filter quantifier.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

from .config import Config, DEFAULT_CONFIG
from .errors import ConfigError, FIPError
from .harmonic import classify, partial_sums
from .rules import contains, provably_infinite, simplify
from .sets import (
    AP,
    Finite,
    Intersection,
    LeftShift,
    SetExpr,
    Shifted,
    Sumset,
    Union,
    first_element,
)
from .verdict import ANHARMONIC, HARMONIC, NO, Rule, UNKNOWN, Verdict, YES

_BASE_CAP = 16
_CLOSURE_CAP = 64
_DEFAULT_HORIZON = 10_000
_BASE_DIAG_CHECKPOINTS = (10**3, 10**4, 10**5)


@dataclass(frozen=True)
class PrincipalUF:
    """The ultrafilter of all sets containing one fixed point."""

    point: int

    def __post_init__(self):
        if self.point < 1:
            raise ValueError("point must be a positive integer")

    def member(self, a: SetExpr) -> bool:
        return a.member(self.point)

    def to_dict(self) -> dict:
        return {"point": self.point}


def principal_sum(n: int, m: int) -> PrincipalUF:
    """Glazer sum of principal ultrafilters: e(n) + e(m) = e(n + m)."""
    if n < 1 or m < 1:
        raise ValueError("points must be positive integers")
    return PrincipalUF(n + m)


def definition_check(a: SetExpr, n: int, m: int) -> bool:
    """Evaluate ``a in e(n) + e(m)`` straight from the definition.

    The sum holds a iff {x : a - x in e(n)} lies in e(m), i.e. iff the
    left shift a - m contains n; the shift is evaluated through the
    expression machinery rather than by adding the points.
    """
    if n < 1 or m < 1:
        raise ValueError("points must be positive integers")
    return LeftShift(a, m).member(n)


def _text(e: SetExpr) -> str:
    from .grammar import to_text

    return to_text(e)


def fip_check(
    base: Sequence[SetExpr], horizon: int = _DEFAULT_HORIZON
) -> Verdict:
    """Check the finite intersection property over pairs and triples.

    Yes records a common-element witness per checked subset (symbolic
    folding finds most, a bounded scan the rest); No carries a subset
    whose intersection provably collapses to the empty set; Unknown
    lists the subsets that resisted both.
    """
    if not base:
        raise ValueError("base must be non-empty")
    if len(base) > _BASE_CAP:
        raise ConfigError(f"fip_check limited to {_BASE_CAP} base elements")
    witnesses: dict[str, int] = {}
    unresolved: list[str] = []
    sizes = [1, 2, 3]
    for size in sizes:
        for combo in combinations(range(len(base)), size):
            exprs = tuple(base[i] for i in combo)
            label = " & ".join(_text(x) for x in exprs)
            inter = simplify(exprs[0] if size == 1 else Intersection(exprs))
            if isinstance(inter, Finite) and not inter.values:
                return Verdict(
                    NO,
                    certificate=Rule("empty-intersection", label),
                )
            w = first_element(inter, horizon)
            if w is None:
                unresolved.append(label)
            else:
                witnesses[label] = w
    if unresolved:
        return Verdict(
            UNKNOWN,
            diagnostic={"witnesses": witnesses, "unresolved": unresolved},
        )
    return Verdict(
        YES,
        certificate=Rule(
            "finite-intersection-witnesses", f"{len(witnesses)} subsets checked"
        ),
        diagnostic={"witnesses": witnesses},
    )


@dataclass
class FilterBase:
    """A canonicalized finite base for a filter on the positive integers."""

    elements: tuple[SetExpr, ...]
    provenance: tuple[str, ...]
    irreducible: tuple[tuple[int, int], ...]
    fip: Verdict

    @classmethod
    def build(
        cls,
        exprs: Sequence[SetExpr],
        *,
        provenance: Sequence[str] | None = None,
        horizon: int = _DEFAULT_HORIZON,
    ) -> "FilterBase":
        """Simplify, deduplicate, adjoin pairwise intersections, check FIP.

        Adjunction is a single round over the given elements, not a
        closure: adjoined sets are intersections of generators, so
        further rounds would not change the generated filter.  Raises
        FIPError as soon as any element or intersection is provably
        empty; records pairs whose intersection stays symbolic as
        irreducible.
        """
        if not exprs:
            raise ValueError("base must be non-empty")
        elements: list[SetExpr] = []
        notes: list[str] = []
        given = list(provenance) if provenance is not None else ["given"] * len(exprs)
        if len(given) != len(exprs):
            raise ValueError("provenance must match the expression list")
        for e, note in zip(exprs, given):
            s = simplify(e)
            if isinstance(s, Finite) and not s.values:
                raise FIPError(f"base element is empty: {_text(e)}")
            if s not in elements:
                elements.append(s)
                notes.append(note)
        generators = len(elements)
        irreducible: list[tuple[int, int]] = []
        for i, j in combinations(range(generators), 2):
            inter = simplify(Intersection((elements[i], elements[j])))
            if isinstance(inter, Finite) and not inter.values:
                raise FIPError(
                    "provably empty intersection: "
                    f"{_text(elements[i])} & {_text(elements[j])}"
                )
            if isinstance(inter, Intersection):
                irreducible.append((i, j))
            elif inter not in elements and len(elements) < _CLOSURE_CAP:
                elements.append(inter)
                notes.append(f"intersection of #{i} and #{j}")
        fip = fip_check(elements[:generators], horizon)
        if fip.value == NO:
            raise FIPError("finite intersection property fails on a subset")
        return cls(tuple(elements), tuple(notes), tuple(irreducible), fip)

    def __len__(self) -> int:
        return len(self.elements)

    def texts(self) -> list[str]:
        return [_text(e) for e in self.elements]

    def to_dict(self) -> dict:
        return {
            "elements": self.texts(),
            "provenance": list(self.provenance),
            "irreducible_pairs": [list(p) for p in self.irreducible],
            "fip": self.fip.to_dict(),
        }


def glazer_sum_base(
    f: FilterBase, g: FilterBase, *, horizon: int = _DEFAULT_HORIZON
) -> FilterBase:
    """The sumset base {F_i (+) G_j}, canonicalized like any other base."""
    if f.fip.value == NO or g.fip.value == NO:
        raise FIPError("both operand bases need FIP status Yes or Unknown")
    sums: list[SetExpr] = []
    notes: list[str] = []
    for i, fe in enumerate(f.elements):
        for j, ge in enumerate(g.elements):
            s = Sumset(fe, ge)
            sums.append(s)
            notes.append(f"{_text(fe)} (+) {_text(ge)}")
    return FilterBase.build(sums, provenance=notes, horizon=horizon)


def is_harmonic_base(
    f: FilterBase,
    *,
    config: Config = DEFAULT_CONFIG,
    diag_checkpoints: Sequence[int] = _BASE_DIAG_CHECKPOINTS,
) -> Verdict:
    """Decide whether every set in the generated filter is harmonic.

    Every filter member contains some base element, so all base
    elements harmonic makes the whole filter harmonic.  One anharmonic
    base element settles the other direction.  Irreducible pairwise
    intersections leave the question open, with partial sums of the
    first such intersection as the diagnostic.
    """
    verdicts = [classify(e, config=config, diagnostics=False) for e in f.elements]
    for e, v in zip(f.elements, verdicts):
        if v.value == ANHARMONIC:
            return Verdict(
                ANHARMONIC,
                certificate=Rule(
                    "base-element-convergent", _text(e), (v.certificate,)
                ),
            )
    unknown_elems = [ic for ic, v in zip(f.elements, verdicts) if v.value == UNKNOWN]
    if not unknown_elems and not f.irreducible:
        return Verdict(
            HARMONIC,
            certificate=Rule(
                "all-base-elements-divergent",
                f"{len(f.elements)} elements, intersections closed",
                tuple(v.certificate for v in verdicts),
            ),
        )
    notes = {}
    diag = None
    cps = tuple(c for c in diag_checkpoints if c <= config.horizon_cap) or (
        config.horizon_cap,
    )
    if f.irreducible:
        i, j = f.irreducible[0]
        probe = Intersection((f.elements[i], f.elements[j]))
        notes["irreducible"] = [
            f"{_text(f.elements[a])} & {_text(f.elements[b])}" for a, b in f.irreducible
        ]
        diag = partial_sums(probe, cps, config=config)
    if unknown_elems:
        notes["unclassified"] = [_text(e) for e in unknown_elems]
        if diag is None:
            diag = partial_sums(unknown_elems[0], cps, config=config)
    return Verdict(UNKNOWN, diagnostic=diag, notes=notes)


_MIXED = "mixed"


def _residue_mod(e: SetExpr, d: int, probe_horizon: int = 10**5):
    """Residue of every element of ``e`` mod d, or ``mixed``, or None.

    An integer answer and ``mixed`` are both certified; None means the
    structure revealed nothing.
    """
    if isinstance(e, Finite):
        rs = {v % d for v in e.values}
        return rs.pop() if len(rs) == 1 else _MIXED
    if isinstance(e, AP):
        return e.first % d if e.diff % d == 0 else _MIXED
    if isinstance(e, Shifted):
        r = _residue_mod(e.inner, d, probe_horizon)
        return (r + e.shift) % d if isinstance(r, int) else r
    if isinstance(e, LeftShift):
        r = _residue_mod(e.inner, d, probe_horizon)
        return (r - e.shift) % d if isinstance(r, int) else r
    if isinstance(e, Union):
        rs = [_residue_mod(p, d, probe_horizon) for p in e.parts]
        if _MIXED in rs:
            return _MIXED
        if any(r is None for r in rs):
            return None
        return rs[0] if len(set(rs)) == 1 else _MIXED
    if isinstance(e, Sumset):
        rl = _residue_mod(e.left, d, probe_horizon)
        rr = _residue_mod(e.right, d, probe_horizon)
        if isinstance(rl, int) and isinstance(rr, int):
            return (rl + rr) % d
        if _MIXED in (rl, rr):
            return _MIXED
        return None
    # Fallback: the first few concrete elements still certify "mixed".
    seen: set[int] = set()
    for v in e.upto(probe_horizon):
        seen.add(v % d)
        if len(seen) > 1:
            return _MIXED
        if len(seen) == 1 and v > 16 * d:
            break
    return None


def _progression_residues(e: SetExpr, d: int) -> set[int] | None:
    """All residues mod d that ``e`` certainly realizes infinitely often."""
    if isinstance(e, AP):
        from math import gcd

        step = gcd(e.diff, d)
        return {(e.first + k * e.diff) % d for k in range(d // step)}
    if isinstance(e, Union):
        parts = [_progression_residues(p, d) for p in e.parts]
        if any(p is None for p in parts):
            return None
        return set().union(*parts)
    return None


def glazer_member(
    a: SetExpr,
    f: FilterBase,
    g: FilterBase,
    horizon: int = _DEFAULT_HORIZON,
    *,
    config: Config = DEFAULT_CONFIG,
) -> Verdict:
    """Base-certified Glazer membership of ``a`` in the sum of two filters.

    Yes: some F_i (+) G_j is symbolically contained in ``a``.  No: for
    every G_j there is a proof that G_j is not inside the shift set
    {x : some F_i lies in a - x}; the proofs are residue-class
    disjointness or finite-versus-infinite cardinality.  Otherwise
    Unknown, with a sample of shift evaluations as diagnostic.
    """
    if f.fip.value == NO or g.fip.value == NO:
        raise FIPError("both operand bases need FIP status Yes or Unknown")

    for i, fe in enumerate(f.elements):
        for j, ge in enumerate(g.elements):
            target = simplify(Sumset(fe, ge))
            got = contains(a, target, horizon)
            if got.verdict == YES:
                return Verdict(
                    YES,
                    certificate=Rule(
                        "contains-sumset",
                        f"{_text(fe)} (+) {_text(ge)}",
                        (got.derivation,),
                    ),
                    notes={"i": i, "j": j},
                )

    no_rule = _glazer_no(a, f, g)
    if no_rule is not None:
        return Verdict(NO, certificate=no_rule)

    samples = []
    for j, ge in enumerate(g.elements):
        xs = []
        for x in ge.upto(horizon):
            xs.append(x)
            if len(xs) == 4:
                break
        for x in xs:
            shifted = simplify(LeftShift(a, x))
            outcomes = [
                contains(shifted, fe, min(horizon, 1000)).verdict
                for fe in f.elements
            ]
            if YES in outcomes:
                covers = YES
            elif all(o == NO for o in outcomes):
                covers = NO
            else:
                covers = UNKNOWN
            samples.append({"j": j, "x": x, "covers_some_base": covers})
    return Verdict(UNKNOWN, diagnostic={"samples": samples})


def _glazer_no(a: SetExpr, f: FilterBase, g: FilterBase) -> Rule | None:
    """Proof that no filter member of G fits inside the shift set, if any."""
    sa = simplify(a)

    if isinstance(sa, Finite):
        # Shifts past max(a) empty the left shift, so the shift set is
        # finite; an infinite G_j can never fit inside it.
        if all(provably_infinite(ge) for ge in g.elements):
            return Rule(
                "finite-set-cannot-absorb",
                f"shift set bounded by {max(sa.values) if sa.values else 0}, "
                "every base set on the right is infinite",
            )
        return None

    if isinstance(sa, AP) and sa.diff >= 2:
        classes: set[int] = set()
        for fe in f.elements:
            r = _residue_mod(fe, sa.diff)
            if r == _MIXED:
                continue  # no shift makes a mixed-residue set fit one class
            if r is None:
                return None
            classes.add((sa.first - r) % sa.diff)
        notes = []
        for j, ge in enumerate(g.elements):
            sge = simplify(ge)
            if isinstance(sge, Finite):
                out = next(
                    (v for v in sge.values if v % sa.diff not in classes), None
                )
                if out is None:
                    return None
                notes.append(f"element {out} of {_text(ge)} avoids every class")
                continue
            realized = _progression_residues(sge, sa.diff)
            if realized is None or realized <= classes:
                return None
            extra = min(realized - classes)
            notes.append(
                f"{_text(ge)} realizes residue {extra} mod {sa.diff}, "
                "outside every shift class"
            )
        return Rule(
            "shift-classes-avoid",
            f"possible shifts fall in residues {sorted(classes)} mod {sa.diff}",
            tuple(Rule("right-base-escape", n) for n in notes),
        )
    return None
