"""Adding ultrafilters without leaving the finite world.

Principal ultrafilters add by adding their points.  For non-principal
territory the engine works on filter bases: finite families with the
finite intersection property standing in for the filters they generate.
"""

from ultraharmonic.filters import (
    FilterBase,
    definition_check,
    glazer_member,
    glazer_sum_base,
    is_harmonic_base,
    principal_sum,
)
from ultraharmonic.grammar import parse

# e(7) + e(5) = e(12), and membership agrees with the shift definition:
# A is in e(n) + e(m) exactly when n lands in A shifted left by m.
total = principal_sum(7, 5)
print("e(7) + e(5) = e(%d)" % total.point)
for text in ("ap(2,2)", "primes", "pow(2)"):
    a = parse(text)
    by_definition = definition_check(a, 7, 5)
    print(f"  {text} in the sum: {by_definition} (point check: {a.member(total.point)})")

# A filter base from two progressions; their fold is adjoined so the
# base is intersection-closed at the generator level.
f = FilterBase.build([parse("ap(1,2)"), parse("ap(1,3)")])
print("\nbase F:")
for text, why in zip(f.texts(), f.provenance):
    print(f"  {text}  [{why}]")

g = FilterBase.build([parse("ap(5,6)")])
total_base = glazer_sum_base(f, g)
print("F (+) G:")
for text in total_base.texts():
    print(f"  {text}")

# Every element of the sum base still has a divergent reciprocal sum.
print("sum base harmonic:", is_harmonic_base(total_base).value)

# Membership of a particular set in the sum, three ways it can land.
for text in ("ap(2,2)", "finite{4,9,12}", "pow(2)"):
    v = glazer_member(parse(text), f, g)
    print(f"\n{text} in F (+) G: {v.value}")
    if v.certificate is not None:
        print(v.certificate.render(1))
