# Pulling a convergent subsequence out of a divergent set.
#
# Walk the pacing set (anharmonic, so its reciprocals converge) and
# take the next element of the source just beyond each pace.  The
# extracted elements dominate the pacing elements one for one, which
# bounds their reciprocal sum by a convergent one.

from fractions import Fraction

from ultraharmonic.harmonic import anharmonic_subset
from ultraharmonic.sets import Powers, Primes, first_n

primes_beyond_powers = anharmonic_subset(Primes(), Powers(2), 8)
paces = first_n(Powers(2), 8, 10**6)

print("pace (2^k) :", paces)
print("extracted  :", primes_beyond_powers)

c_sum = Fraction(0)
b_sum = Fraction(0)
print("\nprefix reciprocal sums (extracted vs pacing):")
for c, b in zip(primes_beyond_powers, paces):
    c_sum += Fraction(1, c)
    b_sum += Fraction(1, b)
    print(f"  {float(c_sum):.6f} < {float(b_sum):.6f}  ({c} > {b})")
    assert c > b and c_sum < b_sum
