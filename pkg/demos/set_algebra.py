"""A tour of the expression layer: building sets, enumerating them,
and moving between objects and their text form.
"""

from ultraharmonic.grammar import parse, to_text
from ultraharmonic.rules import simplify
from ultraharmonic.sets import AP, Powers, Primes, elements

# Sets are symbolic expressions.  Operators build compound ones:
# | union, & intersection, - difference (or a shift when the right
# side is an integer), + sumset (or a shift with an integer).
odds = AP(1, 2)
squarefree_of_interest = Primes() | Powers(2)
print("odds up to 30:", elements(odds, 30))
print("primes or powers of two up to 40:", elements(squarefree_of_interest, 40))

# Shifts distribute through progressions when simplified.
shifted = (odds + 5) & AP(2, 4)
print("simplified:", to_text(simplify(shifted)))
print("members up to 40:", elements(shifted, 40))

# Intersections of progressions fold by the Chinese remainder theorem.
ap_meet = AP(1, 6) & AP(3, 4)
print(f"{to_text(ap_meet)} folds to {to_text(simplify(ap_meet))}")

# Sumsets enumerate lazily; a numerical semigroup has a closed form.
semigroup = AP(3, 3) + AP(5, 5)
print("3N + 5N up to 40:", elements(semigroup, 40))
print("closed form:", to_text(simplify(semigroup)))

# Text round trips exactly.
text = "(primes & ap(1,4)) | sumset(pow(2),kth(3))"
e = parse(text)
assert parse(to_text(e)) == e
print("round trip:", to_text(e))
