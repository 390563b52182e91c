# Gap structure and arithmetic progressions at desk scale.

from ultraharmonic.progressions import find_ap, longest_ap
from ultraharmonic.sets import AP, Finite, Powers, Primes
from ultraharmonic.syndetic import classify_psyndetic, gap_profile, prime_gap_certificate

# How the gaps of the primes look below ten thousand.
profile = gap_profile(Primes(), 10**4)
print(f"primes to {profile.horizon}: {profile.count} elements, max gap {profile.max_gap}")
hist = profile.to_dict()["gap_histogram"]
print("gap histogram:", ", ".join(f"{g}x{n}" for g, n in sorted(hist.items(), key=lambda kv: int(kv[0]))))

# The primes are not piecewise syndetic: factorials supply arbitrarily
# long composite runs, and each run is certified by explicit divisors.
verdict = classify_psyndetic(Primes())
print("\npiecewise syndetic:", verdict.value)
print(verdict.certificate.render(1))

cert = prime_gap_certificate(6)
print(f"\n{cert.length} consecutive composites from {cert.start}:")
for value in sorted(cert.divisors):
    print(f"  {value} = {cert.divisors[value]} * {value // cert.divisors[value]}")
assert cert.verify()

# Progressions, by contrast, survive every translation.
print("\nap(3,4) piecewise syndetic:", classify_psyndetic(AP(3, 4)).value)

# Ten primes in arithmetic progression below 2100.
w = find_ap(Primes(), 10, 2100)
print(f"\nten-term progression in the primes: start {w.start}, step {w.diff}")
print("terms:", w.terms())

# Powers of two have no three-term progression at all; a doubling
# sequence outruns any fixed step.
print("pow(2) three-term search:", find_ap(Powers(2), 3, 10**5))

# Longest progression in a small finite set.
fin = Finite.of([1, 2, 3, 5, 7, 9, 14])
w = longest_ap(fin, 14)
print(f"longest in {list(fin.values)}: {w.terms()}")
