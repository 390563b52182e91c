"""Classifying reciprocal sums: divergent, convergent, or unresolved.

Definite verdicts come with a derivation tree.  Unresolved ones come
with checkpointed partial sums, since numbers are the next best thing
to a proof.
"""

from ultraharmonic.config import Config
from ultraharmonic.grammar import parse
from ultraharmonic.harmonic import ResidueMod, classify, partition_classify

config = Config(horizon_cap=10**6, checkpoints=(10**3, 10**4, 10**5, 10**6))

for text in (
    "ap(3,4)",
    "pow(2) | kth(3)",
    "primes \\ finite{2,3,5}",
    "N \\ pow(2)",
    "primes & ap(1,4)",
):
    v = classify(parse(text), config=config)
    print(f"{text}: {v.value}")
    if v.certificate is not None:
        print(v.certificate.render(1))
    if v.diagnostic is not None:
        for row in v.diagnostic.to_dict()["table"]:
            print(f"  sum to {row['horizon']:>8}: {row['sum']:.6f} ({row['terms']} terms)")

# Partitioning a divergent set: at least one class keeps the divergence.
# For the primes mod 4 both odd classes stay open individually, but
# mod 2 the rules notice that all the divergence lives in one class.
print()
for cls in partition_classify(parse("primes"), ResidueMod(2), config=config):
    print(f"primes, {cls.label}: {cls.verdict.value}")
    if cls.verdict.certificate is not None:
        print(cls.verdict.certificate.render(1))
