"""
Telling network streams from coin flips
=======================================

A stream produced by any n-unit threshold network has a hidden linear
structure: chop it into n-bit chunks and each chunk's successor bit is a
threshold function of the chunk.  The single-stream distinguisher turns
that into a test - label every chunk with the bit that follows it and
ask whether some affine hyperplane strictly separates the 1-labeled
chunks from the 0-labeled ones.  Network streams always pass; uniform
bits usually fail once the stream is long enough.
"""

import numpy as np

from mpbits import (
    BitStream,
    MultiSampleInput,
    SingleStreamInput,
    build_single_dichotomy,
    classify_multi,
    classify_single,
    sample_seed,
    sample_system,
    trajectory_bits,
)

rng = np.random.default_rng(3)

# Generate 120 bits from a random 5-unit network.  The trajectory falls
# into a short cycle, so only a handful of distinct chunk points appear,
# and they are separable by construction.
system = sample_system(5, rng, 8)
stream = trajectory_bits(system, sample_seed(5, rng), 120)
verdict = classify_single(SingleStreamInput(5, stream))
print("network stream    ", verdict.tag.label)
print("witness           ", [str(c) for c in verdict.witness.coefficients])

# Now 120 uniform coin flips.  The verdict comes with no witness:
# no separating hyperplane exists, which is the proof of the label.
coins = BitStream(tuple(int(b) for b in rng.integers(0, 2, size=120)))
print("uniform stream    ", classify_single(SingleStreamInput(5, coins)).tag.label)

# The dichotomy behind that verdict: 23 chunks of 5 bits, each labeled
# by the bit that followed it, deduplicated into distinct points.
d = build_single_dichotomy(coins, 5)
print("distinct points   ", len(d.positive) + len(d.negative),
      "(", len(d.positive), "positive /", len(d.negative), "negative )")

# The multi-sample variant reads m short samples of n+1 bits, all from
# the same network but fresh seeds, and labels each n-bit prefix with
# its final bit.  Four samples from the swap-like network below are
# consistent with a hyperplane; four samples encoding XOR are not.
print()
network_samples = tuple(BitStream.from_string(s) for s in ("000", "100", "011", "111"))
xor_samples = tuple(BitStream.from_string(s) for s in ("001", "111", "010", "100"))
print("network samples   ", classify_multi(MultiSampleInput(2, network_samples)).tag.label)
print("xor samples       ", classify_multi(MultiSampleInput(2, xor_samples)).tag.label)

# Longer uniform streams are easier to reject: the chunk count m grows
# with t while the dimension n stays fixed, and once m is well past the
# separability capacity the verdict is almost always "random".
print()
print("uniform verdicts by stream length (n = 5):")
for t in (20, 40, 80, 160, 320):
    flips = BitStream(tuple(int(b) for b in rng.integers(0, 2, size=t)))
    verdict = classify_single(SingleStreamInput(5, flips))
    print(f"  t = {t:3d}   {verdict.tag.label}")
