"""
Threshold networks as bit-stream generators
===========================================

A network of n threshold units maps an n-bit state to the next n-bit
state; iterating from a seed and concatenating the states gives a
deterministic bit stream.  This walk-through builds a tiny network by
hand, watches it run, and then inspects the orbit structure of a
randomly sampled one.
"""

from fractions import Fraction

import numpy as np

from mpbits import (
    BitVector,
    MPSystem,
    ThresholdUnit,
    decode_state,
    find_cycle,
    next_integer,
    sample_seed,
    sample_system,
    step,
    trajectory_bits,
)

# A two-unit network that swaps its state bits: unit 1 copies bit 2,
# unit 2 copies bit 1.  Each unit fires when its weighted sum reaches
# the threshold (ties fire).
swap = MPSystem(
    2,
    (
        ThresholdUnit((Fraction(0), Fraction(1)), Fraction(1)),
        ThresholdUnit((Fraction(1), Fraction(0)), Fraction(1)),
    ),
)

x = BitVector((1, 0))
print("seed state        ", x.to_string())
print("next state        ", step(swap, x).to_string())
print("stream, t = 6     ", trajectory_bits(swap, x, 6).to_string())

# The same dynamics viewed on integers: bit 1 is the least significant
# bit, so state (1,0) is the integer 1 and the swap sends it to 2.
print("integer map       ", [next_integer(swap, k) for k in range(4)])

# Every trajectory of a finite deterministic map falls into a cycle.
info = find_cycle(swap, x)
print("tail length       ", info.tail_length)
print("cycle length      ", info.cycle_length)

# Now a random 6-unit network with integer weights in [-8, 8].  The
# fixed seed makes this script print the same numbers every run.
rng = np.random.default_rng(42)
system = sample_system(6, rng, 8)
seed = sample_seed(6, rng)
print()
print("random system, n = 6, seed state", seed.to_string())
print("stream, t = 30    ", trajectory_bits(system, seed, 30).to_string())

info = find_cycle(system, seed)
print("orbit: tail", info.tail_length, "+ cycle", info.cycle_length)

# The orbit visits at most 2^n distinct states, so tail + cycle can
# never exceed 64 here; with several units it is usually far shorter.
states = [decode_state(seed)]
x = seed
for _ in range(info.tail_length + info.cycle_length - 1):
    x = step(system, x)
    states.append(decode_state(x))
print("states visited    ", states)
