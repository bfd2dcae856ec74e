"""Two distinguishers that label bit inputs as threshold-network output or random.

Both reduce to one exact question: do the labeled points extracted from the
input form a linearly separable dichotomy?  Output of an n-unit threshold
network always does, because the label bit is itself the first unit's
threshold function applied to the preceding state block.  Uniform bits, once
enough labeled points accumulate, almost surely do not.

The verdict is MCCULLOCH_PITTS exactly when the dichotomy is separable, and
the separating witness is attached so the claim can be re-checked by
substitution.  RANDOM carries no certificate; it asserts that no separating
coefficients exist, which the exact solver proves.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import Verdict, VerdictTag
from .dynamics import BitStream
from .separability import (
    build_multi_dichotomy,
    build_single_dichotomy,
    is_linearly_separable,
)


@dataclass(frozen=True)
class SingleStreamInput:
    """One stream of t bits, read as the trace of an n-unit network."""

    n: int
    y: BitStream

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be >= 1")
        if len(self.y) <= self.n:
            raise ValueError(
                f"stream too short: need at least {self.n + 1} bits, got {len(self.y)}"
            )


@dataclass(frozen=True)
class MultiSampleInput:
    """m independent samples of exactly n+1 bits each."""

    n: int
    samples: tuple[BitStream, ...]

    def __post_init__(self):
        object.__setattr__(self, "samples", tuple(self.samples))
        if self.n < 1:
            raise ValueError("n must be >= 1")
        if not self.samples:
            raise ValueError("need at least one sample")
        for idx, s in enumerate(self.samples):
            if len(s) != self.n + 1:
                raise ValueError(
                    f"samples[{idx}] has length {len(s)}, expected n+1 = {self.n + 1}"
                )


def _verdict_from(dichotomy) -> Verdict:
    separable, witness = is_linearly_separable(dichotomy)
    if separable:
        return Verdict(VerdictTag.MCCULLOCH_PITTS, witness)
    return Verdict(VerdictTag.RANDOM)


def classify_single(inp: SingleStreamInput) -> Verdict:
    """Classify one stream by chunking it against its own next bits.

    Every stream produced by an n-unit network yields MCCULLOCH_PITTS: each
    chunk is a state and its label is unit 1 applied to that state, so unit
    1's own coefficients separate the dichotomy.
    """
    return _verdict_from(build_single_dichotomy(inp.y, inp.n))


def classify_multi(inp: MultiSampleInput) -> Verdict:
    """Classify m samples of n+1 bits by their last-bit labels.

    Samples drawn as (n+1)-bit traces of one shared network always yield
    MCCULLOCH_PITTS, by the same witness as the single-stream case.
    """
    return _verdict_from(build_multi_dichotomy(inp.samples, inp.n))
