"""Foundational value types: bit vectors, threshold units, systems, dichotomies.

All scalar arithmetic is exact rational arithmetic (``fractions.Fraction``).
Nothing in this module ever rounds: a threshold unit with rational weights
evaluated on a 0/1 point gives a bit-exact answer, which is what makes the
distinguisher verdicts downstream deterministic.

Bit vectors use a little-endian integer encoding: bit 1 is the least
significant bit.  The string form writes bit 1 leftmost, so the vector
(1, 0, 1) prints as ``"101"`` and encodes the integer 5.
"""

from __future__ import annotations

import enum
import json
import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from .separability import SeparationWitness

# Exact rational scalar used throughout.  Fraction keeps lowest terms and a
# positive denominator by construction.
Rational = Fraction

_RATIONAL_RE = re.compile(r"^-?\d+(/[1-9]\d*)?$")


def parse_rational(text: str | int) -> Fraction:
    """Parse a string rational of the form ``"p"`` or ``"p/q"``.

    Plain ints are accepted as a convenience for hand-written descriptors.
    """
    if isinstance(text, int):
        return Fraction(text)
    if not isinstance(text, str) or not _RATIONAL_RE.match(text.strip()):
        raise ValueError(f"not a rational (expected 'p' or 'p/q'): {text!r}")
    return Fraction(text.strip())


def format_rational(value: Fraction) -> str:
    """Inverse of :func:`parse_rational`: ``'p'`` for integers, else ``'p/q'``."""
    return str(value)


@dataclass(frozen=True)
class BitVector:
    """A fixed-length vector over {0, 1}; the points of the state space."""

    bits: tuple[int, ...]

    def __post_init__(self):
        if not isinstance(self.bits, tuple):
            object.__setattr__(self, "bits", tuple(self.bits))
        if len(self.bits) < 1:
            raise ValueError("bit vector must have length >= 1")
        if any(b not in (0, 1) for b in self.bits):
            raise ValueError(f"bit vector entries must be 0 or 1: {self.bits!r}")

    def __len__(self) -> int:
        return len(self.bits)

    def __iter__(self):
        return iter(self.bits)

    def to_string(self) -> str:
        """Serialize as a string of 0/1 characters, bit 1 leftmost."""
        return "".join(str(b) for b in self.bits)

    @classmethod
    def from_string(cls, text: str) -> "BitVector":
        text = text.strip()
        if not text or any(ch not in "01" for ch in text):
            raise ValueError(f"not a 0/1 string: {text!r}")
        return cls(tuple(int(ch) for ch in text))


def encode_state(k: int, n: int) -> BitVector:
    """Little-endian binary encoding of ``k`` as an ``n``-bit vector.

    Bit 1 is the least significant bit, so ``encode_state(5, 3)`` is
    (1, 0, 1).  Inverse of :func:`decode_state`.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if not 0 <= k < (1 << n):
        raise ValueError(f"k={k} outside [0, 2^{n} - 1]")
    return BitVector(tuple((k >> j) & 1 for j in range(n)))


def decode_state(v: BitVector) -> int:
    """Integer encoded by ``v``: sum over j of v_j * 2^(j-1)."""
    k = 0
    for j, b in enumerate(v.bits):
        k |= b << j
    return k


@dataclass(frozen=True)
class ThresholdUnit:
    """One linear threshold function: fires iff sum(w_j * x_j) - theta >= 0.

    The boundary case counts as firing: the Heaviside convention here is
    H(0) = 1.
    """

    weights: tuple[Fraction, ...]
    theta: Fraction

    def __post_init__(self):
        object.__setattr__(self, "weights", tuple(Fraction(w) for w in self.weights))
        object.__setattr__(self, "theta", Fraction(self.theta))
        if len(self.weights) < 1:
            raise ValueError("threshold unit needs at least one weight")

    @property
    def arity(self) -> int:
        return len(self.weights)

    def integer_form(self) -> tuple[tuple[int, ...], int]:
        """Equivalent integer weights and threshold.

        Scaling every coefficient by the common denominator preserves the
        sign of sum(w_j x_j) - theta, so the scaled unit computes the same
        function with integer arithmetic only.
        """
        scale = math.lcm(*(w.denominator for w in self.weights), self.theta.denominator)
        return (
            tuple(int(w * scale) for w in self.weights),
            int(self.theta * scale),
        )


def eval_threshold(u: ThresholdUnit, x: BitVector) -> int:
    """Evaluate a threshold unit on a 0/1 point, exactly.

    Returns 1 iff sum(w_j * x_j) - theta >= 0.  Equality fires: H(0) = 1.
    """
    if len(x) != u.arity:
        raise ValueError(f"arity mismatch: unit expects {u.arity}, point has {len(x)}")
    acc = Fraction(0)
    for w, b in zip(u.weights, x.bits):
        if b:
            acc += w
    return 1 if acc >= u.theta else 0


@dataclass(frozen=True)
class MPSystem:
    """A McCulloch-Pitts dynamical system: n threshold units of arity n.

    The state map applies every unit to the full current state; iterating it
    from a seed produces the bit streams studied by the distinguishers.
    """

    arity: int
    units: tuple[ThresholdUnit, ...]

    def __post_init__(self):
        object.__setattr__(self, "units", tuple(self.units))
        if len(self.units) != self.arity:
            raise ValueError(
                f"system of arity {self.arity} needs exactly {self.arity} units, got {len(self.units)}"
            )
        for i, u in enumerate(self.units):
            if u.arity != self.arity:
                raise ValueError(f"units[{i}] has arity {u.arity}, expected {self.arity}")


@dataclass(frozen=True)
class Dichotomy:
    """An ordered pair of point sets (positive, negative) in one dimension.

    Ordered means (A, B) and (B, A) are distinct values.  The two sides may
    overlap; an overlapping point makes the dichotomy trivially inseparable.
    """

    positive: frozenset[BitVector]
    negative: frozenset[BitVector]
    dimension: int

    def __post_init__(self):
        object.__setattr__(self, "positive", frozenset(self.positive))
        object.__setattr__(self, "negative", frozenset(self.negative))
        if self.dimension < 1:
            raise ValueError("dimension must be >= 1")
        for v in self.positive | self.negative:
            if len(v) != self.dimension:
                raise ValueError(
                    f"point {v.to_string()} has length {len(v)}, dichotomy dimension is {self.dimension}"
                )

    @property
    def points(self) -> frozenset[BitVector]:
        return self.positive | self.negative

    @property
    def conflicts(self) -> frozenset[BitVector]:
        """Points present on both sides."""
        return self.positive & self.negative


class VerdictTag(enum.Enum):
    MCCULLOCH_PITTS = "McCulloch-Pitts"
    RANDOM = "random"

    @property
    def label(self) -> str:
        return self.value


@dataclass(frozen=True)
class Verdict:
    """Distinguisher output; carries a separating witness iff the tag is
    MCCULLOCH_PITTS."""

    tag: VerdictTag
    witness: "SeparationWitness | None" = field(default=None)

    def __post_init__(self):
        if (self.tag is VerdictTag.MCCULLOCH_PITTS) != (self.witness is not None):
            raise ValueError("witness must be present iff the verdict is MCCULLOCH_PITTS")


# ---------------------------------------------------------------------------
# JSON system descriptor
#
# {"n": int, "units": [{"weights": ["p/q", ...], "theta": "p/q"}, ...]}
# ---------------------------------------------------------------------------

def system_to_json(system: MPSystem) -> dict:
    return {
        "n": system.arity,
        "units": [
            {
                "weights": [format_rational(w) for w in u.weights],
                "theta": format_rational(u.theta),
            }
            for u in system.units
        ],
    }


def system_from_json(obj: dict) -> MPSystem:
    """Build a system from a parsed JSON descriptor, with field diagnostics."""
    if not isinstance(obj, dict):
        raise ValueError("system descriptor must be a JSON object")
    if "n" not in obj or not isinstance(obj["n"], int) or obj["n"] < 1:
        raise ValueError("field 'n': expected a positive integer")
    n = obj["n"]
    raw_units = obj.get("units")
    if not isinstance(raw_units, list):
        raise ValueError("field 'units': expected a list")
    units = []
    for i, ru in enumerate(raw_units):
        if not isinstance(ru, dict):
            raise ValueError(f"units[{i}]: expected an object")
        raw_w = ru.get("weights")
        if not isinstance(raw_w, list):
            raise ValueError(f"units[{i}].weights: expected a list")
        try:
            weights = tuple(parse_rational(w) for w in raw_w)
        except ValueError as exc:
            raise ValueError(f"units[{i}].weights: {exc}") from None
        if "theta" not in ru:
            raise ValueError(f"units[{i}].theta: missing")
        try:
            theta = parse_rational(ru["theta"])
        except ValueError as exc:
            raise ValueError(f"units[{i}].theta: {exc}") from None
        units.append(ThresholdUnit(weights, theta))
    return MPSystem(arity=n, units=tuple(units))


def load_system(path: str) -> MPSystem:
    with open(path, "r", encoding="ascii") as fh:
        try:
            obj = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ValueError(f"{path}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    return system_from_json(obj)


def dump_system(system: MPSystem, path: str) -> None:
    with open(path, "w", encoding="ascii") as fh:
        json.dump(system_to_json(system), fh, indent=2)
        fh.write("\n")
