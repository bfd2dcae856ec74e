"""Iteration of threshold-network state maps and bit-stream generation.

The stream of a system from a seed is the concatenation of the seed with the
successive images of the state map, truncated to the requested bit count.
The seed itself is the first block of the stream.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable

import numpy as np

from .core import BitVector, MPSystem, ThresholdUnit, decode_state, encode_state


@dataclass(frozen=True)
class BitStream:
    """An ordered, finite sequence of bits."""

    bits: tuple[int, ...]

    def __post_init__(self):
        if not isinstance(self.bits, tuple):
            object.__setattr__(self, "bits", tuple(self.bits))
        if len(self.bits) < 1:
            raise ValueError("bit stream must have length >= 1")
        if any(b not in (0, 1) for b in self.bits):
            raise ValueError("bit stream entries must be 0 or 1")

    def __len__(self) -> int:
        return len(self.bits)

    def __iter__(self):
        return iter(self.bits)

    def to_string(self) -> str:
        return "".join(str(b) for b in self.bits)

    @classmethod
    def from_string(cls, text: str) -> "BitStream":
        text = text.strip()
        if not text or any(ch not in "01" for ch in text):
            raise ValueError(f"not a 0/1 string: {text!r}")
        return cls(tuple(int(ch) for ch in text))


@dataclass(frozen=True)
class CycleInfo:
    """Pre-period and period of an orbit.  tail_length + cycle_length never
    exceeds the size of the state space."""

    tail_length: int
    cycle_length: int


@lru_cache(maxsize=None)
def _integer_arrays(system: MPSystem) -> tuple[np.ndarray, np.ndarray]:
    # Scaled-integer weight matrix and threshold vector; sign-exact, so the
    # vectorized step agrees with per-unit rational evaluation.
    rows = []
    thetas = []
    for u in system.units:
        w, th = u.integer_form()
        rows.append(w)
        thetas.append(th)
    weights = np.array(rows, dtype=object)
    theta = np.array(thetas, dtype=object)
    # object dtype only when entries exceed int64; the common case stays fast
    try:
        weights64 = weights.astype(np.int64)
        theta64 = theta.astype(np.int64)
        # overflow-safe bound: |sum of row| + |theta| must fit comfortably
        bound = np.abs(weights64).sum(axis=1) + np.abs(theta64)
        if (bound < 2**62).all():
            return weights64, theta64
    except OverflowError:
        pass
    return weights, theta


def step(system: MPSystem, x: BitVector) -> BitVector:
    """Apply the state map once: component j is unit j evaluated at x."""
    if len(x) != system.arity:
        raise ValueError(f"arity mismatch: system expects {system.arity}, state has {len(x)}")
    weights, theta = _integer_arrays(system)
    xv = np.array(x.bits, dtype=weights.dtype)
    fired = (weights @ xv) >= theta
    return BitVector(tuple(int(b) for b in fired))


def next_integer(system: MPSystem, k: int) -> int:
    """The induced map on integer states under the little-endian encoding."""
    n = system.arity
    if not 0 <= k < (1 << n):
        raise ValueError(f"k={k} outside [0, 2^{n} - 1]")
    return decode_state(step(system, encode_state(k, n)))


def trajectory_bits(system: MPSystem, x: BitVector, t: int) -> BitStream:
    """First ``t`` bits of the concatenation x, map(x), map(map(x)), ...

    The seed is included as the first block.
    """
    if len(x) != system.arity:
        raise ValueError(f"arity mismatch: system expects {system.arity}, seed has {len(x)}")
    if t < 1:
        raise ValueError("t must be >= 1")
    n = system.arity
    weights, theta = _integer_arrays(system)
    state = np.array(x.bits, dtype=weights.dtype)
    out: list[int] = []
    while len(out) < t:
        out.extend(int(b) for b in state)
        if len(out) >= t:
            break
        state = ((weights @ state) >= theta).astype(weights.dtype)
    return BitStream(tuple(out[:t]))


def find_cycle(system: MPSystem, x: BitVector, method: str = "auto") -> CycleInfo:
    """Pre-period and period of the orbit of ``x`` under the state map.

    ``method`` is "visited" (hash map of seen states, O(orbit) memory),
    "floyd" (tortoise-hare, constant memory), or "auto", which uses the hash
    map for small state spaces and tortoise-hare above 24 bits.
    """
    if len(x) != system.arity:
        raise ValueError(f"arity mismatch: system expects {system.arity}, state has {len(x)}")
    if method == "auto":
        method = "visited" if system.arity <= 24 else "floyd"
    if method == "visited":
        return _find_cycle_visited(system, x)
    if method == "floyd":
        return _find_cycle_floyd(system, x)
    raise ValueError(f"unknown cycle detection method: {method!r}")


def _find_cycle_visited(system: MPSystem, x: BitVector) -> CycleInfo:
    seen: dict[int, int] = {}
    k = decode_state(x)
    i = 0
    while k not in seen:
        seen[k] = i
        k = next_integer(system, k)
        i += 1
    first = seen[k]
    return CycleInfo(tail_length=first, cycle_length=i - first)


def _find_cycle_floyd(system: MPSystem, x: BitVector) -> CycleInfo:
    f = lambda k: next_integer(system, k)
    x0 = decode_state(x)
    tortoise, hare = f(x0), f(f(x0))
    while tortoise != hare:
        tortoise, hare = f(tortoise), f(f(hare))
    # distance to cycle start
    mu = 0
    tortoise = x0
    while tortoise != hare:
        tortoise, hare = f(tortoise), f(hare)
        mu += 1
    # period
    lam = 1
    hare = f(tortoise)
    while tortoise != hare:
        hare = f(hare)
        lam += 1
    return CycleInfo(tail_length=mu, cycle_length=lam)


# ---------------------------------------------------------------------------
# Random system sampling (for experiments)
# ---------------------------------------------------------------------------

def sample_system(n: int, rng: np.random.Generator, weight_bound: int = 8) -> MPSystem:
    """Draw a random system: integer weights uniform in [-W, W], thresholds
    uniform in [-W*n, W*n].

    Integer coefficients keep the separability LPs small and make sampling
    reproducible across platforms.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if weight_bound < 0:
        raise ValueError("weight_bound must be >= 0")
    w = rng.integers(-weight_bound, weight_bound + 1, size=(n, n))
    th = rng.integers(-weight_bound * n, weight_bound * n + 1, size=n)
    units = tuple(
        ThresholdUnit(tuple(int(v) for v in w[i]), int(th[i])) for i in range(n)
    )
    return MPSystem(arity=n, units=units)


def sample_seed(n: int, rng: np.random.Generator) -> BitVector:
    return BitVector(tuple(int(b) for b in rng.integers(0, 2, size=n)))


# ---------------------------------------------------------------------------
# Stream files
#
# ASCII format: one stream per line, '0'/'1' characters.
# Packed format: per stream, an 8-byte little-endian bit count followed by
# the bits packed LSB-first within each byte; records may be concatenated.
# ---------------------------------------------------------------------------

def write_streams_ascii(streams: Iterable[BitStream], path: str) -> None:
    with open(path, "w") as fh:
        for s in streams:
            fh.write(s.to_string())
            fh.write("\n")


def read_streams_ascii(path: str) -> list[BitStream]:
    streams = []
    with open(path) as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                streams.append(BitStream.from_string(line))
            except ValueError as exc:
                raise ValueError(f"{path}: line {lineno}: {exc}") from None
    return streams


def write_streams_packed(streams: Iterable[BitStream], path: str) -> None:
    with open(path, "wb") as fh:
        for s in streams:
            t = len(s)
            fh.write(struct.pack("<Q", t))
            payload = bytearray((t + 7) // 8)
            for i, b in enumerate(s.bits):
                if b:
                    payload[i // 8] |= 1 << (i % 8)
            fh.write(bytes(payload))


def read_streams_packed(path: str) -> list[BitStream]:
    streams = []
    with open(path, "rb") as fh:
        while True:
            header = fh.read(8)
            if not header:
                break
            if len(header) != 8:
                raise ValueError(f"{path}: truncated packed stream header")
            (t,) = struct.unpack("<Q", header)
            if t < 1:
                raise ValueError(f"{path}: packed stream declares length {t}")
            nbytes = (t + 7) // 8
            payload = fh.read(nbytes)
            if len(payload) != nbytes:
                raise ValueError(f"{path}: truncated packed stream payload")
            bits = tuple((payload[i // 8] >> (i % 8)) & 1 for i in range(t))
            streams.append(BitStream(bits))
    return streams
