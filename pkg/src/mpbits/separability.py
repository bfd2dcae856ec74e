"""Exact strict linear separability of dichotomies, with witnesses.

A dichotomy (P, N) of points in n dimensions is linearly separable when
rationals x_1 .. x_{n+1} exist with

    sum_j x_j y_j > x_{n+1}   for every y in P,
    sum_j x_j y_j < x_{n+1}   for every y in N.

Strict-to-closed reduction.  The solver does not work on the strict system
directly; it decides the closed margin-one system

    sum_j x_j y_j - x_{n+1} >= 1    (y in P),
    sum_j x_j y_j - x_{n+1} <= -1   (y in N).

The two systems are equivalent for finite point sets: a margin-one solution
is in particular strict, and conversely any strict rational solution has a
smallest slack epsilon > 0 over the finitely many points, so dividing every
coefficient by epsilon scales all slacks to at least one.  Scaling by a
positive rational preserves both inequalities, hence feasibility.  The
closed system is what a simplex method can decide exactly; the reduction is
what lets a strict question be answered with no tolerance at all.

A returned witness is always re-checked against the strict system by exact
substitution before it leaves this module.

An optional floating-point pre-pass (scipy's LP solver) is used as a fast
filter on larger instances: when it proposes a solution whose exact
rationalization satisfies the strict system, that witness is returned, the
strict check being the deciding step.  A "no solution" answer from the
float path is never trusted; the exact solver always confirms
inseparability.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .core import BitVector, Dichotomy, format_rational, parse_rational
from .dynamics import BitStream
from .simplex import solve_ge_system

try:
    import numpy as _np
    from scipy.optimize import linprog as _linprog
except ImportError:  # pragma: no cover - scipy is a declared dependency
    _linprog = None

# Below this many points the exact solver is faster than a scipy call.
_PREPASS_MIN_POINTS = 10


@dataclass(frozen=True)
class SeparationWitness:
    """Coefficients x_1 .. x_{n+1} certifying strict separability."""

    coefficients: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(
            self, "coefficients", tuple(Fraction(c) for c in self.coefficients)
        )
        if len(self.coefficients) < 2:
            raise ValueError("witness needs at least two coefficients")

    def satisfies(self, d: Dichotomy) -> bool:
        """Exact re-substitution of the strict system; never approximates."""
        if len(self.coefficients) != d.dimension + 1:
            return False
        *x, threshold = self.coefficients
        for y in d.positive:
            if not _dot(x, y) > threshold:
                return False
        for y in d.negative:
            if not _dot(x, y) < threshold:
                return False
        return True


def _dot(x: Sequence[Fraction], y: BitVector) -> Fraction:
    acc = Fraction(0)
    for xi, b in zip(x, y.bits):
        if b:
            acc += xi
    return acc


def _margin_rows(d: Dichotomy) -> list[tuple[int, ...]]:
    # Sign-folded rows of the margin-one system, in a deterministic order so
    # that repeated runs pivot identically and return identical witnesses.
    rows: list[tuple[int, ...]] = []
    for y in sorted(d.positive, key=lambda v: v.bits):
        rows.append(y.bits + (-1,))
    for y in sorted(d.negative, key=lambda v: v.bits):
        rows.append(tuple(-b for b in y.bits) + (1,))
    return rows


def _float_prepass_witness(
    rows: list[tuple[int, ...]], d: Dichotomy
) -> SeparationWitness | None:
    if _linprog is None:
        return None
    a = _np.asarray(rows, dtype=float)
    res = _linprog(
        c=_np.zeros(a.shape[1]),
        A_ub=-a,
        b_ub=-_np.ones(a.shape[0]),
        bounds=[(None, None)] * a.shape[1],
        method="highs",
    )
    if res.status != 0 or res.x is None:
        return None
    # Small-denominator rationalization first for readable witnesses; the
    # exact float value second.  Either is accepted only if the strict
    # system verifies exactly.
    for convert in (
        lambda v: Fraction(v).limit_denominator(10**6),
        Fraction,
    ):
        witness = SeparationWitness(tuple(convert(float(v)) for v in res.x))
        if witness.satisfies(d):
            return witness
    return None


def is_linearly_separable(
    d: Dichotomy, *, float_prepass: bool | None = None
) -> tuple[bool, SeparationWitness | None]:
    """Decide strict linear separability; return an exact witness when true.

    ``float_prepass=None`` enables the floating-point filter automatically on
    instances large enough for it to pay off.  The verdict is identical
    either way; only speed differs.
    """
    n = d.dimension
    if d.positive & d.negative:
        # A shared point would need a value both above and below the
        # threshold; exact proof of inseparability, no LP needed.
        return False, None
    if not d.positive and not d.negative:
        return True, SeparationWitness((Fraction(0),) * n + (Fraction(-1),))
    if not d.negative:
        w = SeparationWitness((Fraction(0),) * n + (Fraction(-1),))
        assert w.satisfies(d)
        return True, w
    if not d.positive:
        w = SeparationWitness((Fraction(0),) * n + (Fraction(1),))
        assert w.satisfies(d)
        return True, w

    rows = _margin_rows(d)
    if float_prepass is None:
        float_prepass = len(rows) >= _PREPASS_MIN_POINTS
    if float_prepass:
        witness = _float_prepass_witness(rows, d)
        if witness is not None:
            return True, witness

    feasible, z = solve_ge_system(rows)
    if not feasible:
        return False, None
    witness = SeparationWitness(tuple(z))
    if not witness.satisfies(d):
        raise RuntimeError("exact solver produced a non-separating witness")
    return True, witness


def build_single_dichotomy(y: BitStream, n: int) -> Dichotomy:
    """Chunk one stream into labeled points.

    With m = floor((t-1)/n), chunk i is bits (i-1)n+1 .. in and its label is
    bit in+1: label 1 sends the chunk to the positive side, label 0 to the
    negative side.  Up to n-1 trailing bits beyond bit mn+1 are discarded.
    Chunks are deduplicated per side; a chunk labeled both ways stays on
    both sides, which makes the dichotomy inseparable.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    t = len(y)
    if t <= n:
        raise ValueError(f"stream too short: need at least {n + 1} bits, got {t}")
    m = (t - 1) // n
    bits = y.bits
    positive: set[BitVector] = set()
    negative: set[BitVector] = set()
    for i in range(1, m + 1):
        chunk = BitVector(bits[(i - 1) * n : i * n])
        if bits[i * n]:
            positive.add(chunk)
        else:
            negative.add(chunk)
    return Dichotomy(frozenset(positive), frozenset(negative), n)


def build_multi_dichotomy(samples: Iterable[BitStream], n: int) -> Dichotomy:
    """Label each (n+1)-bit sample by its last bit.

    Sample i contributes its first n bits to the positive side when bit n+1
    is 1, else to the negative side.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    positive: set[BitVector] = set()
    negative: set[BitVector] = set()
    for idx, s in enumerate(samples):
        if len(s) != n + 1:
            raise ValueError(f"samples[{idx}] has length {len(s)}, expected n+1 = {n + 1}")
        point = BitVector(s.bits[:n])
        if s.bits[n]:
            positive.add(point)
        else:
            negative.add(point)
    return Dichotomy(frozenset(positive), frozenset(negative), n)


# ---------------------------------------------------------------------------
# JSON interchange
# ---------------------------------------------------------------------------

def dichotomy_to_json(d: Dichotomy) -> dict:
    return {
        "n": d.dimension,
        "positive": sorted(v.to_string() for v in d.positive),
        "negative": sorted(v.to_string() for v in d.negative),
    }


def dichotomy_from_json(obj: dict) -> Dichotomy:
    if not isinstance(obj, dict):
        raise ValueError("dichotomy must be a JSON object")
    n = obj.get("n")
    if not isinstance(n, int) or n < 1:
        raise ValueError("field 'n': expected a positive integer")
    sides = {}
    for key in ("positive", "negative"):
        raw = obj.get(key, [])
        if not isinstance(raw, list):
            raise ValueError(f"field '{key}': expected a list")
        try:
            sides[key] = frozenset(BitVector.from_string(s) for s in raw)
        except (TypeError, ValueError) as exc:
            raise ValueError(f"field '{key}': {exc}") from None
    return Dichotomy(sides["positive"], sides["negative"], n)


def witness_to_json(w: SeparationWitness) -> dict:
    return {"coefficients": [format_rational(c) for c in w.coefficients]}


def witness_from_json(obj: dict) -> SeparationWitness:
    raw = obj.get("coefficients") if isinstance(obj, dict) else None
    if not isinstance(raw, list):
        raise ValueError("field 'coefficients': expected a list")
    return SeparationWitness(tuple(parse_rational(c) for c in raw))
