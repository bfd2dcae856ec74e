"""Counting machinery for linearly separable dichotomies.

Three independent routes to the same quantities live here:

* ``cover_bound``: the closed-form upper bound 2 * sum_{i<=n} C(m-1, i) on
  the number of ordered separable dichotomies of m points in n dimensions.
* ``region_count_table``: the recurrence T(m,n) = T(m-1,n) + T(m-1,n-1)
  for regions cut from n-space by m hyperplanes through the origin, in its
  general-position equality form.
* ``enumerate_separable_dichotomies``: brute force over all 2^|Y| ordered
  dichotomies of a point set, each decided by the exact LP test.

The ``IntegerWitnessOracle`` is deliberately disjoint from the LP path: it
enumerates every integer coefficient vector in a small box and collects the
dichotomies those vectors realize.  Agreement between the two routes on
small cubes is what certifies the LP implementation; the oracle never calls
into the separability module.
"""

from __future__ import annotations

import itertools
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Sequence

from .core import BitVector, Dichotomy, decode_state, encode_state
from .separability import is_linearly_separable

# 2^20 exact LP solves is the most a desk-scale enumeration should attempt.
_ENUMERATION_CAP = 20

# Coefficient box for the witness oracle.  Every threshold function on up to
# 3 inputs has an integer witness with entries in [-4, 4]; that sufficiency
# is empirical, confirmed by agreement with the LP enumerator, and is why
# the oracle refuses larger dimensions.
_ORACLE_BOUND = 4
_ORACLE_MAX_N = 3


@dataclass(frozen=True)
class CountReport:
    """Outcome of one enumeration against the closed-form bound."""

    m: int
    n: int
    separable_count: int
    bound: int
    attained: bool

    def __post_init__(self):
        if not 0 <= self.separable_count <= self.bound:
            raise ValueError("separable_count must lie in [0, bound]")
        if self.separable_count > 2**self.m:
            raise ValueError("separable_count exceeds the number of dichotomies")
        if self.attained != (self.separable_count == self.bound):
            raise ValueError("attained flag contradicts the counts")


def cover_bound(m: int, n: int) -> int:
    """Exact value of 2 * sum_{i=0}^{n} C(m-1, i)."""
    if m < 1 or n < 1:
        raise ValueError("m and n must be >= 1")
    return 2 * sum(math.comb(m - 1, i) for i in range(n + 1))


def region_count_table(m_max: int, n_max: int) -> list[list[int]]:
    """Table T[m-1][n-1] of open regions cut by m origin hyperplanes in n-space.

    Computed by the recurrence T(m,n) = T(m-1,n) + T(m-1,n-1) with base
    cases T(1,n) = T(m,1) = 2, which is the general-position equality case;
    degenerate arrangements only achieve fewer regions.  Entries satisfy the
    closed form 2 * sum_{i=0}^{n-1} C(m-1, i) exactly.
    """
    if m_max < 1 or n_max < 1:
        raise ValueError("m_max and n_max must be >= 1")
    table = [[2] * n_max for _ in range(m_max)]
    for m in range(2, m_max + 1):
        row, prev = table[m - 1], table[m - 2]
        for n in range(2, n_max + 1):
            row[n - 1] = prev[n - 1] + prev[n - 2]
    return table


def _sorted_points(points: Iterable[BitVector]) -> tuple[BitVector, ...]:
    pts = tuple(sorted(set(points), key=lambda v: v.bits))
    if not pts:
        raise ValueError("point set must be nonempty")
    n = len(pts[0])
    for p in pts:
        if len(p) != n:
            raise ValueError("points must share one dimension")
    return pts


def _separable_masks(
    points: Sequence[tuple[int, ...]], start: int, stop: int
) -> list[int]:
    # Most dichotomies of a dense point set are inseparable, so the float
    # pre-pass would be paid on every instance and win on few; the exact
    # solver alone is faster here.
    pts = [BitVector(p) for p in points]
    n = len(pts[0])
    masks = []
    for mask in range(start, stop):
        positive = frozenset(p for i, p in enumerate(pts) if mask >> i & 1)
        negative = frozenset(p for i, p in enumerate(pts) if not mask >> i & 1)
        separable, _ = is_linearly_separable(
            Dichotomy(positive, negative, n), float_prepass=False
        )
        if separable:
            masks.append(mask)
    return masks


def enumerate_separable_dichotomies(
    points: Iterable[BitVector], *, workers: int = 1
) -> tuple[CountReport, list[Dichotomy]]:
    """Test every ordered dichotomy of a point set for separability.

    Returns the count report against ``cover_bound`` and the separable
    dichotomies themselves, in a deterministic order.  ``workers`` splits
    the 2^|Y| index range across processes; the result is independent of
    the split.
    """
    pts = _sorted_points(points)
    m, n = len(pts), len(pts[0])
    if m > _ENUMERATION_CAP:
        raise ValueError(
            f"point set of size {m} exceeds the enumeration cap of {_ENUMERATION_CAP}"
        )
    total = 2**m
    raw = tuple(p.bits for p in pts)
    if workers > 1 and total >= 64:
        step = -(-total // workers)
        ranges = [(i, min(i + step, total)) for i in range(0, total, step)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            chunks = pool.map(_separable_masks, itertools.repeat(raw), *zip(*ranges))
        masks = [mask for chunk in chunks for mask in chunk]
    else:
        masks = _separable_masks(raw, 0, total)

    separable = [
        Dichotomy(
            frozenset(p for i, p in enumerate(pts) if mask >> i & 1),
            frozenset(p for i, p in enumerate(pts) if not mask >> i & 1),
            n,
        )
        for mask in masks
    ]
    bound = cover_bound(m, n)
    report = CountReport(m, n, len(separable), bound, len(separable) == bound)
    return report, separable


def count_threshold_functions(n: int) -> int:
    """Number of n-input linear threshold functions, as ordered dichotomies.

    Every threshold function splits {0,1}^n into its 1-set and 0-set, and a
    finite strict separation always exists for such a split, so the count
    equals the number of separable ordered dichotomies of the full cube.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if n > 4:
        raise ValueError(f"n = {n} would enumerate 2^{2**n} dichotomies; capped at 4")
    cube = [encode_state(k, n) for k in range(2**n)]
    report, _ = enumerate_separable_dichotomies(cube)
    return report.separable_count


class IntegerWitnessOracle:
    """Brute-force separability oracle over integer witnesses in a box.

    All coefficient vectors (x_1 .. x_{n+1}) with entries in [-4, 4] are
    enumerated once.  Each vector strictly classifies some cube points
    positive, some negative, and leaves points exactly on the hyperplane
    unclaimed; the realized (positive, negative) mask pair, and every pair
    obtained from it by dropping points, is separable.  The full realizable
    family is therefore the downward closure of the witnessed pairs, and a
    dichotomy query is one set-membership test.

    The closure is over pairs of bitmasks indexed by cube point value, so
    the whole family for n = 3 fits in a few thousand 16-bit states.
    """

    def __init__(self, n: int, bound: int = _ORACLE_BOUND):
        if not 1 <= n <= _ORACLE_MAX_N:
            raise ValueError(f"oracle supports 1 <= n <= {_ORACLE_MAX_N}, got {n}")
        self.n = n
        self.bound = bound
        self._realizable = self._close(self._witnessed_pairs())

    def _witnessed_pairs(self) -> set[tuple[int, int]]:
        # A vector strictly separates its above-set from its below-set.  It
        # also certifies the two closed variants that sweep the tied points
        # wholly to one side: with integer data, acc >= theta is the same as
        # 2 acc > 2 theta - 1, so (above + ties, below) has the strict
        # witness (2w, 2 theta - 1), and symmetrically for the other side.
        n = self.n
        points = [tuple((k >> j) & 1 for j in range(n)) for k in range(2**n)]
        coeffs = range(-self.bound, self.bound + 1)
        pairs = set()
        for x in itertools.product(coeffs, repeat=n + 1):
            *w, theta = x
            pos = neg = tie = 0
            for k, p in enumerate(points):
                acc = sum(wj for wj, b in zip(w, p) if b)
                if acc > theta:
                    pos |= 1 << k
                elif acc < theta:
                    neg |= 1 << k
                else:
                    tie |= 1 << k
            pairs.add((pos | tie, neg))
            pairs.add((pos, neg | tie))
        return pairs

    @staticmethod
    def _close(pairs: set[tuple[int, int]]) -> set[tuple[int, int]]:
        closed = set(pairs)
        queue = list(pairs)
        while queue:
            pos, neg = queue.pop()
            children = []
            bits = pos
            while bits:
                low = bits & -bits
                children.append((pos ^ low, neg))
                bits ^= low
            bits = neg
            while bits:
                low = bits & -bits
                children.append((pos, neg ^ low))
                bits ^= low
            for child in children:
                if child not in closed:
                    closed.add(child)
                    queue.append(child)
        return closed

    def is_separable(self, d: Dichotomy) -> bool:
        """Membership of the dichotomy's mask pair in the closed family."""
        if d.dimension != self.n:
            raise ValueError(f"oracle built for n = {self.n}, got {d.dimension}")
        pos = sum(1 << decode_state(v) for v in d.positive)
        neg = sum(1 << decode_state(v) for v in d.negative)
        return (pos, neg) in self._realizable

    def count_full_dichotomies(self) -> int:
        """Separable ordered dichotomies that assign every cube point a side."""
        full = 2**2**self.n - 1
        return sum(1 for pos, neg in self._realizable if pos | neg == full)
