"""Exact feasibility solver for closed systems ``A z >= b`` over the rationals.

This is the engine behind the linear-separability test.  It decides whether
a rational inequality system ``A z >= b`` (``z`` unrestricted in sign) has a
solution and produces one when it does.  Inputs are scaled row by row to
integers, and every quantity the algorithm then touches is an integer, so
verdicts are bit-exact and deterministic; no tolerance appears anywhere.

Representation: an integer-pivot (fraction-free) phase-1 simplex tableau.
The tableau is stored as an integer matrix ``N`` plus a positive integer
scale ``d``; the mathematical tableau is ``N / d``.  A pivot on row ``r``,
column ``c`` (pivot entry ``p = N[r][c] > 0``) performs

    N'[i][j] = (N[i][j] * p - N[i][c] * N[r][j]) // d      for i != r,
    N'[r][j] = N[r][j],
    d' = p.

Each division is exact: by Cramer's rule, ``d`` times the current tableau is
an integer matrix whose entries are determinants of basis submatrices of the
original integer data, and ``d'`` is the determinant of the new basis (up to
sign), so the update lands on integers for any pivot sequence.  This keeps
the per-entry cost at plain integer multiply/subtract/divide instead of
normalized rational arithmetic.

Pivot selection follows Bland's smallest-index rule for both the entering
column and the ratio-test tie-break, which rules out cycling, so the solver
terminates on every input.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

# Insurance against an implementation bug ever looping; Bland's rule makes
# genuine cycling impossible.
_MAX_PIVOTS = 1_000_000


def solve_ge_system(
    rows: Sequence[Sequence[int | Fraction]],
    rhs: int | Fraction | Sequence[int | Fraction] = 1,
) -> tuple[bool, list[Fraction] | None]:
    """Decide feasibility of ``A z >= b`` over the rationals.

    ``rows`` is the matrix ``A``; ``rhs`` is a single value applied to all
    rows or a per-row sequence.  Entries may be ints or Fractions; each row
    is scaled to integers by the positive lcm of its denominators, which
    preserves the inequality.  Returns ``(True, z)`` with an exact rational
    solution, or ``(False, None)``.
    """
    m = len(rows)
    if m == 0:
        return True, []
    k = len(rows[0])
    if any(len(r) != k for r in rows):
        raise ValueError("ragged constraint matrix")
    if isinstance(rhs, (int, Fraction)):
        b = [Fraction(rhs)] * m
    else:
        b = [Fraction(v) for v in rhs]
        if len(b) != m:
            raise ValueError("rhs length does not match row count")

    # Columns: u_0..u_{k-1}, v_0..v_{k-1} (free z split as u - v),
    # surplus e_0..e_{m-1}, artificial t_0..t_{m-1}, then the rhs.
    # Each constraint becomes the equation sign*(a . z) - sign*e = sign*b
    # with e >= 0, the sign chosen so the tableau rhs is nonnegative.
    ncols = 2 * k + 2 * m
    tab: list[list[int]] = []
    for i, row in enumerate(rows):
        frac_row = [Fraction(a) for a in row]
        scale = math.lcm(*(a.denominator for a in frac_row), b[i].denominator)
        ints = [int(a * scale) for a in frac_row]
        bi = int(b[i] * scale)
        sign = 1 if bi >= 0 else -1
        line = [0] * (ncols + 1)
        for j, a in enumerate(ints):
            line[j] = sign * a
            line[k + j] = -sign * a
        line[2 * k + i] = -sign       # surplus
        line[2 * k + m + i] = 1       # artificial
        line[ncols] = sign * bi
        tab.append(line)

    # Phase-1 objective: minimize the artificial sum.  With the artificial
    # basis, the reduced-cost row is -(column sums) on non-artificial
    # columns and -(tableau rhs sum) on the right-hand side.
    obj = [0] * (ncols + 1)
    for j in range(2 * k + m):
        obj[j] = -sum(tab[i][j] for i in range(m))
    obj[ncols] = -sum(tab[i][ncols] for i in range(m))

    basis = [2 * k + m + i for i in range(m)]
    d = 1

    for _ in range(_MAX_PIVOTS):
        # Entering column: smallest index with a negative reduced cost.
        c = -1
        for j in range(ncols):
            if obj[j] < 0:
                c = j
                break
        if c == -1:
            break

        # Ratio test: minimize rhs/coeff over positive coefficients, ties
        # broken by the smallest basis label (Bland).  Comparisons are done
        # by cross-multiplication; all denominators are positive.
        r = -1
        r_num = r_den = 0
        for i in range(m):
            a = tab[i][c]
            if a <= 0:
                continue
            num = tab[i][ncols]
            if r == -1:
                r, r_num, r_den = i, num, a
                continue
            lhs = num * r_den
            rhs_cmp = r_num * a
            if lhs < rhs_cmp or (lhs == rhs_cmp and basis[i] < basis[r]):
                r, r_num, r_den = i, num, a
        if r == -1:
            # The phase-1 objective is bounded below by zero, so an
            # unbounded ray here means the tableau is corrupt.
            raise RuntimeError("phase-1 simplex reported unbounded; tableau invariant broken")

        prow = tab[r]
        p = prow[c]
        for i in range(m):
            if i == r:
                continue
            rowi = tab[i]
            f = rowi[c]
            if f:
                tab[i] = [(x * p - f * y) // d for x, y in zip(rowi, prow)]
            else:
                tab[i] = [x * p // d for x in rowi]
        f = obj[c]
        if f:
            obj = [(x * p - f * y) // d for x, y in zip(obj, prow)]
        else:
            obj = [x * p // d for x in obj]
        basis[r] = c
        d = p
    else:
        raise RuntimeError("pivot limit exceeded")

    if obj[ncols] != 0:
        # Optimal artificial sum is positive: the system is infeasible.
        return False, None

    where = {col: i for i, col in enumerate(basis)}
    z: list[Fraction] = []
    for j in range(k):
        u = Fraction(tab[where[j]][ncols], d) if j in where else Fraction(0)
        v = Fraction(tab[where[k + j]][ncols], d) if (k + j) in where else Fraction(0)
        z.append(u - v)
    return True, z
