"""
How many dichotomies can a hyperplane realize?
==============================================

m points in n-space admit 2^m ordered dichotomies, but hyperplanes can
realize at most 2 * sum_{i<=n} C(m-1, i) of them - polynomial in m for
fixed n.  That gap is exactly why the distinguishers work: network
streams always land on the separable side, uniform bits soon do not.
This script checks the bound by brute force on small point sets.
"""

from mpbits import (
    IntegerWitnessOracle,
    cover_bound,
    encode_state,
    enumerate_separable_dichotomies,
    region_count_table,
)

# The bound next to 2^m: the separable fraction collapses as m grows.
print("bound vs 2^m in dimension 3:")
for m in (2, 4, 8, 16, 32):
    print(f"  m = {m:2d}   bound {cover_bound(m, 3):6d}   of {2**m}")

# Brute force over the 2^4 dichotomies of the square {0,1}^2: exactly
# the two XOR labelings are inseparable, so 14 of the bound's 14 appear.
square = [encode_state(k, 2) for k in range(4)]
report, separable = enumerate_separable_dichotomies(square)
print()
print("square  ", report.separable_count, "separable of bound", report.bound,
      "- attained" if report.attained else "- not attained")

# The cube {0,1}^3 has 104 separable dichotomies against a bound of 128:
# the bound counts general-position points, and cube corners are not in
# general position.
cube = [encode_state(k, 3) for k in range(8)]
report, _ = enumerate_separable_dichotomies(cube)
print("cube    ", report.separable_count, "separable of bound", report.bound,
      "- attained" if report.attained else "- not attained")

# An independent check that owes nothing to linear programming: try
# every integer coefficient vector in a small box and collect the
# dichotomies it realizes.  The box is large enough to witness every
# separable dichotomy of cube points for n <= 3.
oracle = IntegerWitnessOracle(3)
print("oracle  ", oracle.count_full_dichotomies(), "separable by exhaustive witness search")

# The same numbers again from the other direction: the region-count
# recurrence T(m,n) = T(m-1,n) + T(m-1,n-1) counts the regions m
# hyperplanes through the origin cut from n-space, and each region is
# one realizable dichotomy of the m normals.
print()
print("region counts T(m,n) for m, n <= 6:")
for m, row in enumerate(region_count_table(6, 6), start=1):
    print(f"  m = {m}  ", "".join(f"{v:6d}" for v in row))
