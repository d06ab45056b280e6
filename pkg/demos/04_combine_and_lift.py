"""Combining codes block-diagonally and lifting over extension fields.

Two codes of equal dimension sit in opposite corners of a bigger diagram
and their distances add.  A code over GF(q^m) becomes a code over GF(q) by
rewriting every entry as a coordinate column (same distance) or as an
m x m multiplication matrix (distance multiplies by m).
"""

from fdrm import (
    FerrersDiagram,
    combine_codes,
    construct_shortened,
    is_optimal,
    lift_matrix_optimal,
    lift_vector,
    min_rank_distance,
    singleton_bound,
)
from fdrm.constructions import tower_for_shortened

# build the two components over GF(4) so the result can be lifted by m=2
F1, F2 = FerrersDiagram.parse("[2,3,3]"), FerrersDiagram.parse("[2]")
c1 = construct_shortened(tower_for_shortened(2, 2, F1, 3), F1, 3)
c2 = construct_shortened(tower_for_shortened(2, 2, F2, 1), F2, 1)
print(f"components: {c1.describe()} and {c2.describe()}")

comb = combine_codes(c1, c2, m3=3, n3=1)
print(f"combined:   {comb.describe()}")
print(f"  distance {min_rank_distance(comb)} = 3 + 1, "
      f"optimal: {is_optimal(comb, 4)}")
print()

lv = lift_vector(comb, 2)
print(f"vector lift (coordinate columns): {lv.describe()}")
print(f"  distance preserved: {min_rank_distance(lv)}")
print()

lm = lift_matrix_optimal(comb, 2)
bound, _ = singleton_bound(lm.diagram, lm.claimed_delta)
print(f"matrix lift (multiplication blocks): {lm.describe()}")
print(f"  distance doubled: {min_rank_distance(lm)}, bound {bound}, "
      f"optimal: {is_optimal(lm, 8)}")
