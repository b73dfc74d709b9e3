"""Groups, representation tables, and the unique-sum predicate.
================================================================

A finite abelian group is given by its cyclic factor orders; elements are
residue tuples.  For a subset A, the r-table counts how often each element
of A + A is hit, and a "unique sum" is an element hit by exactly one
unordered pair.
"""

from uniquesums import (
    GSet,
    has_no_unique_sum,
    make_group,
    sum_table,
    translate,
    unique_sums,
)

# the interval {0,1,2,3} inside Z/5Z
z5 = make_group([5])
A = GSet.make(z5, [0, 1, 2, 3])

table = sum_table(A)
print("ordered counts:", {g[0]: c for g, c in sorted(table.ordered.items())})
print("unordered counts:", {g[0]: c for g, c in sorted(table.unordered.items())})

# every realized sum has at least two unordered representations, so the
# interval has no unique sum; it is the smallest such set in Z/5Z
print("unique sums:", [g[0] for g in unique_sums(A)])
print("has no unique sum:", has_no_unique_sum(A))

# the property is translation invariant
print("translated by 2:", has_no_unique_sum(translate(A, (2,))))

# parity matters for the bookkeeping: in Z/2Z the sum 0 = 0+0 = 1+1 has two
# unordered representations while 1 = 0+1 has only one
z2 = make_group([2])
B = GSet.make(z2, [0, 1])
print("unique sums of {0,1} in Z/2Z:", [g[0] for g in unique_sums(B)])

# ordered counts alone would miscount here: r(0) = 2 comes from two
# doublings, not from one genuine pair
print("ordered table in Z/2Z:", {g[0]: c for g, c in sorted(sum_table(B).ordered.items())})
