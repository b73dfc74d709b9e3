"""Building sets with no unique sum, and integer models.
========================================================

Two constructions turn a balanced set B into a set with no unique sum: the
grid B x B in the product group, and the sumset B + B on the line (at most
C(|B|+1, 2) elements).  The multiplicative balanced set {0} u <2, -1> is
tiny for primes where 2 has small order, e.g. p = 2^13 - 1.

Conversely, sets with no unique sum can never look like integers: every
finite integer set has the unique sum max + max.  ``rectify`` hunts for an
integer model by dilation + rotation, and refuses balanced sets.
"""

from uniquesums import (
    GSet,
    balanced_multiplicative,
    balanced_search,
    freiman_embed,
    grid_construction,
    has_no_unique_sum,
    make_group,
    rectify,
    subset_representatives,
    sumset_construction,
)

# exact minimum balanced sets by exhaustive search
for p in (3, 5, 7):
    B = balanced_search(p, p)
    print(f"smallest balanced set mod {p}: {[b[0] for b in B]}")

# the multiplicative construction is small when 2 has small order mod p
for p in (7, 31, 127, 8191):
    B = balanced_multiplicative(p)
    A = sumset_construction(B)
    print(f"p={p}: |B| = {len(B)}, |B+B| = {len(A)}, no unique sum: {has_no_unique_sum(A)}")

# the grid construction in two dimensions
B5 = balanced_search(5, 5)
grid = grid_construction(B5)
print(f"grid: {len(grid)} elements in (Z/5Z)^2, no unique sum: {has_no_unique_sum(grid)}")

# a small set in a square embeds into the line whenever some coordinate
# mix is injective on its sumset; the image keeps all additive structure
square = make_group([31, 31])
P = GSet.make(square, [(1, 0), (0, 1), (3, 7), (5, 2)])
emb = freiman_embed(P)
print(f"embedding parameter r = {emb.r}, image = {[x[0] for x in emb.image]}")

# integer models: {0, 3, 5} mod 11 looks like integers, a balanced set never does
z11 = make_group([11])
print("rectify {0,3,5}:", rectify(GSet.make(z11, [0, 3, 5])))
print("rectify a balanced set:", rectify(B5))

# models order a set so that maxima of subsets have uniquely realized sums
reps = subset_representatives(GSet.make(z11, [0, 3, 5]))
print("subset representatives:", {tuple(sorted(x[0] for x in X)): s[0] for X, s in sorted(reps.items(), key=lambda kv: sorted(kv[0]))})
