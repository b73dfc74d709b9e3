"""Additive spans, dissociated sets, and support compression.
=============================================================

The additive span of a multiset is the set of its subset sums.  A set is
dissociated when all subset sums are distinct; the additive dimension is
the size of the largest dissociated subset.  The span size is wedged
between 2^dim and explicit binomial expressions in |Z| and dim.
"""

from uniquesums import (
    GMultiset,
    GSet,
    Representation,
    additive_dimension,
    additive_span,
    dimension_ratio,
    is_dissociated,
    make_group,
    span_bounds_report,
    subset_representation,
    support_compress,
)

z13 = make_group([13])

# {1, 2, 4} is dissociated: its eight subset sums are pairwise distinct
D = GSet.make(z13, [1, 2, 4])
print("dissociated:", is_dissociated(D))
print("span:", sorted(g[0] for g in additive_span(D)))

# {1, 2, 3} is not: 1 + 2 = 3, and its dimension drops to 2
S = GSet.make(z13, [1, 2, 3])
dim = additive_dimension(S)
print("dim:", dim.dim, "witness:", [g[0] for g in dim.witness])

# multiplicities count: k copies of each generator of (Z/(k+1)Z)^2 span the
# full (k+1)^2 box while the dimension stays 2
box = make_group([4, 4])
Z = GMultiset.make(box, {(1, 0): 3, (0, 1): 3})
report = span_bounds_report(Z)
print(
    f"box: span {report.span_size}, dim {report.dim}, "
    f"2^dim = {report.lower_bound} <= span <= {report.binomial_bound}"
)

# every span element can be rewritten so its support is dissociated: here
# 6 = 1 + 2 + 3 compresses onto the single element 3 (6 = 2 * 3)
z7 = make_group([7])
Z7 = GMultiset.make(z7, [1, 2, 3])
initial = Representation(base=Z7, copy_coeffs=(1, 1, 1), target=(6,), weight_budget=3)
out = support_compress(Z7, (6,), initial)
print("compressed coefficients:", {z[0]: k for z, k in out.coeffs.items()})

# the canonical starting representation is the least 0/1 choice
print("canonical representation of 5:", subset_representation(Z7, (5,)).coeffs)

# the ratio |Z| / dim(Z) controls how much of the span the size explains
print("ratio report:", dimension_ratio(S))
