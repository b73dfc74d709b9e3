"""Balanced sets, the midpoint graph, and additive-basis translates.
====================================================================

A set is balanced when every element is the midpoint of a non-trivial
3-term progression inside the set.  Fixing one witness pair per element
gives a directed graph; for an irreducible balanced set every vertex
reaches a minimal balanced core, and weighting vertices by graph distance
shows that some translate of the set spans everything it generates.
"""

from uniquesums import (
    GSet,
    graph_export,
    is_balanced,
    is_irreducible,
    make_group,
    midpoint_graph,
    minimal_balanced_subset,
    verify_additive_basis,
    weight_compress,
)

z5 = make_group([5])
B = GSet.make(z5, [0, 1, 2, 3])
print("balanced:", is_balanced(B), "irreducible:", is_irreducible(B))

# the witness graph: out-degree exactly two everywhere
H = midpoint_graph(B)
for b, (x, y) in sorted(H.edges.items()):
    print(f"  {b[0]} -> {x[0]}, {y[0]}   (since 2*{b[0]} = {x[0]} + {y[0]} mod 5)")

# distances to the anchor give dyadic weights
print("export:", graph_export(H)["adjacency"])

# compressing any target yields 0/1 coefficients away from the anchor,
# certifying that the translate B - anchor spans the whole group
for y in range(5):
    rep = weight_compress(B, (y,))
    picks = [b[0] for b in rep.selected()]
    print(f"  {y} = sum of (b + g) for b in {picks}   [{rep.rewrites} rewrites]")

print("basis search:", verify_additive_basis(B))

# the classic reducible example: two parallel balanced columns; no
# candidate translate is a basis for the (much larger) generated subgroup
g35 = make_group([3, 5])
cols = GSet.make(g35, [(x, c) for x in range(3) for c in (0, 1)])
print("columns balanced:", is_balanced(cols), "irreducible:", is_irreducible(cols))
print("columns minimal core:", minimal_balanced_subset(cols).elements)
print("columns basis search:", verify_additive_basis(cols))
