"""The density-increment engine over translate sets.
====================================================

Given a set A with no unique sum, a dissociated D inside it, and a
translate set S containing 0, one step tries to grow S so that D + S
captures noticeably more of A.  The step's hypotheses couple |S| to
|D|^6 / |A|^5, which honest desk-size instances fail immediately - that
precondition-failed exit is the signal the iteration consumes, and the
trace records it together with every per-step bound.

``force=True`` runs the pipeline regardless, which is how the machinery
itself can be watched: on Z/1031Z minus {0} with D the powers of two, the
translate case completes and captures eight new elements.
"""

from uniquesums import (
    GSet,
    balanced_multiplicative,
    increment_iterate,
    increment_step,
    make_group,
    sumset_construction,
    two_families_bound,
    two_families_search,
)
from uniquesums.config import RunConfig

# honest run on a constructed no-unique-sum set: exits immediately, since
# its dimension is tiny (the whole line Z/31Z has dimension 4)
A31 = sumset_construction(balanced_multiplicative(31))
trace = increment_iterate(A31, cfg=RunConfig(dimension_cap=36))
print(f"|A| = {len(A31)}, dim = {trace.dim}")
for rec in trace.records:
    print(" ", rec["step"], rec["case"], f"coverage {rec['coverage']}")
print("exit:", trace.exit_branch, "-", trace.exit_reason)

# forced diagnostic run on a synthetic instance where the pipeline finishes
g = make_group([1031])
A = GSet.make(g, [(x,) for x in range(1, 1031)])
D = GSet.make(g, [(1 << i,) for i in range(10)])
S = GSet.make(g, [(0,)])
out = increment_step(A, D, S, force=True)
print("forced case:", out.case_tag)
print("  grown translates:", [s[0] for s in out.S_prime])
print("  gain:", out.gain, "(guaranteed at least", out.guaranteed_gain, ")")
print("  counting facts:", {k: v for k, v in out.checks.items() if k != "preconditions"})

# the combinatorial bound behind the pruning steps: families of small sets
# with the pairwise cross-intersection property
fam = two_families_search(6)
print("a size-6 two-families instance:", [[sorted(p), sorted(q)] for p, q in fam])
print("bound check at 6:", two_families_bound([p for p, _ in fam], [q for _, q in fam]))

# the same search shows the bound 6 is tight only for restricted classes:
# mixing singletons and pairs admits a size-7 instance
seven = two_families_search(7)
print("size-7 instance (mixed sizes):", [[sorted(p), sorted(q)] for p, q in seven])
