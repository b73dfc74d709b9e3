"""Cores, minimal/irreducible structure, the midpoint graph, weight
compression, and the additive-basis translate search."""

import random
from fractions import Fraction
from itertools import combinations

import pytest

from uniquesums import (
    GSet,
    NotInSubgroupError,
    PreconditionError,
    balanced_core,
    graph_export,
    is_balanced,
    is_irreducible,
    make_group,
    midpoint_graph,
    minimal_balanced_subset,
    minimal_balanced_subsets,
    reachability_check,
    subgroup_generated,
    translate,
    verify_additive_basis,
    weight_compress,
)
from conftest import gset


def columns(p):
    g = make_group([3, p])
    return GSet.make(g, [(x, c) for x in range(3) for c in (0, 1)])


def brute_balanced_subsets(B: GSet):
    """Oracle: all non-empty balanced subsets by powerset scan."""
    out = []
    for r in range(1, len(B) + 1):
        for c in combinations(B.elements, r):
            if is_balanced(B.with_elements(c)):
                out.append(frozenset(c))
    return out


class TestCore:
    def test_cascade_to_empty(self, z5):
        assert balanced_core(gset(z5, 2, 3, 4)).is_empty()

    def test_whole_group_fixed(self, z5):
        assert balanced_core(gset(z5, *range(5))).elements == tuple((x,) for x in range(5))

    def test_core_is_union_of_balanced_subsets(self):
        rng = random.Random(13)
        for _ in range(40):
            n = rng.choice([7, 9, 11])
            g = make_group([n])
            B = GSet.make(g, rng.sample(range(n), rng.randint(1, n)))
            core = balanced_core(B)
            union = set()
            for s in brute_balanced_subsets(B):
                union |= s
            assert set(core.elements) == union


class TestMinimal:
    def test_whole_z5(self, z5):
        assert minimal_balanced_subset(gset(z5, *range(5))).elements == (
            (1,), (2,), (3,), (4,),
        )

    def test_interval_is_its_own_minimum(self, z5):
        B = gset(z5, 0, 1, 2, 3)
        assert minimal_balanced_subset(B) == B

    def test_columns_give_one_column(self):
        got = minimal_balanced_subset(columns(5))
        assert got.elements in (
            tuple((x, 0) for x in range(3)),
            tuple((x, 1) for x in range(3)),
        )

    def test_output_minimal_by_oracle(self):
        rng = random.Random(19)
        for _ in range(25):
            n = rng.choice([7, 9, 13])
            g = make_group([n])
            B = balanced_core(GSet.make(g, rng.sample(range(n), rng.randint(3, n))))
            if B.is_empty():
                continue
            M = minimal_balanced_subset(B)
            assert is_balanced(M) and not M.is_empty()
            for b in M:
                assert balanced_core(M.remove(b)).is_empty()

    def test_enumeration_matches_oracle(self, z5):
        B = gset(z5, *range(5))
        got = {frozenset(m.elements) for m in minimal_balanced_subsets(B)}
        oracle = set()
        for s in brute_balanced_subsets(B):
            if not any(t < s for t in brute_balanced_subsets(B)):
                oracle.add(s)
        assert got == oracle


class TestIrreducible:
    def test_interval(self, z5):
        assert is_irreducible(gset(z5, 0, 1, 2, 3))

    def test_columns_are_reducible(self):
        assert not is_irreducible(columns(5))

    def test_small_sets_by_counting(self):
        # below twice the minimum balanced size the answer is forced
        g = make_group([9])
        B = gset(g, 0, 3, 6)
        assert is_irreducible(B)

    def test_requires_balanced(self, z5):
        with pytest.raises(PreconditionError):
            is_irreducible(gset(z5, 0, 1))


class TestMidpointGraph:
    def test_interval_edges(self, z5):
        H = midpoint_graph(gset(z5, 0, 1, 2, 3))
        assert {b[0]: (x[0], y[0]) for b, (x, y) in H.edges.items()} == {
            0: (2, 3), 1: (0, 2), 2: (1, 3), 3: (0, 1),
        }

    def test_out_degree_two_always(self):
        rng = random.Random(37)
        for _ in range(30):
            n = rng.choice([7, 11, 13])
            g = make_group([n])
            B = balanced_core(GSet.make(g, rng.sample(range(n), rng.randint(4, n))))
            if B.is_empty():
                continue
            H = midpoint_graph(B)
            for b, (x, y) in H.edges.items():
                assert x != y
                assert g.add(x, y) == g.double(b)

    def test_core_edges_stay_inside_core(self):
        H = midpoint_graph(columns(7))
        core = H.core.as_set()
        for b in H.core:
            x, y = H.edges[b]
            assert x in core and y in core

    def test_reachability(self, z5):
        assert reachability_check(midpoint_graph(gset(z5, 0, 1, 2, 3)))

    def test_columns_not_fully_reaching(self):
        # the off-core column keeps its witnesses in-column, so it never
        # reaches the core when the core is the other column
        H = midpoint_graph(columns(5))
        assert not reachability_check(H)

    def test_export_contains_dyadic_weights(self, z5):
        H = midpoint_graph(gset(z5, 0, 1, 2, 3))
        doc = graph_export(H)
        assert doc["anchor"] == [0]
        weights = {tuple(r["vertex"]): r["weight"] for r in doc["adjacency"]}
        assert weights[(0,)] == "1/2^0"
        assert all(w.startswith("1/2^") for w in weights.values())


class TestWeightCompress:
    def test_explicit_anchor_example(self, z5):
        B = gset(z5, 0, 1, 2, 3)
        rep = weight_compress(B, (3,), g_prime=(1,))
        assert {b[0]: k for b, k in rep.coeffs.items() if k} == {2: 1, 3: 1}
        assert rep.rewrites == 1

    def test_zero_target_empty_sum(self, z5):
        rep = weight_compress(gset(z5, 0, 1, 2, 3), (0,))
        assert all(k == 0 for k in rep.coeffs.values())

    def test_every_element_of_z5(self, z5):
        B = gset(z5, 0, 1, 2, 3)
        for y in range(5):
            rep = weight_compress(B, (y,))
            assert all(k in (0, 1) for b, k in rep.coeffs.items() if b != rep.anchor)

    def test_identity_holds(self, z5):
        B = gset(z5, 0, 1, 2, 3)
        g = z5.neg((0,))
        for y in range(5):
            rep = weight_compress(B, (y,))
            acc = z5.zero
            for b, k in rep.coeffs.items():
                acc = z5.add(acc, z5.scale(k, z5.add(b, z5.neg(rep.anchor))))
            assert acc == (y,)

    def test_outside_subgroup_rejected(self):
        g = make_group([3, 5])
        col = GSet.make(g, [(x, 0) for x in range(3)])
        with pytest.raises(NotInSubgroupError):
            weight_compress(col, (0, 1))

    def test_unreachable_vertex_rejected(self):
        with pytest.raises(PreconditionError):
            weight_compress(columns(5), (0, 0))

    def test_weights_are_dyadic(self, z5):
        rep = weight_compress(gset(z5, 0, 1, 2, 3), (2,))
        for w in rep.weights.values():
            assert w.numerator == 1 and (w.denominator & (w.denominator - 1)) == 0
        assert rep.weights[rep.anchor] == Fraction(1)


class TestAdditiveBasis:
    def test_interval(self, z5):
        res = verify_additive_basis(gset(z5, 0, 1, 2, 3))
        assert res.ok and res.g == (0,)
        assert all(g in set(res.successes) for g in [(0,)])

    def test_whole_group_trivial(self, z5):
        assert verify_additive_basis(gset(z5, *range(5))).ok

    @pytest.mark.parametrize("p", [5, 7])
    def test_columns_fail_for_every_candidate(self, p):
        res = verify_additive_basis(columns(p))
        assert not res.ok and res.successes == () and res.g is None

    @pytest.mark.parametrize("p", [5, 7])
    def test_columns_have_full_span_translates_outside_candidates(self, p):
        # some g outside -B does make the span full at small p; the failure
        # above is specifically about translates containing 0
        g = make_group([3, p])
        B = columns(p)
        shifted = translate(B, (0, 1))
        from uniquesums import additive_span

        assert len(additive_span(shifted)) == len(subgroup_generated(B, (0, 1)))
