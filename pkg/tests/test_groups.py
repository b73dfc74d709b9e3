"""Group arithmetic, r-tables, and the unique-sum / balanced predicates."""

import random

import pytest

from uniquesums import (
    DilationError,
    GroupError,
    GSet,
    balanced_failure,
    dilate,
    has_no_unique_sum,
    is_balanced,
    make_group,
    minspan,
    subgroup_generated,
    sum_table,
    sumset,
    translate,
    unique_sums,
)
from conftest import gset


class TestMakeGroup:
    def test_single_factor(self):
        g = make_group([5])
        assert g.order == 5 and g.smallest_prime == 5

    def test_two_factors(self):
        g = make_group([3, 5])
        assert g.order == 15 and g.smallest_prime == 3

    def test_even_composite(self):
        g = make_group([4, 6])
        assert g.order == 24 and g.smallest_prime == 2

    def test_rejects_bad_modulus(self):
        with pytest.raises(GroupError):
            make_group([3, 1])
        with pytest.raises(GroupError):
            make_group([])

    def test_index_roundtrip_matches_lex_order(self):
        g = make_group([3, 4])
        elems = list(g.elements())
        assert elems == sorted(elems)
        assert [g.unindex(g.index(e)) for e in elems] == elems
        assert [g.index(e) for e in elems] == list(range(12))


class TestSubgroupAndMinspan:
    def test_subgroup_of_two_in_z6(self):
        g = make_group([6])
        assert subgroup_generated(gset(g, 2)).elements == ((0,), (2,), (4,))

    def test_generator_of_z5(self, z5):
        assert len(subgroup_generated(gset(z5, 1))) == 5

    def test_translated_generator_diagonal(self):
        g = make_group([3, 3])
        got = subgroup_generated(GSet.make(g, [(1, 0)]), (0, 1))
        assert got.elements == ((0, 0), (1, 1), (2, 2))

    def test_minspan_even_coset(self):
        g = make_group([6])
        assert minspan(gset(g, 0, 2, 4)) == 3

    def test_minspan_singleton(self, z5):
        assert minspan(gset(z5, 0)) == 1

    @pytest.mark.parametrize("p", [5, 7])
    def test_minspan_columns_is_whole_group(self, p):
        # every translate of the two-column set contains an element of order 3p
        g = make_group([3, p])
        cols = GSet.make(g, [(x, c) for x in range(3) for c in (0, 1)])
        assert minspan(cols) == 3 * p


class TestSumTable:
    def test_interval_in_z5(self, z5):
        t = sum_table(gset(z5, 0, 1, 2, 3))
        assert {g[0]: c for g, c in t.ordered.items()} == {0: 3, 1: 3, 2: 3, 3: 4, 4: 3}

    def test_singleton(self, z5):
        t = sum_table(gset(z5, 0))
        assert t.ordered == {(0,): 1}

    def test_pair(self, z5):
        t = sum_table(gset(z5, 0, 1))
        assert {g[0]: c for g, c in t.ordered.items()} == {0: 1, 1: 2, 2: 1}

    def test_ordered_total_is_square(self, z7):
        A = gset(z7, 0, 2, 3, 6)
        assert sum(sum_table(A).ordered.values()) == len(A) ** 2

    def test_threaded_table_identical(self):
        g = make_group([101])
        A = GSet.make(g, [(x * x % 101,) for x in range(40)])
        assert sum_table(A, threads=4).ordered == sum_table(A).ordered


class TestUniqueSums:
    def test_pair_all_unique(self, z5):
        assert unique_sums(gset(z5, 0, 1)).elements == ((0,), (1,), (2,))

    def test_interval_has_none(self, z5):
        assert unique_sums(gset(z5, 0, 1, 2, 3)).is_empty()

    def test_two_torsion_doubling_is_not_unique(self):
        # 0 = 0+0 = 1+1 in Z/2Z: two unordered representations
        g = make_group([2])
        assert unique_sums(gset(g, 0, 1)).elements == ((1,),)

    def test_has_no_unique_sum(self, z5):
        assert has_no_unique_sum(gset(z5, 0, 1, 2, 3))
        assert not has_no_unique_sum(gset(z5, 0))

    def test_odd_order_ordered_shortcut(self):
        # for odd |G|: unique sums are exactly the g with 1 <= ordered[g] <= 2
        rng = random.Random(11)
        for _ in range(50):
            n = rng.choice([5, 7, 9, 15, 21])
            g = make_group([n])
            A = GSet.make(g, rng.sample(range(n), rng.randint(1, min(6, n))))
            t = sum_table(A)
            shortcut = {x for x, c in t.ordered.items() if 1 <= c <= 2}
            assert shortcut == set(unique_sums(A).elements)


class TestBalanced:
    def test_interval(self, z5):
        assert is_balanced(gset(z5, 0, 1, 2, 3))

    def test_pair_fails_at_zero(self, z5):
        assert balanced_failure(gset(z5, 0, 1)) == (0,)

    def test_columns_in_product(self):
        g = make_group([3, 7])
        cols = GSet.make(g, [(x, c) for x in range(3) for c in (0, 1)])
        assert is_balanced(cols)

    def test_empty_is_vacuous(self, z5):
        assert is_balanced(GSet.make(z5, []))

    def test_no_unique_sum_implies_balanced(self):
        rng = random.Random(23)
        found = 0
        for _ in range(300):
            n = rng.choice([5, 7, 8, 9, 12])
            g = make_group([n])
            A = GSet.make(g, rng.sample(range(n), rng.randint(1, n)))
            if has_no_unique_sum(A):
                found += 1
                assert is_balanced(A)
        assert found > 0


class TestElementwiseMaps:
    def test_translate(self, z5):
        assert translate(gset(z5, 0, 1, 2, 3), (1,)).elements == ((1,), (2,), (3,), (4,))

    def test_dilate(self, z5):
        assert dilate(gset(z5, 1, 2), 2).elements == ((2,), (4,))

    def test_dilate_requires_unit(self):
        g = make_group([6])
        with pytest.raises(DilationError):
            dilate(gset(g, 1), 2)

    def test_sumset(self, z5):
        assert sumset(gset(z5, 0, 1), gset(z5, 0, 2)).elements == ((0,), (1,), (2,), (3,))

    def test_predicates_invariant_under_translation_and_dilation(self):
        rng = random.Random(7)
        for _ in range(100):
            n = rng.choice([5, 7, 8, 10, 13])
            g = make_group([n])
            A = GSet.make(g, rng.sample(range(n), rng.randint(1, n)))
            nus, bal = has_no_unique_sum(A), is_balanced(A)
            t = (rng.randrange(n),)
            assert has_no_unique_sum(translate(A, t)) == nus
            assert is_balanced(translate(A, t)) == bal
            units = [u for u in range(1, n) if __import__("math").gcd(u, n) == 1]
            u = rng.choice(units)
            assert has_no_unique_sum(dilate(A, u)) == nus
            assert is_balanced(dilate(A, u)) == bal
