"""The density-increment engine and the two-families machinery."""

import random
from itertools import combinations

import pytest

from uniquesums import (
    GSet,
    PreconditionError,
    bad_elements,
    balanced_multiplicative,
    classify_pairs,
    grid_construction,
    increment_iterate,
    increment_step,
    make_group,
    sumset,
    sumset_construction,
    two_families_bound,
    two_families_search,
)
from uniquesums.config import RunConfig
from uniquesums.increment import SIZE_CONSTANT, TWO_FAMILIES_BOUND
from conftest import gset


def brute_bad_elements(D: GSet, S: GSet):
    """Oracle straight from the definition."""
    grp = D.group
    twoS = [grp.add(a, b) for a in S for b in S]
    out = set()
    for d in D:
        for x in twoS:
            for y in twoS:
                v = grp.sub(x, y)
                if v != grp.zero and grp.add(d, v) in D.as_set():
                    out.add(d)
    return out


def synthetic_instance():
    group = make_group([1031])
    A = GSet.make(group, [(x,) for x in range(1, 1031)])
    D = GSet.make(group, [(1 << i,) for i in range(10)])
    S = GSet.make(group, [(0,)])
    return group, A, D, S


class TestBadElements:
    def test_singleton_translates(self):
        g = make_group([31])
        assert bad_elements(gset(g, 1, 2, 4), gset(g, 0)).is_empty()

    def test_hand_instance(self):
        # shifts are +-1, +-2; every element of {1,2,4} re-enters D
        # (1+1=2, 2-1=1, 4-2=2)
        g = make_group([31])
        got = bad_elements(gset(g, 1, 2, 4), gset(g, 0, 1))
        assert got.elements == ((1,), (2,), (4,))

    def test_matches_oracle(self):
        rng = random.Random(6)
        for _ in range(30):
            g = make_group([rng.choice([29, 31, 37])])
            D = GSet.make(g, rng.sample(range(1, g.order), rng.randint(2, 6)))
            S = GSet.make(g, [0] + rng.sample(range(1, g.order), rng.randint(0, 2)))
            assert set(bad_elements(D, S).elements) == brute_bad_elements(D, S)

    def test_size_bound(self):
        rng = random.Random(10)
        for _ in range(20):
            g = make_group([37])
            D = GSet.make(g, rng.sample(range(1, 37), 6))
            S = GSet.make(g, [0, rng.randrange(1, 37)])
            assert len(bad_elements(D, S)) <= TWO_FAMILIES_BOUND * len(S) ** 4


class TestClassifyPairs:
    def test_trivial_translates_all_good(self):
        g = make_group([31])
        A = GSet.make(g, range(31))
        D = gset(g, 1, 2, 4)
        S = gset(g, 0)
        reps = {d: (0,) for d in D}
        bad, good = classify_pairs(A, D, S, reps)
        assert bad == frozenset()
        assert len(good) == 3

    def test_doubling_collision_is_bad(self):
        # 1 + 5 = 2 * 3 inside a dissociated set: {1,5} has an alternative
        # decomposition even with a single translate
        g = make_group([23])
        A = GSet.make(g, range(23))
        D = gset(g, 1, 3, 5)
        bad, good = classify_pairs(A, D, gset(g, 0), {d: (0,) for d in D})
        assert frozenset({(1,), (5,)}) in bad
        assert len(bad) == 1 and len(good) == 2

    def test_good_pairs_uniquely_represented(self):
        # the check is internal; reaching here without an exception is the assertion
        group, A, D, S = synthetic_instance()
        reps = {d: (0,) for d in D}
        bad, good = classify_pairs(A, D, S, reps)
        assert bad == frozenset()
        assert len(good) == 45


class TestIncrementStep:
    def test_small_dimension_exit(self, z5):
        A = gset(z5, 0, 1, 2, 3)
        out = increment_step(A, gset(z5, 1, 2), gset(z5, 0))
        assert out.case_tag == "precondition-failed"
        assert "small-dimension" in out.failed_reason

    def test_density_branch_exit(self):
        # |D| >= 10 but the coupled size condition fails immediately
        group, A, D, S = synthetic_instance()
        out = increment_step(A, D, S)
        assert out.case_tag == "precondition-failed"
        assert "density-branch" in out.failed_reason

    def test_rejects_sets_with_unique_sums(self, z5):
        with pytest.raises(PreconditionError):
            increment_step(gset(z5, 0, 1), gset(z5, 1), gset(z5, 0))

    def test_forced_pipeline_translate_case(self):
        group, A, D, S = synthetic_instance()
        out = increment_step(A, D, S, force=True)
        assert out.case_tag == "translate-case"
        assert group.zero in out.S_prime.as_set()
        assert len(out.S_prime) <= max(2 * len(S), len(S) ** 3)
        assert out.gain >= out.guaranteed_gain
        assert out.gain == 8
        # every counting fact the pipeline relies on held on this instance
        assert all(ok for name, ok in out.checks.items() if name != "preconditions")

    def test_forced_pipeline_state_contents(self):
        group, A, D, S = synthetic_instance()
        out = increment_step(A, D, S, force=True)
        st = out.state
        assert st.bad.is_empty()
        assert len(st.good_pairs) == 45
        assert st.representatives == {d: (0,) for d in D}
        # x-witnesses: all pairs share the least valid outside witness
        sizes = sorted(len(ps) for ps in st.pair_sources.values())
        assert sum(sizes) == 45
        assert st.rich_targets and st.focused_targets
        # measured gain matches the new coverage directly
        cov_before = len(sumset(D, S).as_set() & A.as_set())
        cov_after = len(sumset(D, out.S_prime).as_set() & A.as_set())
        assert out.gain == cov_after - cov_before


class TestIncrementIterate:
    def test_interval_immediate_exit(self, z5):
        trace = increment_iterate(gset(z5, 0, 1, 2, 3))
        assert len(trace.records) == 1
        assert trace.exit_branch == "small-dimension"
        assert trace.records[0]["size_bound_ok"]
        assert trace.records[0]["coverage_bound_ok"]

    def test_constructed_instances_traces(self):
        cfg = RunConfig(dimension_cap=36)
        B = balanced_multiplicative(31)
        for A in (grid_construction(gset(make_group([5]), 0, 1, 2, 3)), sumset_construction(B)):
            trace = increment_iterate(A, cfg=cfg)
            assert trace.exit_branch in ("small-dimension", "log-branch", "density-branch")
            assert all(r["size_bound_ok"] and r["coverage_bound_ok"] for r in trace.records)
            assert trace.records[-1]["coverage"] <= len(A)

    def test_trace_dict_shape(self, z5):
        doc = increment_iterate(gset(z5, 0, 1, 2, 3)).to_dict()
        assert set(doc) == {"dimension", "size_A", "steps", "exit_reason", "exit_branch"}


class TestTwoFamilies:
    def test_single_pair(self):
        assert two_families_bound([frozenset({1})], [frozenset({2})])

    def test_edge_complement_family_of_six(self):
        pairs = list(combinations(range(4), 2))
        P = [frozenset(e) for e in pairs]
        Q = [frozenset(set(range(4)) - set(e)) for e in pairs]
        assert two_families_bound(P, Q)

    def test_size_preconditions(self):
        with pytest.raises(PreconditionError):
            two_families_bound([frozenset({1, 2, 3})], [frozenset({4})])
        with pytest.raises(PreconditionError):
            two_families_bound([frozenset({1})], [frozenset({1})])
        with pytest.raises(PreconditionError):
            two_families_bound([frozenset()], [frozenset({1})])

    def test_search_finds_six(self):
        fam = two_families_search(6)
        assert fam is not None
        assert two_families_bound([p for p, _ in fam], [q for _, q in fam])

    def test_singleton_class_max_is_three(self):
        assert two_families_search(3, p_sizes=(1,), q_sizes=(1,)) is not None
        assert two_families_search(4, p_sizes=(1,), q_sizes=(1,)) is None

    def test_mixed_class_reaches_seven(self):
        # the k <= 6 expectation fails for the general class: a valid
        # size-7 instance exists (and the pair-pair class reaches 9)
        fam = two_families_search(7)
        assert fam is not None
        k = len(fam)
        for i in range(k):
            P, Q = fam[i]
            assert 1 <= len(P) <= 2 and 1 <= len(Q) <= 2 and not (P & Q)
            for j in range(i + 1, k):
                P2, Q2 = fam[j]
                assert (P & Q2) or (P2 & Q)
        assert not two_families_bound([p for p, _ in fam], [q for _, q in fam])

    def test_engine_constants(self):
        assert TWO_FAMILIES_BOUND == 6
        assert SIZE_CONSTANT == (1 << 11) * 6
