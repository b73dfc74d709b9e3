"""Exact extremal searches, certificates, and the dashboard."""

import json
from itertools import combinations

import pytest

from uniquesums import (
    GSet,
    SizeLimitError,
    all_of_size,
    bounds_dashboard,
    has_no_unique_sum,
    is_balanced,
    make_group,
    smallest_balanced,
    smallest_no_unique_sum,
    verify_certificate,
)
from uniquesums.config import RunConfig
from uniquesums.enumeration import balanced_predicate, canonical_translate_form
from uniquesums.groups import indexed_group


def naive_minimum(group, pred):
    """Full powerset scan, no symmetry, no floor."""
    elems = list(group.elements())
    for size in range(1, group.order + 1):
        for c in combinations(elems, size):
            if pred(GSet(group=group, elements=tuple(c))):
                return size
    return None


class TestExactValues:
    def test_m_of_z5(self):
        cert = smallest_no_unique_sum(make_group([5]))
        assert cert.value == 4
        assert cert.witness.elements == ((0,), (1,), (2,), (3,))

    def test_z2_has_neither(self):
        g = make_group([2])
        assert smallest_no_unique_sum(g) is None
        assert smallest_balanced(g) is None

    @pytest.mark.parametrize("p", [3, 5, 7])
    def test_matches_naive_oracle(self, p):
        g = make_group([p])
        b = smallest_balanced(g)
        m = smallest_no_unique_sum(g)
        assert (None if b is None else b.value) == naive_minimum(g, is_balanced)
        assert (None if m is None else m.value) == naive_minimum(g, has_no_unique_sum)

    def test_product_group_column(self):
        cert = smallest_balanced(make_group([3, 5]))
        assert cert.value == 3
        assert cert.witness.elements == ((0, 0), (1, 0), (2, 0))

    def test_m_at_least_b(self):
        for mods in ([5], [7], [11], [3, 3], [13]):
            g = make_group(mods)
            b = smallest_balanced(g)
            m = smallest_no_unique_sum(g)
            if b is not None and m is not None:
                assert m.value >= b.value

    def test_m_divisor_monotonicity(self):
        # m(G) <= min over primes p | |G| of m(p), when both sides exist
        g15 = make_group([3, 5])
        m15 = smallest_no_unique_sum(g15).value
        m3 = smallest_no_unique_sum(make_group([3])).value
        m5 = smallest_no_unique_sum(make_group([5])).value
        assert m15 <= min(m3, m5)

    def test_max_size_limits_search(self):
        assert smallest_no_unique_sum(make_group([11]), max_size=4) is None


class TestCertificates:
    def test_reverify(self):
        for mods in ([5], [7], [3, 5]):
            for fn in (smallest_balanced, smallest_no_unique_sum):
                cert = fn(make_group(mods))
                if cert is not None:
                    assert verify_certificate(cert)

    def test_checksum_detects_tampering(self):
        cert = smallest_no_unique_sum(make_group([5]))
        from dataclasses import replace

        forged = replace(cert, value=3)
        assert not verify_certificate(forged)

    def test_thread_count_does_not_change_result(self):
        g = make_group([13])
        one = smallest_no_unique_sum(g, cfg=RunConfig(threads=1))
        many = smallest_no_unique_sum(g, cfg=RunConfig(threads=8))
        assert one.to_dict() == many.to_dict()

    def test_cap_yields_lower_bound_certificate(self):
        g = make_group([8191])
        with pytest.raises(SizeLimitError) as exc:
            smallest_no_unique_sum(g, cfg=RunConfig(search_cap=1000))
        partial = exc.value.partial
        assert partial.status == "lower-bound"
        assert partial.value == 14  # the balanced floor for p = 8191

    def test_search_space_description(self):
        cert = smallest_balanced(make_group([7]))
        assert "translation classes" in cert.search_space
        assert "0-containing" in cert.search_space


class TestEnumeration:
    def test_canonical_form_is_least_translate(self):
        g = make_group([7])
        ig = indexed_group(g)
        # {1, 2, 5} translates: the least sorted form begins with 0
        got = canonical_translate_form(ig, (1, 2, 5))
        assert got == min(
            tuple(sorted((x + t) % 7 for x in (1, 2, 5))) for t in range(7)
        )

    def test_all_of_size_covers_every_class(self):
        g = make_group([3, 5])
        hits = all_of_size(g, 3, balanced_predicate)
        assert len(hits) == 1  # one column class up to translation
        assert is_balanced(hits[0])

    def test_all_of_size_deterministic_across_threads(self):
        g = make_group([13])
        a = all_of_size(g, 6, balanced_predicate, RunConfig(threads=1))
        b = all_of_size(g, 6, balanced_predicate, RunConfig(threads=8))
        assert a == b
        assert len(a) == 18


class TestDashboard:
    def test_small_primes(self):
        doc = bounds_dashboard([3, 5, 7])
        assert doc["violations"] == []
        rows = {r["p"]: r for r in doc["rows"]}
        assert rows[5]["b"] == 4 and rows[5]["m"] == 4
        assert rows[3]["b"] == 3 and rows[3]["m"] == 3
        assert rows[7]["checks"]["m_at_most_sumset"]

    def test_row_for_two(self):
        doc = bounds_dashboard([2])
        row = doc["rows"][0]
        assert row["b"] is None and row["m"] is None
        assert doc["violations"] == []

    def test_large_prime_lower_bound(self):
        doc = bounds_dashboard([8191], cfg=RunConfig(search_cap=10000))
        row = doc["rows"][0]
        assert row["b_status"] == "lower-bound" and row["m_status"] == "lower-bound"
        assert row["b"] == 14 and row["m"] == 14
        assert row["sumset_size"] <= 378

    def test_json_serializable(self):
        json.dumps(bounds_dashboard([3, 5]))
