"""Acceptance gate: one test per criterion, each at its stated tolerance.

The suite report is computed once (full mode) and the per-criterion tests
assert on it, printing one pass/fail line each.  Criterion 6 contains a
deliberately faithful check of the expectation that no size-7 two-families
instance exists; the exhaustive oracle refutes that expectation, so the
criterion stays red by design (the analysis lives in the build notes).
The engine clauses of criterion 6 are asserted separately and pass.
"""

import subprocess
import sys
import time

import pytest

from uniquesums.acceptance import run_acceptance
from uniquesums.config import DEFAULT


@pytest.fixture(scope="module")
def report():
    return run_acceptance(DEFAULT, quick=False)


def criterion(report, cid):
    crit = next(c for c in report["criteria"] if c["id"] == cid)
    tag = "PASS" if crit["passed"] else "FAIL"
    print(f"[{tag}] criterion {cid}: {crit['name']}")
    return crit


def test_criterion_1_exact_table(report):
    crit = criterion(report, 1)
    rows = {r["p"]: r for r in crit["details"]["rows"]}
    assert set(rows) == {2, 3, 5, 7, 11, 13}
    assert rows[5]["m"] == 4 and rows[5]["m_witness"] == [0, 1, 2, 3]
    for p in (3, 5, 7):
        assert rows[p]["naive_b"] == rows[p]["b"]
        assert rows[p]["naive_m"] == rows[p]["m"]
    assert crit["passed"], crit["details"]["failures"]


def test_criterion_1_time_budget():
    # the exhaustive table for p in {2,...,13} must finish well under 60 s
    from uniquesums import make_group, smallest_balanced, smallest_no_unique_sum

    start = time.monotonic()
    for p in (2, 3, 5, 7, 11, 13):
        g = make_group([p])
        smallest_balanced(g)
        smallest_no_unique_sum(g)
    assert time.monotonic() - start < 60


def test_criterion_2_bound_consistency(report):
    crit = criterion(report, 2)
    assert crit["passed"], crit["details"]["failures"]


def test_criterion_3_constructions(report):
    crit = criterion(report, 3)
    rows = {r["p"]: r for r in crit["details"]["rows"]}
    assert set(rows) == {7, 31, 127, 8191}
    assert rows[8191]["sumset_size"] <= 378
    assert crit["passed"], crit["details"]["failures"]


def test_criterion_3_verification_time_budget():
    from uniquesums import balanced_multiplicative, has_no_unique_sum, sumset_construction

    start = time.monotonic()
    A = sumset_construction(balanced_multiplicative(8191))
    assert has_no_unique_sum(A)
    assert time.monotonic() - start < 10


def test_criterion_4_span_dimension(report):
    crit = criterion(report, 4)
    assert crit["details"]["instances"] >= 200
    assert crit["passed"], crit["details"]["failures"]


def test_criterion_5_additive_basis(report):
    crit = criterion(report, 5)
    assert crit["details"]["surveyed"] >= 200
    assert crit["details"]["irreducible"] == crit["details"]["surveyed"]
    assert crit["passed"], crit["details"]["failures"]


def test_criterion_6_engine_clauses(report):
    # every clause of criterion 6 except the refuted oracle expectation
    crit = criterion(report, 6)
    details = crit["details"]
    assert details["forced_case"] == "translate-case"
    assert details["non_failed_steps"] >= 1
    for trace in details["traces"]:
        assert trace["exit_branch"] in ("small-dimension", "log-branch", "density-branch")
        for rec in trace["records"]:
            assert rec["size_bound_ok"] and rec["coverage_bound_ok"]
            assert all(rec["checks"].values())
    oracle_failures = [f for f in details["failures"] if "size-7" in f]
    assert details["failures"] == oracle_failures


def test_criterion_6_two_families_oracle(report):
    """Faithful check of 'the oracle finds no family of size 7'.

    Red by design: a valid size-7 instance exists on 5 ground elements
    (hand-verified), so the expectation is refuted.  The bound 6 does hold
    for the singleton class the engine instantiates (maximum exactly 3).
    """
    crit = criterion(report, 6)
    assert crit["details"]["size7_family"] is None, (
        "refuted expectation: exhaustive oracle found "
        f"{crit['details']['size7_family']}"
    )


def test_criterion_7_invariance(report):
    crit = criterion(report, 7)
    assert crit["details"]["checks"] >= 1000
    assert crit["details"]["integer_models"] >= 10
    assert crit["details"]["embeddings"] >= 25
    assert crit["passed"], crit["details"]["failures"]


def test_criterion_8_in_process_determinism(report):
    crit = criterion(report, 8)
    assert crit["passed"], crit["details"]["failures"]


def test_criterion_8_byte_identical_cli():
    cmd = [
        sys.executable, "-m", "uniquesums.cli", "verify-paper",
        "--format", "structured", "--seed", "0",
    ]
    one = subprocess.run(cmd + ["--threads", "1"], capture_output=True)
    eight = subprocess.run(cmd + ["--threads", "8"], capture_output=True)
    # the full suite carries the known-red criterion, hence exit code 1
    assert one.returncode == eight.returncode == 1
    assert one.stdout == eight.stdout
    assert b'"passed"' in one.stdout
