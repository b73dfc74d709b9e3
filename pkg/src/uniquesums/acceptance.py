"""Self-verification suite behind ``uniquesums verify-paper``.

Eight criteria, each returning a pass/fail result with details:

  1. exact-table        b/m values for small primes by exhaustive search,
                        cross-derived by an independent naive oracle
  2. bound-consistency  the size inequalities every table row must satisfy
  3. constructions      multiplicative balanced sets and their sumsets have
                        the promised predicates and sizes
  4. span-dimension     randomized span/dimension bound suite plus support
                        compression postconditions
  5. additive-basis     every minimum-size balanced set found in a family of
                        groups of order <= 40 passes the basis-translate and
                        weight-compression checks; the reducible
                        counterexample fails for every candidate translate
  6. increment-engine   honest runs exit with the documented precondition
                        signal; a forced pipeline on a synthetic instance
                        completes a translate case; the two-families oracle
                        finds a size-6 instance and no size-7 instance
  7. invariance         seeded translation/dilation/isomorphism invariance
                        checks, including verified integer models and
                        coordinate embeddings
  8. determinism        identical results across thread counts (the
                        byte-level CLI comparison lives in the test suite)

The naive oracles in this module deliberately re-implement the predicates
from their definitions with no shared code, no pruning and no symmetry
reduction, so agreement is meaningful evidence.

No timings, thread counts or environment data appear in the report: a
report for a given (seed, quick) pair is byte-identical across runs and
thread counts.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, replace
from itertools import combinations
from typing import Optional

from .balanced import (
    is_irreducible,
    midpoint_graph,
    reachability_check,
    verify_additive_basis,
    weight_compress,
)
from .config import DEFAULT, RunConfig
from .construct import (
    balanced_multiplicative,
    freiman_embed,
    rectify,
    sumset_construction,
)
from .enumeration import balanced_predicate
from .fileio import schema
from .groups import (
    GMultiset,
    GSet,
    dilate,
    has_no_unique_sum,
    is_balanced,
    make_group,
    negate,
    subgroup_generated,
    sum_table,
    translate,
)
from .increment import (
    increment_iterate,
    increment_step,
    two_families_bound,
    two_families_search,
)
from .search import (
    all_of_size,
    smallest_balanced,
    smallest_no_unique_sum,
    verify_certificate,
)
from .span import (
    additive_span,
    is_dissociated,
    span_bounds_report,
    subset_representation,
    support_compress,
)


@dataclass
class CriterionResult:
    cid: int
    name: str
    passed: bool
    details: dict

    def to_dict(self) -> dict:
        return {
            "id": self.cid,
            "name": self.name,
            "passed": self.passed,
            "details": self.details,
        }


# ---------------------------------------------------------------------------
# naive oracles: definition-direct, no pruning, no symmetry
# ---------------------------------------------------------------------------


def naive_has_no_unique_sum(p: int, A: tuple[int, ...]) -> bool:
    reps: dict[int, set[tuple[int, int]]] = {}
    for a in A:
        for b in A:
            if a <= b:
                reps.setdefault((a + b) % p, set()).add((a, b))
    return all(len(v) >= 2 for v in reps.values())


def naive_is_balanced(p: int, B: tuple[int, ...]) -> bool:
    for b in B:
        if not any(
            b1 != b2 and (b1 + b2) % p == 2 * b % p for b1 in B for b2 in B
        ):
            return False
    return True


def naive_minimum(p: int, pred) -> tuple[Optional[int], Optional[tuple[int, ...]]]:
    """Smallest non-empty subset of Z/pZ satisfying pred; full powerset scan."""
    for size in range(1, p + 1):
        for cand in combinations(range(p), size):
            if pred(p, cand):
                return size, cand
    return None, None


# ---------------------------------------------------------------------------
# criteria
# ---------------------------------------------------------------------------


def _criterion_exact_table(cfg: RunConfig, quick: bool) -> CriterionResult:
    primes = [2, 3, 5, 7] if quick else [2, 3, 5, 7, 11, 13]
    naive_up_to = 5 if quick else 7
    rows = []
    failures = []
    for p in primes:
        group = make_group([p])
        b_cert = smallest_balanced(group, cfg=cfg)
        m_cert = smallest_no_unique_sum(group, cfg=cfg)
        row = {
            "p": p,
            "b": None if b_cert is None else b_cert.value,
            "m": None if m_cert is None else m_cert.value,
            "m_witness": None
            if m_cert is None
            else [e[0] for e in m_cert.witness],
        }
        for cert in (b_cert, m_cert):
            if cert is not None and not verify_certificate(cert):
                failures.append(f"certificate for p={p} failed re-verification")
        if p <= naive_up_to:
            nb, _ = naive_minimum(p, naive_is_balanced)
            nm, _ = naive_minimum(p, naive_has_no_unique_sum)
            row["naive_b"] = nb
            row["naive_m"] = nm
            if nb != row["b"] or nm != row["m"]:
                failures.append(f"naive oracle disagrees at p={p}: {row}")
        rows.append(row)
    by_p = {r["p"]: r for r in rows}
    if 5 in by_p:
        if by_p[5]["m"] != 4 or by_p[5]["m_witness"] != [0, 1, 2, 3]:
            failures.append(f"m(5) row is {by_p[5]}, expected value 4, witness [0,1,2,3]")
    return CriterionResult(
        1,
        "exact-table",
        not failures,
        {"rows": rows, "failures": failures},
    )


def _criterion_bounds(cfg: RunConfig, quick: bool, table: CriterionResult) -> CriterionResult:
    failures = []
    for row in table.details["rows"]:
        p, b, m = row["p"], row["b"], row["m"]
        if b is not None and not 2 ** (b - 1) >= p:
            failures.append(f"b({p}) = {b} is below log2 p + 1")
        if b is not None and m is not None and m < b:
            failures.append(f"m({p}) = {m} below b({p}) = {b}")
        if (b is None) != (m is None):
            failures.append(f"p={p}: exactly one of b, m missing: {row}")
    return CriterionResult(2, "bound-consistency", not failures, {"failures": failures})


def _criterion_constructions(cfg: RunConfig, quick: bool) -> CriterionResult:
    primes = [7, 31] if quick else [7, 31, 127, 8191]
    rows = []
    failures = []
    for p in primes:
        B = balanced_multiplicative(p)
        if not is_balanced(B):
            failures.append(f"multiplicative set for p={p} is not balanced")
        A = sumset_construction(B)  # re-checks no-unique-sum by full table
        if not has_no_unique_sum(A):
            failures.append(f"sumset for p={p} has a unique sum")
        bound = len(B) * (len(B) + 1) // 2
        if len(A) > bound:
            failures.append(f"sumset for p={p} exceeds its size bound")
        rows.append({"p": p, "balanced_size": len(B), "sumset_size": len(A)})
    by_p = {r["p"]: r for r in rows}
    if 8191 in by_p and by_p[8191]["sumset_size"] > 378:
        failures.append("p=8191 sumset exceeds 378 elements")
    return CriterionResult(3, "constructions", not failures, {"rows": rows, "failures": failures})


_SPAN_SHAPES = [(13,), (7,), (4, 4), (2, 3, 5), (16,), (3, 9), (23,)]


def _random_multiset(rng: random.Random, shape: tuple[int, ...]) -> GMultiset:
    group = make_group(shape)
    max_support = min(10, group.order - 1)
    support_size = rng.randint(1, max_support)
    pool = [group.unindex(i) for i in range(1, group.order)]
    support = rng.sample(pool, support_size)
    counts = {e: rng.randint(1, 3) for e in support}
    return GMultiset.make(group, counts)


def _criterion_span_dimension(cfg: RunConfig, quick: bool) -> CriterionResult:
    instances = 40 if quick else 200
    rng = random.Random(cfg.seed * 1_000_003 + 4)
    failures = []
    checked = 0
    compressions = 0
    for i in range(instances):
        shape = _SPAN_SHAPES[i % len(_SPAN_SHAPES)]
        Z = _random_multiset(rng, shape)
        report = span_bounds_report(Z, cfg)
        checked += 1
        if not report.ok:
            failures.append(f"bound violation on instance {i} in {shape}: {report}")
            continue
        # compress a random span element and check the postconditions
        span = additive_span(Z, cfg)
        y = span.elements[rng.randrange(len(span))]
        initial = subset_representation(Z, y)
        out = support_compress(Z, y, initial, cfg)
        compressions += 1
        support = out.support_elements()
        if len(set(support)) != len(support) or not is_dissociated(
            GSet.make(Z.group, set(support)), cfg
        ):
            failures.append(f"compressed support not dissociated on instance {i}")
        if out.total() > initial.weight_budget:
            failures.append(f"compression exceeded its budget on instance {i}")
    return CriterionResult(
        4,
        "span-dimension",
        not failures and checked >= instances,
        {"instances": checked, "compressions": compressions, "failures": failures},
    )


_BASIS_GROUPS_FULL = [
    (5,), (7,), (11,), (13,), (17,), (19,), (23,),
    (3, 3), (2, 2, 2), (3, 5), (4, 4), (2, 9), (3, 7), (5, 5),
    (2, 2, 5), (27,), (3, 9), (2, 13), (3, 11), (5, 7), (6, 6), (2, 4, 5),
]
_BASIS_GROUPS_QUICK = [(5,), (7,), (13,), (3, 3), (3, 5), (3, 7)]


def _criterion_additive_basis(cfg: RunConfig, quick: bool) -> CriterionResult:
    shapes = _BASIS_GROUPS_QUICK if quick else _BASIS_GROUPS_FULL
    failures = []
    surveyed = 0
    irreducible_count = 0
    rows = []
    for shape in shapes:
        group = make_group(shape)
        cert = smallest_balanced(group, cfg=cfg)
        if cert is None:
            rows.append({"group": list(shape), "b": None, "sets": 0})
            continue
        sets = all_of_size(group, cert.value, balanced_predicate, cfg)
        rows.append({"group": list(shape), "b": cert.value, "sets": len(sets)})
        for B in sets:
            surveyed += 1
            if not is_irreducible(B, cfg):
                continue
            irreducible_count += 1
            graph = midpoint_graph(B)
            if not reachability_check(graph):
                failures.append(f"core unreachable in {shape}: {B.elements}")
                continue
            result = verify_additive_basis(B, cfg)
            core_negatives = negate(graph.core).as_set()
            if not result.ok or result.g not in core_negatives:
                failures.append(
                    f"no basis translate from the core for {B.elements} in {shape}"
                )
                continue
            anchor = graph.core.elements[0]
            g = group.neg(anchor)
            subgroup = subgroup_generated(B, g)
            for y in subgroup:
                rep = weight_compress(B, y, graph=graph, cfg=cfg)
                if any(
                    k not in (0, 1)
                    for b, k in rep.coeffs.items()
                    if b != rep.anchor
                ):
                    failures.append(f"coefficients not 0/1 for y={y} over {B.elements}")
                    break
    # the reducible counterexample: no candidate translate gives a basis
    for p in (5, 7):
        group = make_group([3, p])
        B = GSet.make(group, [(x, c) for x in range(3) for c in (0, 1)])
        if not is_balanced(B):
            failures.append(f"columns set in (3,{p}) is not balanced")
        if is_irreducible(B, cfg):
            failures.append(f"columns set in (3,{p}) claims irreducibility")
        result = verify_additive_basis(B, cfg)
        if result.ok or result.successes:
            failures.append(f"columns set in (3,{p}) found a basis translate: {result}")
    return CriterionResult(
        5,
        "additive-basis",
        not failures,
        {
            "rows": rows,
            "surveyed": surveyed,
            "irreducible": irreducible_count,
            "failures": failures,
        },
    )


def _synthetic_forced_instance() -> tuple[GSet, GSet, GSet]:
    """A no-unique-sum set with a 10-element dissociated subset.

    Z/1031Z minus {0} has every sum represented hundreds of times; the
    powers of two up to 512 have all subset sums distinct below the
    modulus, hence are dissociated.
    """
    group = make_group([1031])
    A = GSet.make(group, [(x,) for x in range(1, 1031)])
    D = GSet.make(group, [(1 << i,) for i in range(10)])
    S = GSet.make(group, [(0,)])
    return A, D, S


def _criterion_increment(cfg: RunConfig, quick: bool) -> CriterionResult:
    failures = []
    details: dict = {}
    wide = cfg if cfg.dimension_cap >= 36 else replace(cfg, dimension_cap=36)

    # honest runs on constructed instances: exit via the documented signal
    from .construct import balanced_search, grid_construction

    B5 = balanced_search(5, 5, cfg)
    grid = grid_construction(B5)
    B31 = balanced_multiplicative(31)
    sums31 = sumset_construction(B31)
    traces = []
    non_failed_steps = 0
    for name, A in (("grid-5", grid), ("sumset-31", sums31)):
        trace = increment_iterate(A, cfg=wide)
        traces.append(
            {
                "instance": name,
                "dim": trace.dim,
                "steps": len(trace.records),
                "exit_branch": trace.exit_branch,
                "records": list(trace.records),
            }
        )
        for rec in trace.records:
            if not rec["size_bound_ok"] or not rec["coverage_bound_ok"]:
                failures.append(f"per-step bound failed in {name}: {rec}")
            if rec["case"] != "precondition-failed":
                non_failed_steps += 1
            for check, ok in rec["checks"].items():
                if not ok:
                    failures.append(f"lemma check {check} failed in {name}")
        if trace.exit_branch not in ("small-dimension", "log-branch", "density-branch"):
            failures.append(f"{name} exited via {trace.exit_branch}: {trace.exit_reason}")
    details["traces"] = traces

    # forced diagnostic run: the pipeline completes a translate case and the
    # grown translate set satisfies every step postcondition
    A, D, S = _synthetic_forced_instance()
    outcome = increment_step(A, D, S, cfg=cfg, force=True)
    details["forced_case"] = outcome.case_tag
    details["forced_gain"] = outcome.gain
    if outcome.case_tag == "precondition-failed":
        failures.append(f"forced pipeline did not complete: {outcome.failed_reason}")
    else:
        non_failed_steps += 1
        if A.group.zero not in outcome.S_prime.as_set():
            failures.append("0 missing from grown translate set")
        if len(outcome.S_prime) > max(2 * len(S), len(S) ** 3):
            failures.append("grown translate set too large")
        if outcome.gain < outcome.guaranteed_gain:
            failures.append(
                f"gain {outcome.gain} below guarantee {outcome.guaranteed_gain}"
            )
        for check, ok in outcome.checks.items():
            if check != "preconditions" and not ok:
                failures.append(f"forced-run check {check} failed")
    details["non_failed_steps"] = non_failed_steps

    # two-families oracle
    six = two_families_search(6)
    if six is None:
        failures.append("no two-families instance of size 6 found")
    else:
        if not two_families_bound([p for p, _ in six], [q for _, q in six]):
            failures.append("size-6 instance rejected by the bound check")
    singletons = two_families_search(4, p_sizes=(1,), q_sizes=(1,))
    if singletons is not None:
        failures.append(f"singleton families exceed 3: {singletons}")
    if not quick:
        # Faithful check of the stated expectation that no size-7 family
        # exists on <= 8 ground elements.  The oracle refutes it: mixed
        # sizes admit k = 7 (even on 5 elements), so this clause fails and
        # stays red; the engine itself only ever instantiates the singleton
        # class (max 3) and pair classes at desk scale.
        seven = two_families_search(7)
        details["size7_family"] = None if seven is None else [
            [sorted(p), sorted(q)] for p, q in seven
        ]
        if seven is not None:
            failures.append(
                "refuted expectation: the exhaustive oracle found a valid "
                "size-7 two-families instance (details.size7_family); the "
                "general size<=2 bound is larger than 6"
            )
    return CriterionResult(6, "increment-engine", not failures, {**details, "failures": failures})


_INVARIANCE_SHAPES = [(11,), (13,), (2, 8), (3, 5), (17,), (2, 2, 3), (9,), (4, 4)]


def _unordered_profile(A: GSet) -> tuple[int, ...]:
    return tuple(sorted(sum_table(A).unordered.values()))


def _criterion_invariance(cfg: RunConfig, quick: bool) -> CriterionResult:
    target = 120 if quick else 1000
    rng = random.Random(cfg.seed * 7_777_777 + 7)
    checks = 0
    failures = []
    embeds = 0
    models = 0
    while checks < target:
        shape = _INVARIANCE_SHAPES[rng.randrange(len(_INVARIANCE_SHAPES))]
        group = make_group(shape)
        size = rng.randint(1, min(8, group.order))
        pool = [group.unindex(i) for i in range(group.order)]
        A = GSet.make(group, rng.sample(pool, size))
        nus = has_no_unique_sum(A)
        bal = is_balanced(A)
        profile = _unordered_profile(A)
        g = pool[rng.randrange(len(pool))]
        T = translate(A, g)
        if has_no_unique_sum(T) != nus or is_balanced(T) != bal:
            failures.append(f"translation broke a predicate: {shape} {A.elements} + {g}")
        if _unordered_profile(T) != profile:
            failures.append(f"translation changed the representation profile: {A.elements}")
        checks += 2
        units = [u for u in range(1, group.order) if _coprime(u, group.order)]
        u = units[rng.randrange(len(units))]
        Dl = dilate(A, u)
        if has_no_unique_sum(Dl) != nus or is_balanced(Dl) != bal:
            failures.append(f"dilation broke a predicate: {shape} {A.elements} * {u}")
        if _unordered_profile(Dl) != profile:
            failures.append(f"dilation changed the representation profile: {A.elements}")
        checks += 2

        # verified integer models: the image is a genuine integer set, so
        # the original must have a unique sum and must not be balanced
        if len(shape) == 1 and shape[0] in (11, 13, 17):
            p = shape[0]
            small = GSet.make(group, rng.sample(pool, rng.randint(1, 3)))
            model = rectify(small)
            if model is not None:
                models += 1
                big = make_group([4 * p])
                lifted = GSet.make(big, [(v,) for v in model.integer_image])
                if has_no_unique_sum(small) != has_no_unique_sum(lifted):
                    failures.append(f"integer model broke the unique-sum predicate: {small.elements}")
                if is_balanced(small) != is_balanced(lifted):
                    failures.append(f"integer model broke balancedness: {small.elements}")
                if _unordered_profile(small) != _unordered_profile(lifted):
                    failures.append(f"integer model changed the profile: {small.elements}")
                checks += 3

        # verified coordinate embeddings: small sets in (Z/pZ)^2 with p
        # large enough that A + A fits injectively into a line
        if rng.random() < 0.5:
            p = (29, 31)[rng.randrange(2)]
            square = make_group([p, p])
            spool = [square.unindex(i) for i in range(1, square.order)]
            P = GSet.make(square, rng.sample(spool, rng.randint(2, 4)))
            emb = freiman_embed(P)
            if emb is not None:
                embeds += 1
                if has_no_unique_sum(P) != has_no_unique_sum(emb.image):
                    failures.append(f"embedding broke the unique-sum predicate: {P.elements}")
                if is_balanced(P) != is_balanced(emb.image):
                    failures.append(f"embedding broke balancedness: {P.elements}")
                if _unordered_profile(P) != _unordered_profile(emb.image):
                    failures.append(f"embedding changed the profile: {P.elements}")
                checks += 3
    floor_models = 2 if quick else 10
    floor_embeds = 3 if quick else 25
    if models < floor_models:
        failures.append(f"too few verified integer models exercised: {models}")
    if embeds < floor_embeds:
        failures.append(f"too few verified embeddings exercised: {embeds}")
    return CriterionResult(
        7,
        "invariance",
        not failures,
        {"checks": checks, "integer_models": models, "embeddings": embeds, "failures": failures},
    )


def _coprime(a: int, n: int) -> bool:
    from math import gcd

    return gcd(a, n) == 1


def _criterion_determinism(cfg: RunConfig, quick: bool) -> CriterionResult:
    """Same results across thread counts, in-process.

    The byte-identical CLI comparison across --threads 1 and 8 lives in the
    test suite; here the underlying searches and tables are compared
    directly.
    """
    failures = []
    group = make_group([11])
    single = smallest_no_unique_sum(group, cfg=cfg.with_threads(1))
    multi = smallest_no_unique_sum(group, cfg=cfg.with_threads(8))
    if single.to_dict() != multi.to_dict():
        failures.append("search certificates differ across thread counts")
    B = balanced_multiplicative(31)
    A = sumset_construction(B)
    if sum_table(A, threads=1).ordered != sum_table(A, threads=8).ordered:
        failures.append("sum tables differ across thread counts")
    return CriterionResult(8, "determinism", not failures, {"failures": failures})


def run_acceptance(cfg: RunConfig = DEFAULT, quick: bool = False) -> dict:
    """Run all criteria and assemble the structured report."""
    table = _criterion_exact_table(cfg, quick)
    results = [
        table,
        _criterion_bounds(cfg, quick, table),
        _criterion_constructions(cfg, quick),
        _criterion_span_dimension(cfg, quick),
        _criterion_additive_basis(cfg, quick),
        _criterion_increment(cfg, quick),
        _criterion_invariance(cfg, quick),
        _criterion_determinism(cfg, quick),
    ]
    return {
        "schema": schema("acceptance"),
        "seed": cfg.seed,
        "quick": quick,
        "criteria": [r.to_dict() for r in results],
        "passed": all(r.passed for r in results),
    }


def format_report(report: dict) -> str:
    lines = []
    for crit in report["criteria"]:
        tag = "PASS" if crit["passed"] else "FAIL"
        lines.append(f"[{tag}] {crit['id']}. {crit['name']}")
        if not crit["passed"]:
            for f in crit["details"].get("failures", [])[:20]:
                lines.append(f"       - {f}")
    lines.append("overall: " + ("PASS" if report["passed"] else "FAIL"))
    return "\n".join(lines)
