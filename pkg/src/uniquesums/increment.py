"""Density-increment engine over translate sets.

Setting: A has no unique sum, D is a dissociated subset of A with at least
10 elements, and S is a set of translates containing 0.  One step tries to
grow S into S' (|S'| <= max(2|S|, |S|^3), still containing 0) so that D + S'
captures at least |D|^2 / (36 |A|) more elements of A than D + S did.

Pipeline of a step:
  1. representatives: s_d = representative of S_d = {s in S : d + s in A},
     chosen so sums of representatives are uniquely realized across the
     S_d (see ``subset_representatives``); 0 lies in every S_d.
  2. bad elements: d in D reachable from another element of D by a non-zero
     shift in 2S - 2S.  At most 6 |S|^4 of them, because two coincidences
     with the same shift would split D into distinct equal-sum subsets.
  3. bad pairs over the good elements: pairs {d, d'} whose anchored sum
     d + s_d + d' + s_d' has an alternative decomposition e + s + e' + s'
     with {e, e'} != {d, d'}.  Also at most 6 |S|^4.
  4. good pairs: the rest.  Their anchored sums are uniquely represented
     inside (D + S) n A, so a set with no unique sum must re-represent them
     through a witness x outside D + S; x and y are chosen canonically.
  5. rich targets: the x-witnesses collecting at least |D|^2/(6|A|) good
     pairs; at least |D|^2/(6|A|) many exist by averaging.  Focused targets
     additionally have a single d(a) lying in a third of their pairs; at
     least half the rich targets are focused.
  6. case split: if some focused target has half its y-witnesses outside
     D + S, translating S by t = d(a) + s_{d(a)} - a captures them
     (translate case, S' = S u (S+t)); otherwise every focused target a
     matches some y-witness back into d_i(a) + S and lands in D + 2S - S
     (final case, S' = 2S - S).

The size precondition |S| <= min(log2 p(G), (|D|^6 / (C |A|^5))^(1/4)) with
C = 2^11 * 6 is what the supporting counting needs.  Note that it is
vacuous-proof at small scale: with |S| = 1 it already forces |A| >= C while
A may not be dissociated itself, so honest desk-size instances exit
immediately with a precondition-failed outcome -- that exit, not the grown
S', is the signal the surrounding iteration consumes.  ``force=True`` runs
the pipeline anyway and records which of the counting facts survive, which
is how the machinery itself is exercised in tests.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import ceil
from typing import Optional

from .config import DEFAULT, RunConfig
from .construct import subset_representatives
from .errors import PreconditionError
from .groups import Elem, GSet, has_no_unique_sum, sumset, translate
from .span import additive_dimension, is_dissociated

TWO_FAMILIES_BOUND = 6
SIZE_CONSTANT = (1 << 11) * TWO_FAMILIES_BOUND

Pair = frozenset


def two_families_bound(P_list: list[frozenset], Q_list: list[frozenset]) -> bool:
    """Check an instance of the two-families statement for sets of size <= 2.

    Requires 1 <= |P_i|, |Q_i| <= 2 and P_i disjoint from Q_i.  Returns
    True iff the cross condition (every i != j has P_i meeting Q_j or P_j
    meeting Q_i) holds and k <= 6.  Non-emptiness is part of the contract:
    allowing an empty set admits families of size 7, so the bound 6 is
    specific to the non-empty case (the only one ever instantiated here).
    """
    if len(P_list) != len(Q_list):
        raise PreconditionError("families must pair up")
    for P, Q in zip(P_list, Q_list):
        if not 1 <= len(P) <= 2 or not 1 <= len(Q) <= 2:
            raise PreconditionError("two-families sets must have size 1 or 2")
        if P & Q:
            raise PreconditionError("P_i and Q_i must be disjoint")
    k = len(P_list)
    for i in range(k):
        for j in range(i + 1, k):
            if not (P_list[i] & Q_list[j]) and not (P_list[j] & Q_list[i]):
                return False
    return k <= TWO_FAMILIES_BOUND


def two_families_search(
    target: int,
    ground: int = 8,
    p_sizes: tuple[int, ...] = (1, 2),
    q_sizes: tuple[int, ...] = (1, 2),
    allow_empty: bool = False,
) -> Optional[list[tuple[frozenset, frozenset]]]:
    """Exhaustively search for a valid two-families instance of size ``target``.

    Ground set {0..ground-1}; vertices are all (P, Q) with |P| in p_sizes,
    |Q| in q_sizes (plus the empty set with ``allow_empty``) and P disjoint
    from Q, compatibility is the pairwise cross condition, and the search
    is a deterministic branch-and-bound for a clique of the requested size.
    Returns one instance or None if none exists.

    Notable exact answers this search settles: singleton families
    (p_sizes=q_sizes=(1,)) max out at 3 on any ground (a size-4 family
    would fit in 8 elements); mixed families of sizes 1..2 reach 7 already
    on 5 elements, and pair-pair families reach 9 on 6 elements, so no
    single-digit constant bounds the general class as tightly as the
    singleton one.
    """
    by_size = {
        1: [frozenset({i}) for i in range(ground)],
        2: [frozenset(c) for c in combinations(range(ground), 2)],
    }
    p_pool = [s for k in p_sizes for s in by_size[k]]
    q_pool = [s for k in q_sizes for s in by_size[k]]
    if allow_empty:
        p_pool = [frozenset()] + p_pool
        q_pool = [frozenset()] + q_pool
    verts = [(P, Q) for P in p_pool for Q in q_pool if not (P & Q)]
    nv = len(verts)
    adj = [0] * nv
    for i in range(nv):
        Pi, Qi = verts[i]
        for j in range(i + 1, nv):
            Pj, Qj = verts[j]
            if (Pi & Qj) or (Pj & Qi):
                adj[i] |= 1 << j
                adj[j] |= 1 << i

    def extend(clique: list[int], cand: int) -> Optional[list[int]]:
        if len(clique) == target:
            return clique
        if len(clique) + cand.bit_count() < target:
            return None
        while cand:
            v = (cand & -cand).bit_length() - 1
            cand &= cand - 1
            got = extend(clique + [v], cand & adj[v])
            if got is not None:
                return got
        return None

    got = extend([], (1 << nv) - 1)
    if got is None:
        return None
    return [verts[i] for i in got]


# ---------------------------------------------------------------------------
# pipeline pieces
# ---------------------------------------------------------------------------


def bad_elements(D: GSet, S: GSet) -> GSet:
    """Elements of D moved back into D by some non-zero shift in 2S - 2S."""
    grp = D.group
    twoS = sumset(S, S)
    shifts = {
        grp.sub(x, y) for x in twoS for y in twoS
    } - {grp.zero}
    members = D.as_set()
    return D.with_elements(
        d for d in D if any(grp.add(d, v) in members for v in shifts)
    )


def classify_pairs(
    A: GSet,
    D: GSet,
    S: GSet,
    reps: dict[Elem, Elem],
    check_unique: bool = True,
) -> tuple[frozenset[Pair], frozenset[Pair]]:
    """Split pairs of good elements into bad pairs and good pairs.

    A pair {d, d'} is bad when d + s_d + d' + s_d' also decomposes as
    e + s + e' + s' with e, e' in D, s, s' in S and {e, e'} != {d, d'}.
    Good pairs are checked to have their anchored sum uniquely represented
    inside (D + S) n A.
    """
    grp = A.group
    good_elems = [d for d in D if d not in bad_elements(D, S).as_set()]
    dvals = list(D.elements)
    svals = list(S.elements)
    bad: set[Pair] = set()
    good: set[Pair] = set()
    for d, dp in combinations(good_elems, 2):
        sigma = grp.add(grp.add(d, reps[d]), grp.add(dp, reps[dp]))
        target_pair = frozenset({d, dp}) if d != dp else frozenset({d})
        is_bad = False
        for e in dvals:
            for s in svals:
                rem = grp.sub(sigma, grp.add(e, s))
                # rem must be e' + s' for some e' in D, s' in S
                for sp in svals:
                    ep = grp.sub(rem, sp)
                    if ep in D.as_set():
                        if frozenset({e, ep}) != target_pair:
                            is_bad = True
                            break
                if is_bad:
                    break
            if is_bad:
                break
        if is_bad:
            bad.add(frozenset({d, dp}))
        else:
            good.add(frozenset({d, dp}))
    if check_unique:
        ds_in_a = _covered(A, D, S)
        for pair in good:
            d, dp = sorted(pair)
            sigma = grp.add(grp.add(d, reps[d]), grp.add(dp, reps[dp]))
            trivial = frozenset({grp.add(d, reps[d]), grp.add(dp, reps[dp])})
            for x in ds_in_a:
                y = grp.sub(sigma, x)
                if y in ds_in_a and frozenset({x, y}) != trivial:
                    raise PreconditionError(
                        f"good pair {sorted(pair)} is not uniquely represented in (D+S) n A"
                    )
    return frozenset(bad), frozenset(good)


def _covered(A: GSet, D: GSet, S: GSet) -> frozenset[Elem]:
    """(D + S) n A."""
    return sumset(D, S).as_set() & A.as_set()


@dataclass(frozen=True)
class IncrementState:
    """Everything the pipeline derived before choosing a case."""

    A: GSet
    D: GSet
    S: GSet
    coverage: int
    representatives: dict[Elem, Elem] = field(hash=False)
    bad: GSet = None
    bad_pairs: frozenset[Pair] = field(default=frozenset(), hash=False)
    good_pairs: frozenset[Pair] = field(default=frozenset(), hash=False)
    pair_sources: dict[Elem, frozenset[Pair]] = field(default=None, hash=False)
    rich_targets: tuple[Elem, ...] = ()
    focused_targets: tuple[Elem, ...] = ()
    focus_elements: dict[Elem, Elem] = field(default=None, hash=False)


@dataclass(frozen=True)
class IncrementOutcome:
    """Result of one increment step."""

    S_prime: Optional[GSet]
    case_tag: str  # "translate-case" | "final-case" | "precondition-failed"
    gain: int
    guaranteed_gain: int
    failed_reason: Optional[str]
    checks: dict[str, bool] = field(hash=False)
    state: Optional[IncrementState] = field(default=None, hash=False)


def _size_precondition(A: GSet, D: GSet, S: GSet) -> Optional[tuple[str, str]]:
    """(branch, message) for the first violated step hypothesis, or None."""
    grp = A.group
    if not D.as_set() <= A.as_set():
        return "input", "D is not a subset of A"
    if not is_dissociated(D):
        return "input", "D is not dissociated"
    if len(D) < 10:
        return "small-dimension", f"|D| = {len(D)} < 10"
    if grp.zero not in S.as_set():
        return "input", "0 is not in S"
    p = grp.smallest_prime
    if 2 ** len(S) > p:
        return "log-branch", f"|S| = {len(S)} exceeds log2 p(G) = log2 {p}"
    lhs = len(S) ** 4 * SIZE_CONSTANT * len(A) ** 5
    if lhs > len(D) ** 6:
        return (
            "density-branch",
            f"|S|^4 = {len(S) ** 4} exceeds |D|^6 / (C |A|^5) "
            f"= {len(D) ** 6} / ({SIZE_CONSTANT} * {len(A) ** 5})",
        )
    return None


def increment_step(
    A: GSet,
    D: GSet,
    S: GSet,
    cfg: RunConfig = DEFAULT,
    force: bool = False,
) -> IncrementOutcome:
    """One density-increment step; see the module docstring for the pipeline.

    With ``force=False`` a violated hypothesis short-circuits into a
    precondition-failed outcome naming the inequality; that is the normal
    loop-exit signal.  With ``force=True`` the pipeline runs regardless and
    every counting fact it relies on is recorded in ``checks``.
    """
    grp = A.group
    if A.is_empty() or not has_no_unique_sum(A):
        raise PreconditionError("increment_step needs a set with no unique sum")
    checks: dict[str, bool] = {}
    violated = _size_precondition(A, D, S)
    if violated is not None and not force:
        branch, message = violated
        return IncrementOutcome(
            S_prime=None,
            case_tag="precondition-failed",
            gain=0,
            guaranteed_gain=0,
            failed_reason=f"{branch}: {message}",
            checks=checks,
        )
    checks["preconditions"] = violated is None

    members = A.as_set()
    s_sets = {d: frozenset(s for s in S if grp.add(d, s) in members) for d in D}
    reps_by_subset = subset_representatives(S, subsets=set(s_sets.values()), cfg=cfg)
    reps = {d: reps_by_subset[s_sets[d]] for d in D}

    nD, nA, nS = len(D), len(A), len(S)
    bound_b = TWO_FAMILIES_BOUND * nS**4
    bad = bad_elements(D, S)
    checks["bad_elements_bound"] = len(bad) <= bound_b
    bad_pairs, good_pairs = classify_pairs(A, D, S, reps)
    checks["bad_pairs_bound"] = len(bad_pairs) <= bound_b
    checks["good_pairs_lower"] = 3 * len(good_pairs) >= nD**2

    covered = _covered(A, D, S)
    coverage = len(covered)
    ds = sumset(D, S).as_set()
    outside = sorted(e for e in A if e not in ds)

    pair_sources: dict[Elem, set[Pair]] = {}
    pair_witness: dict[Pair, tuple[Elem, Elem]] = {}
    witness_missing = 0
    for pair in sorted(good_pairs, key=sorted):
        d, dp = sorted(pair)
        sigma = grp.add(grp.add(d, reps[d]), grp.add(dp, reps[dp]))
        found = None
        for x in outside:
            y = grp.sub(sigma, x)
            if y in members:
                found = (x, y)
                break
        if found is None:
            witness_missing += 1
            continue
        pair_witness[pair] = found
        pair_sources.setdefault(found[0], set()).add(pair)
    checks["outside_witnesses_exist"] = witness_missing == 0

    rich_threshold = ceil(Fraction(nD**2, 6 * nA))
    rich = sorted(a for a, ps in pair_sources.items() if len(ps) >= rich_threshold)
    checks["rich_targets_bound"] = len(rich) >= rich_threshold

    focused: list[Elem] = []
    focus_elem: dict[Elem, Elem] = {}
    for a in rich:
        pairs = pair_sources[a]
        need = ceil(Fraction(len(pairs), 3))
        for d in D:
            if sum(1 for P in pairs if d in P) >= need:
                focused.append(a)
                focus_elem[a] = d
                break
    checks["focused_targets_bound"] = 2 * len(focused) >= len(rich)

    state = IncrementState(
        A=A,
        D=D,
        S=S,
        coverage=coverage,
        representatives=reps,
        bad=bad,
        bad_pairs=bad_pairs,
        good_pairs=frozenset(pair_witness),
        pair_sources={a: frozenset(ps) for a, ps in pair_sources.items()},
        rich_targets=tuple(rich),
        focused_targets=tuple(focused),
        focus_elements=focus_elem,
    )
    guaranteed = ceil(Fraction(nD**2, 36 * nA))

    def finish(s_prime: GSet, tag: str) -> IncrementOutcome:
        gain = len(_covered(A, D, s_prime)) - coverage
        checks["zero_in_s_prime"] = grp.zero in s_prime.as_set()
        checks["s_prime_size_bound"] = len(s_prime) <= max(2 * nS, nS**3)
        checks["gain_bound"] = gain >= guaranteed
        return IncrementOutcome(
            S_prime=s_prime,
            case_tag=tag,
            gain=gain,
            guaranteed_gain=guaranteed,
            failed_reason=None,
            checks=checks,
            state=state,
        )

    # translate case: a focused target with half its y-witnesses outside D+S
    for a in focused:
        d_a = focus_elem[a]
        through = sorted(P for P in pair_sources[a] if d_a in P)
        ys = [pair_witness[P][1] for P in through]
        out_count = sum(1 for y in ys if y not in ds)
        if 2 * out_count >= len(through):
            t = grp.sub(grp.add(d_a, reps[d_a]), a)
            s_prime = S.with_elements(list(S.elements) + [grp.add(s, t) for s in S])
            return finish(s_prime, "translate-case")

    # final case: every focused target matches a y-witness back into d_i + S
    if focused:
        all_match = True
        s_members = S.as_set()
        for a in focused:
            d_a = focus_elem[a]
            matched = False
            for P in sorted(pair_sources[a]):
                if d_a not in P:
                    continue
                others = sorted(P - {d_a}) or [d_a]
                d_i = others[0]
                y = pair_witness[P][1]
                if y in ds and grp.sub(y, d_i) in s_members:
                    matched = True
                    break
            if not matched:
                all_match = False
        checks["final_case_match"] = all_match
        if all_match:
            twoS = sumset(S, S)
            s_prime = S.with_elements(
                grp.sub(x, s) for x in twoS for s in S
            )
            return finish(s_prime, "final-case")

    return IncrementOutcome(
        S_prime=None,
        case_tag="precondition-failed",
        gain=0,
        guaranteed_gain=guaranteed,
        failed_reason="pipeline exhausted: no usable focused target",
        checks=checks,
        state=state,
    )


@dataclass(frozen=True)
class IncrementTrace:
    """Per-step records of an increment iteration, plus the exit reason."""

    A: GSet
    D: GSet
    dim: int
    records: tuple[dict, ...]
    exit_reason: str
    exit_branch: str  # "log-branch" | "density-branch" | "small-dimension" | "pipeline"

    def to_dict(self) -> dict:
        return {
            "dimension": self.dim,
            "size_A": len(self.A),
            "steps": list(self.records),
            "exit_reason": self.exit_reason,
            "exit_branch": self.exit_branch,
        }


def increment_iterate(A: GSet, cfg: RunConfig = DEFAULT, force: bool = False) -> IncrementTrace:
    """Iterate increment steps from S = {0} until a hypothesis fails.

    D is a maximum dissociated subset of A.  Each record carries the step
    index, |S_i|, the coverage |(D + S_i) n A|, the case tag and the
    per-step checks, and validates |S_i| <= 2^(3^i) together with
    coverage_i >= i |D|^2 / (36 |A|) in exact arithmetic.
    """
    if A.is_empty() or not has_no_unique_sum(A):
        raise PreconditionError("increment_iterate needs a set with no unique sum")
    grp = A.group
    dim = additive_dimension(A, cfg)
    D = dim.witness
    S = GSet.make(grp, [grp.zero])
    records: list[dict] = []
    exit_reason = ""
    exit_branch = ""
    for i in range(len(A) + 2):
        coverage = len(_covered(A, D, S)) if not D.is_empty() else 0
        outcome = increment_step(A, D, S, cfg=cfg, force=force)
        record = {
            "step": i,
            "size_S": len(S),
            "coverage": coverage,
            "case": outcome.case_tag,
            "size_bound_ok": len(S) <= 2 ** (3**i),
            "coverage_bound_ok": 36 * len(A) * coverage >= i * dim.dim**2,
            "checks": dict(outcome.checks),
        }
        records.append(record)
        if outcome.case_tag == "precondition-failed":
            exit_reason = outcome.failed_reason or "pipeline exhausted"
            exit_branch = exit_reason.split(":", 1)[0] if ":" in exit_reason else "pipeline"
            break
        S = outcome.S_prime
    else:
        exit_reason = "iteration guard exceeded"
        exit_branch = "pipeline"
    return IncrementTrace(
        A=A,
        D=D,
        dim=dim.dim,
        records=tuple(records),
        exit_reason=exit_reason,
        exit_branch=exit_branch,
    )
