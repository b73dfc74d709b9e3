"""Balanced-set structure: cores, minimality, irreducibility, and the
weight-compression argument that a translate of an irreducible balanced set
is an additive basis of the subgroup it generates.

A balanced set B gives every element b a witness pair b1 != b2 with
2b = b1 + b2.  Fixing one witness pair per element yields a directed graph
on B with out-degree exactly 2 (the "midpoint graph").  Witness pairs for
elements of a minimal balanced subset B' are chosen inside B', which makes
every vertex of the graph reach every vertex of B' whenever B is
irreducible (contains no two disjoint non-empty balanced subsets).

That reachability powers ``weight_compress``: translate by g = -g' for an
anchor g' in B', weight each vertex 2^(-s(b)) by its graph distance s(b)
to the anchor, and rewrite any representation of y over {b + g} by
replacing two copies of b with one copy of each witness.  The rewrite
keeps the coefficient sum, strictly increases total weight, and therefore
terminates with all coefficients 0/1 away from the anchor - where the
anchor contributes g' + g = 0, so y lands in the additive span of B + g.

Empty sets are vacuously balanced; every subset search below means
non-empty balanced subsets.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .config import DEFAULT, RunConfig
from .errors import NotInSubgroupError, PreconditionError, SizeLimitError
from .groups import (
    Elem,
    GSet,
    balanced_failure,
    is_balanced,
    negate,
    subgroup_generated,
    translate,
)
from .span import additive_span


def _witness_pairs(B: GSet, b: Elem, inside: Optional[frozenset[Elem]] = None) -> list[tuple[Elem, Elem]]:
    """All pairs (x, y), x < y, x + y = 2b, drawn from B (or a subset)."""
    grp = B.group
    members = inside if inside is not None else B.as_set()
    target = grp.double(b)
    out = []
    for x in sorted(members):
        y = grp.sub(target, x)
        if x < y and y in members:
            out.append((x, y))
    return out


def balanced_core(B: GSet) -> GSet:
    """The unique largest balanced subset of B, possibly empty.

    Repeatedly deletes every element whose witness pairs have left the
    current set; the fixed point is the union of all balanced subsets.
    """
    grp = B.group
    current = set(B.elements)
    while True:
        doomed = []
        for b in current:
            target = grp.double(b)
            if not any(
                (y := grp.sub(target, x)) in current and y != x for x in current
            ):
                doomed.append(b)
        if not doomed:
            break
        current.difference_update(doomed)
    return B.with_elements(current)


def minimal_balanced_subset(B: GSet) -> GSet:
    """A balanced subset no proper non-empty subset of which is balanced.

    Deterministic: scans elements in canonical order, tentatively deletes
    one, and descends into the surviving core whenever it is non-empty.
    Minimality of the result is certified by every single-element deletion
    leaving an empty core.
    """
    if B.is_empty() or not is_balanced(B):
        raise PreconditionError("minimal_balanced_subset needs a non-empty balanced set")
    current = B
    progress = True
    while progress:
        progress = False
        for b in current:
            core = balanced_core(current.remove(b))
            if not core.is_empty():
                current = core
                progress = True
                break
    return current


def minimal_balanced_subsets(B: GSet, cap: int = DEFAULT.irreducible_cap) -> list[GSet]:
    """All minimal non-empty balanced subsets of B (exponential; capped)."""
    if len(B) > cap:
        raise SizeLimitError(f"minimal-subset enumeration on {len(B)} elements exceeds cap {cap}")
    memo: dict[frozenset[Elem], frozenset[frozenset[Elem]]] = {}

    def rec(S: GSet) -> frozenset[frozenset[Elem]]:
        key = S.as_set()
        hit = memo.get(key)
        if hit is not None:
            return hit
        found: set[frozenset[Elem]] = set()
        minimal = True
        for b in S:
            core = balanced_core(S.remove(b))
            if not core.is_empty():
                minimal = False
                found |= rec(core)
        result = frozenset({key}) if minimal else frozenset(found)
        memo[key] = result
        return result

    start = balanced_core(B)
    if start.is_empty():
        return []
    return [B.with_elements(s) for s in sorted(rec(start), key=sorted)]


def _balanced_size_floor(B: GSet) -> int:
    """Smallest conceivable size of a non-empty balanced subset of B's group.

    Every non-empty balanced set has at least 3 elements and more than
    log2 p(G) of them, p(G) the smallest prime dividing the group order.
    """
    p = B.group.smallest_prime
    return max(3, (p - 1).bit_length() + 1)


def is_irreducible(B: GSet, cfg: RunConfig = DEFAULT) -> bool:
    """No two disjoint non-empty balanced subsets.

    Disjoint balanced subsets exist iff disjoint minimal ones do, so the
    general case enumerates minimal balanced subsets and tests pairwise
    intersection.  Sets too small to hold two balanced subsets at all pass
    immediately by counting.
    """
    if not is_balanced(B) or B.is_empty():
        raise PreconditionError("is_irreducible needs a non-empty balanced set")
    if len(B) < 2 * _balanced_size_floor(B):
        return True
    if len(B) > cfg.irreducible_cap:
        raise SizeLimitError(
            f"irreducibility on {len(B)} elements exceeds cap {cfg.irreducible_cap}"
        )
    minimals = minimal_balanced_subsets(B, cfg.irreducible_cap)
    for i, M in enumerate(minimals):
        for N in minimals[i + 1 :]:
            if not (M.as_set() & N.as_set()):
                return False
    return True


@dataclass(frozen=True)
class MidpointGraph:
    """One witness pair per element: a directed graph with out-degree 2."""

    vertices: GSet
    edges: dict[Elem, tuple[Elem, Elem]]
    core: GSet  # minimal balanced subset whose internal edges stay inside it

    def reverse_distances(self, target: Elem) -> dict[Elem, int]:
        """Shortest directed-path length from each vertex to ``target``."""
        incoming: dict[Elem, list[Elem]] = {v: [] for v in self.vertices}
        for b, (x, y) in self.edges.items():
            incoming[x].append(b)
            incoming[y].append(b)
        dist = {target: 0}
        frontier = [target]
        while frontier:
            nxt = []
            for v in frontier:
                for u in incoming[v]:
                    if u not in dist:
                        dist[u] = dist[v] + 1
                        nxt.append(u)
            frontier = nxt
        return dist


def midpoint_graph(B: GSet) -> MidpointGraph:
    """Deterministic witness graph: lexicographically least pair per vertex,
    restricted to the minimal core for core vertices."""
    fail = balanced_failure(B)
    if fail is not None or B.is_empty():
        raise PreconditionError(f"midpoint_graph needs a balanced set (fails at {fail})")
    core = minimal_balanced_subset(B)
    core_members = core.as_set()
    edges: dict[Elem, tuple[Elem, Elem]] = {}
    for b in B:
        pool = core_members if b in core_members else None
        pairs = _witness_pairs(B, b, inside=pool)
        edges[b] = pairs[0]
    return MidpointGraph(vertices=B, edges=edges, core=core)


def reachability_check(graph: MidpointGraph) -> bool:
    """Does every vertex reach every core vertex along directed edges?"""
    vertices = set(graph.vertices)
    for target in graph.core:
        if set(graph.reverse_distances(target)) != vertices:
            return False
    return True


def graph_export(graph: MidpointGraph, anchor: Optional[Elem] = None) -> dict:
    """Adjacency listing with distances and dyadic weights toward an anchor."""
    g_prime = anchor if anchor is not None else graph.core.elements[0]
    dist = graph.reverse_distances(g_prime)
    rows = []
    for b in graph.vertices:
        x, y = graph.edges[b]
        s = dist.get(b)
        rows.append(
            {
                "vertex": list(b),
                "witnesses": [list(x), list(y)],
                "distance": s,
                "weight": None if s is None else f"1/2^{s}",
            }
        )
    return {
        "anchor": list(g_prime),
        "core": [list(e) for e in graph.core],
        "adjacency": rows,
    }


@dataclass(frozen=True)
class WeightedRepresentation:
    """A 0/1-away-from-anchor representation of y over a translated set.

    coeffs[b] counts uses of b + g where g = -anchor; every b other than
    the anchor ends with coefficient 0 or 1, and the anchor term is the
    zero element so its coefficient is free.
    """

    coeffs: dict[Elem, int]
    target: Elem
    anchor: Elem
    weights: dict[Elem, Fraction]
    rewrites: int
    total: int  # invariant coefficient sum

    def selected(self) -> tuple[Elem, ...]:
        return tuple(sorted(b for b, k in self.coeffs.items() if k and b != self.anchor))


def weight_compress(
    B: GSet,
    y: Elem,
    g_prime: Optional[Elem] = None,
    graph: Optional[MidpointGraph] = None,
    cfg: RunConfig = DEFAULT,
) -> WeightedRepresentation:
    """Express y over B + g with all non-anchor coefficients 0/1.

    The anchor g' defaults to the least element of the minimal core; g is
    its negative, so g' + g = 0.  Requires every vertex to reach the
    anchor in the midpoint graph (guaranteed for irreducible balanced B);
    a vertex that cannot reach it would never shed excess weight.
    """
    grp = B.group
    graph = graph if graph is not None else midpoint_graph(B)
    if g_prime is None:
        g_prime = graph.core.elements[0]
    else:
        g_prime = grp.reduce(g_prime)
        if g_prime not in graph.core.as_set():
            raise PreconditionError(f"anchor {g_prime} is not in the minimal core")
    dist = graph.reverse_distances(g_prime)
    if set(dist) != set(B.elements):
        missing = sorted(set(B.elements) - set(dist))[0]
        raise PreconditionError(
            f"{missing} cannot reach the anchor {g_prime}: B is not irreducible"
        )
    g = grp.neg(g_prime)
    y = grp.reduce(y)
    subgroup = subgroup_generated(B, g)
    if y not in subgroup.as_set():
        raise NotInSubgroupError(f"{y} is outside the subgroup generated by B + {g}")

    # breadth-first search over the subgroup gives a minimal-length word in
    # the generators b + g; ties broken by canonical generator order
    parent: dict[Elem, tuple[Elem, Elem]] = {grp.zero: (grp.zero, grp.zero)}
    frontier = [grp.zero]
    gens = [(b, grp.add(b, g)) for b in B.elements]
    while frontier and y not in parent:
        nxt = []
        for v in frontier:
            for b, step in gens:
                w = grp.add(v, step)
                if w not in parent:
                    parent[w] = (v, b)
                    nxt.append(w)
        frontier = nxt
    coeffs: dict[Elem, int] = {b: 0 for b in B.elements}
    cur = y
    while cur != grp.zero:
        prev, b = parent[cur]
        coeffs[b] += 1
        cur = prev

    weights = {b: Fraction(1, 2 ** dist[b]) for b in B.elements}
    total = sum(coeffs.values())
    weight = sum(coeffs[b] * weights[b] for b in B.elements)
    rewrites = 0
    while True:
        heavy = [b for b in B.elements if b != g_prime and coeffs[b] >= 2]
        if not heavy:
            break
        b = heavy[0]
        x1, x2 = graph.edges[b]
        # descend along a shortest path: one witness sits strictly closer
        if (dist[x1], x1) <= (dist[x2], x2):
            b1, b2 = x1, x2
        else:
            b1, b2 = x2, x1
        coeffs[b] -= 2
        coeffs[b1] += 1
        coeffs[b2] += 1
        rewrites += 1
        new_weight = weight - 2 * weights[b] + weights[b1] + weights[b2]
        if not new_weight > weight:
            raise PreconditionError("rewrite failed to increase total weight")
        weight = new_weight
        if sum(coeffs.values()) != total:
            raise PreconditionError("rewrite changed the coefficient sum")

    acc = grp.zero
    for b, k in coeffs.items():
        acc = grp.add(acc, grp.scale(k, grp.add(b, g)))
    if acc != y:
        raise PreconditionError("compressed coefficients no longer represent y")
    return WeightedRepresentation(
        coeffs=coeffs,
        target=y,
        anchor=g_prime,
        weights=weights,
        rewrites=rewrites,
        total=total,
    )


@dataclass(frozen=True)
class BasisResult:
    """Outcome of the additive-basis translate search."""

    g: Optional[Elem]
    ok: bool
    successes: tuple[Elem, ...]


def verify_additive_basis(B: GSet, cfg: RunConfig = DEFAULT) -> BasisResult:
    """Search g in -B for a translate whose span fills <B + g>.

    Candidates from -B' (B' the minimal core) are tried first, in canonical
    order; with B irreducible balanced the very first of them succeeds.
    All successful g are recorded.
    """
    if B.is_empty() or not is_balanced(B):
        raise PreconditionError("verify_additive_basis needs a non-empty balanced set")
    core = minimal_balanced_subset(B)
    preferred = list(negate(core).elements)
    rest = [g for g in negate(B).elements if g not in set(preferred)]
    first: Optional[Elem] = None
    successes = []
    for g in preferred + rest:
        shifted = translate(B, g)
        span = additive_span(shifted, cfg)
        subgroup = subgroup_generated(B, g)
        if len(span) == len(subgroup):
            successes.append(g)
            if first is None:
                first = g
    return BasisResult(g=first, ok=first is not None, successes=tuple(successes))
