"""Exhaustive subset enumeration over a small group, with symmetry reduction.

Predicates searched here (balanced, no unique sum) are translation
invariant, so every orbit under translation contains a set through 0 and it
suffices to scan k-subsets containing 0: a factor |G| fewer candidates.
Candidates are generated in colex order of their non-zero part and split
into blocks by largest element, so the work parts deterministically across
threads and merges back in block order.

Sets are handled as index tuples plus bitmasks over the group (indices in
canonical element order), with all arithmetic precomputed in IndexedGroup
tables.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from itertools import combinations
from math import comb
from typing import Callable, Iterable, Iterator, Optional

from .errors import SizeLimitError
from .groups import GSet, Group, IndexedGroup, indexed_group

Predicate = Callable[[IndexedGroup, tuple[int, ...], int], bool]


def balanced_predicate(ig: IndexedGroup, idxs: tuple[int, ...], mask: int) -> bool:
    """Every element's double splits into a pair of distinct members."""
    wm = ig.witness_masks
    dbl = ig.dbl
    for b in idxs:
        for m in wm[dbl[b]]:
            if mask & m == m:
                break
        else:
            return False
    return True


def no_unique_sum_predicate(ig: IndexedGroup, idxs: tuple[int, ...], mask: int) -> bool:
    """Every realized sum has at least two unordered representations."""
    add = ig.add
    cnt: dict[int, int] = {}
    n = len(idxs)
    for i in range(n):
        row = add[idxs[i]]
        for j in range(i, n):
            s = row[idxs[j]]
            cnt[s] = cnt.get(s, 0) + 1
    return all(v >= 2 for v in cnt.values())


def canonical_translate_form(ig: IndexedGroup, idxs: Iterable[int]) -> tuple[int, ...]:
    """Lexicographically least translate of the set, as a sorted index tuple."""
    idxs = tuple(idxs)
    best: Optional[tuple[int, ...]] = None
    sub = ig.sub
    for x in idxs:
        # translating by -x puts x at 0; only these translates can be minimal
        cand = tuple(sorted(sub[i][x] for i in idxs))
        if best is None or cand < best:
            best = cand
    return best if best is not None else ()


def _block(m: int, k: int) -> Iterator[tuple[int, ...]]:
    """Non-zero parts with largest element m: colex order within the block."""
    return (rest + (m,) for rest in combinations(range(1, m), k - 2))


def _colex_blocks(n: int, k: int) -> Iterator[tuple[int, Iterator[tuple[int, ...]]]]:
    """Non-zero parts of 0-containing k-subsets, grouped by largest element."""
    if k == 1:
        yield 0, iter([()])
        return
    for m in range(k - 1, n):
        yield m, _block(m, k)


def scan_size(
    group: Group,
    k: int,
    predicate: Predicate,
    threads: int = 1,
    collect: bool = True,
) -> tuple[int, list[tuple[int, ...]]]:
    """All 0-containing k-subsets satisfying the predicate.

    Returns (number scanned, canonical translate forms of the hits, sorted
    and deduplicated).  Identical output for every thread count.
    """
    ig = indexed_group(group)
    n = ig.n
    if k < 1 or k > n:
        return 0, []
    bit = [1 << i for i in range(n)]

    def run_block(block) -> tuple[int, set[tuple[int, ...]]]:
        scanned = 0
        hits: set[tuple[int, ...]] = set()
        for rest in block:
            idxs = (0,) + rest
            mask = 1
            for i in rest:
                mask |= bit[i]
            scanned += 1
            if predicate(ig, idxs, mask):
                hits.add(canonical_translate_form(ig, idxs) if collect else idxs)
        return scanned, hits

    blocks = [block for _, block in _colex_blocks(n, k)]
    total = 0
    all_hits: set[tuple[int, ...]] = set()
    if threads > 1 and len(blocks) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(run_block, blocks))
    else:
        results = [run_block(b) for b in blocks]
    for scanned, hits in results:
        total += scanned
        all_hits |= hits
    return total, sorted(all_hits)


def minimum_size_search(
    group: Group,
    predicate: Predicate,
    start_size: int,
    max_size: int,
    threads: int = 1,
    search_cap: int = 5_000_000,
) -> tuple[Optional[int], Optional[GSet], dict]:
    """Smallest k in [start_size, max_size] admitting a hit, with stats.

    Scans sizes in increasing order; the witness is the canonical least hit
    at the minimum size.  Raises SizeLimitError (carrying the size bound
    established so far) if a level would exceed the candidate cap.
    """
    ig = indexed_group(group)
    n = ig.n
    stats = {"scanned": 0, "levels": []}
    for k in range(start_size, min(max_size, n) + 1):
        level_size = comb(n - 1, k - 1)
        if level_size > search_cap:
            raise SizeLimitError(
                f"size-{k} level has {level_size} candidates, over cap {search_cap}",
                partial={"lower_bound": k, "stats": stats},
            )
        scanned, hits = scan_size(group, k, predicate, threads=threads)
        stats["scanned"] += scanned
        stats["levels"].append({"size": k, "candidates": scanned, "hits": len(hits)})
        if hits:
            witness = ig.to_gset(hits[0])
            return k, witness, stats
    return None, None, stats
