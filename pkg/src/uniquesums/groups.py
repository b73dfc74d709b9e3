"""Finite abelian groups, their subsets, and sum-representation counts.

A group is an explicit product of cyclic factors Z/n_1 x ... x Z/n_k given
by its list of moduli.  Elements are tuples of least non-negative residues,
one per factor, so all arithmetic is exact and all containers are plain
Python objects.

Conventions used throughout the package:
  * Elements compare lexicographically as tuples; "canonical order" always
    means this order.
  * A GSet stores its elements sorted and duplicate-free, so equal sets are
    equal objects and every derived output is deterministic.
  * r-table: for a set A, ordered[g] counts ordered pairs (a, a') in A^2
    with a + a' = g, and unordered[g] counts pairs {a, a'} with repetition
    allowed.  They are tied together by
        ordered[g] = 2 * unordered[g] - #{x in A : 2x = g}.
  * g is a unique sum of A when unordered[g] == 1, i.e. the only ordered
    solutions of x + y = g in A^2 are (a, a') and (a', a) for a single
    unordered pair.  In groups of even order this is NOT the same as
    ordered[g] <= 2: two distinct doublings x + x = y + y = g produce
    ordered[g] = 2 without g being a unique sum.  For odd group order the
    two notions agree.
  * B is balanced when every b in B is the midpoint of a non-trivial
    3-term arithmetic progression inside B: there are b1 != b2 in B with
    2b = b1 + b2.  The empty set is vacuously balanced; operations that
    search for balanced subsets always mean non-empty ones.

All values are immutable after construction; every function here is pure.
"""

from __future__ import annotations

import threading
from concurrent.futures import ThreadPoolExecutor
from collections import Counter
from dataclasses import dataclass, field
from math import gcd, prod
from typing import Iterable, Iterator, Mapping, Optional, Sequence

from .errors import DilationError, GroupError, SizeLimitError

Elem = tuple[int, ...]

DEFAULT_MINSPAN_CAP = 10**6


def smallest_prime_factor(n: int) -> int:
    """Smallest prime dividing n >= 2, by trial division."""
    if n % 2 == 0:
        return 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return d
        d += 2
    return n


@dataclass(frozen=True)
class Group:
    """A finite abelian group as an ordered product of cyclic factors."""

    moduli: tuple[int, ...]
    order: int
    smallest_prime: int

    # -- element arithmetic -------------------------------------------------

    def reduce(self, residues: Sequence[int]) -> Elem:
        """Canonical element: least non-negative residue per factor."""
        if len(residues) != len(self.moduli):
            raise GroupError(
                f"element has {len(residues)} coordinates, group has {len(self.moduli)}"
            )
        return tuple(int(r) % n for r, n in zip(residues, self.moduli))

    def element(self, *residues: int) -> Elem:
        """Build an element from residues, reducing each coordinate."""
        return self.reduce(residues)

    @property
    def zero(self) -> Elem:
        return (0,) * len(self.moduli)

    def add(self, a: Elem, b: Elem) -> Elem:
        return tuple((x + y) % n for x, y, n in zip(a, b, self.moduli))

    def sub(self, a: Elem, b: Elem) -> Elem:
        return tuple((x - y) % n for x, y, n in zip(a, b, self.moduli))

    def neg(self, a: Elem) -> Elem:
        return tuple((-x) % n for x, n in zip(a, self.moduli))

    def double(self, a: Elem) -> Elem:
        return tuple((2 * x) % n for x, n in zip(a, self.moduli))

    def scale(self, k: int, a: Elem) -> Elem:
        return tuple((k * x) % n for x, n in zip(a, self.moduli))

    def elements(self) -> Iterator[Elem]:
        """All group elements in canonical (lexicographic) order."""
        def rec(i: int, prefix: tuple[int, ...]) -> Iterator[Elem]:
            if i == len(self.moduli):
                yield prefix
                return
            for r in range(self.moduli[i]):
                yield from rec(i + 1, prefix + (r,))

        return rec(0, ())

    # -- index encoding (mixed radix, first coordinate most significant) ----

    def index(self, a: Elem) -> int:
        """Flat index of an element; index order equals canonical order."""
        idx = 0
        for r, n in zip(a, self.moduli):
            idx = idx * n + r
        return idx

    def unindex(self, idx: int) -> Elem:
        out = []
        for n in reversed(self.moduli):
            out.append(idx % n)
            idx //= n
        return tuple(reversed(out))

    def contains(self, a: Elem) -> bool:
        return len(a) == len(self.moduli) and all(
            0 <= r < n for r, n in zip(a, self.moduli)
        )

    def element_order(self, a: Elem) -> int:
        """Order of a as a group element (lcm over coordinates)."""
        from math import lcm

        return lcm(*(n // gcd(n, r) for r, n in zip(a, self.moduli)))


def make_group(moduli: Sequence[int]) -> Group:
    """Validate moduli and compute order and smallest prime divisor."""
    mods = tuple(int(n) for n in moduli)
    if not mods:
        raise GroupError("a group needs at least one cyclic factor")
    for n in mods:
        if n < 2:
            raise GroupError(f"modulus {n} is invalid; every factor needs order >= 2")
    order = prod(mods)
    return Group(moduli=mods, order=order, smallest_prime=smallest_prime_factor(order))


@dataclass(frozen=True)
class GSet:
    """A finite subset of a group, stored sorted and duplicate-free."""

    group: Group
    elements: tuple[Elem, ...]

    @staticmethod
    def make(group: Group, elems: Iterable[Sequence[int]]) -> "GSet":
        """Canonicalize arbitrary residue sequences into a GSet."""
        reduced = {group.reduce(tuple(e) if isinstance(e, (tuple, list)) else (e,)) for e in elems}
        return GSet(group=group, elements=tuple(sorted(reduced)))

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[Elem]:
        return iter(self.elements)

    def __contains__(self, e: Elem) -> bool:
        return e in self.as_set()

    def as_set(self) -> frozenset[Elem]:
        return frozenset(self.elements)

    def is_empty(self) -> bool:
        return not self.elements

    def with_elements(self, elems: Iterable[Elem]) -> "GSet":
        return GSet(group=self.group, elements=tuple(sorted(set(elems))))

    def remove(self, e: Elem) -> "GSet":
        return self.with_elements(x for x in self.elements if x != e)


@dataclass(frozen=True)
class GMultiset:
    """A finite multiset of group elements; counts are all >= 1."""

    group: Group
    items: tuple[tuple[Elem, int], ...]

    @staticmethod
    def make(group: Group, counts: Mapping[Sequence[int], int] | Iterable[Sequence[int]]) -> "GMultiset":
        """From either an element->multiplicity mapping or an element list."""
        tally: Counter = Counter()
        if isinstance(counts, Mapping):
            for e, m in counts.items():
                if m < 1:
                    raise GroupError(f"multiplicity {m} for {e} must be positive")
                tally[group.reduce(tuple(e) if isinstance(e, (tuple, list)) else (e,))] += int(m)
        else:
            for e in counts:
                tally[group.reduce(tuple(e) if isinstance(e, (tuple, list)) else (e,))] += 1
        return GMultiset(group=group, items=tuple(sorted(tally.items())))

    @property
    def counts(self) -> dict[Elem, int]:
        return dict(self.items)

    def size(self) -> int:
        """Number of elements counted with multiplicity."""
        return sum(m for _, m in self.items)

    def support(self) -> GSet:
        return GSet(group=self.group, elements=tuple(e for e, _ in self.items))

    def expand(self) -> tuple[Elem, ...]:
        """All copies in canonical order; copies of one element are adjacent."""
        out: list[Elem] = []
        for e, m in self.items:
            out.extend([e] * m)
        return tuple(out)

    def restrict(self, elems: Iterable[Elem]) -> "GMultiset":
        keep = set(elems)
        return GMultiset(
            group=self.group,
            items=tuple((e, m) for e, m in self.items if e in keep),
        )


def as_multiset(Z: GSet | GMultiset) -> GMultiset:
    """View a plain set as a multiset with all multiplicities 1."""
    if isinstance(Z, GMultiset):
        return Z
    return GMultiset(group=Z.group, items=tuple((e, 1) for e in Z.elements))


# ---------------------------------------------------------------------------
# elementwise maps
# ---------------------------------------------------------------------------


def translate(A: GSet, g: Elem) -> GSet:
    """A + g."""
    grp = A.group
    g = grp.reduce(g)
    return A.with_elements(grp.add(a, g) for a in A)


def dilate(A: GSet, u: int) -> GSet:
    """u * A for a unit u (gcd(u, |G|) = 1)."""
    grp = A.group
    u %= grp.order
    if gcd(u, grp.order) != 1:
        raise DilationError(f"{u} is not a unit modulo {grp.order}")
    return A.with_elements(grp.scale(u, a) for a in A)


def negate(A: GSet) -> GSet:
    """-A."""
    return A.with_elements(A.group.neg(a) for a in A)


def sumset(A: GSet, B: GSet) -> GSet:
    """A + B = {a + b}."""
    if A.group != B.group:
        raise GroupError("sumset arguments live in different groups")
    grp = A.group
    return A.with_elements(grp.add(a, b) for a in A for b in B)


# ---------------------------------------------------------------------------
# subgroup generation and minspan
# ---------------------------------------------------------------------------


def subgroup_generated(C: GSet, translate_by: Optional[Elem] = None) -> GSet:
    """The subgroup <C + g>, computed by saturation.

    Starts from {0} and closes under addition of each generator until the
    coset chain repeats; negation closure follows because the group is
    finite.  Always contains 0.
    """
    if C.is_empty():
        raise GroupError("subgroup_generated needs a non-empty generating set")
    grp = C.group
    g = grp.reduce(translate_by) if translate_by is not None else grp.zero
    H: set[Elem] = {grp.zero}
    for c in C:
        t = grp.add(c, g)
        # extend H to H + <t>: keep adding t-shifted layers until closed
        layer = H
        while True:
            layer = {grp.add(x, t) for x in layer}
            new = layer - H
            if not new:
                break
            H |= new
    return GSet(group=grp, elements=tuple(sorted(H)))


def minspan(C: GSet, cap: int = DEFAULT_MINSPAN_CAP) -> int:
    """min over g in G of |<C + g>|.

    Iterates every translate; refuses groups larger than ``cap``.  For a
    singleton the answer is 1 (translate the element to 0).
    """
    if C.is_empty():
        raise GroupError("minspan needs a non-empty set")
    grp = C.group
    if grp.order > cap:
        raise SizeLimitError(f"group order {grp.order} exceeds minspan cap {cap}")
    if len(C) == 1:
        return 1
    # <C + g> = H0 + <c0 + g> with H0 = <C - c0> fixed, so precompute H0.
    c0 = C.elements[0]
    diffs = GSet.make(grp, [grp.sub(c, c0) for c in C if c != c0])
    H0 = subgroup_generated(diffs)
    H0set = H0.as_set()
    best = grp.order
    for g in grp.elements():
        t = grp.add(c0, g)
        # index of t in G/H0: least k >= 1 with k*t in H0
        k = 1
        acc = t
        while acc not in H0set:
            acc = grp.add(acc, t)
            k += 1
        size = len(H0) * k
        if size < best:
            best = size
            if best == 1:
                break
    return best


# ---------------------------------------------------------------------------
# r-tables and the unique-sum / balanced predicates
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SumTable:
    """Ordered and unordered representation counts of A + A."""

    source: GSet
    ordered: dict[Elem, int] = field(hash=False)
    unordered: dict[Elem, int] = field(hash=False)

    def unique(self) -> GSet:
        """Elements realized by exactly one unordered pair."""
        return self.source.with_elements(
            g for g, c in self.unordered.items() if c == 1
        )


def _ordered_counts_block(grp: Group, rows: Sequence[Elem], all_elems: Sequence[Elem]) -> Counter:
    cnt: Counter = Counter()
    add = grp.add
    for a in rows:
        for b in all_elems:
            cnt[add(a, b)] += 1
    return cnt


def sum_table(A: GSet, threads: int = 1) -> SumTable:
    """Exact r-table of A.

    The ordered pair enumeration may be partitioned across threads; the
    merged counts do not depend on the partitioning.
    """
    if A.is_empty():
        raise GroupError("sum_table needs a non-empty set")
    grp = A.group
    elems = A.elements
    if threads > 1 and len(elems) >= 2 * threads:
        chunk = (len(elems) + threads - 1) // threads
        blocks = [elems[i : i + chunk] for i in range(0, len(elems), chunk)]
        ordered: Counter = Counter()
        with ThreadPoolExecutor(max_workers=threads) as pool:
            for part in pool.map(
                lambda rows: _ordered_counts_block(grp, rows, elems), blocks
            ):
                ordered.update(part)
    else:
        ordered = _ordered_counts_block(grp, elems, elems)
    doublings: Counter = Counter()
    for a in elems:
        doublings[grp.double(a)] += 1
    unordered = {g: (c + doublings[g]) // 2 for g, c in ordered.items()}
    return SumTable(source=A, ordered=dict(ordered), unordered=unordered)


def unique_sums(A: GSet) -> GSet:
    """All g whose only representation from A^2 is a single unordered pair."""
    return sum_table(A).unique()


def has_no_unique_sum(A: GSet) -> bool:
    """True when every realized sum has at least two unordered representations."""
    if A.is_empty():
        raise GroupError("has_no_unique_sum needs a non-empty set")
    return unique_sums(A).is_empty()


def balanced_failure(B: GSet) -> Optional[Elem]:
    """First element (canonical order) that is not an interior midpoint, or None."""
    grp = B.group
    members = B.as_set()
    for b in B:
        target = grp.double(b)
        if not any(
            (other := grp.sub(target, x)) in members and other != x for x in B
        ):
            return b
    return None


def is_balanced(B: GSet) -> bool:
    """Every element is the midpoint of a non-trivial 3-AP inside B.

    Vacuously true for the empty set; searches for balanced subsets
    elsewhere in the package always mean non-empty ones.
    """
    return balanced_failure(B) is None


# ---------------------------------------------------------------------------
# indexed view for tight enumeration loops
# ---------------------------------------------------------------------------

_INDEXED_CACHE: dict[tuple[int, ...], "IndexedGroup"] = {}
_INDEXED_LOCK = threading.Lock()

INDEX_TABLE_CAP = 4096


class IndexedGroup:
    """Flat-index tables for a small group: O(1) add/sub/double lookups.

    Used by the exhaustive searches, which run over subsets of the full
    group; the table cost is O(|G|^2) ints, so this is capped.
    """

    def __init__(self, group: Group):
        n = group.order
        if n > INDEX_TABLE_CAP:
            raise SizeLimitError(
                f"group order {n} exceeds index-table cap {INDEX_TABLE_CAP}"
            )
        self.group = group
        self.n = n
        self.elems: list[Elem] = [group.unindex(i) for i in range(n)]
        self.add: list[list[int]] = []
        self.sub: list[list[int]] = []
        for i in range(n):
            a = self.elems[i]
            self.add.append([group.index(group.add(a, self.elems[j])) for j in range(n)])
            self.sub.append([group.index(group.sub(a, self.elems[j])) for j in range(n)])
        self.neg = [group.index(group.neg(e)) for e in self.elems]
        self.dbl = [self.add[i][i] for i in range(n)]
        # for each target t: masks of witness pairs {x, y}, x != y, x + y = t
        self.witness_masks: list[tuple[int, ...]] = []
        for t in range(n):
            masks = []
            for x in range(n):
                y = self.sub[t][x]
                if x < y:
                    masks.append((1 << x) | (1 << y))
            self.witness_masks.append(tuple(masks))

    def index_set(self, S: GSet) -> tuple[int, ...]:
        return tuple(self.group.index(e) for e in S)

    def to_gset(self, idxs: Iterable[int]) -> GSet:
        return GSet(
            group=self.group,
            elements=tuple(sorted(self.elems[i] for i in idxs)),
        )


def indexed_group(group: Group) -> IndexedGroup:
    """Cached IndexedGroup for a group (tables are immutable)."""
    key = group.moduli
    with _INDEXED_LOCK:
        ig = _INDEXED_CACHE.get(key)
        if ig is None:
            ig = IndexedGroup(group)
            _INDEXED_CACHE[key] = ig
        return ig
