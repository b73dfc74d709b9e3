"""Additive span, dissociated sets, additive dimension, support compression.

The additive span of a multiset Z is the set of all its subset sums, each
element usable up to its multiplicity.  A set is dissociated when the only
{-1,0,1}-combination summing to zero is the trivial one; equivalently all
subset sums are distinct.  The additive dimension dim(Z) is the size of the
largest dissociated subset of Z.

Size facts tying these together, all checked exactly by
``span_bounds_report``:

    2^dim(Z)  <=  |span(Z)|  <=  C(|Z|, d) * C(|Z| + d, d)  <=  (4|Z|/d)^(2d)

with d = dim(Z).  The middle bound comes from rewriting every span element
as a non-negative combination whose support is dissociated: whenever the
support of a representation is not dissociated, a zero combination splits
it into two disjoint equal-sum parts and shifting weight from the larger
part to the smaller strictly shrinks the support.  ``support_compress``
performs exactly that rewrite loop and returns the compressed witness.

Multiset supports are counted with multiplicity: two copies of one element
are never jointly dissociated, so compressed supports collapse onto single
copies.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import comb
from typing import Optional, Sequence

from .config import DEFAULT, RunConfig
from .errors import PreconditionError, RepresentationError, SizeLimitError
from .groups import (
    Elem,
    GMultiset,
    GSet,
    as_multiset,
    subgroup_generated,
)


# ---------------------------------------------------------------------------
# spans
# ---------------------------------------------------------------------------


def additive_span(Z: GSet | GMultiset, cfg: RunConfig = DEFAULT) -> GSet:
    """All subset sums of Z, each copy usable at most once."""
    Z = as_multiset(Z)
    if Z.size() > cfg.span_cap and Z.group.order > cfg.span_group_cap:
        raise SizeLimitError(
            f"span of {Z.size()} elements in a group of order {Z.group.order} "
            f"exceeds caps ({cfg.span_cap}, {cfg.span_group_cap})"
        )
    grp = Z.group
    sums: set[Elem] = {grp.zero}
    for z in Z.expand():
        sums |= {grp.add(s, z) for s in sums}
    return GSet(group=grp, elements=tuple(sorted(sums)))


def is_additive_basis(Z: GSet | GMultiset, ambient: Optional[GSet] = None,
                      cfg: RunConfig = DEFAULT) -> bool:
    """Does span(Z) cover the subgroup generated by Z (or a given ambient set)?"""
    Z = as_multiset(Z)
    target = ambient if ambient is not None else subgroup_generated(Z.support())
    return additive_span(Z, cfg).as_set() >= target.as_set()


# ---------------------------------------------------------------------------
# representations
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Representation:
    """A non-negative combination of the copies of Z expressing a target.

    ``copy_coeffs`` is aligned with ``base.expand()``: one slot per copy, so
    multiset supports are tracked per copy.  The support size counts copies
    with non-zero coefficient.
    """

    base: GMultiset
    copy_coeffs: tuple[int, ...]
    target: Elem
    weight_budget: int

    @property
    def coeffs(self) -> dict[Elem, int]:
        out: dict[Elem, int] = {}
        for z, k in zip(self.base.expand(), self.copy_coeffs):
            if k:
                out[z] = out.get(z, 0) + k
        return out

    def support_copies(self) -> tuple[int, ...]:
        return tuple(i for i, k in enumerate(self.copy_coeffs) if k)

    def support_elements(self) -> tuple[Elem, ...]:
        copies = self.base.expand()
        return tuple(copies[i] for i in self.support_copies())

    def support_size(self) -> int:
        return len(self.support_copies())

    def total(self) -> int:
        return sum(self.copy_coeffs)

    def validate(self) -> None:
        grp = self.base.group
        copies = self.base.expand()
        if len(self.copy_coeffs) != len(copies):
            raise RepresentationError("coefficient vector does not match the multiset")
        if any(k < 0 for k in self.copy_coeffs):
            raise RepresentationError("coefficients must be non-negative")
        acc = grp.zero
        for z, k in zip(copies, self.copy_coeffs):
            acc = grp.add(acc, grp.scale(k, z))
        if acc != self.target:
            raise RepresentationError(f"coefficients sum to {acc}, not {self.target}")
        if self.total() > self.weight_budget:
            raise RepresentationError(
                f"coefficient sum {self.total()} exceeds budget {self.weight_budget}"
            )


def subset_representation(Z: GSet | GMultiset, y: Elem) -> Representation:
    """The lexicographically least 0/1 representation of a span element.

    Greedy over copies in canonical order, keeping a copy whenever the
    remainder stays reachable from the suffix; the budget is the number of
    copies used.
    """
    Z = as_multiset(Z)
    grp = Z.group
    y = grp.reduce(y)
    copies = Z.expand()
    reach: list[set[Elem]] = [set() for _ in range(len(copies) + 1)]
    reach[len(copies)] = {grp.zero}
    for i in range(len(copies) - 1, -1, -1):
        nxt = reach[i + 1]
        reach[i] = nxt | {grp.add(s, copies[i]) for s in nxt}
    if y not in reach[0]:
        raise RepresentationError(f"{y} is not in the additive span")
    coeffs = [0] * len(copies)
    target = y
    for i, z in enumerate(copies):
        need = grp.sub(target, z)
        if need in reach[i + 1]:
            coeffs[i] = 1
            target = need
    rep = Representation(
        base=Z, copy_coeffs=tuple(coeffs), target=y, weight_budget=sum(coeffs)
    )
    rep.validate()
    return rep


# ---------------------------------------------------------------------------
# dissociation
# ---------------------------------------------------------------------------


def _signed_sum_table(grp, items: Sequence[Elem]) -> dict[Elem, int]:
    """Value -> number of {-1,0,1} vectors over items achieving it."""
    table: dict[Elem, int] = {grp.zero: 1}
    for z in items:
        nz = grp.neg(z)
        nxt: dict[Elem, int] = {}
        for v, c in table.items():
            for w in (v, grp.add(v, z), grp.add(v, nz)):
                nxt[w] = nxt.get(w, 0) + c
        table = nxt
    return table


def is_dissociated(S: GSet | GMultiset, cfg: RunConfig = DEFAULT) -> bool:
    """No non-trivial {-1,0,1} combination sums to zero.

    Meet in the middle over sign vectors: dissociated iff exactly one pair
    of half-vectors (the trivial one) produces cancelling values.  A
    multiset with a repeated element is never dissociated.
    """
    Z = as_multiset(S)
    if any(m >= 2 for _, m in Z.items):
        return False
    items = Z.expand()
    if len(items) > cfg.dissociation_cap:
        raise SizeLimitError(
            f"dissociation test on {len(items)} elements exceeds cap {cfg.dissociation_cap}"
        )
    grp = Z.group
    half = len(items) // 2
    left = _signed_sum_table(grp, items[:half])
    right = _signed_sum_table(grp, items[half:])
    matches = 0
    for v, c in left.items():
        d = right.get(grp.neg(v))
        if d:
            matches += c * d
            if matches > 1:
                return False
    return matches == 1


def dissociation_witness(grp, items: Sequence[Elem]) -> Optional[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Positions of a non-trivial zero combination, or None if dissociated.

    Returns (plus, minus): disjoint position tuples with equal sums.  The
    witness is deterministic: the first hit of a fixed two-phase
    enumeration of sign vectors in canonical digit order.
    """
    half = len(items) // 2
    right_items = items[half:]
    # value -> (least vector, least non-zero vector) over the right half
    best: dict[Elem, list] = {}
    for vec in product((-1, 0, 1), repeat=len(right_items)):
        v = grp.zero
        for mu, z in zip(vec, right_items):
            if mu == 1:
                v = grp.add(v, z)
            elif mu == -1:
                v = grp.sub(v, z)
        slot = best.setdefault(v, [None, None])
        if slot[0] is None:
            slot[0] = vec
        if slot[1] is None and any(vec):
            slot[1] = vec
    for lvec in product((-1, 0, 1), repeat=half):
        v = grp.zero
        for mu, z in zip(lvec, items[:half]):
            if mu == 1:
                v = grp.add(v, z)
            elif mu == -1:
                v = grp.sub(v, z)
        slot = best.get(grp.neg(v))
        if slot is None:
            continue
        rvec = slot[1] if not any(lvec) else slot[0]
        if rvec is None:
            continue
        full = lvec + rvec
        plus = tuple(i for i, mu in enumerate(full) if mu == 1)
        minus = tuple(i for i, mu in enumerate(full) if mu == -1)
        return plus, minus
    return None


@dataclass(frozen=True)
class DimensionWitness:
    """Exact additive dimension with a maximum dissociated subset."""

    dim: int
    witness: GSet


def additive_dimension(Z: GSet | GMultiset, cfg: RunConfig = DEFAULT) -> DimensionWitness:
    """Exact maximum dissociated subset, by branch and bound.

    Explores support elements in canonical order; a partial set T extends
    by x only when x is outside the {-1,0,1}-combination cube of T, which
    is exactly the condition for T + {x} to stay dissociated.  Prunes on
    the incumbent and on the subgroup bound 2^dim <= |<support>|.  The
    returned witness is the lexicographically least among maximum ones.
    Duplicate copies never co-occur, so only the support is searched.
    """
    Z = as_multiset(Z)
    grp = Z.group
    support = [e for e, _ in Z.items if e != grp.zero]
    if len(support) > cfg.dimension_cap:
        raise SizeLimitError(
            f"dimension search on support {len(support)} exceeds cap {cfg.dimension_cap}"
        )
    if not support:
        return DimensionWitness(dim=0, witness=GSet(group=grp, elements=()))
    H = subgroup_generated(GSet(group=grp, elements=tuple(support)))
    max_dim = min(len(support), len(H).bit_length() - 1)
    best = 0
    best_w: tuple[Elem, ...] = ()

    def dfs(start: int, T: list[Elem], cube: frozenset[Elem]) -> None:
        nonlocal best, best_w
        for i in range(start, len(support)):
            if len(T) + (len(support) - i) <= best:
                break
            x = support[i]
            if x in cube:
                continue
            T.append(x)
            if len(T) > best:
                best = len(T)
                best_w = tuple(T)
            if len(T) < max_dim:
                plus = {grp.add(v, x) for v in cube}
                minus = {grp.sub(v, x) for v in cube}
                dfs(i + 1, T, cube | plus | minus)
            T.pop()

    dfs(0, [], frozenset({grp.zero}))
    return DimensionWitness(dim=best, witness=GSet(group=grp, elements=tuple(sorted(best_w))))


# ---------------------------------------------------------------------------
# support compression
# ---------------------------------------------------------------------------


def support_compress(Z: GSet | GMultiset, y: Elem, initial: Representation,
                     cfg: RunConfig = DEFAULT) -> Representation:
    """Rewrite a representation of y until its support is dissociated.

    Each round finds a non-trivial zero combination on the current support,
    splits it into disjoint equal-sum parts K1, K2 with |K1| >= |K2|, and
    moves min-coefficient weight from K1 onto K2.  The coefficient sum
    never grows and the support strictly shrinks, so at most the initial
    support size rounds run.
    """
    Z = as_multiset(Z)
    grp = Z.group
    y = grp.reduce(y)
    if initial.base != Z or initial.target != y:
        raise RepresentationError("initial representation does not match Z and y")
    initial.validate()
    copies = Z.expand()
    coeffs = list(initial.copy_coeffs)
    max_rounds = sum(1 for k in coeffs if k)
    rounds = 0
    while True:
        support_idx = [i for i, k in enumerate(coeffs) if k]
        witness = dissociation_witness(grp, [copies[i] for i in support_idx])
        if witness is None:
            break
        rounds += 1
        if rounds > max_rounds:
            raise RepresentationError(
                "support compression failed to terminate within |support| rounds"
            )
        K1 = [support_idx[p] for p in witness[0]]
        K2 = [support_idx[p] for p in witness[1]]
        if len(K1) < len(K2):
            K1, K2 = K2, K1
        kmin = min(coeffs[i] for i in K1)
        for i in K1:
            coeffs[i] -= kmin
        for i in K2:
            coeffs[i] += kmin
        new_support = sum(1 for k in coeffs if k)
        if new_support >= len(support_idx):
            raise RepresentationError("support compression did not shrink the support")
    result = Representation(
        base=Z, copy_coeffs=tuple(coeffs), target=y, weight_budget=initial.weight_budget
    )
    result.validate()
    return result


# ---------------------------------------------------------------------------
# size bounds
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SpanBounds:
    """Exact span/dimension figures and the size inequalities between them."""

    size: int                 # |Z| with multiplicity
    dim: int
    witness: GSet
    span_size: int
    lower_bound: int          # 2^dim
    binomial_bound: int       # C(|Z|, d) * C(|Z|+d, d)
    lower_ok: bool
    binomial_ok: bool
    power_ok: bool            # |span| * d^(2d) <= (4|Z|)^(2d), exact in integers
    chain_ok: bool            # binomial <= power bound

    @property
    def ok(self) -> bool:
        return self.lower_ok and self.binomial_ok and self.power_ok and self.chain_ok


def span_bounds_report(Z: GSet | GMultiset, cfg: RunConfig = DEFAULT) -> SpanBounds:
    """Compute |span|, dim, and check the full chain of size bounds."""
    Z = as_multiset(Z)
    n = Z.size()
    span = additive_span(Z, cfg)
    dw = additive_dimension(Z, cfg)
    d = dw.dim
    lower = 1 << d
    binom = comb(n, d) * comb(n + d, d)
    if d == 0:
        power_ok = len(span) <= 1
        chain_ok = True
    else:
        power_ok = len(span) * d ** (2 * d) <= (4 * n) ** (2 * d)
        chain_ok = binom * d ** (2 * d) <= (4 * n) ** (2 * d)
    return SpanBounds(
        size=n,
        dim=d,
        witness=dw.witness,
        span_size=len(span),
        lower_bound=lower,
        binomial_bound=binom,
        lower_ok=lower <= len(span),
        binomial_ok=len(span) <= binom,
        power_ok=power_ok,
        chain_ok=chain_ok,
    )


@dataclass(frozen=True)
class RatioReport:
    """|Z| / dim(Z) and the exact span-versus-ratio inequality check.

    ``span_inequality_ok`` certifies, in exact integer arithmetic, that
        |Z| >= K / (2 (2 + log2 K)) * log2 |span(Z)|
    with K = |Z| / dim(Z), via the equivalent cleared form
        2^(4 n q) * p^(2 n q)  >=  |span|^p * q^(2 n q),   K = p / q.
    """

    size: int
    dim: int
    ratio: Fraction
    span_size: int
    span_inequality_ok: bool


def dimension_ratio(Z: GSet | GMultiset, cfg: RunConfig = DEFAULT) -> RatioReport:
    """Exact ratio |Z|/dim(Z) plus the checked span lower bound."""
    Z = as_multiset(Z)
    n = Z.size()
    dw = additive_dimension(Z, cfg)
    if dw.dim == 0:
        raise PreconditionError("dimension ratio is undefined when dim(Z) = 0")
    span = additive_span(Z, cfg)
    K = Fraction(n, dw.dim)
    p, q = K.numerator, K.denominator
    lhs = (1 << (4 * n * q)) * p ** (2 * n * q)
    rhs = len(span) ** p * q ** (2 * n * q)
    return RatioReport(
        size=n,
        dim=dw.dim,
        ratio=K,
        span_size=len(span),
        span_inequality_ok=lhs >= rhs,
    )
