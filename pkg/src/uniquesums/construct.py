"""Constructions of balanced and no-unique-sum sets, and integer models.

Balanced sources
  * ``balanced_multiplicative(p)``: {0} together with the multiplicative
    subgroup generated by 2 and -1 in Z/pZ.  For b != 0 the pair (2b, 0)
    witnesses 2b = 2b + 0, and for b = 0 any pair (h, -h) works, so the set
    is balanced for every odd prime.  Its size is 1 + |<2, -1>|, which is
    small exactly when 2 has small multiplicative order, e.g. for primes
    dividing 2^k - 1.
  * ``balanced_search(p, max_size)``: exact minimum-size balanced subset of
    Z/pZ by exhaustive canonical search.

From a balanced set B two no-unique-sum sets follow: the grid B x B in
(Z/pZ)^2 (a sum fixes its coordinate multiset up to swapping, and equal
coordinates re-split through a witness pair) and the sumset B + B inside
Z/pZ, of size at most C(|B|+1, 2).  Both constructors re-check the
no-unique-sum property by a full representation table.

Integer models
  * ``rectify``: searches dilations u of a subset of Z/pZ; each dilate is
    rotated past its largest circular gap and lifted to least residues, and
    the lift is accepted iff it preserves and reflects all additive
    quadruples.  A semi-decision procedure: "none" does not certify that no
    integer model exists.
  * ``freiman_embed``: for a subset A of (Z/pZ)^2, finds r with
    (u, v) -> u + r v injective on the set A + A, which is exactly the
    condition for the coordinate map to carry A to a Freiman-isomorphic
    subset of Z/pZ.
  * ``subset_representatives``: picks s_X in X for every non-empty X so
    that x + y = s_X + s_Y only trivially; built from an integer model
    (take maxima) or, failing that, an exhaustive order search.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

from .config import DEFAULT, RunConfig
from .enumeration import balanced_predicate, minimum_size_search
from .errors import (
    GroupError,
    PreconditionError,
    RectificationError,
    SizeLimitError,
)
from .groups import (
    Elem,
    GSet,
    Group,
    has_no_unique_sum,
    is_balanced,
    make_group,
    sumset,
)

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for all 64-bit integers."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _require_prime_cyclic(group: Group, who: str) -> int:
    if len(group.moduli) != 1 or not is_prime(group.moduli[0]):
        raise GroupError(f"{who} needs a cyclic group of prime order, got {group.moduli}")
    return group.moduli[0]


def balanced_multiplicative(p: int) -> GSet:
    """{0} adjoined to the multiplicative subgroup <2, -1> of Z/pZ."""
    if p == 2 or not is_prime(p):
        raise PreconditionError(f"{p} must be an odd prime")
    group = make_group([p])
    powers = []
    x = 1
    while True:
        powers.append(x)
        x = 2 * x % p
        if x == 1:
            break
    closure = set(powers) | {(-h) % p for h in powers}
    B = GSet.make(group, [0, *closure])
    fail_witness = not is_balanced(B)
    if fail_witness:
        raise PreconditionError(f"multiplicative construction for p={p} is not balanced")
    return B


def balanced_search(p: int, max_size: int, cfg: RunConfig = DEFAULT) -> Optional[GSet]:
    """Exact minimum-size balanced subset of Z/pZ, canonical-least witness."""
    if not is_prime(p):
        raise PreconditionError(f"{p} must be prime")
    group = make_group([p])
    start = max(3, (p - 1).bit_length() + 1)
    if max_size < start:
        return None
    _, witness, _ = minimum_size_search(
        group,
        balanced_predicate,
        start_size=start,
        max_size=max_size,
        threads=cfg.threads,
        search_cap=cfg.search_cap,
    )
    return witness


def grid_construction(B: GSet, verify: bool = True) -> GSet:
    """B x B inside the square of B's cyclic group; has no unique sum."""
    if len(B.group.moduli) != 1:
        raise GroupError("grid_construction needs a set in a cyclic group")
    if not is_balanced(B) or B.is_empty():
        raise PreconditionError("grid_construction needs a non-empty balanced set")
    n = B.group.moduli[0]
    square = make_group([n, n])
    A = GSet.make(square, [(b[0], c[0]) for b in B for c in B])
    if verify and not has_no_unique_sum(A):
        raise PreconditionError("grid of a balanced set unexpectedly has a unique sum")
    return A


def sumset_construction(B: GSet, verify: bool = True) -> GSet:
    """B + B; has no unique sum and at most C(|B|+1, 2) elements."""
    if not is_balanced(B) or B.is_empty():
        raise PreconditionError("sumset_construction needs a non-empty balanced set")
    A = sumset(B, B)
    k = len(B)
    if len(A) > k * (k + 1) // 2:
        raise PreconditionError("sumset exceeded its counting bound")
    if verify and not has_no_unique_sum(A):
        raise PreconditionError("sumset of a balanced set unexpectedly has a unique sum")
    return A


# ---------------------------------------------------------------------------
# Freiman embeddings and integer models
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class EmbedResult:
    """A verified coordinate embedding (u, v) -> u + r v into Z/pZ."""

    r: int
    image: GSet
    verified: bool


def freiman_embed(A: GSet, p: Optional[int] = None) -> Optional[EmbedResult]:
    """Least r making u + r v injective on the set A + A, or None.

    Injectivity on A + A is equivalent to the map being a Freiman
    isomorphism on A, and is checked by hashing the images of A + A rather
    than scanning coefficient quadruples.
    """
    grp = A.group
    if len(grp.moduli) != 2 or grp.moduli[0] != grp.moduli[1]:
        raise GroupError(f"freiman_embed needs a set in (Z/pZ)^2, got {grp.moduli}")
    q = grp.moduli[0]
    if not is_prime(q):
        raise GroupError(f"freiman_embed needs prime modulus, got {q}")
    if p is not None and p != q:
        raise GroupError(f"requested modulus {p} does not match the group's {q}")
    p = q
    AA = sumset(A, A).elements
    if len(AA) > p:
        return None
    line = make_group([p])
    for r in range(p):
        images = {(u + r * v) % p for (u, v) in AA}
        if len(images) == len(AA):
            image = GSet.make(line, [((u + r * v) % p,) for (u, v) in A.elements])
            if len(image) != len(A):
                continue
            return EmbedResult(r=r, image=image, verified=True)
    return None


@dataclass(frozen=True)
class RectifyResult:
    """A verified integer model of a subset of Z/pZ.

    The model is z -> least residue of (dilation * z - shift); it preserves
    and reflects every additive quadruple of the original set.
    """

    dilation: int
    shift: int
    integer_image: tuple[int, ...]
    verified: bool

    def apply(self, z: Elem, p: int) -> int:
        return (self.dilation * z[0] - self.shift) % p


def _quadruples_match(mod_sums: list[int], int_sums: list[int]) -> bool:
    """Do the two pair-sum lists induce the same coincidence pattern?"""
    by_mod: dict[int, int] = {}
    by_int: dict[int, int] = {}
    for sm, si in zip(mod_sums, int_sums):
        if by_mod.setdefault(sm, si) != si:
            return False
        if by_int.setdefault(si, sm) != sm:
            return False
    return True


def rectify(Z: GSet) -> Optional[RectifyResult]:
    """Search dilations for an integer model of Z; first success wins.

    For each unit u the dilate u*Z is rotated so that it starts right after
    its largest circular gap, lifted to least residues, and accepted iff
    the lift preserves and reflects all additive quadruples.  Returns None
    when no dilation works; that outcome alone does not prove Z has no
    integer model.
    """
    p = _require_prime_cyclic(Z.group, "rectify")
    if Z.is_empty():
        raise PreconditionError("rectify needs a non-empty set")
    zs = [z[0] for z in Z.elements]
    for u in range(1, p):
        vals = sorted(u * z % p for z in zs)
        gaps = [
            ((vals[(i + 1) % len(vals)] - vals[i]) % p, i) for i in range(len(vals))
        ]
        # rotate so the set begins immediately after its widest empty arc
        _, cut = max(gaps, key=lambda t: (t[0], -t[1]))
        shift = vals[(cut + 1) % len(vals)]
        lifted = {v: (v - shift) % p for v in vals}
        mod_sums = []
        int_sums = []
        for i in range(len(vals)):
            for j in range(i, len(vals)):
                mod_sums.append((vals[i] + vals[j]) % p)
                int_sums.append(lifted[vals[i]] + lifted[vals[j]])
        if _quadruples_match(mod_sums, int_sums):
            return RectifyResult(
                dilation=u,
                shift=shift,
                integer_image=tuple(sorted(lifted.values())),
                verified=True,
            )
    return None


def _order_admits_max_rule(grp, elems: list[Elem]) -> bool:
    """Is x + y = a + b with x, y no later than a, b only possible trivially?"""
    rank = {e: i for i, e in enumerate(elems)}
    for a in elems:
        for b in elems:
            target = grp.add(a, b)
            for x in elems:
                if rank[x] > rank[a]:
                    break
                for y in elems:
                    if rank[y] > rank[b]:
                        break
                    if grp.add(x, y) == target and (x, y) != (a, b):
                        return False
    return True


def subset_representatives(
    S: GSet,
    subsets: Optional[Iterable[frozenset[Elem]]] = None,
    cfg: RunConfig = DEFAULT,
    check: bool = True,
) -> dict[frozenset[Elem], Elem]:
    """Choose s_X in X for each non-empty X so sums of representatives are
    uniquely realized: x + y = s_X + s_Y with x in X, y in Y forces
    (x, y) = (s_X, s_Y).

    Orders S compatibly with an integer model (via ``rectify`` on prime
    cyclic groups, otherwise an exhaustive order search) and takes maxima.
    """
    if S.is_empty():
        raise PreconditionError("subset_representatives needs a non-empty set")
    if len(S) > cfg.assignment_cap:
        raise SizeLimitError(f"representative search on {len(S)} elements exceeds cap {cfg.assignment_cap}")
    grp = S.group
    ordered: Optional[list[Elem]] = None
    if len(grp.moduli) == 1 and is_prime(grp.moduli[0]):
        model = rectify(S)
        if model is not None:
            p = grp.moduli[0]
            ordered = sorted(S.elements, key=lambda z: model.apply(z, p))
    if ordered is None:
        if len(S) > 6:
            raise RectificationError(
                f"no integer model found and {len(S)} elements is too many for order search"
            )
        from itertools import permutations

        for perm in permutations(S.elements):
            if _order_admits_max_rule(grp, list(perm)):
                ordered = list(perm)
                break
        if ordered is None:
            raise RectificationError("no representative-compatible order exists")
    rank = {e: i for i, e in enumerate(ordered)}
    if subsets is None:
        from itertools import combinations

        subsets = [
            frozenset(c)
            for r in range(1, len(S) + 1)
            for c in combinations(S.elements, r)
        ]
    out: dict[frozenset[Elem], Elem] = {}
    for X in subsets:
        if not X or not (set(X) <= set(S.elements)):
            raise PreconditionError(f"{set(X)} is not a non-empty subset of S")
        out[frozenset(X)] = max(X, key=lambda e: rank[e])
    if check:
        pairs = list(out.items())
        for X, sx in pairs:
            for Y, sy in pairs:
                target = grp.add(sx, sy)
                for x in X:
                    for y in Y:
                        if grp.add(x, y) == target and (x, y) != (sx, sy):
                            raise PreconditionError(
                                "representative assignment admits a non-trivial sum"
                            )
    return out
