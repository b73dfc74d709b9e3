"""Exact extremal values with machine-checkable certificates.

``smallest_no_unique_sum`` and ``smallest_balanced`` exhaust subset sizes
from the counting floor upward (no non-empty balanced set, hence no set
without a unique sum, fits below log2 p(G) + 1 elements or below 3
elements) over canonical representatives: both predicates are translation
invariant, so only subsets containing 0 are scanned, and the certificate
records exactly the space that was exhausted.  Witnesses are the
lexicographically least translate of the least hit.

Certificates re-verify independently: the witness predicate can be
re-checked directly, and a re-run with another thread count must reproduce
the value bit for bit.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from math import comb
from typing import Optional

from .config import DEFAULT, RunConfig
from .enumeration import (
    balanced_predicate,
    minimum_size_search,
    no_unique_sum_predicate,
    scan_size,
)
from .errors import SizeLimitError
from .groups import GSet, Group, has_no_unique_sum, indexed_group, is_balanced
from .fileio import schema


@dataclass(frozen=True)
class Certificate:
    """Value + witness + a description of the exhausted search space."""

    kind: str  # "m-value" | "b-value" | "dim-value"
    group: Group
    value: int
    witness: GSet
    search_space: str
    checksum: str
    status: str = "exact"  # "exact" | "lower-bound"

    def to_dict(self) -> dict:
        return {
            "schema": schema("certificate"),
            "kind": self.kind,
            "group": list(self.group.moduli),
            "value": self.value,
            "witness": None if self.witness is None else [list(e) for e in self.witness],
            "search_space": self.search_space,
            "status": self.status,
            "checksum": self.checksum,
        }


def _checksum(payload: dict) -> str:
    canon = json.dumps(payload, sort_keys=True, separators=(",", ":"))
    return "sha256:" + hashlib.sha256(canon.encode()).hexdigest()


def _certify(kind: str, group: Group, value: int, witness: Optional[GSet],
             search_space: str, status: str = "exact") -> Certificate:
    payload = {
        "kind": kind,
        "group": list(group.moduli),
        "value": value,
        "witness": None if witness is None else [list(e) for e in witness],
        "search_space": search_space,
        "status": status,
    }
    return Certificate(
        kind=kind,
        group=group,
        value=value,
        witness=witness,
        search_space=search_space,
        checksum=_checksum(payload),
        status=status,
    )


def _size_floor(group: Group) -> int:
    """No non-empty balanced (hence no unique-sum-free) subset fits below this."""
    return max(3, (group.smallest_prime - 1).bit_length() + 1)


def _minimum_search(kind: str, group: Group, predicate, max_size: Optional[int],
                    cfg: RunConfig) -> Optional[Certificate]:
    limit = group.order if max_size is None else min(max_size, group.order)
    start = _size_floor(group)
    if limit < start:
        return None
    try:
        value, witness, stats = minimum_size_search(
            group,
            predicate,
            start_size=start,
            max_size=limit,
            threads=cfg.threads,
            search_cap=cfg.search_cap,
        )
    except SizeLimitError as exc:
        lower = exc.partial["lower_bound"] if exc.partial else start
        cert = _certify(
            kind,
            group,
            lower,
            None,
            f"sizes {start}..{lower - 1} exhausted over 0-containing subsets "
            f"(translation classes); size {lower} exceeds the candidate cap; "
            f"sizes below {start} excluded by the balanced-set size floor",
            status="lower-bound",
        )
        raise SizeLimitError(str(exc), partial=cert) from None
    if value is None:
        return None
    desc = (
        f"sizes {start}..{value} scanned over 0-containing subsets "
        f"(translation classes), {stats['scanned']} candidates; "
        f"sizes below {start} excluded by the balanced-set size floor"
    )
    return _certify(kind, group, value, witness, desc)


def smallest_no_unique_sum(group: Group, max_size: Optional[int] = None,
                           cfg: RunConfig = DEFAULT) -> Optional[Certificate]:
    """m(G): least size of a subset with no unique sum, or None if absent."""
    return _minimum_search("m-value", group, no_unique_sum_predicate, max_size, cfg)


def smallest_balanced(group: Group, max_size: Optional[int] = None,
                      cfg: RunConfig = DEFAULT) -> Optional[Certificate]:
    """b(G): least size of a non-empty balanced subset, or None if absent."""
    return _minimum_search("b-value", group, balanced_predicate, max_size, cfg)


def verify_certificate(cert: Certificate) -> bool:
    """Recheck the witness against its defining predicate, checksum included."""
    payload = {
        "kind": cert.kind,
        "group": list(cert.group.moduli),
        "value": cert.value,
        "witness": None if cert.witness is None else [list(e) for e in cert.witness],
        "search_space": cert.search_space,
        "status": cert.status,
    }
    if _checksum(payload) != cert.checksum:
        return False
    if cert.status != "exact":
        return True
    if cert.kind == "m-value":
        return len(cert.witness) == cert.value and has_no_unique_sum(cert.witness)
    if cert.kind == "b-value":
        return len(cert.witness) == cert.value and is_balanced(cert.witness)
    return False


def all_of_size(group: Group, size: int, predicate, cfg: RunConfig = DEFAULT) -> list[GSet]:
    """Every predicate-satisfying size-k subset, one per translation class."""
    if comb(group.order - 1, size - 1) > cfg.search_cap:
        raise SizeLimitError(f"size-{size} scan of {group.moduli} exceeds the candidate cap")
    ig = indexed_group(group)
    _, hits = scan_size(group, size, predicate, threads=cfg.threads)
    return [ig.to_gset(h) for h in hits]


# ---------------------------------------------------------------------------
# dashboard
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DashboardRow:
    p: int
    b_value: Optional[int]
    b_status: str
    m_value: Optional[int]
    m_status: str
    multiplicative_size: Optional[int]
    sumset_size: Optional[int]
    checks: dict

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "b": self.b_value,
            "b_status": self.b_status,
            "m": self.m_value,
            "m_status": self.m_status,
            "multiplicative_size": self.multiplicative_size,
            "sumset_size": self.sumset_size,
            "checks": self.checks,
        }


def bounds_dashboard(p_list: list[int], cfg: RunConfig = DEFAULT) -> dict:
    """Per-prime exact values, construction sizes, and inequality checks.

    Checked per row where both sides exist: b(p) strictly above log2 p,
    m(p) >= b(p), and m(p) at most the sumset-construction size.  Any
    violation lands in the top-level "violations" list; builds treat that
    as fatal.
    """
    from .construct import balanced_multiplicative, sumset_construction
    from .groups import make_group

    rows = []
    violations = []
    for p in p_list:
        group = make_group([p])
        b_val: Optional[int] = None
        m_val: Optional[int] = None
        b_status = m_status = "exact"
        try:
            b_cert = smallest_balanced(group, cfg=cfg)
            b_val = None if b_cert is None else b_cert.value
            b_status = "none" if b_cert is None else b_cert.status
        except SizeLimitError as exc:
            b_val = exc.partial.value if exc.partial else None
            b_status = "lower-bound"
        try:
            m_cert = smallest_no_unique_sum(group, cfg=cfg)
            m_val = None if m_cert is None else m_cert.value
            m_status = "none" if m_cert is None else m_cert.status
        except SizeLimitError as exc:
            m_val = exc.partial.value if exc.partial else None
            m_status = "lower-bound"
        mult_size = sum_size = None
        if p > 2:
            B = balanced_multiplicative(p)
            mult_size = len(B)
            sum_size = len(sumset_construction(B))
        checks = {}
        if b_val is not None:
            # b >= log2 p + 1, exactly: 2^(b-1) >= p
            checks["b_above_log"] = 2 ** (b_val - 1) >= p
        if b_val is not None and m_val is not None:
            checks["m_at_least_b"] = m_val >= b_val
        if m_val is not None and sum_size is not None and m_status == "exact":
            checks["m_at_most_sumset"] = m_val <= sum_size
        for name, ok in checks.items():
            if not ok:
                violations.append({"p": p, "check": name})
        rows.append(
            DashboardRow(
                p=p,
                b_value=b_val,
                b_status=b_status,
                m_value=m_val,
                m_status=m_status,
                multiplicative_size=mult_size,
                sumset_size=sum_size,
                checks=checks,
            )
        )
    return {
        "schema": schema("dashboard"),
        "rows": [r.to_dict() for r in rows],
        "violations": violations,
    }
