"""Run configuration: exact-computation caps, threading, output format, seed.

Caps bound the exhaustive algorithms; exceeding one raises SizeLimitError
rather than silently approximating.  The seed only drives randomized
property suites and is echoed into every structured output so a run can be
replayed.  The thread count never changes results, only how enumeration
work is partitioned, and is therefore deliberately absent from structured
output.
"""

from __future__ import annotations

from dataclasses import dataclass, replace


@dataclass(frozen=True)
class RunConfig:
    span_cap: int = 30            # max multiset size for subset-sum spans in large groups
    span_group_cap: int = 1 << 16  # group order below which spans are always allowed
    dissociation_cap: int = 26    # max set size for the meet-in-the-middle test
    dimension_cap: int = 24       # max support size for exact additive dimension
    minspan_cap: int = 10**6      # max group order for the minspan translate scan
    irreducible_cap: int = 20     # max set size for irreducibility decisions
    assignment_cap: int = 8       # max base-set size for subset-representative search
    search_cap: int = 5_000_000   # max candidate subsets scanned per size level
    threads: int = 1
    output: str = "human"         # "human" | "structured"
    seed: int = 0

    def with_threads(self, threads: int) -> "RunConfig":
        return replace(self, threads=threads)


DEFAULT = RunConfig()
