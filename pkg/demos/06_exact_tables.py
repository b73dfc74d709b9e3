"""Exact extremal tables with certificates.
===========================================

b(G) is the size of the smallest non-empty balanced subset of G, and m(G)
the size of the smallest subset with no unique sum.  Both are computed by
exhaustive search over translation classes, starting from the counting
floor (no candidate fits below max(3, log2 p(G) + 1) elements), and every
answer carries a checksummed certificate describing the exhausted space.
"""

from uniquesums import (
    bounds_dashboard,
    make_group,
    smallest_balanced,
    smallest_no_unique_sum,
    verify_certificate,
)
from uniquesums.config import RunConfig

print("p : b(p) m(p)  witness for m")
for p in (2, 3, 5, 7, 11, 13):
    g = make_group([p])
    b = smallest_balanced(g)
    m = smallest_no_unique_sum(g)
    bval = "-" if b is None else b.value
    mval = "-" if m is None else m.value
    wit = "-" if m is None else [e[0] for e in m.witness]
    print(f"{p:2d}: {bval!s:>4} {mval!s:>4}  {wit}")

# certificates re-verify independently
cert = smallest_no_unique_sum(make_group([5]))
print("\ncertificate:", cert.search_space)
print("checksum ok:", verify_certificate(cert))

# product groups are allowed anywhere a group is: the smallest balanced
# subset of Z/3Z x Z/5Z is a single coset column of size 3
print("b(Z/3 x Z/5):", smallest_balanced(make_group([3, 5])).value)

# the dashboard assembles values, construction sizes and inequality checks;
# for huge primes the searches stop at the counting floor and the sumset
# construction supplies the upper bound
doc = bounds_dashboard([3, 5, 7, 8191], cfg=RunConfig(search_cap=100_000))
for row in doc["rows"]:
    print(row)
print("violations:", doc["violations"])
