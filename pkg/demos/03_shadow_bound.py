"""Why g-free hypergraphs have at most (k-1)/(2k-1) * C(v,2) edges.

Components of the pair-intersection graph with m edges cover m+2 vertices
and exactly 2m+1 vertex pairs, and different components cover different
pairs.  Since m <= k-1, each edge accounts for at least (2k-1)/(k-1) pairs.

Run:  python3 demos/03_shadow_bound.py
"""

from collections import Counter

from configlab import fano_plane
from configlab.extremal import gen_random_free
from configlab.shadowbound import edge_bound_check, verify_component_claims

for name, h, k in [("Fano", fano_plane(), 2), ("random g-free", gen_random_free(30, 4, "g", seed=3), 4)]:
    rep = verify_component_claims(h, k)
    sizes = Counter(c.size for c in rep.components)
    bound, holds = edge_bound_check(h, k)
    print(f"{name} (k={k}): n={h.n} e={h.e}")
    print(f"  component sizes {dict(sorted(sizes.items()))}, all claims hold: {rep.all_hold}")
    print(f"  pairs covered {rep.total_shadow} of {h.n * (h.n - 1) // 2}; e <= {bound} ({float(bound):.2f}): {holds}")
