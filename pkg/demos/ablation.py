"""Compare the pruning policies on unlabeled instances.

With a single label, signatures carry little information and the search tree
is large, which is where in-search pruning pays off. For each policy the
script sums recursive calls and wall time over the instance family.
"""

import random

from hypermatch import build_chs, build_index, gen_query, gen_random_hypergraph, initial_filter
from hypermatch.engine import MODES, SearchConfig, match_all

totals = {mode: [0, 0.0, 0] for mode in MODES}
for i in range(40):
    rng = random.Random(i)
    h = gen_random_hypergraph(500 + i, rng.randint(30, 50), rng.randint(60, 120), 1, (2, 4))
    q = gen_query(900 + i, h, 5)
    idx = build_index(h)
    for mode in MODES:
        cs = build_chs(q, h, idx)
        initial_filter(q, cs)
        stats = match_all(q, h, cs, SearchConfig(mode=mode))
        totals[mode][0] += stats.recursive_calls
        totals[mode][1] += stats.wall_time
        totals[mode][2] += stats.embeddings_found

print(f"{'mode':<5} {'calls':>8} {'seconds':>8} {'embeddings':>11}")
for mode, (calls, secs, found) in totals.items():
    print(f"{mode:<5} {calls:>8} {secs:>8.2f} {found:>11}")
