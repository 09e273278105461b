"""Generate a random labeled hypergraph, sample queries and check each one.

Every query is matched with the engine and with the brute-force oracle; the
script prints the embedding counts side by side.

    python demos/random_workload.py [seed]
"""

import sys
import time

from hypermatch import build_index, gen_query, gen_random_hypergraph, oracle_subsets, run_query

seed = int(sys.argv[1]) if len(sys.argv) > 1 else 0
h = gen_random_hypergraph(seed, num_vertices=80, num_edges=150, num_labels=2)
idx = build_index(h)
print(f"data: {h.num_vertices} vertices, {h.num_edges} hyperedges, {len(idx.buckets)} signatures")
print(f"{'query':>5} {'k':>2} {'engine':>7} {'oracle':>7} {'calls':>6} {'ms':>7}")

for i in range(12):
    k = 2 + i % 4
    q = gen_query(seed * 100 + i, h, k)
    t0 = time.perf_counter()
    result = run_query(q, h, idx)
    ms = (time.perf_counter() - t0) * 1000
    oracle = oracle_subsets(q, h)
    flag = "" if set(result.embeddings) == oracle else "  MISMATCH"
    print(f"{i:>5} {k:>2} {len(result.embeddings):>7} {len(oracle):>7} "
          f"{result.search_stats.recursive_calls:>6} {ms:>7.1f}{flag}")
