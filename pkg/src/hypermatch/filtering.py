"""Initial filtering of a candidate space by the connectivity constraint.

A candidate ``f`` of ``e`` survives only if, for every query hyperedge ``e2``
adjacent to ``e``, at least one live candidate of ``e2`` is connected to
``f``. Removals are propagated through a FIFO worklist of adjacent pairs
until nothing changes.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import asdict, dataclass

from hypermatch.chs import CandidateSpace
from hypermatch.hypergraph import Hypergraph

__all__ = ["FilterStats", "initial_filter"]


@dataclass
class FilterStats:
    candidates_before: int = 0
    candidates_after: int = 0
    connections_before: int = 0
    connections_after: int = 0
    #: candidate examinations, one per (popped pair, candidate of its first edge)
    pairs_processed: int = 0
    queue_pops: int = 0
    connection_probes: int = 0

    @property
    def removed(self) -> int:
        return self.candidates_before - self.candidates_after

    def as_dict(self) -> dict:
        return asdict(self)


def initial_filter(
    q: Hypergraph, cs: CandidateSpace, shuffle_seed: int | None = None
) -> FilterStats:
    """Remove candidates without support until a fixpoint is reached.

    ``shuffle_seed`` permutes the initial worklist; the surviving sets do not
    depend on it, only the statistics do.
    """
    stats = FilterStats(
        candidates_before=cs.total_candidates(),
        connections_before=cs.connection_count(live=True),
    )
    pairs = [(e, e2) for e in range(q.num_edges) for e2 in q.edge_adjacency[e]]
    if shuffle_seed is not None:
        random.Random(shuffle_seed).shuffle(pairs)
    queue = deque(pairs)
    queued = set(pairs)

    while queue:
        e, e2 = queue.popleft()
        queued.discard((e, e2))
        stats.queue_pops += 1
        removed = False
        live_e2 = cs.members(e2)
        # iterate over a copy: removal reorders the dense list
        for f in list(cs.candidates(e)):
            stats.pairs_processed += 1
            supported = False
            for g in cs.connected(e, f, e2):
                stats.connection_probes += 1
                if g in live_e2:
                    supported = True
                    break
            if not supported:
                cs.remove(e, f)
                removed = True
        if removed:
            for e3 in q.edge_adjacency[e]:
                if e3 != e2 and (e3, e) not in queued:
                    queue.append((e3, e))
                    queued.add((e3, e))

    stats.candidates_after = cs.total_candidates()
    stats.connections_after = cs.connection_count(live=True)
    return stats
