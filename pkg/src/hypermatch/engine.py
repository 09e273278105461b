"""Match-and-filter backtracking over a candidate hyperedge space.

The search maps one query hyperedge at a time. After each extension it prunes
the candidate space in two stages:

1. connectivity: candidates of unmapped neighbours of the new edge must be
   connected to the new image (a set lookup per candidate);
2. intersection: every remaining candidate of every unmapped edge must be
   compatible with the partial embedding, checked in O(|e|) with incident
   hyperedge bitmaps (IHBs).

Every vertex carries the bitmap of the mapped hyperedges that contain it (bit
``d`` stands for the edge mapped at depth ``d``). Probing a candidate ``(e, f)``
sets the probe bit on the vertices of ``e`` and ``f`` and compares the sorted
multisets of ``(bitmap, label)`` pairs on both sides; equal multisets mean the
extended mapping is still a partial embedding.
"""

from __future__ import annotations

import random
import time
from dataclasses import asdict, dataclass
from typing import Callable, Optional

from hypermatch.chs import CandidateSpace, build_chs
from hypermatch.errors import ContractViolation
from hypermatch.filtering import FilterStats, initial_filter
from hypermatch.hypergraph import Hypergraph, validate_query
from hypermatch.sigindex import SignatureIndex, build_index

__all__ = [
    "MODES",
    "ORDERS",
    "SearchConfig",
    "SearchStats",
    "IHBState",
    "PartialEmbedding",
    "Matcher",
    "match_all",
    "choose_next_edge",
    "connectivity_prune",
    "intersection_prune",
    "check_intersection",
    "update_ihb",
    "restore_ihb",
    "run_query",
    "QueryResult",
]

#: Pruning policies: what runs after each extension.
MODES = ("none", "conn", "isec", "both")
#: Matching-order policies.
ORDERS = ("hybrid", "adjacency", "candidates")

_LABEL_BITS = 32

Embedding = tuple
Sink = Callable[[tuple], object]


@dataclass
class SearchConfig:
    """Limits and policies for one search.

    ``mode`` selects the in-search pruning: ``none`` and ``conn`` verify each
    extension with the intersection check before descending, ``isec`` and
    ``both`` keep every candidate compatible so no verification is needed.
    ``tiebreak_seed`` replaces the lowest-id tiebreak of the matching order by
    a seeded random ranking of the query hyperedges.
    """

    limit: Optional[int] = None
    time_limit: Optional[float] = None
    mode: str = "both"
    order: str = "hybrid"
    tiebreak_seed: Optional[int] = None
    collect_stats: bool = True
    timeout_interval: int = 4096

    def __post_init__(self):
        if self.limit is not None and self.limit <= 0:
            raise ValueError("limit must be positive")
        if self.time_limit is not None and self.time_limit <= 0:
            raise ValueError("time_limit must be positive")
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}")
        if self.order not in ORDERS:
            raise ValueError(f"order must be one of {ORDERS}")
        if self.timeout_interval <= 0:
            raise ValueError("timeout_interval must be positive")


@dataclass
class SearchStats:
    embeddings_found: int = 0
    recursive_calls: int = 0
    candidates_pruned_stage1: int = 0
    candidates_pruned_stage2: int = 0
    intersection_checks: int = 0
    vertex_touches: int = 0
    wall_time: float = 0.0
    truncated: bool = False
    status: str = "done"

    def as_dict(self) -> dict:
        return asdict(self)


class IHBState:
    """Incident hyperedge bitmaps for query and data vertices."""

    __slots__ = ("bq", "bh")

    def __init__(self, num_query_vertices: int, num_data_vertices: int):
        self.bq = [0] * num_query_vertices
        self.bh = [0] * num_data_vertices

    def is_clear(self) -> bool:
        return not any(self.bq) and not any(self.bh)

    def snapshot(self) -> tuple[tuple[int, ...], tuple[int, ...]]:
        return tuple(self.bq), tuple(self.bh)


def update_ihb(ihb: IHBState, q: Hypergraph, h: Hypergraph, e: int, f: int, depth: int) -> None:
    bit = 1 << depth
    bq, bh = ihb.bq, ihb.bh
    for u in q.edges[e]:
        if bq[u] & bit:
            raise ContractViolation(f"bit {depth} already set on query vertex {u}")
        bq[u] |= bit
    for v in h.edges[f]:
        if bh[v] & bit:
            raise ContractViolation(f"bit {depth} already set on data vertex {v}")
        bh[v] |= bit


def restore_ihb(ihb: IHBState, q: Hypergraph, h: Hypergraph, e: int, f: int, depth: int) -> None:
    bit = 1 << depth
    bq, bh = ihb.bq, ihb.bh
    for u in q.edges[e]:
        if not bq[u] & bit:
            raise ContractViolation(f"bit {depth} not set on query vertex {u}")
        bq[u] &= ~bit
    for v in h.edges[f]:
        if not bh[v] & bit:
            raise ContractViolation(f"bit {depth} not set on data vertex {v}")
        bh[v] &= ~bit


def check_intersection(
    q: Hypergraph,
    h: Hypergraph,
    ihb: IHBState,
    e: int,
    f: int,
    pos: int,
    stats: SearchStats | None = None,
) -> bool:
    """Whether mapping ``e`` to ``f`` at bit ``pos`` keeps a partial embedding.

    Assumes the mapped edges (bits below ``pos``) already form a partial
    embedding. Only the cells inside ``e`` and ``f`` can change, so comparing
    the multisets ``{(bitmap, label)}`` over the vertices of ``e`` and of ``f``
    decides compatibility. Bitmaps are left exactly as they were found.
    """
    ev = q.edges[e]
    fv = h.edges[f]
    if stats is not None:
        stats.intersection_checks += 1
    if len(ev) != len(fv):
        return False
    bit = 1 << pos
    bq, bh = ihb.bq, ihb.bh
    lq, lh = q.vertex_labels, h.vertex_labels
    touched = 0
    for u in ev:
        bq[u] |= bit
        touched += 1
    for v in fv:
        bh[v] |= bit
        touched += 1
    side_q = sorted([(bq[u] << _LABEL_BITS) | lq[u] for u in ev])
    side_h = sorted([(bh[v] << _LABEL_BITS) | lh[v] for v in fv])
    for u in ev:
        bq[u] ^= bit
    for v in fv:
        bh[v] ^= bit
    if stats is not None:
        stats.vertex_touches += touched
    return side_q == side_h


class PartialEmbedding:
    """Mapping built along the current search path, in mapping order."""

    __slots__ = ("pairs", "image")

    def __init__(self, num_query_edges: int):
        self.pairs: list[tuple[int, int]] = []
        self.image: list[int | None] = [None] * num_query_edges

    @property
    def depth(self) -> int:
        return len(self.pairs)

    def is_mapped(self, e: int) -> bool:
        return self.image[e] is not None

    def push(self, e: int, f: int) -> None:
        if self.image[e] is not None:
            raise ContractViolation(f"query hyperedge {e} is already mapped")
        self.pairs.append((e, f))
        self.image[e] = f

    def pop(self) -> tuple[int, int]:
        e, f = self.pairs.pop()
        self.image[e] = None
        return e, f

    def unmapped(self) -> list[int]:
        return [e for e, f in enumerate(self.image) if f is None]

    def as_tuple(self) -> tuple[int, ...]:
        if len(self.pairs) != len(self.image):
            raise ContractViolation("embedding is incomplete")
        return tuple(self.image)  # type: ignore[arg-type]

    def __len__(self) -> int:
        return len(self.pairs)


def choose_next_edge(
    q: Hypergraph,
    cs: CandidateSpace,
    mapping: PartialEmbedding,
    order: str = "hybrid",
    rank: list[int] | None = None,
) -> int:
    """Next query hyperedge to map.

    ``hybrid``: an edge with a single candidate, else the most unmapped
    neighbours, then the fewest candidates. ``adjacency`` and ``candidates``
    use only the second or third criterion. Remaining ties go to the lowest
    ``rank`` (query edge id by default).
    """
    best = None
    best_key = None
    for e in mapping.unmapped():
        size = cs.size(e)
        tie = rank[e] if rank is not None else e
        if order == "hybrid":
            if size == 1:
                key = (0, 0, 0, tie)
            else:
                free = sum(1 for nb in q.edge_adjacency[e] if not mapping.is_mapped(nb))
                key = (1, -free, size, tie)
        elif order == "adjacency":
            free = sum(1 for nb in q.edge_adjacency[e] if not mapping.is_mapped(nb))
            key = (-free, tie)
        else:
            key = (size, tie)
        if best_key is None or key < best_key:
            best, best_key = e, key
    if best is None:
        raise ContractViolation("every query hyperedge is already mapped")
    return best


def connectivity_prune(
    q: Hypergraph, cs: CandidateSpace, mapping: PartialEmbedding, e_new: int, f_new: int
) -> int:
    """Drop candidates of unmapped neighbours of ``e_new`` not connected to ``f_new``."""
    removed = 0
    for e in q.edge_adjacency[e_new]:
        if mapping.is_mapped(e):
            continue
        linked = cs.connected(e_new, f_new, e)
        for f in list(cs.candidates(e)):
            if f not in linked:
                cs.remove(e, f)
                removed += 1
    return removed


def intersection_prune(
    q: Hypergraph,
    h: Hypergraph,
    ihb: IHBState,
    cs: CandidateSpace,
    mapping: PartialEmbedding,
    stats: SearchStats | None = None,
    stop_on_empty: bool = False,
    check: Callable[[int, int], bool] | None = None,
) -> int:
    """Drop every candidate of every unmapped edge that is not compatible."""
    depth = mapping.depth
    if check is None:
        def check(e, f):
            return check_intersection(q, h, ihb, e, f, depth, stats)
    removed = 0
    for e in mapping.unmapped():
        for f in list(cs.candidates(e)):
            if not check(e, f):
                cs.remove(e, f)
                removed += 1
        if stop_on_empty and cs.size(e) == 0:
            break
    return removed


class _Stop(Exception):
    pass


class Matcher:
    """One search over one candidate space.

    ``on_branch(matcher, phase, e, f)`` is called with ``phase`` ``"enter"``
    before a branch mutates any state and ``"exit"`` after the branch has been
    undone.
    """

    def __init__(
        self,
        q: Hypergraph,
        h: Hypergraph,
        cs: CandidateSpace,
        config: SearchConfig | None = None,
        on_branch: Callable | None = None,
    ):
        self.q = q
        self.h = h
        self.cs = cs
        self.config = config or SearchConfig()
        self.on_branch = on_branch
        self.ihb = IHBState(q.num_vertices, h.num_vertices)
        self.mapping = PartialEmbedding(q.num_edges)
        self.stats = SearchStats()
        mode = self.config.mode
        self.stage1 = mode in ("conn", "both")
        self.stage2 = mode in ("isec", "both")
        self.verify = not self.stage2
        self.rank = None
        if self.config.tiebreak_seed is not None:
            order = list(range(q.num_edges))
            random.Random(self.config.tiebreak_seed).shuffle(order)
            self.rank = [0] * q.num_edges
            for r, e in enumerate(order):
                self.rank[e] = r
        self._deadline = None
        self._sink: Sink | None = None

    def check_intersection(self, e: int, f: int) -> bool:
        return check_intersection(
            self.q, self.h, self.ihb, e, f, self.mapping.depth, self.stats
        )

    def choose_next_edge(self) -> int:
        return choose_next_edge(self.q, self.cs, self.mapping, self.config.order, self.rank)

    def run(self, sink: Sink | None = None) -> SearchStats:
        self._sink = sink
        start = time.perf_counter()
        if self.config.time_limit is not None:
            self._deadline = start + self.config.time_limit
        try:
            self._search()
        except _Stop:
            self.stats.truncated = True
        finally:
            self.stats.wall_time = time.perf_counter() - start
        return self.stats

    def _tick(self) -> None:
        stats = self.stats
        stats.recursive_calls += 1
        if (
            self._deadline is not None
            and stats.recursive_calls % self.config.timeout_interval == 0
            and time.perf_counter() > self._deadline
        ):
            stats.status = "timeout"
            raise _Stop

    def _search(self) -> None:
        self._tick()
        q, h, cs, mapping = self.q, self.h, self.cs, self.mapping
        for e in mapping.unmapped():
            if cs.size(e) == 0:
                return
        e_next = self.choose_next_edge()
        depth = mapping.depth
        complete = depth + 1 == q.num_edges
        for f in list(cs.candidates(e_next)):
            if self.verify and depth > 0 and not self.check_intersection(e_next, f):
                continue
            if self.on_branch is not None:
                self.on_branch(self, "enter", e_next, f)
            mark = cs.checkpoint()
            mapping.push(e_next, f)
            update_ihb(self.ihb, q, h, e_next, f, depth)
            try:
                if complete:
                    self._report()
                else:
                    self._filter_and_descend(e_next, f)
            finally:
                restore_ihb(self.ihb, q, h, e_next, f, depth)
                mapping.pop()
                cs.rollback(mark)
            if self.on_branch is not None:
                self.on_branch(self, "exit", e_next, f)

    def _filter_and_descend(self, e_new: int, f_new: int) -> None:
        cs, mapping, stats = self.cs, self.mapping, self.stats
        if self.stage1:
            stats.candidates_pruned_stage1 += connectivity_prune(
                self.q, cs, mapping, e_new, f_new
            )
            if any(cs.size(e) == 0 for e in self.q.edge_adjacency[e_new]):
                return
        if self.stage2:
            stats.candidates_pruned_stage2 += intersection_prune(
                self.q, self.h, self.ihb, cs, mapping,
                stop_on_empty=True, check=self.check_intersection,
            )
            if any(cs.size(e) == 0 for e in mapping.unmapped()):
                return
        self._search()

    def _report(self) -> None:
        stats = self.stats
        stats.embeddings_found += 1
        if self._sink is not None:
            self._sink(self.mapping.as_tuple())
        limit = self.config.limit
        if limit is not None and stats.embeddings_found >= limit:
            stats.status = "limit"
            raise _Stop


def match_all(
    q: Hypergraph,
    h: Hypergraph,
    cs: CandidateSpace,
    config: SearchConfig | None = None,
    sink: Sink | None = None,
) -> SearchStats:
    """Report every embedding of ``q`` in ``h`` reachable from ``cs``.

    ``cs`` must already be filtered. Each embedding is passed to ``sink`` once
    as a tuple whose ``i``-th entry is the image of query hyperedge ``i``.
    """
    return Matcher(q, h, cs, config).run(sink)


@dataclass
class QueryResult:
    embeddings: list
    filter_stats: FilterStats
    search_stats: SearchStats


def run_query(
    q: Hypergraph,
    h: Hypergraph,
    idx: SignatureIndex | None = None,
    config: SearchConfig | None = None,
    sink: Sink | None = None,
) -> QueryResult:
    """Validate, build the candidate space, filter it, and search.

    Embeddings are collected into the result unless a ``sink`` is given.
    """
    validate_query(q)
    if idx is None:
        idx = build_index(h)
    cs = build_chs(q, h, idx)
    fstats = initial_filter(q, cs)
    found: list = []
    sstats = match_all(q, h, cs, config, sink if sink is not None else found.append)
    return QueryResult(found, fstats, sstats)
