"""Reference enumerators and random instance generators.

Both oracles are exponential and meant for differential testing only. They
share nothing with the engine beyond the :class:`Hypergraph` type.

``oracle_subsets`` accepts an injective signature-preserving hyperedge mapping
iff every subset of query hyperedges intersects to a vertex set with the same
label multiset as the intersection of the images. ``oracle_vertexiso``
enumerates label-preserving injective vertex maps that send every query
hyperedge onto a data hyperedge and projects them to hyperedge mappings.
"""

from __future__ import annotations

import random
from collections import Counter

from hypermatch.errors import GenerationError, ScaleGuardError
from hypermatch.hypergraph import Hypergraph

__all__ = [
    "oracle_subsets",
    "oracle_vertexiso",
    "is_embedding",
    "gen_random_hypergraph",
    "random_walk_edges",
    "gen_query",
]

DEFAULT_MAX_QUERY_EDGES = 6
DEFAULT_MAX_DATA_EDGES = 500


def _guard(q: Hypergraph, h: Hypergraph, max_query_edges: int, max_data_edges: int) -> None:
    if q.num_edges > max_query_edges:
        raise ScaleGuardError(
            f"query has {q.num_edges} hyperedges, oracle limit is {max_query_edges}"
        )
    if h.num_edges > max_data_edges:
        raise ScaleGuardError(
            f"data has {h.num_edges} hyperedges, oracle limit is {max_data_edges}"
        )


def _labels_of(h: Hypergraph, vertices) -> tuple:
    return tuple(sorted(h.vertex_labels[v] for v in vertices))


def is_embedding(q: Hypergraph, h: Hypergraph, mapping) -> bool:
    """Subset-intersection test for a complete hyperedge mapping (a sequence)."""
    m = q.num_edges
    if len(mapping) != m or len(set(mapping)) != m:
        return False
    qsets = [frozenset(e) for e in q.edges]
    hsets = [frozenset(h.edges[f]) for f in mapping]
    inter_q = {0: None}
    inter_h = {0: None}
    for i in range(m):
        for mask in list(inter_q):
            a = qsets[i] if inter_q[mask] is None else inter_q[mask] & qsets[i]
            b = hsets[i] if inter_h[mask] is None else inter_h[mask] & hsets[i]
            if _labels_of(q, a) != _labels_of(h, b):
                return False
            inter_q[mask | 1 << i] = a
            inter_h[mask | 1 << i] = b
    return True


def oracle_subsets(
    q: Hypergraph,
    h: Hypergraph,
    max_query_edges: int = DEFAULT_MAX_QUERY_EDGES,
    max_data_edges: int = DEFAULT_MAX_DATA_EDGES,
) -> set[tuple[int, ...]]:
    """All hyperedge mappings accepted by the subset-intersection test.

    Assignments are built edge by edge over a brute-force signature scan. A
    subset is tested as soon as all its members are assigned, so every subset
    is tested exactly once on each complete assignment.
    """
    _guard(q, h, max_query_edges, max_data_edges)
    m = q.num_edges
    qsets = [frozenset(e) for e in q.edges]
    hsets = [frozenset(e) for e in h.edges]
    hsigs = [_labels_of(h, e) for e in h.edges]
    cands = [[f for f, s in enumerate(hsigs) if s == _labels_of(q, e)] for e in q.edges]
    found: set[tuple[int, ...]] = set()
    chosen: list[int] = []
    used: set[int] = set()
    # intersections over subsets of the assigned prefix; key 0 means "no edge yet"
    inter_q: list[dict[int, frozenset | None]] = [{0: None}]
    inter_h: list[dict[int, frozenset | None]] = [{0: None}]

    def extend(i: int) -> None:
        if i == m:
            found.add(tuple(chosen))
            return
        prev_q, prev_h = inter_q[i], inter_h[i]
        for f in cands[i]:
            if f in used:
                continue
            new_q = dict(prev_q)
            new_h = dict(prev_h)
            ok = True
            for mask, a in prev_q.items():
                b = prev_h[mask]
                a = qsets[i] if a is None else a & qsets[i]
                b = hsets[f] if b is None else b & hsets[f]
                if _labels_of(q, a) != _labels_of(h, b):
                    ok = False
                    break
                new_q[mask | 1 << i] = a
                new_h[mask | 1 << i] = b
            if not ok:
                continue
            chosen.append(f)
            used.add(f)
            inter_q.append(new_q)
            inter_h.append(new_h)
            extend(i + 1)
            inter_h.pop()
            inter_q.pop()
            used.discard(f)
            chosen.pop()

    extend(0)
    return found


def _twin_classes(q: Hypergraph) -> list[int]:
    """Class id per query vertex; twins share label and incident hyperedges."""
    keys: dict[tuple, int] = {}
    return [
        keys.setdefault((q.vertex_labels[u], q.incidence[u]), len(keys))
        for u in range(q.num_vertices)
    ]


def oracle_vertexiso(
    q: Hypergraph,
    h: Hypergraph,
    max_query_edges: int = DEFAULT_MAX_QUERY_EDGES,
    max_data_edges: int = DEFAULT_MAX_DATA_EDGES,
) -> set[tuple[int, ...]]:
    """Hyperedge mappings induced by vertex-level subhypergraph isomorphisms.

    Query vertices with the same label and the same incident hyperedges can be
    permuted freely without changing any hyperedge image, so only vertex maps
    that are increasing within each such class are enumerated.
    """
    _guard(q, h, max_query_edges, max_data_edges)
    m = q.num_edges
    twin = _twin_classes(q)
    qlab, hlab = q.vertex_labels, h.vertex_labels
    phi: dict[int, int] = {}
    used: set[int] = set()
    image: list[int] = []
    found: set[tuple[int, ...]] = set()
    hsets = [frozenset(e) for e in h.edges]
    by_size: dict[int, list[int]] = {}
    for f, edge in enumerate(h.edges):
        by_size.setdefault(len(edge), []).append(f)

    def assign(free_u: list[int], free_v: list[int], k: int, after) -> None:
        if k == len(free_u):
            after()
            return
        u = free_u[k]
        for v in free_v:
            if v in used or hlab[v] != qlab[u]:
                continue
            if k > 0 and twin[free_u[k - 1]] == twin[u] and v < phi[free_u[k - 1]]:
                continue
            phi[u] = v
            used.add(v)
            assign(free_u, free_v, k + 1, after)
            used.discard(v)
            del phi[u]

    def extend(i: int) -> None:
        if i == m:
            found.add(tuple(image))
            return
        edge = q.edges[i]
        mapped = [phi[u] for u in edge if u in phi]
        # twins are adjacent after sorting by class
        free_u = sorted((u for u in edge if u not in phi), key=lambda u: (twin[u], u))
        if mapped:
            pool = h.incidence[mapped[0]]
        else:
            pool = by_size.get(len(edge), ())
        mapped_set = set(mapped)
        for f in pool:
            fset = hsets[f]
            if len(fset) != len(edge) or not mapped_set <= fset:
                continue
            if any(v in used and v not in mapped_set for v in fset):
                continue
            free_v = sorted(v for v in fset if v not in used)
            image.append(f)
            assign(free_u, free_v, 0, lambda: extend(i + 1))
            image.pop()

    extend(0)
    return found


def gen_random_hypergraph(
    seed: int,
    num_vertices: int,
    num_edges: int,
    num_labels: int,
    arity: tuple[int, int] = (2, 6),
    max_retries: int = 1000,
) -> Hypergraph:
    """Seeded random simple hypergraph covering every vertex.

    Labels are uniform over ``0..num_labels-1``. Vertices are first covered in
    a shuffled order, spreading them over the hyperedges; the remaining slots
    are filled with uniform random vertices. Not necessarily connected.
    """
    lo, hi = arity
    if not 1 <= lo <= hi <= num_vertices:
        raise GenerationError(f"arity range {arity} infeasible for {num_vertices} vertices")
    if num_labels < 1 or num_edges < 1:
        raise GenerationError("need at least one label and one hyperedge")
    if num_edges * hi < num_vertices:
        raise GenerationError("too few hyperedges to cover every vertex")
    rng = random.Random(seed)
    labels = [rng.randrange(num_labels) for _ in range(num_vertices)]
    uncovered = list(range(num_vertices))
    rng.shuffle(uncovered)
    edges: list[tuple[int, ...]] = []
    seen: set[tuple[int, ...]] = set()
    for i in range(num_edges):
        remaining = num_edges - i
        need = -(-len(uncovered) // remaining)
        for _ in range(max_retries):
            size = max(rng.randint(lo, hi), need)
            members = set(uncovered[:need])
            while len(members) < size:
                members.add(rng.randrange(num_vertices))
            edge = tuple(sorted(members))
            if edge not in seen:
                break
        else:
            raise GenerationError(f"could not draw a new distinct hyperedge #{i}")
        del uncovered[:need]
        seen.add(edge)
        edges.append(edge)
    return Hypergraph(labels, edges)


def random_walk_edges(seed: int, h: Hypergraph, k: int, retries: int = 64) -> list[int]:
    """Ids of ``k`` data hyperedges picked by a seeded random walk.

    Starts from a uniform hyperedge and repeatedly adds a uniform neighbour of
    a uniform already-picked hyperedge. A walk stuck in a component smaller
    than ``k`` restarts, up to ``retries`` times.
    """
    if k < 1:
        raise GenerationError("query size must be at least 1")
    if h.num_edges < k:
        raise GenerationError(f"data has only {h.num_edges} hyperedges, {k} requested")
    rng = random.Random(seed)
    adj = h.edge_adjacency
    for _ in range(retries):
        start = rng.randrange(h.num_edges)
        picked = [start]
        inside = {start}
        frontier = set(adj[start])
        while len(picked) < k and frontier:
            s = rng.choice(picked)
            if not adj[s]:
                continue
            g = rng.choice(adj[s])
            if g in inside:
                continue
            picked.append(g)
            inside.add(g)
            frontier.update(adj[g])
            frontier -= inside
        if len(picked) == k:
            return picked
    raise GenerationError(f"no connected set of {k} hyperedges found after {retries} walks")


def gen_query(seed: int, h: Hypergraph, k: int, retries: int = 64) -> Hypergraph:
    """Connected ``k``-hyperedge query sampled from ``h`` by a random walk.

    Labels are copied from ``h``; vertices are renumbered densely.
    """
    return h.subhypergraph(random_walk_edges(seed, h, k, retries))


def label_histogram(h: Hypergraph) -> Counter:
    return Counter(h.vertex_labels)
