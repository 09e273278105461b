"""Labeled hypergraphs, label interning, signatures and the text format.

A hypergraph here is a vertex set ``0..n-1`` with one label id per vertex and
a list of hyperedges, each a strictly ascending tuple of vertex ids. Vertex
lists are kept sorted so that intersections are linear merges.

The line-oriented text format::

    # comment
    t <num_vertices> <num_edges>
    v <vertex_id> <label>        (num_vertices lines, any order)
    e <v> <v> ...                (num_edges lines)

Parsing normalizes the input: repeated vertices inside one ``e`` line are
collapsed and hyperedges with an identical vertex set are dropped, keeping the
first occurrence. Surviving hyperedges are renumbered densely in file order.
"""

from __future__ import annotations

import io
import os
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence, Union

from hypermatch.errors import (
    DisconnectedQueryError,
    HypergraphParseError,
    NormalizationError,
    QueryCapacityError,
    VertexReferenceError,
)

__all__ = [
    "LabelTable",
    "Hypergraph",
    "NormalizationStats",
    "Signature",
    "MAX_QUERY_EDGES",
    "parse_hypergraph",
    "load_hypergraph",
    "serialize_hypergraph",
    "signature_of",
    "intersection_signature",
    "validate_query",
]

#: Sorted tuple of label ids, multiplicity preserved.
Signature = tuple

#: Cell bitmaps are one machine word wide.
MAX_QUERY_EDGES = 64


class LabelTable:
    """Bidirectional interning of label strings to dense ids ``0, 1, ...``."""

    def __init__(self, names: Iterable[str] = ()):
        self._names: list[str] = []
        self._ids: dict[str, int] = {}
        for name in names:
            self.intern(name)

    def intern(self, name: str) -> int:
        label_id = self._ids.get(name)
        if label_id is None:
            label_id = len(self._names)
            self._ids[name] = label_id
            self._names.append(name)
        return label_id

    def id_of(self, name: str) -> int:
        return self._ids[name]

    def name(self, label_id: int) -> str:
        return self._names[label_id]

    def __contains__(self, name: object) -> bool:
        return name in self._ids

    def __len__(self) -> int:
        return len(self._names)

    def __iter__(self):
        return iter(self._names)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LabelTable):
            return NotImplemented
        return self._names == other._names

    def __repr__(self) -> str:
        return f"LabelTable({self._names!r})"

    @classmethod
    def numbered(cls, count: int) -> LabelTable:
        """Table whose label ``i`` is named ``"L<i>"``."""
        return cls(f"L{i}" for i in range(count))


@dataclass(frozen=True)
class NormalizationStats:
    """What parsing had to clean up."""

    duplicate_vertices: int = 0
    duplicate_edges: int = 0

    @property
    def changed(self) -> bool:
        return bool(self.duplicate_vertices or self.duplicate_edges)


class Hypergraph:
    """Immutable vertex-labeled simple hypergraph.

    Parameters
    ----------
    vertex_labels : sequence of int
        Label id of each vertex; the vertex set is ``range(len(vertex_labels))``.
    edges : sequence of sequences of int
        Hyperedges. Each must already be strictly ascending and the set of
        hyperedges must be free of duplicates; use :meth:`from_edges` to
        normalize raw input instead.

    Raises
    ------
    NormalizationError
        If an invariant of a simple hypergraph is violated.
    VertexReferenceError
        If a hyperedge names a vertex outside the vertex set.
    """

    __slots__ = (
        "vertex_labels",
        "edges",
        "incidence",
        "edge_adjacency",
        "normalization",
        "_edge_ids",
    )

    def __init__(
        self,
        vertex_labels: Sequence[int],
        edges: Sequence[Sequence[int]],
        normalization: NormalizationStats | None = None,
    ):
        labels = tuple(int(x) for x in vertex_labels)
        n = len(labels)
        if any(x < 0 for x in labels):
            raise NormalizationError("label ids must be nonnegative")
        edge_tuples = tuple(tuple(edge) for edge in edges)
        edge_ids: dict[tuple[int, ...], int] = {}
        covered = bytearray(n)
        for i, edge in enumerate(edge_tuples):
            if not edge:
                raise NormalizationError(f"hyperedge {i} is empty")
            for a, b in zip(edge, edge[1:]):
                if a >= b:
                    raise NormalizationError(
                        f"hyperedge {i} is not strictly ascending: {edge}"
                    )
            if edge[0] < 0 or edge[-1] >= n:
                raise VertexReferenceError(
                    f"hyperedge {i} references a vertex outside 0..{n - 1}"
                )
            if edge in edge_ids:
                raise NormalizationError(
                    f"hyperedges {edge_ids[edge]} and {i} have the same vertex set"
                )
            edge_ids[edge] = i
            for v in edge:
                covered[v] = 1
        if not all(covered):
            missing = covered.index(0)
            raise NormalizationError(f"vertex {missing} is not in any hyperedge")

        incidence: list[list[int]] = [[] for _ in range(n)]
        for i, edge in enumerate(edge_tuples):
            for v in edge:
                incidence[v].append(i)
        adjacency: list[tuple[int, ...]] = []
        for i, edge in enumerate(edge_tuples):
            neighbours = set()
            for v in edge:
                neighbours.update(incidence[v])
            neighbours.discard(i)
            adjacency.append(tuple(sorted(neighbours)))

        self.vertex_labels = labels
        self.edges = edge_tuples
        self.incidence = tuple(tuple(x) for x in incidence)
        self.edge_adjacency = tuple(adjacency)
        self.normalization = normalization or NormalizationStats()
        self._edge_ids = edge_ids

    @classmethod
    def from_edges(
        cls, vertex_labels: Sequence[int], edges: Iterable[Iterable[int]]
    ) -> Hypergraph:
        """Normalize raw hyperedges (collapse repeats, drop duplicate edges)."""
        normalized, stats = _normalize_edges(edges)
        return cls(vertex_labels, normalized, stats)

    @property
    def num_vertices(self) -> int:
        return len(self.vertex_labels)

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def edge_id(self, vertices: Iterable[int]) -> int | None:
        """Id of the hyperedge with exactly this vertex set, if any."""
        return self._edge_ids.get(tuple(sorted(set(vertices))))

    def has_edge(self, vertices: Iterable[int]) -> bool:
        return self.edge_id(vertices) is not None

    def label_set(self) -> set[int]:
        return set(self.vertex_labels)

    def arity_stats(self) -> tuple[int, float]:
        """``(max_arity, mean_arity)``."""
        sizes = [len(e) for e in self.edges]
        if not sizes:
            return 0, 0.0
        return max(sizes), sum(sizes) / len(sizes)

    def subhypergraph(self, edge_ids: Sequence[int]) -> Hypergraph:
        """Hypergraph induced by ``edge_ids``; vertices renumbered ascending.

        Hyperedges keep the order given in ``edge_ids``.
        """
        vertices = sorted({v for i in edge_ids for v in self.edges[i]})
        remap = {v: k for k, v in enumerate(vertices)}
        labels = [self.vertex_labels[v] for v in vertices]
        edges = [tuple(remap[v] for v in self.edges[i]) for i in edge_ids]
        return Hypergraph(labels, edges)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Hypergraph):
            return NotImplemented
        return self.vertex_labels == other.vertex_labels and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self.vertex_labels, self.edges))

    def __repr__(self) -> str:
        return f"Hypergraph(|V|={self.num_vertices}, |E|={self.num_edges})"


def _normalize_edges(
    edges: Iterable[Iterable[int]],
) -> tuple[list[tuple[int, ...]], NormalizationStats]:
    seen: set[tuple[int, ...]] = set()
    result = []
    dup_vertices = dup_edges = 0
    for raw in edges:
        raw = list(raw)
        edge = tuple(sorted(set(raw)))
        dup_vertices += len(raw) - len(edge)
        if edge in seen:
            dup_edges += 1
            continue
        seen.add(edge)
        result.append(edge)
    return result, NormalizationStats(dup_vertices, dup_edges)


Source = Union[str, bytes, io.IOBase]


def _text_lines(source: Source) -> list[str]:
    if isinstance(source, bytes):
        source = source.decode("utf-8")
    elif not isinstance(source, str):
        data = source.read()
        source = data.decode("utf-8") if isinstance(data, bytes) else data
    return source.splitlines()


def _ints(tokens: Sequence[str], lineno: int) -> list[int]:
    try:
        return [int(t, 10) for t in tokens]
    except ValueError:
        raise HypergraphParseError(f"expected integers, got {' '.join(tokens)!r}", lineno)


def parse_hypergraph(
    source: Source, labels: LabelTable | None = None
) -> tuple[Hypergraph, LabelTable]:
    """Parse and normalize a hypergraph from text, bytes or a file object.

    Pass the same ``labels`` table when reading a query and a data hypergraph
    so their label ids agree.
    """
    labels = LabelTable() if labels is None else labels
    header = None
    vertex_labels: list[int | None] = []
    raw_edges: list[list[int]] = []
    num_vertices = num_edges = 0
    seen_vertices = 0
    lineno = 0
    for lineno, line in enumerate(_text_lines(source), start=1):
        tokens = line.split()
        if not tokens or tokens[0].startswith("#"):
            continue
        kind, args = tokens[0], tokens[1:]
        if header is None:
            if kind != "t" or len(args) != 2:
                raise HypergraphParseError("expected header 't <|V|> <|E|>'", lineno)
            num_vertices, num_edges = _ints(args, lineno)
            if num_vertices < 0 or num_edges < 0:
                raise HypergraphParseError("negative size in header", lineno)
            header = (num_vertices, num_edges)
            vertex_labels = [None] * num_vertices
            continue
        if kind == "v":
            if seen_vertices == num_vertices:
                raise HypergraphParseError("more vertex lines than declared", lineno)
            if raw_edges:
                raise HypergraphParseError("vertex line after edge lines", lineno)
            if len(args) != 2:
                raise HypergraphParseError("expected 'v <id> <label>'", lineno)
            (vid,) = _ints(args[:1], lineno)
            if not 0 <= vid < num_vertices:
                raise VertexReferenceError(
                    f"vertex id {vid} outside 0..{num_vertices - 1}", lineno
                )
            if vertex_labels[vid] is not None:
                raise HypergraphParseError(f"vertex {vid} declared twice", lineno)
            vertex_labels[vid] = labels.intern(args[1])
            seen_vertices += 1
        elif kind == "e":
            if seen_vertices != num_vertices:
                raise HypergraphParseError("edge line before all vertices", lineno)
            if len(raw_edges) == num_edges:
                raise HypergraphParseError("more edge lines than declared", lineno)
            ids = _ints(args, lineno)
            if not ids:
                raise NormalizationError("empty hyperedge", lineno)
            for v in ids:
                if not 0 <= v < num_vertices:
                    raise VertexReferenceError(
                        f"dangling vertex id {v} (|V|={num_vertices})", lineno
                    )
            raw_edges.append(ids)
        else:
            raise HypergraphParseError(f"unknown line type {kind!r}", lineno)
    if header is None:
        raise HypergraphParseError("missing header", lineno + 1)
    if seen_vertices != num_vertices or len(raw_edges) != num_edges:
        raise HypergraphParseError(
            f"expected {num_vertices} vertices and {num_edges} edges, "
            f"got {seen_vertices} and {len(raw_edges)}",
            lineno + 1,
        )
    normalized, stats = _normalize_edges(raw_edges)
    return Hypergraph(vertex_labels, normalized, stats), labels


def load_hypergraph(
    path: str | os.PathLike, labels: LabelTable | None = None
) -> tuple[Hypergraph, LabelTable]:
    with open(path, "rb") as fh:
        return parse_hypergraph(fh.read(), labels)


def serialize_hypergraph(h: Hypergraph, labels: LabelTable | None = None) -> str:
    """Text form of ``h``; labels fall back to ``L<id>`` without a table."""

    def name(label_id: int) -> str:
        return labels.name(label_id) if labels is not None else f"L{label_id}"

    out = [f"t {h.num_vertices} {h.num_edges}"]
    out.extend(f"v {v} {name(lab)}" for v, lab in enumerate(h.vertex_labels))
    out.extend("e " + " ".join(map(str, edge)) for edge in h.edges)
    return "\n".join(out) + "\n"


def signature_of(h: Hypergraph, vertices: Iterable[int]) -> Signature:
    labels = h.vertex_labels
    n = len(labels)
    out = []
    for v in vertices:
        if not 0 <= v < n:
            raise VertexReferenceError(f"vertex id {v} outside 0..{n - 1}")
        out.append(labels[v])
    out.sort()
    return tuple(out)


def intersection_signature(h1: Hypergraph, e: int, h2: Hypergraph, f: int) -> Signature:
    """Signature of ``h1.edges[e] & h2.edges[f]`` labelled through ``h1``.

    Only meaningful when both ids live in the same vertex space, i.e. ``h1 is
    h2``.
    """
    for h, i in ((h1, e), (h2, f)):
        if not 0 <= i < h.num_edges:
            raise VertexReferenceError(f"hyperedge id {i} outside 0..{h.num_edges - 1}")
    a, b = h1.edges[e], h2.edges[f]
    labels = h1.vertex_labels
    out = []
    i = j = 0
    while i < len(a) and j < len(b):
        x, y = a[i], b[j]
        if x == y:
            out.append(labels[x])
            i += 1
            j += 1
        elif x < y:
            i += 1
        else:
            j += 1
    out.sort()
    return tuple(out)


def validate_query(q: Hypergraph) -> None:
    """Raise unless ``q`` is a connected query with 1..64 hyperedges."""
    m = q.num_edges
    if m == 0:
        raise QueryCapacityError("query has no hyperedges")
    if m > MAX_QUERY_EDGES:
        raise QueryCapacityError(
            f"query has {m} hyperedges; at most {MAX_QUERY_EDGES} are supported"
        )
    seen = [False] * m
    seen[0] = True
    todo = deque([0])
    reached = 1
    while todo:
        e = todo.popleft()
        for nb in q.edge_adjacency[e]:
            if not seen[nb]:
                seen[nb] = True
                reached += 1
                todo.append(nb)
    if reached != m:
        raise DisconnectedQueryError(
            f"query is disconnected: only {reached} of {m} hyperedges reachable from hyperedge 0"
        )
