import io

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hypermatch.errors import (
    DisconnectedQueryError,
    HypergraphParseError,
    NormalizationError,
    QueryCapacityError,
    VertexReferenceError,
)
from hypermatch.hypergraph import (
    Hypergraph,
    LabelTable,
    intersection_signature,
    parse_hypergraph,
    serialize_hypergraph,
    signature_of,
    validate_query,
)

from conftest import E1, E2, F2, F3

A, B = 0, 1  # interning order in the worked example


def test_minimal_instance():
    h, labels = parse_hypergraph("t 2 1\nv 0 A\nv 1 A\ne 0 1\n")
    assert (h.num_vertices, h.num_edges) == (2, 1)
    assert labels.name(h.vertex_labels[0]) == "A"


def test_reordered_duplicate_edge_is_dropped():
    h, _ = parse_hypergraph("t 2 2\nv 0 A\nv 1 A\ne 0 1\ne 1 0\n")
    assert h.edges == ((0, 1),)
    assert h.normalization.duplicate_edges == 1


def test_repeated_vertex_is_collapsed():
    h, _ = parse_hypergraph("t 2 1\nv 1 A\nv 0 B\ne 1 0 1\n")
    assert h.edges == ((0, 1),)
    assert h.normalization.duplicate_vertices == 1


def test_edges_renumbered_densely_after_dedup():
    text = "t 3 4\nv 0 A\nv 1 A\nv 2 A\ne 0 1\ne 1 0\ne 1 2\ne 0 2\n"
    h, _ = parse_hypergraph(text)
    assert h.edges == ((0, 1), (1, 2), (0, 2))


def test_accepts_bytes_and_files():
    text = "# c\nt 1 1\nv 0 X\ne 0\n"
    assert parse_hypergraph(text.encode())[0] == parse_hypergraph(io.StringIO(text))[0]


def test_example_parses(example):
    q, h, labels = example
    assert (h.num_vertices, h.num_edges) == (12, 9)
    assert (q.num_vertices, q.num_edges) == (7, 4)
    assert list(labels) == ["A", "B"]


@pytest.mark.parametrize(
    "text, exc, line",
    [
        ("v 0 A\n", HypergraphParseError, 1),
        ("t 1\n", HypergraphParseError, 1),
        ("t 1 1\nv 0 A\ne x\n", HypergraphParseError, 3),
        ("t 1 1\nv 0 A\ne 0 1\n", VertexReferenceError, 3),
        ("t 1 1\nv 3 A\ne 0\n", VertexReferenceError, 2),
        ("t 1 1\nv 0 A\ne\n", NormalizationError, 3),
        ("t 2 1\nv 0 A\nv 1 A\ne 0\n", NormalizationError, None),
        ("t 1 1\nv 0 A\nv 0 B\ne 0\n", HypergraphParseError, 3),
        ("t 1 2\nv 0 A\ne 0\n", HypergraphParseError, 4),
        ("t 1 1\ne 0\nv 0 A\n", HypergraphParseError, 2),
        ("t 1 1\nv 0 A\ne 0\nq 1\n", HypergraphParseError, 4),
    ],
)
def test_parse_errors(text, exc, line):
    with pytest.raises(exc) as info:
        parse_hypergraph(text)
    assert info.value.line == line


def test_constructor_rejects_invariant_violations():
    with pytest.raises(NormalizationError):
        Hypergraph([0, 0], [(1, 0)])
    with pytest.raises(NormalizationError):
        Hypergraph([0, 0], [(0, 1), (0, 1)])
    with pytest.raises(VertexReferenceError):
        Hypergraph([0], [(0, 1)])


def test_label_table_roundtrip():
    t = LabelTable()
    ids = [t.intern(s) for s in ["x", "y", "x", "z"]]
    assert ids == [0, 1, 0, 2]
    assert [t.name(t.id_of(s)) for s in "xyz"] == list("xyz")


# -- signatures ------------------------------------------------------------


def test_example_signatures(example):
    q, h, _ = example
    assert signature_of(q, q.edges[E1]) == (A, A, A, B, B)
    assert signature_of(q, q.edges[E2]) == (A, A, A)
    assert signature_of(h, h.edges[F3]) == (A, A, A)
    assert signature_of(q, []) == ()


def test_example_intersection_signatures(example):
    q, h, _ = example
    assert intersection_signature(q, E1, q, E2) == (A, A)
    assert intersection_signature(h, F2, h, F3) == (A,)
    for e in range(q.num_edges):
        assert intersection_signature(q, e, q, e) == signature_of(q, q.edges[e])


def test_signature_reference_errors(example):
    q, _, _ = example
    with pytest.raises(VertexReferenceError):
        signature_of(q, [99])
    with pytest.raises(VertexReferenceError):
        intersection_signature(q, 0, q, 17)


# -- query validation ------------------------------------------------------


def test_example_query_is_valid(example):
    validate_query(example[0])


def test_disconnected_query():
    q = Hypergraph([0] * 4, [(0, 1), (2, 3)])
    with pytest.raises(DisconnectedQueryError):
        validate_query(q)


def test_query_capacity():
    # 65 hyperedges all sharing vertex 0
    q = Hypergraph([0] * 66, [(0, i) for i in range(1, 66)])
    with pytest.raises(QueryCapacityError):
        validate_query(q)
    validate_query(Hypergraph([0] * 65, [(0, i) for i in range(1, 65)]))


# -- properties ------------------------------------------------------------


@st.composite
def hypergraphs(draw, max_vertices=9, max_edges=10, max_labels=3):
    n = draw(st.integers(1, max_vertices))
    labels = draw(st.lists(st.integers(0, max_labels - 1), min_size=n, max_size=n))
    raw = draw(
        st.lists(
            st.lists(st.integers(0, n - 1), min_size=1, max_size=4),
            min_size=1,
            max_size=max_edges,
        )
    )
    covered = {v for e in raw for v in e}
    raw.extend([v] for v in range(n) if v not in covered)
    return Hypergraph.from_edges(labels, raw)


@settings(max_examples=150, deadline=None)
@given(hypergraphs())
def test_indexes_match_recomputation(h):
    for v in range(h.num_vertices):
        assert h.incidence[v] == tuple(i for i, e in enumerate(h.edges) if v in e)
    for i, e in enumerate(h.edges):
        expected = tuple(
            j for j, g in enumerate(h.edges) if j != i and set(e) & set(g)
        )
        assert h.edge_adjacency[i] == expected
    assert set().union(*map(set, h.edges)) == set(range(h.num_vertices))


@settings(max_examples=150, deadline=None)
@given(hypergraphs(), st.data())
def test_signature_of_disjoint_union(h, data):
    vs = list(range(h.num_vertices))
    s1 = set(data.draw(st.lists(st.sampled_from(vs), unique=True)))
    s2 = set(data.draw(st.lists(st.sampled_from(vs), unique=True))) - s1
    merged = tuple(sorted(signature_of(h, s1) + signature_of(h, s2)))
    assert signature_of(h, s1 | s2) == merged


@settings(max_examples=150, deadline=None)
@given(hypergraphs(), st.data())
def test_intersection_signature_symmetric_and_matches_sets(h, data):
    e = data.draw(st.integers(0, h.num_edges - 1))
    f = data.draw(st.integers(0, h.num_edges - 1))
    sig = intersection_signature(h, e, h, f)
    assert sig == intersection_signature(h, f, h, e)
    assert sig == signature_of(h, set(h.edges[e]) & set(h.edges[f]))


@settings(max_examples=150, deadline=None)
@given(hypergraphs())
def test_serialize_parse_fixpoint(h):
    labels = LabelTable.numbered(3)
    text = serialize_hypergraph(h, labels)
    again, _ = parse_hypergraph(text, LabelTable.numbered(3))
    assert again == h
    assert serialize_hypergraph(again, labels) == text
    assert not again.normalization.changed
