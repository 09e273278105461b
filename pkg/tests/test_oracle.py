import pytest

from hypermatch.errors import GenerationError, ScaleGuardError
from hypermatch.hypergraph import Hypergraph, validate_query
from hypermatch.oracle import (
    gen_query,
    gen_random_hypergraph,
    is_embedding,
    label_histogram,
    oracle_subsets,
    oracle_vertexiso,
    random_walk_edges,
)
from hypermatch.samples import EXPECTED_EMBEDDING

from conftest import F1, F3, F4, F8, small_suite


def test_example_oracles(example):
    q, h, _ = example
    assert oracle_subsets(q, h) == {EXPECTED_EMBEDDING}
    assert oracle_vertexiso(q, h) == {EXPECTED_EMBEDDING}


def test_wrong_mapping_rejected(example):
    q, h, _ = example
    assert is_embedding(q, h, EXPECTED_EMBEDDING)
    assert not is_embedding(q, h, (F1, F3, F8, F4))
    assert not is_embedding(q, h, (F1, F3, F3, F4))
    assert not is_embedding(q, h, (F1, F3))


def test_identity_is_found():
    h = gen_random_hypergraph(11, 12, 8, 2, (2, 4))
    edges = random_walk_edges(3, h, 3)
    q = h.subhypergraph(edges)
    assert tuple(edges) in oracle_subsets(q, h)


def test_symmetric_query_counts_hyperedge_sets_once():
    # a triangle of pairs in a triangle of pairs: 6 edge maps, 6 vertex maps
    tri = Hypergraph([0, 0, 0], [(0, 1), (1, 2), (0, 2)])
    assert len(oracle_subsets(tri, tri)) == 6
    # one pair of twins: swapping them keeps every hyperedge image
    q = Hypergraph([0, 0, 0], [(0, 1, 2)])
    assert oracle_vertexiso(q, q) == {(0,)}


def test_oracles_agree_on_suite():
    for h, q in small_suite():
        assert oracle_subsets(q, h) == oracle_vertexiso(q, h)


def test_scale_guard(example):
    q, h, _ = example
    with pytest.raises(ScaleGuardError):
        oracle_subsets(q, h, max_query_edges=3)
    with pytest.raises(ScaleGuardError):
        oracle_vertexiso(q, h, max_data_edges=5)


def test_generators_are_deterministic():
    a = gen_random_hypergraph(42, 50, 80, 3)
    assert a == gen_random_hypergraph(42, 50, 80, 3)
    assert a != gen_random_hypergraph(43, 50, 80, 3)
    assert gen_query(1, a, 4) == gen_query(1, a, 4)


def test_generated_data_is_normalized():
    for seed in range(20):
        h = gen_random_hypergraph(seed, 30, 40, 2, (2, 6))
        assert h.num_edges == 40
        assert all(2 <= len(e) <= 6 for e in h.edges)
        assert len(set(h.edges)) == 40
        assert sum(label_histogram(h).values()) == 30


def test_generated_queries_are_connected():
    h = gen_random_hypergraph(9, 60, 100, 2)
    for seed in range(20):
        q = gen_query(seed, h, 5)
        assert q.num_edges == 5
        validate_query(q)


def test_generation_errors():
    with pytest.raises(GenerationError):
        gen_random_hypergraph(0, 3, 2, 1, (4, 5))
    with pytest.raises(GenerationError):
        gen_random_hypergraph(0, 30, 2, 1, (2, 3))
    h = Hypergraph([0] * 4, [(0, 1), (2, 3)])
    with pytest.raises(GenerationError):
        gen_query(0, h, 2)
    with pytest.raises(GenerationError):
        gen_query(0, h, 3)
