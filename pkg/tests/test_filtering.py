import pytest

from hypermatch.chs import build_chs
from hypermatch.filtering import initial_filter
from hypermatch.oracle import oracle_subsets
from hypermatch.sigindex import build_index

from conftest import E2, E3, E4, F1, F2, F3, F4, F5, F6, F7, F8, F9, instance_suite, small_suite


def _space(q, h):
    return build_chs(q, h, build_index(h))


def naive_filter(q, h):
    """Global sweeps until nothing changes; no worklist."""
    cs = _space(q, h)
    live = [set(cs.candidates(e)) for e in range(q.num_edges)]
    changed = True
    while changed:
        changed = False
        for e in range(q.num_edges):
            for f in list(live[e]):
                for e2 in q.edge_adjacency[e]:
                    if not cs.connected(e, f, e2) & live[e2]:
                        live[e].discard(f)
                        changed = True
                        break
    return tuple(frozenset(s) for s in live)


def test_example_removals(example):
    q, h, _ = example
    cs = _space(q, h)
    stats = initial_filter(q, cs)
    assert cs.live_sets() == ({F1, F2}, {F3, F4}, {F7, F8}, {F3, F4, F5})
    assert (stats.candidates_before, stats.candidates_after) == (13, 9)
    assert stats.removed == 4
    assert stats.connections_after < stats.connections_before


def test_example_removed_pairs(example):
    q, h, _ = example
    cs = _space(q, h)
    before = cs.live_sets()
    initial_filter(q, cs)
    gone = {(e, f) for e in range(4) for f in before[e] - cs.live_sets()[e]}
    assert gone == {(E4, F6), (E2, F5), (E2, F6), (E3, F9)}


def test_matches_naive_fixpoint():
    for h, q in small_suite():
        cs = _space(q, h)
        initial_filter(q, cs)
        assert cs.live_sets() == naive_filter(q, h)


def test_idempotent_and_order_independent():
    for h, q in small_suite():
        cs = _space(q, h)
        initial_filter(q, cs)
        reference = cs.live_sets()
        assert initial_filter(q, cs).removed == 0
        for seed in range(5):
            other = _space(q, h)
            initial_filter(q, other, shuffle_seed=seed)
            assert other.live_sets() == reference


@pytest.mark.parametrize("chunk", range(4))
def test_keeps_every_embedding_edge(chunk):
    for h, q in instance_suite()[chunk::4][:25]:
        cs = _space(q, h)
        initial_filter(q, cs)
        live = cs.live_sets()
        for emb in oracle_subsets(q, h):
            assert all(f in live[e] for e, f in enumerate(emb))


def test_work_is_quadratically_bounded():
    for h, q in small_suite():
        cs = _space(q, h)
        total = cs.total_candidates()
        assert initial_filter(q, cs).pairs_processed <= 4 * total * total
