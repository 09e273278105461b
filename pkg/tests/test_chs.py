import random

import pytest

from hypermatch.chs import build_chs
from hypermatch.errors import ContractViolation
from hypermatch.hypergraph import intersection_signature
from hypermatch.sigindex import build_index

from conftest import E1, E2, E3, E4, F1, F2, F3, F4, F5, F6, F7, F8, F9, small_suite


def _space(q, h):
    return build_chs(q, h, build_index(h))


def test_example_initial_candidates(example):
    q, h, _ = example
    cs = _space(q, h)
    assert cs.live_sets() == (
        {F1, F2},
        {F3, F4, F5, F6},
        {F7, F8, F9},
        {F3, F4, F5, F6},
    )


def test_example_connections(example):
    q, h, _ = example
    cs = _space(q, h)
    assert cs.is_connected(E1, F1, E2, F3)
    assert not cs.is_connected(E1, F2, E2, F3)
    assert not cs.is_connected(E1, F1, E2, F6)
    assert cs.connected(E1, F1, E2) == {F3, F4, F5}
    with pytest.raises(ContractViolation):
        cs.is_connected(E3, F7, E4, F5)
    assert (E3, E4) not in cs.adjacent_pairs()


def test_connections_are_symmetric_and_exact():
    for h, q in small_suite():
        cs = _space(q, h)
        for e, e2 in cs.adjacent_pairs():
            want = intersection_signature(q, e, q, e2)
            for f in cs.candidates(e):
                for g in cs.candidates(e2):
                    linked = f != g and bool(set(h.edges[f]) & set(h.edges[g])) and (
                        intersection_signature(h, f, h, g) == want
                    )
                    assert cs.is_connected(e, f, e2, g) == linked
                    assert cs.is_connected(e2, g, e, f) == linked


def test_remove_and_rollback_restore_exact_order(example):
    q, h, _ = example
    cs = _space(q, h)
    before = cs.snapshot()
    outer = cs.checkpoint()
    cs.remove(E2, F3)
    inner = cs.checkpoint()
    cs.remove(E2, F6)
    cs.remove(E4, F4)
    assert cs.live_sets()[E2] == {F4, F5}
    assert set(cs.adjacent_candidates(E1, F1, E2)) == {F4, F5}
    with pytest.raises(ContractViolation):
        cs.rollback(outer)
    cs.rollback(inner)
    assert cs.live_sets()[E2] == {F4, F5, F6}
    cs.rollback(outer)
    assert cs.snapshot() == before
    assert cs.journal_length == 0


def test_remove_missing_candidate(example):
    q, h, _ = example
    cs = _space(q, h)
    with pytest.raises(ContractViolation):
        cs.remove(E1, F9)


@pytest.mark.parametrize("seed", range(25))
def test_random_journal_matches_model(seed, example):
    q, h, _ = example
    cs = _space(q, h)
    rng = random.Random(seed)
    stack = [(cs.checkpoint(), cs.snapshot())]
    for _ in range(60):
        op = rng.random()
        if op < 0.5:
            live = [(e, f) for e in range(q.num_edges) for f in cs.candidates(e)]
            if live:
                e, f = rng.choice(live)
                cs.remove(e, f)
                assert not cs.contains(e, f)
        elif op < 0.75:
            stack.append((cs.checkpoint(), cs.snapshot()))
        elif len(stack) > 1:
            mark, snap = stack.pop()
            cs.rollback(mark)
            assert cs.snapshot() == snap
        for e in range(q.num_edges):
            assert {f: i for i, f in enumerate(cs.candidates(e))} == cs.members(e)
    while stack:
        mark, snap = stack.pop()
        cs.rollback(mark)
        assert cs.snapshot() == snap


def test_connection_count_drops_with_removal(example):
    q, h, _ = example
    cs = _space(q, h)
    total = cs.connection_count(live=False)
    assert cs.connection_count() == total
    cs.remove(E1, F1)
    assert cs.connection_count() < total
    assert cs.connection_count(live=False) == total
