"""Candidate hyperedge space with journaled removal.

For every query hyperedge ``e`` the space holds a candidate set ``C(e)`` of
data hyperedges with the same signature. For every ordered pair ``(e, e2)`` of
adjacent query hyperedges and every ``f`` in ``C(e)`` it records the data
hyperedges ``g`` in ``C(e2)`` that are adjacent to ``f`` and satisfy
``Sig(e & e2) == Sig(f & g)``.

Connections are fixed at build time. Removing a candidate only changes set
membership, so a connection is *live* when both ends are still candidates.
"""

from __future__ import annotations

from typing import Iterator, NamedTuple

from hypermatch.errors import ContractViolation
from hypermatch.hypergraph import Hypergraph, Signature, intersection_signature, signature_of
from hypermatch.sigindex import SignatureIndex

__all__ = ["CandidateSpace", "Mark", "build_chs"]


class Mark(NamedTuple):
    """Checkpoint token; only valid for LIFO rollback."""

    depth: int
    journal_length: int


_EMPTY: frozenset = frozenset()


class CandidateSpace:
    """Mutable candidate sets over a fixed connection structure.

    Candidate sets are dense lists with a position map, which makes removal an
    O(1) swap with the last element. Each removal is journaled together with
    its former position so that rollback restores the exact list order.
    """

    def __init__(self, q: Hypergraph, h: Hypergraph, candidates, connections, pair_signatures):
        self.q = q
        self.h = h
        self._cands: list[list[int]] = [list(c) for c in candidates]
        self._pos: list[dict[int, int]] = [
            {f: i for i, f in enumerate(c)} for c in self._cands
        ]
        self._conn: dict[tuple[int, int], dict[int, frozenset]] = connections
        self.pair_signatures: dict[tuple[int, int], Signature] = pair_signatures
        self._journal: list[tuple[int, int, int]] = []
        self._marks: list[Mark] = []

    # -- candidate sets -------------------------------------------------
    @property
    def num_query_edges(self) -> int:
        return len(self._cands)

    def candidates(self, e: int) -> list[int]:
        """Live view of ``C(e)``; copy it before mutating the space."""
        return self._cands[e]

    def size(self, e: int) -> int:
        return len(self._cands[e])

    def members(self, e: int) -> dict[int, int]:
        """Read-only position map of ``C(e)``; supports O(1) ``in`` tests."""
        return self._pos[e]

    def contains(self, e: int, f: int) -> bool:
        return f in self._pos[e]

    def total_candidates(self) -> int:
        return sum(len(c) for c in self._cands)

    def any_empty(self) -> bool:
        return any(not c for c in self._cands)

    def remove(self, e: int, f: int) -> None:
        pos = self._pos[e]
        i = pos.pop(f, None)
        if i is None:
            raise ContractViolation(f"data hyperedge {f} is not a candidate of {e}")
        cands = self._cands[e]
        last = cands.pop()
        if last != f:
            cands[i] = last
            pos[last] = i
        self._journal.append((e, f, i))

    # -- journal --------------------------------------------------------
    def checkpoint(self) -> Mark:
        mark = Mark(len(self._marks), len(self._journal))
        self._marks.append(mark)
        return mark

    def rollback(self, mark: Mark) -> None:
        if not self._marks or self._marks[-1] != mark:
            raise ContractViolation(f"rollback to {mark} is out of LIFO order")
        self._marks.pop()
        journal = self._journal
        while len(journal) > mark.journal_length:
            e, f, i = journal.pop()
            cands = self._cands[e]
            pos = self._pos[e]
            cands.append(f)
            if i != len(cands) - 1:
                moved = cands[i]
                cands[i], cands[-1] = f, moved
                pos[moved] = len(cands) - 1
            pos[f] = i

    @property
    def journal_length(self) -> int:
        return len(self._journal)

    # -- connections ----------------------------------------------------
    def _pair(self, e: int, e2: int) -> dict[int, frozenset]:
        try:
            return self._conn[(e, e2)]
        except KeyError:
            raise ContractViolation(
                f"query hyperedges {e} and {e2} are not adjacent"
            ) from None

    def is_connected(self, e: int, f: int, e2: int, f2: int) -> bool:
        return f2 in self._pair(e, e2).get(f, _EMPTY)

    def connected(self, e: int, f: int, e2: int) -> frozenset:
        """All data hyperedges ever connected to ``f`` on the ``e2`` side."""
        return self._pair(e, e2).get(f, _EMPTY)

    def adjacent_candidates(self, e: int, f: int, e2: int) -> Iterator[int]:
        """Live members of ``C(e2 | e, f)``."""
        pos = self._pos[e2]
        return (g for g in self._pair(e, e2).get(f, _EMPTY) if g in pos)

    def adjacent_pairs(self) -> list[tuple[int, int]]:
        return list(self._conn)

    def connection_count(self, live: bool = True) -> int:
        """Number of ordered connections ``(e, f, e2, g)``; each link counts twice."""
        total = 0
        for (e, e2), table in self._conn.items():
            if not live:
                total += sum(len(s) for s in table.values())
                continue
            pos_e, pos_e2 = self._pos[e], self._pos[e2]
            for f, targets in table.items():
                if f in pos_e:
                    total += sum(1 for g in targets if g in pos_e2)
        return total

    def snapshot(self) -> tuple[tuple[int, ...], ...]:
        """Exact candidate lists, for equality checks in tests."""
        return tuple(tuple(c) for c in self._cands)

    def live_sets(self) -> tuple[frozenset, ...]:
        return tuple(frozenset(c) for c in self._cands)


def build_chs(q: Hypergraph, h: Hypergraph, idx: SignatureIndex) -> CandidateSpace:
    """Initial candidate space: signature buckets plus connections.

    Connection discovery walks the data adjacency list of each candidate
    instead of scanning the whole candidate set of the neighbouring query edge.
    """
    candidates = [idx.lookup(signature_of(q, edge)) for edge in q.edges]
    member = [set(c) for c in candidates]
    pair_signatures: dict[tuple[int, int], Signature] = {}
    links: dict[tuple[int, int], dict[int, set]] = {}
    for e in range(q.num_edges):
        for e2 in q.edge_adjacency[e]:
            pair_signatures[(e, e2)] = intersection_signature(q, e, q, e2)
            links[(e, e2)] = {}
    for e in range(q.num_edges):
        for e2 in q.edge_adjacency[e]:
            if e2 < e:
                continue
            wanted = pair_signatures[(e, e2)]
            forward, backward = links[(e, e2)], links[(e2, e)]
            targets = member[e2]
            for f in candidates[e]:
                for g in h.edge_adjacency[f]:
                    if g in targets and intersection_signature(h, f, h, g) == wanted:
                        forward.setdefault(f, set()).add(g)
                        backward.setdefault(g, set()).add(f)
    connections = {
        pair: {f: frozenset(gs) for f, gs in table.items()} for pair, table in links.items()
    }
    return CandidateSpace(q, h, candidates, connections, pair_signatures)
