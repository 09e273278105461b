"""A small labeled query/data pair used as a worked example.

Query vertices ``u1..u7`` and data vertices ``v1..v12`` are stored as ids
``0..6`` and ``0..11``; query hyperedges ``e1..e4`` and data hyperedges
``f1..f9`` as ids ``0..3`` and ``0..8``.

    e1 = {u1 u2 u3 u4 u5}   f1 = {v1 v2 v3 v4 v5}    f6 = {v10 v11 v12}
    e2 = {u1 u2 u6}         f2 = {v1 v6 v7 v8 v9}    f7 = {v1 v12}
    e3 = {u1 u7}            f3 = {v1 v2 v10}         f8 = {v3 v10}
    e4 = {u2 u3 u6}         f4 = {v1 v2 v6}          f9 = {v7 v11}
                            f5 = {v2 v3 v10}

``u4 u5`` and ``v4 v5 v8 v9`` are labeled ``B``, everything else ``A``. The
only embedding is ``e1->f1, e2->f3, e3->f7, e4->f5``.
"""

from __future__ import annotations

from hypermatch.hypergraph import Hypergraph, LabelTable, parse_hypergraph

__all__ = ["QUERY_TEXT", "DATA_TEXT", "EXPECTED_EMBEDDING", "load_example"]

QUERY_TEXT = """\
# worked example: query
t 7 4
v 0 A
v 1 A
v 2 A
v 3 B
v 4 B
v 5 A
v 6 A
e 0 1 2 3 4
e 0 1 5
e 0 6
e 1 2 5
"""

DATA_TEXT = """\
# worked example: data
t 12 9
v 0 A
v 1 A
v 2 A
v 3 B
v 4 B
v 5 A
v 6 A
v 7 B
v 8 B
v 9 A
v 10 A
v 11 A
e 0 1 2 3 4
e 0 5 6 7 8
e 0 1 9
e 0 1 5
e 1 2 9
e 9 10 11
e 0 11
e 2 9
e 6 10
"""

#: image of e1..e4 (0-based data hyperedge ids)
EXPECTED_EMBEDDING = (0, 2, 6, 4)


def load_example() -> tuple[Hypergraph, Hypergraph, LabelTable]:
    """``(query, data, labels)`` parsed with one shared label table."""
    labels = LabelTable()
    data, _ = parse_hypergraph(DATA_TEXT, labels)
    query, _ = parse_hypergraph(QUERY_TEXT, labels)
    return query, data, labels
