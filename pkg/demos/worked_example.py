"""Walk through the bundled example step by step.

Builds the candidate space, filters it, replays the first two mapping steps
by hand to show both pruning stages, and finishes with the full search.
"""

from hypermatch import build_chs, build_index, initial_filter
from hypermatch.engine import (
    IHBState,
    PartialEmbedding,
    SearchConfig,
    connectivity_prune,
    intersection_prune,
    match_all,
    update_ihb,
)
from hypermatch.samples import load_example


def show(title, cs):
    print(title)
    for e, cands in enumerate(cs.live_sets()):
        print(f"  C(e{e + 1}) = {{{', '.join(f'f{f + 1}' for f in sorted(cands))}}}")


q, h, labels = load_example()
cs = build_chs(q, h, build_index(h))
show("candidates by signature:", cs)

stats = initial_filter(q, cs)
show(f"after initial filtering ({stats.removed} removed):", cs)

ihb = IHBState(q.num_vertices, h.num_vertices)
mapping = PartialEmbedding(q.num_edges)
for depth, (e, f) in enumerate([(0, 0), (1, 2)]):
    mapping.push(e, f)
    update_ihb(ihb, q, h, e, f, depth)
print("\nmapped e1->f1 and e2->f3")

mark = cs.checkpoint()
connectivity_prune(q, cs, mapping, 1, 2)
show("after connectivity pruning:", cs)
intersection_prune(q, h, ihb, cs, mapping)
show("after intersection pruning:", cs)
cs.rollback(mark)

found = []
search = match_all(q, h, cs, SearchConfig(), found.append)
print(f"\nembeddings ({search.recursive_calls} recursive calls):")
for emb in found:
    print("  " + ", ".join(f"e{e + 1}->f{f + 1}" for e, f in enumerate(emb)))
