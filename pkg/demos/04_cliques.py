# Maximum cliques through the identity and how they split into types.
from collections import Counter

from gcm import build_graph, build_group
from gcm.cliques import example_4_10_swap, max_cliques_through_e, neighbor_graph
from gcm.morphisms import is_graph_automorphism

for spec, m in [("C2", 2), ("C5", 2), ("C3", 3), ("C3", 4), ("C4", 3)]:
    g = build_graph(build_group(spec), m)
    recs = max_cliques_through_e(g)
    print(spec, m, "clique number", len(recs[0]), Counter(r.type.kind for r in recs))

# neighbour graphs tell interval cliques from dispersed ones
g = build_graph(build_group("C4"), 3)
for r in max_cliques_through_e(g)[:6]:
    print(" ", r.type, neighbor_graph(g, r).degree_histogram())

# on G_2(C3) a swap of two vertices is an automorphism
g = build_graph(build_group("C3"), 2)
print("C3 swap is an automorphism:", is_graph_automorphism(g, example_4_10_swap(g)))
