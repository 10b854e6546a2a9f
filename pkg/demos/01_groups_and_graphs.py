# Building groups and the generic Cayley graphs G_m(G).
import numpy as np

from gcm import build_graph, build_group
from gcm.graph import interval_meta_graph, interval_subgraph, weight_decomposition

# groups come from short specs; products use "x"
for spec in ["C4", "C2xC2", "S3", "Q8", "D4"]:
    G = build_group(spec)
    print(spec, "order", G.order, "abelian", G.is_abelian, "involutions", G.involution_count)

# vertices of G_m(G) are m-tuples, g1 is the least significant digit
G = build_group("C3")
g = build_graph(G, 2)
print(g.summary())
print("neighbours of e:", [g.vertex_name(v) for v in g.neighbors(0)])

# the complement of G_2(C3) is three disjoint triangles
comp = ~g.adjacency
np.fill_diagonal(comp, False)
print("complement degrees:", sorted(set(comp.sum(axis=1).tolist())))

# weight = number of blocks of equal letters between the first and last non-identity letter
g9 = build_graph(build_group("C4"), 9)
v = g9.encode([0, 1, 1, 2, 2, 2, 3, 0, 0])
dec = weight_decomposition(g9, v)
print(g9.vertex_name(v), "weight", dec.weight, "boundaries", dec.boundaries)

# interval subgraphs are regular
for m in (3, 4):
    sub = interval_subgraph(build_graph(build_group("C4"), m), 1)
    print(f"I_{m}(x) in C4:", len(sub.vertices), "vertices, degrees", sorted(set(sub.degrees)))

# the complement of the interval meta-graph at m = 4 is Petersen
inv = interval_meta_graph(4)
print("meta-graph complement is Kneser:", inv.complement_is_kneser())
