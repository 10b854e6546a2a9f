# Named automorphisms, the groups they generate, and a search-based count.
from gcm import build_graph, build_group
from gcm.morphisms import (assemble_full_aut, canonical_aut_order, conjugation_identity, gamma,
                           omega, predicted_aut_order, tau, transfer_generators)
from gcm.perms import group_order

g = build_graph(build_group("C4"), 2)
print("transfers generate", group_order(transfer_generators(g)))
print("gammas generate", group_order([gamma(g, 1), gamma(g, 2)]))
print("<tau, omega> at m=2:", group_order([tau(g), omega(g)]))

# three routes to |Aut|
for spec, m in [("C4", 2), ("S3", 2), ("C3", 3), ("Q8", 2)]:
    G = build_group(spec)
    graph = build_graph(G, m)
    print(spec, m, "predicted", predicted_aut_order(G, m).order,
          "generated", assemble_full_aut(G, m, graph).order(),
          "search", canonical_aut_order(graph))

# exceptional cases only have the search
print("C2, m=3:", canonical_aut_order(build_graph(build_group("C2"), 3)))
print("C3, m=2:", canonical_aut_order(build_graph(build_group("C3"), 2)))

# C2xC2 at m=2: the search finds twice the predicted order
G = build_group("C2xC2")
graph = build_graph(G, 2)
print("C2xC2, m=2: predicted", predicted_aut_order(G, 2).order,
      "generated", assemble_full_aut(G, 2, graph).order(), "search", canonical_aut_order(graph))

# conjugating a transfer by omega, composed left to right
gs = build_graph(build_group("S3"), 2)
# pick a vertex where the two orders differ
c = next(c for c in map(lambda v: conjugation_identity(gs, v), range(gs.num_vertices)) if not c.statement_order)
print("omega^-1 T_g omega = f T_(g^omega):", c.proof_order, " = T_(g^omega) f:", c.statement_order)
