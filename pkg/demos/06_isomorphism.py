# Graph isomorphism against group isomorphism.
import itertools

from gcm import build_graph, build_group
from gcm.groups import groups_isomorphic
from gcm.morphisms import extract_group_iso, graphs_isomorphic, homogeneous_map

specs = ["C6", "C2xC3", "S3", "C8", "C4xC2", "D4", "Q8", "C2xC2xC2"]
for a, b in itertools.combinations(specs, 2):
    G, H = build_group(a), build_group(b)
    if G.order != H.order:
        continue
    graphs = graphs_isomorphic(build_graph(G, 2), build_graph(H, 2))
    groups = groups_isomorphic(G, H) is not None
    print(f"{a:>9} vs {b:<9} graphs {graphs!s:5} groups {groups}")

# a homogeneous graph isomorphism gives the group isomorphism back
A, B = build_group("C6"), build_group("C2xC3")
f = groups_isomorphic(A, B)
ga, gb = build_graph(A, 2), build_graph(B, 2)
back = extract_group_iso(ga, gb, homogeneous_map(ga, gb, f))
print("recovered:", [B.names[x] for x in back.image])
