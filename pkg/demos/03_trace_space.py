# The trace matrix B and exact rational arithmetic.
from gcm import build_graph, build_group
from gcm.trace import (build_trace_system, check_fixture, express_monomial, load_identity,
                       rational_rank, verify_btb_identity)

for spec, m in [("C2", 2), ("C3", 2), ("C3", 3)]:
    G = build_group(spec)
    system = build_trace_system(G, m)
    r = rational_rank(system)
    print(f"{spec}, m={m}: B is {system.matrix.shape}, rank {r}, full {r == system.num_columns}")
    print("  B^T B = C(m+1,2) I + A:", verify_btb_identity(system, build_graph(G, m)))

# write e x e through trace rows for C2
system = build_trace_system(build_group("C2"), 2)
for coeff, row in express_monomial(system, (0, 0)):
    print(f"  {coeff} * {system.describe(row)}")

# C3, m=2 is rank deficient, so some monomials have no trace expression
system = build_trace_system(build_group("C3"), 2)
print("C3 (x, e):", express_monomial(system, (1, 0)))

# the bundled 25-term identity over C3, m = 3
fx = load_identity()
print("bundled identity holds:", check_fixture(fx), "with", len(fx.terms), "terms")
