# Spectra from characters, checked against a dense eigensolver.
import numpy as np

from gcm import build_graph, build_group
from gcm.spectral import abelian_spectrum, check_regularity, lambda_min_numeric, question26_probe

G = build_group("C4")
spec = abelian_spectrum(G, 2)
print("G_2(C4) spectrum:", spec.as_dict())
dense = np.linalg.eigvalsh(build_graph(G, 2).adjacency.astype(float))
print("eigvalsh agrees:", sorted(np.round(dense).astype(int).tolist()) ==
      sorted(lam for lam, k in spec.pairs for _ in range(k)))

# m = 2 gives strongly regular graphs with c = 6
for s in ["C3", "C5", "S3", "Q8"]:
    rep = check_regularity(build_graph(build_group(s), 2))
    print(s, "parameters", rep.parameters, "ok", rep.ok)

# larger m: edge-regular with a = |G| + 2m - 4
rep = check_regularity(build_graph(build_group("C4"), 3))
print("G_3(C4) (n, k, a):", rep.parameters)

# non-abelian groups go through Lanczos; the bracket is certified by the residual
est = lambda_min_numeric(build_graph(build_group("S3"), 3))
print("S3, m=3: lambda_min ~", est.rounded, "bracket", est.bracket)

# lambda_min against -C(m+1, 2)
for s, m in [("C2", 2), ("C3", 3), ("C4", 4), ("S3", 2)]:
    p = question26_probe(build_group(s), m)
    print(s, m, p.verdict.value, "lambda_min", p.lambda_min, "bound", -p.bound)
