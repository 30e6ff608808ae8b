"""Connected spanning edge sets: enumeration, the tree-decomposition DP and the Tutte polynomial."""

from __future__ import annotations

from modcount.cse import count_cse_bruteforce, count_cse_treedp
from modcount.graph import Graph, LinearArrangement
from modcount.treedecomp import td_from_ordering
from modcount.tutte import tutte_eval, verify_stretch_identity

for name, g in (("K3", Graph.complete(3)), ("C4", Graph.cycle(4)), ("K4", Graph.complete(4)), ("C6", Graph.cycle(6))):
    td = td_from_ordering(g, LinearArrangement.identity(g.n))
    exact = count_cse_bruteforce(g)
    residues = {p: count_cse_treedp(g, td, p) for p in (2, 3, 5)}
    print(f"{name}: {exact} sets, T(G;1,2) = {tutte_eval(g, 1, 2)}, residues {residues}, width {td.width}")

print("\nstretching K4:")
for k in (2, 3):
    rep = verify_stretch_identity(Graph.complete(4), k, 1, 2)
    print(f"  k={k}: left {rep.left}, right {rep.right}")
