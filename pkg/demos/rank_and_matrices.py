"""Compatibility matrices of perfect matchings and their ranks over small primes."""

from __future__ import annotations

import itertools

from modcount.fplinalg import BipartiteCutGraph, compatibility_matrix, edge_matrix, fp_inverse, fp_rank, kronecker

print("single edge, q=3, over F_3:")
print(edge_matrix(3, 3).tolist())
print("its inverse:", fp_inverse(edge_matrix(3, 3)).tolist())

j = edge_matrix(3, 2)
m = compatibility_matrix(BipartiteCutGraph.matching(2, 3), 2)
print("matching on 2 pairs equals the Kronecker square:", m == kronecker(j, j))

print("\n q  p  t  rank  q^t  (q-1)^t")
for q, p, t in itertools.product((3, 4, 5), (2, 3), (1, 2)):
    r = fp_rank(compatibility_matrix(BipartiteCutGraph.matching(t, q), p))
    print(f"{q:2} {p:2} {t:2} {r:5} {q**t:4} {(q - 1)**t:8}")
