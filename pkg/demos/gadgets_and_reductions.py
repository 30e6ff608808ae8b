"""Gadgets with prescribed extension counts and the two reductions built from them."""

from __future__ import annotations

import itertools

from modcount.coloring import count_colorings_bruteforce, count_colorings_folklore
from modcount.gadgets import (
    Constraint,
    CspInstance,
    clique_chain,
    clique_vertex,
    count_csp_bruteforce,
    count_essentially_distinct_with_clique,
    csp_to_listcoloring,
    function_gadget,
    verify_gadget,
)
from modcount.graph import ColorLists, Graph, LinearArrangement, cutwidth_of

f = [1, 2, 3, 4, 1, 2, 3, 4, 1]
inst = function_gadget(3, 2, f)
report = verify_gadget(inst, f)
print(f"function gadget on [3]^2: {inst.graph.n} vertices, width {cutwidth_of(inst.graph, inst.arrangement)},"
      f" ok={report.ok}")
print("extension counts:", report.counts)

neq = [t for t in itertools.product((1, 2, 3), repeat=2) if t[0] != t[1]]
csp = CspInstance(2, 3, (Constraint((1, 2), neq),))
red = csp_to_listcoloring(csp, 3)
print(f"\nx1 != x2: {count_csp_bruteforce(csp)} solutions;"
      f" reduced graph has {red.graph.n} vertices and"
      f" {count_colorings_folklore(red.graph, red.lists, red.arrangement, 3)} colorings mod 3")

g = Graph.path(3)
lists = ColorLists(3, 3, {1: [1, 2], 3: [2]})
g2, a2 = clique_chain(g, lists, LinearArrangement.identity(3))
clique = [clique_vertex(3, 3, 1, c) for c in (1, 2, 3)]
print(f"\nclique chain on P3: {count_colorings_bruteforce(g, lists)} list colorings,"
      f" {count_essentially_distinct_with_clique(g2, 3, clique, a2)} essentially distinct colorings of G'"
      f" ({g2.n} vertices, width {cutwidth_of(g2, a2)})")
