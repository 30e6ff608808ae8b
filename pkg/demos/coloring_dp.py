"""Folklore cut DP against the rank-reduced DP on the seven-vertex example."""

from __future__ import annotations

from pathlib import Path

from modcount.coloring import count_colorings_bruteforce, count_colorings_folklore, count_colorings_rank, iter_rank_states
from modcount.fileio import parse_graph
from modcount.graph import cut_sizes

gf = parse_graph((Path(__file__).parent / "data" / "seven.g").read_text())
g, a = gf.graph, gf.arrangement()
for q, p in ((3, 2), (4, 3), (7, 3)):
    lists = gf.color_lists(q)
    exact = count_colorings_folklore(g, lists, a)
    print(f"q={q}: exact {exact} (brute {count_colorings_bruteforce(g, lists)}),"
          f" mod {p}: {count_colorings_rank(g, lists, a, p)} = {exact % p}")

print("\ncut sizes:", cut_sizes(g, a))
print("table sizes along the rank DP, q=4, p=3:")
for step, state in iter_rank_states(g, gf.color_lists(4), a, 3):
    print(f"  cut {state.position} {step:8} |X|={len(state.table.vertices)} |R|={len(state.reduced)}"
          f" support={state.table.support_size()} bound={state.support_bound()}")
