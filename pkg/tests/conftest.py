from __future__ import annotations

import itertools

import networkx as nx
import numpy as np
import pytest

from modcount.fplinalg import compatibility_mask, encode_assignment
from modcount.graph import ColorLists, Graph, LinearArrangement, SplitMix64, seeded_random_graph, seeded_random_lists

# 7-vertex example with a marked cut after v_4
SEVEN_EDGES = [(1, 7), (3, 4), (3, 5), (1, 3), (5, 6), (3, 7), (1, 2)]


@pytest.fixture
def seven() -> Graph:
    return Graph(7, SEVEN_EDGES)


def to_nx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(g.vertices)
    h.add_edges_from(g.edges)
    return h


def atlas_graphs(max_m: int, connected: bool = True, max_n: int = 7):
    """Every graph in the networkx atlas (up to 7 vertices) with at most ``max_m`` edges."""
    for h in nx.graph_atlas_g():
        n = h.number_of_nodes()
        if n == 0 or n > max_n or h.number_of_edges() > max_m:
            continue
        if connected and not nx.is_connected(h):
            continue
        yield Graph(n, [(u + 1, v + 1) for u, v in h.edges()])


def random_instances(count: int, max_n: int, q: int, prob: float, seed: int):
    """Deterministic (graph, lists, arrangement) triples with nonempty random lists."""
    rng = SplitMix64(seed)
    for k in range(count):
        n = 1 + rng.randrange(max_n)
        g = seeded_random_graph(n, prob, seed * 10_000 + k)
        lists = seeded_random_lists(n, q, rng)
        order = list(range(1, n + 1))
        rng.shuffle(order)
        yield g, lists, LinearArrangement(order)


def cut_matrix(g: Graph, a: LinearArrangement, cut, q: int) -> np.ndarray:
    """Integer compatibility matrix of the i-th cut: rows over [q]^X_i, columns over [q]^Y_i."""
    return compatibility_mask(cut.bipartite(q)).astype(np.int64)


def dense_vector(table, q: int) -> np.ndarray:
    return np.array(table.dense(), dtype=np.int64)


def all_colorings(k: int, q: int):
    return itertools.product(range(1, q + 1), repeat=k)


def key(colors, q):
    return encode_assignment(colors, q)


__all__ = ["ColorLists", "SEVEN_EDGES", "atlas_graphs", "random_instances", "to_nx"]


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    verdicts = getattr(mod, "VERDICTS", None)
    if verdicts:
        terminalreporter.section("acceptance criteria")
        for v in verdicts:
            terminalreporter.write_line(v.line())
