"""Counting connected spanning edge sets, exactly and modulo a prime.

The tree-decomposition DP counts pairs (edge set X, labelling of the vertices
into ``[p]``) where no edge of X joins differently-labelled vertices.  An edge
set with ``k`` components is counted ``p^k`` times, so the root total is
divisible by ``p`` and its quotient is the number of connected spanning sets
modulo ``p``.  Only that quotient is needed, hence all tables live modulo ``p^2``.

A node's table is a numpy array with one axis of length ``p`` per bag vertex,
axes in ascending vertex order.
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator

import numpy as np

from .errors import CapacityError, PreconditionError, enumeration_limit
from .fplinalg import PrimeModulus, as_modulus
from .graph import Graph, _edge
from .treedecomp import TDNode, TreeDecomposition, validate_edge_introduce_td

EDGE_SUBSET_LIMIT = 2**25


def _find(parent: list[int], x: int) -> int:
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


def is_connected_spanning(g: Graph, a: Iterable[tuple[int, int]]) -> bool:
    """True iff the spanning subgraph ``(V, a)`` is connected."""
    parent = list(range(g.n + 1))
    parts = g.n
    for u, v in a:
        e = _edge(u, v)
        if e not in g.edges:
            raise PreconditionError(f"({u}, {v}) is not an edge of the graph")
        ru, rv = _find(parent, u), _find(parent, v)
        if ru != rv:
            parent[ru] = rv
            parts -= 1
    return parts <= 1


def count_cse_bruteforce(g: Graph) -> int:
    """Exact count over all ``2^m`` edge subsets."""
    limit = enumeration_limit(EDGE_SUBSET_LIMIT)
    if 2**g.m > limit:
        raise CapacityError(f"2^{g.m} edge subsets exceed the enumeration guard {limit}")
    edges = g.edge_list
    if g.n <= 1:
        return 2**g.m
    if g.m < g.n - 1:
        return 0
    count = 0
    for mask in range(1 << g.m):
        if bin(mask).count("1") < g.n - 1:
            continue
        if is_connected_spanning(g, (edges[j] for j in range(g.m) if mask >> j & 1)):
            count += 1
    return count


def _dtype(p: int):
    # products of two residues mod p^2 must fit
    return np.int64 if p**4 < 2**62 else object


def iter_cse_tables(g: Graph, td: TreeDecomposition,
                    p: int | PrimeModulus) -> Iterator[tuple[TDNode, tuple[int, ...], np.ndarray]]:
    """Yield ``(node, bag order, table mod p^2)`` in postorder.

    ``table[l_1, ..., l_k]`` (labels ``0..p-1``) counts pairs (X, labelling
    of ``V(G_x)``) agreeing with the bag labelling, X not crossing it.
    """
    p = as_modulus(p).p
    mod = p * p
    dt = _dtype(p)
    tables: dict[int, tuple[tuple[int, ...], np.ndarray]] = {}
    for node in td.postorder():
        order = tuple(sorted(node.bag))
        if node.kind == "leaf":
            # no edges below a leaf: every labelling of the bag counts once
            table = np.ones((p,) * len(order), dtype=dt)
        elif node.kind == "join":
            (_, ty), (_, tz) = tables.pop(node.children[0]), tables.pop(node.children[1])
            table = (ty * tz) % mod
        else:
            child_order, tc = tables.pop(node.children[0])
            if node.kind == "iv":
                axis = order.index(node.arg)
                table = np.broadcast_to(np.expand_dims(tc, axis), (p,) * len(order)).copy()
            elif node.kind == "forget":
                axis = child_order.index(node.arg)
                table = tc.sum(axis=axis) % mod
                if not isinstance(table, np.ndarray):
                    table = np.asarray(table, dtype=dt)
            else:  # ie: C = 2 when the edge respects the labelling, else 1
                u, v = node.arg
                iu, iv = order.index(u), order.index(v)
                shape = [1] * len(order)
                shape[iu] = p
                lu = np.arange(p).reshape(shape)
                shape[iu], shape[iv] = 1, p
                lv = np.arange(p).reshape(shape)
                table = (tc * (1 + (lu == lv))) % mod
        tables[node.id] = (order, table)
        yield node, order, table


def count_cse_treedp(g: Graph, td: TreeDecomposition, p: int | PrimeModulus) -> int:
    """Connected spanning edge sets modulo ``p`` in ``O(p^tw)``-size tables."""
    p = as_modulus(p).p
    validate_edge_introduce_td(g, td)
    if not g.is_connected():
        return 0
    root_table = None
    for node, _, table in iter_cse_tables(g, td, p):
        if node.id == td.root:
            root_table = table
    total = int(np.asarray(root_table, dtype=object).sum()) % (p * p)
    if total % p:
        raise AssertionError(f"root sum {total} not divisible by p={p}: DP is inconsistent")
    return (total // p) % p
