"""Graphs, color lists, linear arrangements and their prefix cuts.

Vertices are the integers ``1..n`` everywhere, file formats included.
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from .errors import PreconditionError
from .fplinalg import BipartiteCutGraph


def _edge(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices ``1..n``."""

    n: int
    edges: frozenset[tuple[int, int]]

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n < 0:
            raise PreconditionError("vertex count must be non-negative")
        norm = set()
        for u, v in edges:
            u, v = int(u), int(v)
            if u == v:
                raise PreconditionError(f"loop at vertex {u}")
            if not (1 <= u <= n and 1 <= v <= n):
                raise PreconditionError(f"edge ({u}, {v}) has an endpoint outside 1..{n}")
            e = _edge(u, v)
            if e in norm:
                raise PreconditionError(f"parallel edge {e}")
            norm.add(e)
        object.__setattr__(self, "n", int(n))
        object.__setattr__(self, "edges", frozenset(norm))

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def vertices(self) -> range:
        return range(1, self.n + 1)

    @cached_property
    def edge_list(self) -> tuple[tuple[int, int], ...]:
        """Edges in sorted order; the canonical edge indexing."""
        return tuple(sorted(self.edges))

    @cached_property
    def adjacency(self) -> dict[int, frozenset[int]]:
        adj: dict[int, set[int]] = {v: set() for v in self.vertices}
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return {v: frozenset(s) for v, s in adj.items()}

    def neighbors(self, v: int) -> frozenset[int]:
        return self.adjacency[v]

    def has_edge(self, u: int, v: int) -> bool:
        return _edge(u, v) in self.edges

    def components(self) -> list[list[int]]:
        """Connected components, each sorted, ordered by smallest vertex."""
        seen: set[int] = set()
        comps = []
        for s in self.vertices:
            if s in seen:
                continue
            stack, comp = [s], []
            seen.add(s)
            while stack:
                u = stack.pop()
                comp.append(u)
                for w in self.adjacency[u]:
                    if w not in seen:
                        seen.add(w)
                        stack.append(w)
            comps.append(sorted(comp))
        return comps

    def is_connected(self) -> bool:
        return self.n <= 1 or len(self.components()) == 1

    def induced(self, vertices: Sequence[int]) -> tuple[Graph, dict[int, int]]:
        """Induced subgraph relabelled to ``1..k`` in the given order, plus the old->new map."""
        relabel = {v: i for i, v in enumerate(vertices, start=1)}
        edges = [(relabel[u], relabel[v]) for u, v in self.edges
                 if u in relabel and v in relabel]
        return Graph(len(relabel), edges), relabel

    # small constructors used throughout tests and demos
    @classmethod
    def complete(cls, n: int) -> Graph:
        return cls(n, ((u, v) for u in range(1, n + 1) for v in range(u + 1, n + 1)))

    @classmethod
    def path(cls, n: int) -> Graph:
        return cls(n, ((i, i + 1) for i in range(1, n)))

    @classmethod
    def cycle(cls, n: int) -> Graph:
        return cls(n, [(i, i + 1) for i in range(1, n)] + ([(n, 1)] if n > 2 else []))

    @classmethod
    def edgeless(cls, n: int) -> Graph:
        return cls(n, ())


@dataclass(frozen=True)
class ColorLists:
    """Per-vertex color lists ``L(v) ⊆ [q]``; unspecified vertices get ``[q]``."""

    q: int
    lists: tuple[frozenset[int], ...]

    def __init__(self, q: int, n: int, lists: Mapping[int, Iterable[int]] | None = None):
        if q < 1:
            raise PreconditionError("q must be at least 1")
        full = frozenset(range(1, q + 1))
        out = []
        lists = lists or {}
        for v in range(1, n + 1):
            lst = frozenset(int(c) for c in lists[v]) if v in lists else full
            if not lst <= full:
                raise PreconditionError(f"list of vertex {v} leaves [1, {q}]")
            out.append(lst)
        extra = set(lists) - set(range(1, n + 1))
        if extra:
            raise PreconditionError(f"lists given for unknown vertices {sorted(extra)}")
        object.__setattr__(self, "q", int(q))
        object.__setattr__(self, "lists", tuple(out))

    @classmethod
    def full(cls, n: int, q: int) -> ColorLists:
        return cls(q, n)

    @property
    def n(self) -> int:
        return len(self.lists)

    def __getitem__(self, v: int) -> frozenset[int]:
        return self.lists[v - 1]

    def as_dict(self) -> dict[int, frozenset[int]]:
        return {v: lst for v, lst in enumerate(self.lists, start=1)}

    def is_full(self) -> bool:
        return all(len(lst) == self.q for lst in self.lists)

    def has_empty(self) -> bool:
        return any(not lst for lst in self.lists)


@dataclass(frozen=True)
class LinearArrangement:
    """A vertex ordering ``v_1..v_n`` (a permutation of ``1..n``)."""

    order: tuple[int, ...]

    def __init__(self, order: Iterable[int]):
        order = tuple(int(v) for v in order)
        if sorted(order) != list(range(1, len(order) + 1)):
            raise PreconditionError(f"arrangement {order} is not a permutation of 1..{len(order)}")
        object.__setattr__(self, "order", order)

    @classmethod
    def identity(cls, n: int) -> LinearArrangement:
        return cls(range(1, n + 1))

    def __len__(self):
        return len(self.order)

    def __iter__(self):
        return iter(self.order)

    def __getitem__(self, i: int) -> int:
        """1-based access: ``a[i]`` is ``v_i``."""
        return self.order[i - 1]

    @cached_property
    def position(self) -> dict[int, int]:
        return {v: i for i, v in enumerate(self.order, start=1)}


def _check_arrangement(g: Graph, a: LinearArrangement) -> None:
    if len(a) != g.n:
        raise PreconditionError(f"arrangement has {len(a)} vertices, graph has {g.n}")


def cut_sizes(g: Graph, a: LinearArrangement) -> list[int]:
    """Number of edges crossing each prefix cut ``i = 1..n-1``."""
    _check_arrangement(g, a)
    pos = a.position
    diff = [0] * (g.n + 2)
    for u, v in g.edges:
        lo, hi = sorted((pos[u], pos[v]))
        diff[lo] += 1
        diff[hi] -= 1
    sizes, run = [], 0
    for i in range(1, g.n):
        run += diff[i]
        sizes.append(run)
    return sizes


def cutwidth_of(g: Graph, a: LinearArrangement) -> int:
    """Maximum number of edges crossing a prefix cut of the arrangement."""
    return max(cut_sizes(g, a), default=0)


@dataclass(frozen=True)
class CutProfile:
    """Cut data at position ``i`` of an arrangement.

    ``L`` are the prefix vertices with a neighbour to the right, ``X = L ∪ {v_i}``
    and ``Y`` the right-hand neighbours of ``X``.  Vertex tuples are ordered by
    arrangement position.
    """

    position: int
    vertex: int
    L: tuple[int, ...]
    X: tuple[int, ...]
    Y: tuple[int, ...]
    crossing: tuple[tuple[int, int], ...]

    def degree(self, u: int) -> int:
        return sum(1 for x, _ in self.crossing if x == u)

    def bipartite(self, q: int) -> BipartiteCutGraph:
        return BipartiteCutGraph(self.X, self.Y, frozenset(self.crossing), q)


def cut_profile(g: Graph, a: LinearArrangement, i: int) -> CutProfile:
    _check_arrangement(g, a)
    if not 1 <= i <= g.n:
        raise PreconditionError(f"cut index {i} outside 1..{g.n}")
    pos = a.position
    prefix = a.order[:i]
    L = tuple(u for u in prefix if any(pos[w] > i for w in g.neighbors(u)))
    vi = a[i]
    X = L if vi in L else tuple(sorted(L + (vi,), key=pos.__getitem__))
    crossing = tuple(sorted(((u, w) for u in X for w in g.neighbors(u) if pos[w] > i),
                            key=lambda e: (pos[e[0]], pos[e[1]])))
    Y = tuple(sorted({w for _, w in crossing}, key=pos.__getitem__))
    return CutProfile(i, vi, L, X, Y, crossing)


def cut_profiles(g: Graph, a: LinearArrangement) -> list[CutProfile]:
    return [cut_profile(g, a, i) for i in range(1, g.n + 1)]


def k_stretch(g: Graph, k: int) -> Graph:
    """Replace every edge by a path of length ``k``.

    The ``j``-th edge ``(u, v)`` of ``g.edge_list`` (``u < v``) becomes
    ``u - s_1 - ... - s_{k-1} - v`` with ``s_t = n + j*(k-1) + t``.
    """
    if k < 1:
        raise PreconditionError("stretch factor k must be >= 1")
    edges = []
    for j, (u, v) in enumerate(g.edge_list):
        path = [u] + [g.n + j * (k - 1) + t for t in range(1, k)] + [v]
        edges.extend(zip(path, path[1:]))
    return Graph(g.n + (k - 1) * g.m, edges)


def stretch_arrangement(g: Graph, a: LinearArrangement, k: int) -> LinearArrangement:
    """Arrangement of ``k_stretch(g, k)`` with the same cutwidth as ``a`` on ``g``.

    Each subdivision path is placed contiguously right after its earlier
    endpoint, running from that endpoint towards the later one.
    """
    _check_arrangement(g, a)
    if k < 1:
        raise PreconditionError("stretch factor k must be >= 1")
    pos = a.position
    after: dict[int, list[int]] = {v: [] for v in g.vertices}
    for j, (u, v) in enumerate(g.edge_list):
        sub = [g.n + j * (k - 1) + t for t in range(1, k)]
        if pos[u] < pos[v]:
            after[u].extend(sub)
        else:
            after[v].extend(reversed(sub))
    order = []
    for v in a.order:
        order.append(v)
        order.extend(after[v])
    return LinearArrangement(order)


class SplitMix64:
    """splitmix64 generator; identical streams for identical seeds on every platform."""

    MASK = (1 << 64) - 1

    def __init__(self, seed: int):
        self.state = seed & self.MASK

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & self.MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & self.MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & self.MASK
        return z ^ (z >> 31)

    def random(self) -> float:
        """Uniform float in ``[0, 1)`` from the top 53 bits."""
        return (self.next_u64() >> 11) * (1.0 / (1 << 53))

    def randrange(self, n: int) -> int:
        return self.next_u64() % n

    def shuffle(self, items: list) -> list:
        for i in range(len(items) - 1, 0, -1):
            j = self.randrange(i + 1)
            items[i], items[j] = items[j], items[i]
        return items


def seeded_random_graph(n: int, edge_probability: float | Fraction, seed: int) -> Graph:
    """G(n, p) graph driven by :class:`SplitMix64`; pairs visited as ``u < v`` lexicographically."""
    prob = Fraction(edge_probability)
    if not 0 <= prob <= 1:
        raise PreconditionError("edge probability must lie in [0, 1]")
    rng = SplitMix64(seed)
    edges = []
    for u in range(1, n + 1):
        for v in range(u + 1, n + 1):
            if rng.random() < prob:
                edges.append((u, v))
    return Graph(n, edges)


def seeded_random_lists(n: int, q: int, rng: SplitMix64) -> ColorLists:
    """Uniformly random nonempty lists: each color kept with probability 1/2, resampled if empty."""
    lists = {}
    for v in range(1, n + 1):
        while True:
            lst = [c for c in range(1, q + 1) if rng.next_u64() & 1]
            if lst:
                break
        lists[v] = lst
    return ColorLists(q, n, lists)
