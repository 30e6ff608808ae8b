"""Edge-introduce tree decompositions.

Every node is one of

* ``leaf``: no children;
* ``iv`` (introduce vertex ``v``): one child, bag = child bag + ``v``;
* ``ie`` (introduce edge ``uv``): one child, same bag, ``u, v`` in the bag;
* ``forget`` (``v``): one child, bag = child bag - ``v``;
* ``join``: two children with identical bags.

Each graph edge is introduced exactly once.  Node ``1`` is the root.
"""

from __future__ import annotations

from collections.abc import Iterator, Mapping
from dataclasses import dataclass

from .errors import DecompositionError
from .graph import Graph, LinearArrangement, _check_arrangement

KINDS = ("leaf", "iv", "ie", "forget", "join")


@dataclass(frozen=True)
class TDNode:
    id: int
    bag: frozenset[int]
    kind: str
    arg: int | tuple[int, int] | None = None
    children: tuple[int, ...] = ()

    def __post_init__(self):
        if self.kind not in KINDS:
            raise DecompositionError(f"node {self.id}: unknown kind {self.kind!r}")
        object.__setattr__(self, "bag", frozenset(self.bag))
        object.__setattr__(self, "children", tuple(self.children))
        if self.kind == "ie":
            u, v = self.arg
            object.__setattr__(self, "arg", (min(u, v), max(u, v)))


@dataclass(frozen=True)
class TreeDecomposition:
    """Rooted edge-introduce tree decomposition; ``nodes`` maps id -> node."""

    nodes: Mapping[int, TDNode]
    root: int = 1

    @property
    def width(self) -> int:
        return max((len(nd.bag) for nd in self.nodes.values()), default=0) - 1

    @property
    def max_bag(self) -> int:
        return max((len(nd.bag) for nd in self.nodes.values()), default=0)

    def __getitem__(self, node_id: int) -> TDNode:
        return self.nodes[node_id]

    def postorder(self) -> Iterator[TDNode]:
        """Children before parents; iterative so deep path decompositions are fine."""
        stack = [(self.root, False)]
        while stack:
            nid, done = stack.pop()
            node = self.nodes[nid]
            if done:
                yield node
                continue
            stack.append((nid, True))
            for c in reversed(node.children):
                stack.append((c, False))


def validate_edge_introduce_td(g: Graph, td: TreeDecomposition) -> int:
    """Check every structural property and return the width (max bag size - 1).

    Raises :class:`DecompositionError` naming the first violated property.
    """
    nodes = td.nodes
    if td.root not in nodes:
        raise DecompositionError(f"root node {td.root} missing")
    parent: dict[int, int] = {}
    for nid, node in nodes.items():
        if node.id != nid:
            raise DecompositionError(f"node stored under id {nid} claims id {node.id}")
        for c in node.children:
            if c not in nodes:
                raise DecompositionError(f"node {nid} has unknown child {c}")
            if c in parent:
                raise DecompositionError(f"node {c} has two parents")
            if c == td.root:
                raise DecompositionError("root appears as a child")
            parent[c] = nid
    # reachability from the root (also rules out cycles, given unique parents)
    seen, stack = {td.root}, [td.root]
    while stack:
        for c in nodes[stack.pop()].children:
            if c in seen:
                raise DecompositionError(f"cycle through node {c}")
            seen.add(c)
            stack.append(c)
    if len(seen) != len(nodes):
        raise DecompositionError(f"nodes {sorted(set(nodes) - seen)} unreachable from the root")

    introduced: dict[tuple[int, int], int] = {}
    for nid in sorted(nodes):
        node = nodes[nid]
        for v in node.bag:
            if not 1 <= v <= g.n:
                raise DecompositionError(f"node {nid}: bag vertex {v} outside 1..{g.n}")
        kids = [nodes[c] for c in node.children]
        want = {"leaf": 0, "iv": 1, "ie": 1, "forget": 1, "join": 2}[node.kind]
        if len(kids) != want:
            raise DecompositionError(
                f"kind/bag mismatch: {node.kind} node {nid} has {len(kids)} children")
        if node.kind == "iv":
            v = node.arg
            if v in kids[0].bag or node.bag != kids[0].bag | {v}:
                raise DecompositionError(f"kind/bag mismatch: introduce-vertex node {nid}")
        elif node.kind == "forget":
            v = node.arg
            if v not in kids[0].bag or node.bag != kids[0].bag - {v}:
                raise DecompositionError(f"kind/bag mismatch: forget node {nid}")
        elif node.kind == "ie":
            u, v = node.arg
            if node.bag != kids[0].bag or u not in node.bag or v not in node.bag:
                raise DecompositionError(f"kind/bag mismatch: introduce-edge node {nid}")
            if not g.has_edge(u, v):
                raise DecompositionError(f"node {nid} introduces non-edge ({u}, {v})")
            if (u, v) in introduced:
                raise DecompositionError(
                    f"edge ({u}, {v}) introduced twice (nodes {introduced[(u, v)]} and {nid})")
            introduced[(u, v)] = nid
        elif node.kind == "join":
            if not (node.bag == kids[0].bag == kids[1].bag):
                raise DecompositionError(f"kind/bag mismatch: join node {nid} children differ")

    missing = sorted(g.edges - set(introduced))
    if missing:
        raise DecompositionError(f"uncovered edge {missing[0]} (never introduced)")

    # occurrences of each vertex must form a connected subtree: exactly one
    # node containing v whose parent does not contain v
    tops: dict[int, int] = {}
    for nid, node in nodes.items():
        up = parent.get(nid)
        for v in node.bag:
            if up is None or v not in nodes[up].bag:
                tops[v] = tops.get(v, 0) + 1
    for v in g.vertices:
        if tops.get(v, 0) == 0:
            raise DecompositionError(f"vertex {v} appears in no bag")
        if tops[v] > 1:
            raise DecompositionError(f"disconnected vertex occurrence: vertex {v}")
    return td.width


def td_from_ordering(g: Graph, a: LinearArrangement) -> TreeDecomposition:
    """Path-shaped edge-introduce decomposition following the arrangement.

    For each ``v_i``: introduce it, introduce its edges to earlier vertices,
    then forget every vertex with no neighbour after position ``i``.  The
    largest bag is ``L_{i-1} ∪ {v_i}``, so the width is at most the cutwidth.
    """
    _check_arrangement(g, a)
    pos = a.position
    built: list[tuple[frozenset[int], str, object]] = [(frozenset(), "leaf", None)]
    bag: frozenset[int] = frozenset()
    for i, v in enumerate(a.order, start=1):
        bag = bag | {v}
        built.append((bag, "iv", v))
        for u in sorted((u for u in g.neighbors(v) if pos[u] < i), key=pos.__getitem__):
            built.append((bag, "ie", (u, v)))
        for w in sorted(bag, key=pos.__getitem__):
            if all(pos[x] <= i for x in g.neighbors(w)):
                bag = bag - {w}
                built.append((bag, "forget", w))
    # last built node is the root: renumber top-down
    total = len(built)
    nodes = {}
    for idx, (b, kind, arg) in enumerate(built):
        nid = total - idx
        children = (nid + 1,) if idx > 0 else ()
        nodes[nid] = TDNode(nid, b, kind, arg, children)
    return TreeDecomposition(nodes, root=1)
