"""Line-oriented text formats for graphs, tree decompositions, CSP instances
and bipartite cut graphs.

Blank lines and ``#`` comments are ignored.  Every ``parse_*`` function
raises :class:`~modcount.errors.FormatError` with the offending line number,
and ``parse_x(serialize_x(obj)) == obj`` for every format.
"""

from __future__ import annotations

from collections.abc import Iterator
from dataclasses import dataclass, field
from pathlib import Path

from .errors import FormatError, ModcountError
from .fplinalg import BipartiteCutGraph
from .gadgets import Constraint, CspInstance, GadgetInstance
from .graph import ColorLists, Graph, LinearArrangement
from .treedecomp import KINDS, TDNode, TreeDecomposition


def _lines(text: str) -> Iterator[tuple[int, list[str]]]:
    for num, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield num, line.split()


def _ints(num: int, words: list[str]) -> list[int]:
    try:
        return [int(w) for w in words]
    except ValueError:
        raise FormatError(f"line {num}: expected integers, got {' '.join(words)!r}") from None


def _header(lines: list[tuple[int, list[str]]], keyword: str, count: int) -> list[int]:
    if not lines:
        raise FormatError(f"empty input: expected a '{keyword}' header")
    num, words = lines[0]
    if words[0] != keyword or len(words) != count + 1:
        raise FormatError(f"line {num}: expected '{keyword}' followed by {count} integers")
    return _ints(num, words[1:])


# -- graph ------------------------------------------------------------------

@dataclass(frozen=True)
class GraphFile:
    """A graph with its optional ``q``, explicit lists and arrangement."""

    graph: Graph
    q: int | None = None
    lists: dict[int, tuple[int, ...]] = field(default_factory=dict)
    order: tuple[int, ...] | None = None

    def color_lists(self, q: int | None = None) -> ColorLists:
        """Lists for coloring with ``q`` colors (defaults to the file's ``q``)."""
        q = self.q if q is None else q
        if q is None:
            raise FormatError("no number of colors: the file has no 'q' line and none was given")
        return ColorLists(q, self.graph.n, self.lists)

    def arrangement(self) -> LinearArrangement | None:
        return None if self.order is None else LinearArrangement(self.order)


def parse_graph(text: str) -> GraphFile:
    lines = list(_lines(text))
    n, m = _header(lines, "graph", 2)
    if n < 0 or m < 0:
        raise FormatError("line 1: negative vertex or edge count")
    edges: list[tuple[int, int]] = []
    q = None
    lists: dict[int, tuple[int, ...]] = {}
    order = None
    for num, words in lines[1:]:
        kw, args = words[0], _ints(num, words[1:])
        if kw == "edge":
            if len(args) != 2:
                raise FormatError(f"line {num}: 'edge' takes two vertices")
            u, v = args
            if not (1 <= u <= n and 1 <= v <= n):
                raise FormatError(f"line {num}: edge ({u}, {v}) leaves 1..{n}")
            if u == v:
                raise FormatError(f"line {num}: self-loop at {u}")
            edges.append((u, v))
        elif kw == "q":
            if len(args) != 1 or args[0] < 1 or q is not None:
                raise FormatError(f"line {num}: 'q' takes one positive integer, once")
            q = args[0]
        elif kw == "list":
            if not args or not 1 <= args[0] <= n:
                raise FormatError(f"line {num}: 'list' needs a vertex in 1..{n}")
            v, colors = args[0], args[1:]
            if v in lists:
                raise FormatError(f"line {num}: second list for vertex {v}")
            if len(set(colors)) != len(colors):
                raise FormatError(f"line {num}: repeated color in list of {v}")
            lists[v] = tuple(sorted(colors))
        elif kw == "order":
            if order is not None:
                raise FormatError(f"line {num}: second 'order' line")
            if sorted(args) != list(range(1, n + 1)):
                raise FormatError(f"line {num}: order is not a permutation of 1..{n}")
            order = tuple(args)
        else:
            raise FormatError(f"line {num}: unknown keyword {kw!r}")
    if len(edges) != m:
        raise FormatError(f"header announces {m} edges, found {len(edges)}")
    if lists and q is None:
        raise FormatError("'list' lines need a 'q' line")
    for v, colors in lists.items():
        if any(not 1 <= c <= q for c in colors):
            raise FormatError(f"list of vertex {v} leaves 1..{q}")
    try:
        g = Graph(n, edges)
    except ModcountError as exc:
        raise FormatError(str(exc)) from None
    if g.m != m:
        raise FormatError("duplicate edge")
    return GraphFile(g, q, lists, order)


def serialize_graph(gf: GraphFile) -> str:
    g = gf.graph
    out = [f"graph {g.n} {g.m}"]
    out += [f"edge {u} {v}" for u, v in g.edge_list]
    if gf.q is not None:
        out.append(f"q {gf.q}")
    for v in sorted(gf.lists):
        out.append(" ".join(["list", str(v), *map(str, gf.lists[v])]))
    if gf.order is not None:
        out.append(" ".join(["order", *map(str, gf.order)]))
    return "\n".join(out) + "\n"


def graph_file_of(g: Graph, lists: ColorLists | None = None,
                  a: LinearArrangement | None = None, all_lists: bool = False) -> GraphFile:
    """Wrap in-memory objects; only non-full lists are written unless ``all_lists``."""
    q = None if lists is None else lists.q
    explicit = {}
    if lists is not None:
        for v in g.vertices:
            if all_lists or len(lists[v]) != lists.q:
                explicit[v] = tuple(sorted(lists[v]))
    return GraphFile(g, q, explicit, None if a is None else tuple(a))


def serialize_gadget(inst: GadgetInstance) -> str:
    """Graph format with every list written; boundary noted in a comment."""
    head = "# boundary " + " ".join(map(str, inst.boundary)) + "\n"
    return head + serialize_graph(graph_file_of(inst.graph, inst.lists, inst.arrangement, all_lists=True))


# -- tree decomposition -------------------------------------------------------

def parse_td(text: str) -> TreeDecomposition:
    lines = list(_lines(text))
    count, maxbag, _n = _header(lines, "td", 3)
    bags: dict[int, tuple[int, ...]] = {}
    kinds: dict[int, tuple[str, object]] = {}
    children: dict[int, list[int]] = {}
    for num, words in lines[1:]:
        kw = words[0]
        if kw == "bag":
            args = _ints(num, words[1:])
            if not args:
                raise FormatError(f"line {num}: 'bag' needs a node id")
            if args[0] in bags:
                raise FormatError(f"line {num}: second bag for node {args[0]}")
            bags[args[0]] = tuple(args[1:])
        elif kw == "kind":
            if len(words) < 3:
                raise FormatError(f"line {num}: 'kind' needs a node id and a kind")
            nid = _ints(num, words[1:2])[0]
            kind, args = words[2], _ints(num, words[3:])
            want = {"leaf": 0, "iv": 1, "ie": 2, "forget": 1, "join": 0}.get(kind)
            if kind not in KINDS or len(args) != want:
                raise FormatError(f"line {num}: malformed kind {' '.join(words[2:])!r}")
            if nid in kinds:
                raise FormatError(f"line {num}: second kind for node {nid}")
            kinds[nid] = (kind, None if not args else args[0] if len(args) == 1 else tuple(args))
        elif kw == "tedge":
            args = _ints(num, words[1:])
            if len(args) != 2:
                raise FormatError(f"line {num}: 'tedge' takes a parent and a child")
            children.setdefault(args[0], []).append(args[1])
        else:
            raise FormatError(f"line {num}: unknown keyword {kw!r}")
    ids = set(range(1, count + 1))
    if set(bags) != ids or set(kinds) != ids:
        raise FormatError(f"nodes must be numbered 1..{count}, each with one bag and one kind")
    stray = {c for cs in children.values() for c in cs} | set(children)
    if not stray <= ids:
        raise FormatError(f"tree edge mentions unknown node {min(stray - ids)}")
    if max((len(b) for b in bags.values()), default=0) != maxbag:
        raise FormatError(f"header max bag {maxbag} does not match the bags")
    try:
        nodes = {nid: TDNode(nid, frozenset(bags[nid]), *kinds[nid], tuple(children.get(nid, ())))
                 for nid in sorted(ids)}
    except (ModcountError, TypeError) as exc:
        raise FormatError(str(exc)) from None
    return TreeDecomposition(nodes, root=1)


def serialize_td(td: TreeDecomposition, n: int) -> str:
    out = [f"td {len(td.nodes)} {td.max_bag} {n}"]
    for nid in sorted(td.nodes):
        node = td.nodes[nid]
        out.append(" ".join(["bag", str(nid), *map(str, sorted(node.bag))]))
        arg = node.arg
        args = [] if arg is None else list(arg) if isinstance(arg, tuple) else [arg]
        out.append(" ".join(["kind", str(nid), node.kind, *map(str, args)]))
    for nid in sorted(td.nodes):
        out += [f"tedge {nid} {c}" for c in td.nodes[nid].children]
    return "\n".join(out) + "\n"


# -- CSP --------------------------------------------------------------------

def parse_csp(text: str) -> CspInstance:
    lines = list(_lines(text))
    nvars, q, ncons = _header(lines, "csp", 3)
    constraints = []
    idx = 1
    for _ in range(ncons):
        if idx >= len(lines):
            raise FormatError(f"header announces {ncons} constraints, found {len(constraints)}")
        num, words = lines[idx]
        if words[0] != "con":
            raise FormatError(f"line {num}: expected 'con'")
        args = _ints(num, words[1:])
        if not args or len(args) != args[0] + 2:
            raise FormatError(f"line {num}: expected 'con <arity> <vars...> <tuples>'")
        arity, scope, t = args[0], args[1:-1], args[-1]
        tuples = []
        for _ in range(t):
            idx += 1
            if idx >= len(lines):
                raise FormatError(f"constraint on line {num} is missing tuples")
            tnum, twords = lines[idx]
            tup = _ints(tnum, twords)
            if len(tup) != arity:
                raise FormatError(f"line {tnum}: tuple has {len(tup)} values, arity is {arity}")
            tuples.append(tup)
        idx += 1
        constraints.append(Constraint(scope, tuples))
    if idx != len(lines):
        raise FormatError(f"line {lines[idx][0]}: trailing content after {ncons} constraints")
    try:
        return CspInstance(nvars, q, tuple(constraints))
    except ModcountError as exc:
        raise FormatError(str(exc)) from None


def serialize_csp(c: CspInstance) -> str:
    out = [f"csp {c.n} {c.q} {len(c.constraints)}"]
    for con in c.constraints:
        out.append(" ".join(["con", str(len(con.scope)), *map(str, con.scope), str(len(con.allowed))]))
        out += [" ".join(map(str, t)) for t in sorted(con.allowed)]
    return "\n".join(out) + "\n"


# -- bipartite cut graph ------------------------------------------------------

def parse_bipartite(text: str, q: int) -> BipartiteCutGraph:
    """``bipartite <nx> <ny> <m>`` then ``edge <x> <y>`` with ``x`` in ``1..nx``, ``y`` in ``1..ny``.

    Sides are named ``x1..`` and ``y1..``.
    """
    lines = list(_lines(text))
    nx, ny, m = _header(lines, "bipartite", 3)
    edges = []
    for num, words in lines[1:]:
        if words[0] != "edge":
            raise FormatError(f"line {num}: unknown keyword {words[0]!r}")
        args = _ints(num, words[1:])
        if len(args) != 2 or not (1 <= args[0] <= nx and 1 <= args[1] <= ny):
            raise FormatError(f"line {num}: edge must join x in 1..{nx} to y in 1..{ny}")
        edges.append((f"x{args[0]}", f"y{args[1]}"))
    if len(edges) != m:
        raise FormatError(f"header announces {m} edges, found {len(edges)}")
    try:
        return BipartiteCutGraph(tuple(f"x{i}" for i in range(1, nx + 1)),
                                 tuple(f"y{i}" for i in range(1, ny + 1)), frozenset(edges), q)
    except ModcountError as exc:
        raise FormatError(str(exc)) from None


def serialize_bipartite(h: BipartiteCutGraph) -> str:
    lpos = {v: i for i, v in enumerate(h.left, start=1)}
    rpos = {v: i for i, v in enumerate(h.right, start=1)}
    pairs = sorted((lpos[x], rpos[y]) for x, y in h.edges)
    out = [f"bipartite {len(h.left)} {len(h.right)} {len(pairs)}"]
    out += [f"edge {x} {y}" for x, y in pairs]
    return "\n".join(out) + "\n"


def read_text(path: str | Path) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc.strerror}") from None
