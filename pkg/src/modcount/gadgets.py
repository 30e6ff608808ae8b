"""List-coloring gadgets with prescribed extension counts, and the two
reductions built from them (CSP to list coloring, list coloring to
essentially distinct coloring).

Every constructor returns a :class:`GadgetInstance` whose boundary vertices
come first in the vertex numbering.  Internal vertices are numbered in
construction order, and the emitted arrangement is the numbering itself.
"""

from __future__ import annotations

import itertools
from collections.abc import Callable, Iterable, Iterator, Mapping, Sequence
from dataclasses import dataclass, field

from .coloring import count_colorings_folklore
from .errors import CapacityError, PreconditionError, enumeration_limit
from .fplinalg import (
    MAX_SIDE_ASSIGNMENTS,
    PrimeModulus,
    as_modulus,
    edge_matrix,
    fp_inverse,
    lift_representative,
)
from .graph import ColorLists, Graph, LinearArrangement, _check_arrangement

CSP_BRUTE_LIMIT = 10**7

Table = Sequence[int] | Mapping[tuple[int, ...], int] | Callable[[tuple[int, ...]], int]


@dataclass(frozen=True)
class GadgetInstance:
    graph: Graph
    lists: ColorLists
    boundary: tuple[int, ...]
    arrangement: LinearArrangement

    def __post_init__(self):
        if self.lists.n != self.graph.n:
            raise PreconditionError("lists do not cover the gadget's vertices")
        if len(set(self.boundary)) != len(self.boundary):
            raise PreconditionError("boundary vertices must be distinct")
        if any(not 1 <= b <= self.graph.n for b in self.boundary):
            raise PreconditionError("boundary vertex outside the gadget")
        _check_arrangement(self.graph, self.arrangement)

    @property
    def q(self) -> int:
        return self.lists.q


class _Builder:
    """Accumulates vertices (numbered in creation order), lists and edges."""

    def __init__(self, q: int):
        self.q = q
        self.lists: list[frozenset[int]] = []
        self.edges: list[tuple[int, int]] = []

    def vertex(self, colors: Iterable[int]) -> int:
        self.lists.append(frozenset(colors))
        return len(self.lists)

    def edge(self, u: int, v: int) -> None:
        self.edges.append((u, v))

    def list_of(self, v: int) -> frozenset[int]:
        return self.lists[v - 1]

    def graph(self) -> Graph:
        return Graph(len(self.lists), self.edges)

    def color_lists(self) -> ColorLists:
        return ColorLists(self.q, len(self.lists), dict(enumerate(self.lists, start=1)))

    def finish(self, boundary: Sequence[int]) -> GadgetInstance:
        n = len(self.lists)
        return GadgetInstance(self.graph(), self.color_lists(), tuple(boundary),
                              LinearArrangement.identity(n))


def _check_color(q: int, c: int, name: str) -> None:
    if not 1 <= c <= q:
        raise PreconditionError(f"{name}={c} outside [1, {q}]")


# -- elementary pieces --------------------------------------------------------

def _relabel_into(bld: _Builder, src: int, a: int, a2: int) -> int:
    """Attach a relabel path to ``src`` (list ``{a, a2}``); return the new
    vertex, which is 1 when ``src`` is ``a`` and 2 when ``src`` is ``a2``."""
    if a2 == 1:
        # the path cannot emit 1 for a2 = 1; map a -> 2, 1 -> 1, then swap
        mid = _relabel_into(bld, src, 1, a)
        out = bld.vertex((1, 2))
        bld.edge(mid, out)
        return out
    v1 = None if a == 1 else bld.vertex((a, 1))
    v2 = bld.vertex((1, a2))
    v3 = None if a2 == 2 else bld.vertex((2, a2))
    out = bld.vertex((1, 2))
    bld.edge(src, v2)
    bld.edge(v2, out)
    if v1 is not None:
        bld.edge(src, v1)
        bld.edge(v1, v2)
    if v3 is not None:
        bld.edge(v2, v3)
        bld.edge(v3, out)
    return out


def _indicator_into(bld: _Builder, b: int, a: int) -> int:
    """Attach an indicator to ``b``; the returned vertex is 1 iff ``b`` is ``a``, else 2."""
    q = bld.q
    if a == 1:
        pi = list(range(1, q + 1))
        partner = None
    else:
        partner = 2 if a != 2 else (3 if q >= 3 else 1)
        pi = [a, partner] + [c for c in range(1, q + 1) if c not in (a, partner)]
    # pi[0] plays the role of color 1, pi[i-1] the role of color i
    s = [bld.vertex((pi[0], pi[i - 1])) for i in range(2, q + 1)]
    t = [bld.vertex((pi[0], pi[i - 1])) for i in range(2, q + 1)]
    out = bld.vertex((pi[0], pi[1]))
    for si in s:
        bld.edge(si, b)
        bld.edge(si, out)
        for tj in t:
            bld.edge(si, tj)
    if a == 1:
        return out
    if partner == 1:
        # q = 2, a = 2: the indicator already emits 2 / 1, a single edge swaps
        swapped = bld.vertex((1, 2))
        bld.edge(out, swapped)
        return swapped
    return _relabel_into(bld, out, a, partner)


def _path_lists(i: int) -> tuple[int, int]:
    return {1: (2, 3), 2: (1, 3), 0: (1, 2)}[i % 3]


def _multiplicity_into(bld: _Builder, boundary: Sequence[int], ell: int) -> None:
    if ell < 1:
        raise PreconditionError(f"multiplicity must be >= 1, got {ell}")
    if ell > 1 and bld.q < 3:
        raise PreconditionError("multiplicities above 1 need q >= 3")
    prev = None
    for i in range(1, ell):
        w = bld.vertex(_path_lists(i))
        if prev is None:
            for b in boundary:
                bld.edge(b, w)
        else:
            bld.edge(prev, w)
        prev = w


def _normalize_table(f: Table, q: int, k: int) -> tuple[int, ...]:
    """Values in lexicographic order of ``[q]^k`` (first coordinate slowest)."""
    domain = list(itertools.product(range(1, q + 1), repeat=k))
    if callable(f) and not isinstance(f, (Mapping, Sequence)):
        values = [f(alpha) for alpha in domain]
    elif isinstance(f, Mapping):
        values = [f.get(alpha, 0) for alpha in domain]
    else:
        values = [int(x) for x in f]
        if len(values) != len(domain):
            raise PreconditionError(f"table has {len(values)} entries, expected q^k = {len(domain)}")
    return tuple(int(x) for x in values)


def _function_into(bld: _Builder, boundary: Sequence[int], values: Sequence[int]) -> None:
    k = len(boundary)
    for alpha, ell in zip(itertools.product(range(1, bld.q + 1), repeat=k), values):
        outs = [_indicator_into(bld, b, a) for b, a in zip(boundary, alpha)]
        _multiplicity_into(bld, outs, ell)


# -- public constructors ------------------------------------------------------

def relabel_gadget(q: int, a: int, a2: int) -> GadgetInstance:
    """Boundary ``(b', b'')`` with ``L(b') = {a, a2}``: ``a -> 1`` and ``a2 -> 2``,
    each with a unique extension."""
    if q < 3:
        raise PreconditionError("relabel gadget needs q >= 3")
    _check_color(q, a, "a")
    _check_color(q, a2, "a2")
    if a == a2:
        raise PreconditionError("relabel gadget needs a != a2")
    bld = _Builder(q)
    src = bld.vertex((a, a2))
    out = _relabel_into(bld, src, a, a2)
    return _boundary_first(bld, (src, out))


def indicator_gadget(q: int, a: int) -> GadgetInstance:
    """Boundary ``(b, b')``: every color of ``b`` extends uniquely, and ``b'``
    gets 1 exactly when ``b`` gets ``a``."""
    if q < 2:
        raise PreconditionError("indicator gadget needs q >= 2")
    _check_color(q, a, "a")
    bld = _Builder(q)
    b = bld.vertex(range(1, q + 1))
    out = _indicator_into(bld, b, a)
    return _boundary_first(bld, (b, out))


def multiplicity_gadget(k: int, ell: int, q: int = 3) -> GadgetInstance:
    """Boundary ``b_1..b_k`` with lists ``{1, 2}``: ``ell`` extensions when all
    boundary vertices are 1, one extension otherwise."""
    if k < 1:
        raise PreconditionError("multiplicity gadget needs k >= 1")
    bld = _Builder(q)
    boundary = [bld.vertex((1, 2)) for _ in range(k)]
    _multiplicity_into(bld, boundary, ell)
    return bld.finish(boundary)


def function_gadget(q: int, k: int, f: Table) -> GadgetInstance:
    """Boundary ``b_1..b_k`` with ``f(alpha)`` extensions of each precoloring ``alpha``.

    ``f`` is a flat sequence over ``[q]^k`` in lexicographic order, a mapping
    from color tuples, or a callable.  All values must be at least 1; encode
    "forbidden" as a multiple of the modulus, never as 0.
    """
    if q < 3:
        raise PreconditionError("function gadget needs q >= 3")
    if k < 1:
        raise PreconditionError("function gadget needs k >= 1")
    values = _normalize_table(f, q, k)
    for alpha, v in zip(itertools.product(range(1, q + 1), repeat=k), values):
        if v < 1:
            raise PreconditionError(
                f"f{alpha} = {v}: values must be >= 1 (encode forbidden outcomes as p, not 0)")
    bld = _Builder(q)
    boundary = [bld.vertex(range(1, q + 1)) for _ in range(k)]
    _function_into(bld, boundary, values)
    return bld.finish(boundary)


def _boundary_first(bld: _Builder, boundary: Sequence[int]) -> GadgetInstance:
    """Renumber so the boundary takes ``1..k``; other vertices keep their relative order."""
    n = len(bld.lists)
    rest = [v for v in range(1, n + 1) if v not in boundary]
    new_of = {old: new for new, old in enumerate([*boundary, *rest], start=1)}
    g = Graph(n, [(new_of[u], new_of[v]) for u, v in bld.edges])
    lists = ColorLists(bld.q, n, {new_of[v]: bld.list_of(v) for v in range(1, n + 1)})
    return GadgetInstance(g, lists, tuple(range(1, len(boundary) + 1)),
                          LinearArrangement.identity(n))


def size_bound(q: int, k: int, max_f: int) -> int:
    return 20 * k * q ** (k + 1) * max_f


def cutwidth_bound(q: int, k: int) -> int:
    return 6 * k * q ** (k + 2)


# -- verification -------------------------------------------------------------

@dataclass(frozen=True)
class GadgetReport:
    """Extension counts per precoloring of the fixed boundary prefix."""

    counts: dict[tuple[int, ...], int]
    expected: dict[tuple[int, ...], int]
    modulus: int | None = None
    mismatches: tuple[tuple[tuple[int, ...], int, int], ...] = field(default=())

    @property
    def ok(self) -> bool:
        return not self.mismatches


def count_extensions(inst: GadgetInstance, alpha: Sequence[int], fixed: int | None = None,
                     p: int | None = None) -> int:
    """List colorings of the gadget agreeing with ``alpha`` on the first boundary vertices.

    The fixed vertices are deleted, their colors removed from neighbouring
    lists, and every remaining component is counted on its own.
    """
    fixed = len(inst.boundary) if fixed is None else fixed
    if len(alpha) != fixed:
        raise PreconditionError(f"precoloring has {len(alpha)} colors, {fixed} vertices are fixed")
    g, lists = inst.graph, inst.lists
    pinned = dict(zip(inst.boundary[:fixed], alpha))
    for v, c in pinned.items():
        if c not in lists[v]:
            return 0
        if any(pinned.get(u) == c for u in g.neighbors(v)):
            return 0
    order = [v for v in inst.arrangement if v not in pinned]
    if not order:
        return 1
    sub, relabel = g.induced(order)
    sub_lists = ColorLists(lists.q, sub.n, {
        relabel[v]: lists[v] - {pinned[u] for u in g.neighbors(v) if u in pinned} for v in order})
    return count_colorings_folklore(sub, sub_lists, LinearArrangement.identity(sub.n), p)


def verify_gadget(inst: GadgetInstance, f: Table, fixed: int | None = None,
                  p: int | PrimeModulus | None = None) -> GadgetReport:
    """Compare extension counts with ``f`` for every precoloring in ``[q]^fixed``.

    ``fixed`` defaults to the whole boundary.  With ``p`` given, counts and
    expectations are compared modulo ``p``.
    """
    q = inst.q
    fixed = len(inst.boundary) if fixed is None else fixed
    if not 0 <= fixed <= len(inst.boundary):
        raise PreconditionError(f"cannot fix {fixed} of {len(inst.boundary)} boundary vertices")
    limit = enumeration_limit(MAX_SIDE_ASSIGNMENTS)
    if q**fixed > limit:
        raise CapacityError(f"{q}^{fixed} boundary precolorings exceed the guard {limit}")
    mod = None if p is None else as_modulus(p).p
    want = _normalize_table(f, q, fixed)
    counts, expected, bad = {}, {}, []
    for alpha, w in zip(itertools.product(range(1, q + 1), repeat=fixed), want):
        got = count_extensions(inst, alpha, fixed, mod)
        w = w if mod is None else w % mod
        counts[alpha], expected[alpha] = got, w
        if got != w:
            bad.append((alpha, got, w))
    return GadgetReport(counts, expected, mod, tuple(bad))


# -- CSP --------------------------------------------------------------------

@dataclass(frozen=True)
class Constraint:
    scope: tuple[int, ...]
    allowed: frozenset[tuple[int, ...]]

    def __init__(self, scope: Iterable[int], allowed: Iterable[Iterable[int]]):
        object.__setattr__(self, "scope", tuple(int(v) for v in scope))
        object.__setattr__(self, "allowed", frozenset(tuple(int(c) for c in t) for t in allowed))

    def holds(self, assignment: Sequence[int]) -> bool:
        """``assignment[i - 1]`` is the value of variable ``i``."""
        return tuple(assignment[v - 1] for v in self.scope) in self.allowed


@dataclass(frozen=True)
class CspInstance:
    n: int
    q: int
    constraints: tuple[Constraint, ...]

    def __post_init__(self):
        object.__setattr__(self, "constraints", tuple(self.constraints))
        if self.n < 0 or self.q < 1:
            raise PreconditionError("CSP needs n >= 0 and q >= 1")
        for j, con in enumerate(self.constraints, start=1):
            if not con.scope:
                raise PreconditionError(f"constraint {j} has an empty scope")
            if len(set(con.scope)) != len(con.scope):
                raise PreconditionError(f"constraint {j} repeats a variable")
            if any(not 1 <= v <= self.n for v in con.scope):
                raise PreconditionError(f"constraint {j} uses a variable outside [1, {self.n}]")
            for t in con.allowed:
                if len(t) != len(con.scope) or any(not 1 <= c <= self.q for c in t):
                    raise PreconditionError(f"constraint {j}: tuple {t} outside [1, {self.q}]^{len(con.scope)}")

    @property
    def arity(self) -> int:
        return max((len(c.scope) for c in self.constraints), default=0)


def count_csp_bruteforce(c: CspInstance) -> int:
    limit = enumeration_limit(CSP_BRUTE_LIMIT)
    if c.q**c.n > limit:
        raise CapacityError(f"q^n = {c.q}^{c.n} exceeds the enumeration guard {limit}")
    return sum(all(con.holds(x) for con in c.constraints)
               for x in itertools.product(range(1, c.q + 1), repeat=c.n))


@dataclass(frozen=True)
class ListColoringReduction:
    """Output of :func:`csp_to_listcoloring`; unpacks as ``(graph, lists, arrangement)``."""

    graph: Graph
    lists: ColorLists
    arrangement: LinearArrangement
    s: dict[tuple[int, int], int]
    t: dict[tuple[int, int], int]

    def __iter__(self) -> Iterator:
        return iter((self.graph, self.lists, self.arrangement))


def transfer_table(q: int, p: int | PrimeModulus) -> tuple[int, ...]:
    """Representatives in ``1..p`` of the inverse single-edge matrix, row-major."""
    p = as_modulus(p).p
    if (q - 1) % p == 0:
        raise PreconditionError(f"p={p} divides q-1={q - 1}: the edge matrix is singular mod p")
    return tuple(int(x) for x in lift_representative(fp_inverse(edge_matrix(q, p))).ravel())


def transfer_gadget(q: int, p: int | PrimeModulus) -> GadgetInstance:
    """Boundary ``(s, s_next)``: extension count is ``≡ [c(s) = c(s_next)]`` mod ``p``.

    This is the column-to-column piece of the reduction: a function gadget on
    ``(s, t)`` followed by the edge ``t s_next``.
    """
    values = transfer_table(q, p)
    bld = _Builder(q)
    s = bld.vertex(range(1, q + 1))
    t = bld.vertex(range(1, q + 1))
    _function_into(bld, (s, t), values)
    s_next = bld.vertex(range(1, q + 1))
    bld.edge(t, s_next)
    return _boundary_first(bld, (s, s_next))


def csp_to_listcoloring(c: CspInstance, p: int | PrimeModulus) -> ListColoringReduction:
    """List-coloring instance whose count is ``≡`` the CSP solution count mod ``p``.

    Columns ``j = 1..max(m, 1)`` hold ``s_{i,j}``; ``t_{i,j}`` and its transfer
    gadget exist only for ``j < m`` so that no free vertex multiplies the count.
    """
    p = as_modulus(p).p
    q = c.q
    if q < 3:
        raise PreconditionError("reduction needs q >= 3")
    if (q - 1) % p == 0:
        raise PreconditionError(f"p divides q-1: p={p}, q={q}; use the rank algorithm regime instead")
    transfer = transfer_table(q, p)
    cols = max(len(c.constraints), 1)
    bld = _Builder(q)
    s: dict[tuple[int, int], int] = {}
    t: dict[tuple[int, int], int] = {}
    full = range(1, q + 1)
    for j in range(1, cols + 1):
        for i in range(1, c.n + 1):
            s[i, j] = bld.vertex(full)
            if j > 1:
                bld.edge(t[i, j - 1], s[i, j])
            if j < cols:
                t[i, j] = bld.vertex(full)
                _function_into(bld, (s[i, j], t[i, j]), transfer)
        if j <= len(c.constraints):
            con = c.constraints[j - 1]
            values = [1 if alpha in con.allowed else p
                      for alpha in itertools.product(full, repeat=len(con.scope))]
            _function_into(bld, [s[v, j] for v in con.scope], values)
    return ListColoringReduction(bld.graph(), bld.color_lists(),
                                 LinearArrangement.identity(len(bld.lists)), s, t)


# -- clique chain -----------------------------------------------------------

def clique_vertex(n: int, q: int, i: int, c: int) -> int:
    """Vertex id of ``u_c^i`` (``i`` is the arrangement position)."""
    return n + (i - 1) * q + c


def clique_chain(g: Graph, lists: ColorLists, a: LinearArrangement) -> tuple[Graph, LinearArrangement]:
    """Graph whose essentially distinct colorings match the list colorings of ``(g, lists)``.

    Each position ``i`` gets a ``q``-clique ``u^i``; consecutive cliques are
    joined by all edges between different colors, and ``u^i_c`` is joined to
    ``v_i`` whenever ``c`` is not in ``v_i``'s list.  Within each clique the
    excluded colors are placed first, which keeps every cut within ``q^2``
    of the corresponding cut of ``g`` for ``q <= 3``.
    """
    q, n = lists.q, g.n
    if q < 2:
        raise PreconditionError("clique chain needs q >= 2")
    if lists.n != n:
        raise PreconditionError(f"lists cover {lists.n} vertices, graph has {n}")
    _check_arrangement(g, a)
    edges = list(g.edges)
    order: list[int] = []
    for i in range(1, n + 1):
        v = a[i]
        u = [clique_vertex(n, q, i, c) for c in range(1, q + 1)]
        edges.extend(itertools.combinations(u, 2))
        if i < n:
            edges.extend((u[c - 1], clique_vertex(n, q, i + 1, d))
                         for c in range(1, q + 1) for d in range(1, q + 1) if c != d)
        excluded = [c for c in range(1, q + 1) if c not in lists[v]]
        edges.extend((u[c - 1], v) for c in excluded)
        kept = [c for c in range(1, q + 1) if c in lists[v]]
        order.append(v)
        order.extend(u[c - 1] for c in excluded + kept)
    return Graph(n + n * q, edges), LinearArrangement(order)


def count_essentially_distinct_with_clique(g: Graph, q: int, clique: Sequence[int],
                                           a: LinearArrangement,
                                           p: int | PrimeModulus | None = None) -> int:
    """Essentially distinct ``q``-colorings of a graph containing the ``q``-clique ``clique``.

    Every class has exactly one member coloring ``clique[c-1]`` with ``c``, so
    the folklore DP with those vertices pinned counts the classes.
    """
    if len(clique) != q or len(set(clique)) != q:
        raise PreconditionError(f"need {q} distinct clique vertices")
    for x, y in itertools.combinations(clique, 2):
        if not g.has_edge(x, y):
            raise PreconditionError(f"({x}, {y}) missing: the given vertices are not a clique")
    pinned = {v: (c,) for c, v in enumerate(clique, start=1)}
    return count_colorings_folklore(g, ColorLists(q, g.n, pinned), a, p)
