"""Counting list q-colorings: enumeration oracles, the folklore cut DP and the
rank-based representative-set DP for primes ``p`` dividing ``q - 1``.

DP tables are sparse dictionaries keyed by the mixed-radix code (see
:mod:`modcount.fplinalg`) of an assignment to ``X_i``, with ``X_i`` ordered by
arrangement position.  Absent keys mean zero.
"""

from __future__ import annotations

from collections.abc import Iterator
from dataclasses import dataclass, field

from .errors import CapacityError, PreconditionError, enumeration_limit
from .fplinalg import BipartiteCutGraph, PrimeModulus, as_modulus, decode_assignment, encode_assignment
from .graph import ColorLists, CutProfile, Graph, LinearArrangement, cut_profile, _check_arrangement

BRUTE_LIMIT = 10**8


def _guard(q: int, n: int) -> None:
    limit = enumeration_limit(BRUTE_LIMIT)
    if q**n > limit:
        raise CapacityError(f"q^n = {q}^{n} exceeds the enumeration guard {limit}")


def _check_lists(g: Graph, lists: ColorLists) -> None:
    if lists.n != g.n:
        raise PreconditionError(f"lists cover {lists.n} vertices, graph has {g.n}")


# -- oracles ----------------------------------------------------------------

def count_colorings_bruteforce(g: Graph, lists: ColorLists) -> int:
    """Exact number of list colorings by exhaustive backtracking over ``1..n``."""
    _check_lists(g, lists)
    _guard(lists.q, g.n)
    earlier = [[]] + [[u for u in g.neighbors(v) if u < v] for v in g.vertices]
    options = [()] + [tuple(sorted(lists[v])) for v in g.vertices]
    color = [0] * (g.n + 1)

    def extend(v: int) -> int:
        if v > g.n:
            return 1
        total = 0
        for c in options[v]:
            if all(color[u] != c for u in earlier[v]):
                color[v] = c
                total += extend(v + 1)
        color[v] = 0
        return total

    return extend(1)


def count_essentially_distinct_bruteforce(g: Graph, q: int) -> int:
    """Number of proper q-colorings up to permuting colors.

    Counts canonical representatives only: colors appear in order of first use
    along ``1..n`` (restricted growth strings).
    """
    if q < 1:
        raise PreconditionError("q must be at least 1")
    _guard(q, g.n)
    earlier = [[]] + [[u for u in g.neighbors(v) if u < v] for v in g.vertices]
    color = [0] * (g.n + 1)

    def extend(v: int, used: int) -> int:
        if v > g.n:
            return 1
        total = 0
        for c in range(1, min(q, used + 1) + 1):
            if all(color[u] != c for u in earlier[v]):
                color[v] = c
                total += extend(v + 1, max(used, c))
        color[v] = 0
        return total

    return extend(1, 0)


# -- tables -----------------------------------------------------------------

@dataclass
class SparseTable:
    """Function on assignments to ``vertices``; ``p=None`` means exact integers."""

    vertices: tuple[int, ...]
    q: int
    entries: dict[int, int] = field(default_factory=dict)
    p: int | None = None

    def __getitem__(self, colors: tuple[int, ...]) -> int:
        return self.entries.get(encode_assignment(colors, self.q), 0)

    def items(self) -> Iterator[tuple[tuple[int, ...], int]]:
        k = len(self.vertices)
        for key in sorted(self.entries):
            yield decode_assignment(key, k, self.q), self.entries[key]

    def support_size(self) -> int:
        return len(self.entries)

    def dense(self) -> list[int]:
        """Full vector over all ``q^|X|`` assignments in mixed-radix order."""
        vec = [0] * self.q ** len(self.vertices)
        for key, val in self.entries.items():
            vec[key] = val
        return vec


def _extend(table: SparseTable, new_vertices: tuple[int, ...], vi: int,
            colors: frozenset[int], g: Graph) -> SparseTable:
    """Shared step of both cut DPs: add ``v_i`` in every allowed color
    compatible with ``z``, restrict to ``new_vertices`` and accumulate."""
    q, p = table.q, table.p
    old = table.vertices
    old_pos = {v: j for j, v in enumerate(old)}
    conflict_idx = [old_pos[u] for u in g.neighbors(vi) if u in old_pos]
    # each new vertex is either v_i or taken from the old assignment
    picks = [None if v == vi else old_pos[v] for v in new_vertices]
    out: dict[int, int] = {}
    k = len(old)
    for key, val in table.entries.items():
        z = decode_assignment(key, k, q)
        blocked = {z[j] for j in conflict_idx}
        for c in colors:
            if c in blocked:
                continue
            nk = 0
            for j in picks:
                nk = nk * q + ((c if j is None else z[j]) - 1)
            acc = out.get(nk, 0) + val
            if p is not None:
                acc %= p
            if acc:
                out[nk] = acc
            else:
                out.pop(nk, None)
    return SparseTable(new_vertices, q, out, p)


def _initial_table(vertex: int, lists: ColorLists, p: int | None) -> SparseTable:
    entries = {c - 1: 1 for c in sorted(lists[vertex])}
    return SparseTable((vertex,), lists.q, entries, p)


def _components(g: Graph, lists: ColorLists, a: LinearArrangement):
    """Per-component (graph, lists, arrangement), relabelled by arrangement order."""
    pos = a.position
    for comp in g.components():
        order = sorted(comp, key=pos.__getitem__)
        sub, relabel = g.induced(order)
        sub_lists = ColorLists(lists.q, sub.n, {relabel[v]: lists[v] for v in order})
        yield sub, sub_lists, LinearArrangement.identity(sub.n)


# -- folklore DP ------------------------------------------------------------

def folklore_tables(g: Graph, lists: ColorLists, a: LinearArrangement,
                    p: int | PrimeModulus | None = None) -> Iterator[tuple[CutProfile, SparseTable]]:
    """Yield ``(cut_i, T_i)`` for ``i = 1..n``; ``T_i[x]`` counts extensions of ``x`` to ``G_i``."""
    _check_lists(g, lists)
    _check_arrangement(g, a)
    p = None if p is None else as_modulus(p).p
    table = None
    for i in range(1, g.n + 1):
        cut = cut_profile(g, a, i)
        if table is None:
            table = _initial_table(cut.vertex, lists, p)
            if cut.X != (cut.vertex,):
                raise AssertionError("X_1 must be {v_1}")
        else:
            table = _extend(table, cut.X, cut.vertex, lists[cut.vertex], g)
        yield cut, table


def count_colorings_folklore(g: Graph, lists: ColorLists, a: LinearArrangement,
                             p: int | PrimeModulus | None = None) -> int:
    """Number of list colorings via the folklore cut DP (exact, or mod ``p``)."""
    _check_lists(g, lists)
    _check_arrangement(g, a)
    mod = None if p is None else as_modulus(p).p
    if lists.has_empty():
        return 0
    total = 1
    for sub, sub_lists, sub_a in _components(g, lists, a):
        table = None
        for _, table in folklore_tables(sub, sub_lists, sub_a, mod):
            pass
        part = sum(table.entries.values())
        total = total * part if mod is None else (total * part) % mod
    return total


# -- rank-based DP ----------------------------------------------------------

@dataclass
class ReducedState:
    """Representative table ``T'_i`` with its reduced vertices at cut ``i``."""

    table: SparseTable
    reduced: frozenset[int]
    cut: CutProfile

    @property
    def position(self) -> int:
        return self.cut.position

    def unreduced(self) -> tuple[int, ...]:
        return tuple(v for v in self.table.vertices if v not in self.reduced)

    def support_bound(self) -> int:
        q, r = self.table.q, len(self.reduced)
        return (q - 1) ** r * q ** (len(self.table.vertices) - r)


def _require_rank_modulus(q: int, p: int) -> None:
    if (q - 1) % p != 0:
        raise PreconditionError(
            f"p={p} does not divide q-1={q - 1}: rank algorithm inapplicable")


def reduce_vertex(s: ReducedState, v: int, cut: BipartiteCutGraph | CutProfile | None = None) -> ReducedState:
    """Make ``v`` a reduced vertex while keeping the table a representative.

    ``T'[x] = 0`` if ``x(v) = q``, else ``T[x] - T[x']`` with ``x'`` equal to
    ``x`` except ``x'(v) = q``.  Requires ``p | q-1`` and ``v`` of degree 1 in
    the cut.  Keys range over all of ``[q]^X`` (not just list-valid ones).
    """
    table = s.table
    q, p = table.q, table.p
    if p is None:
        raise PreconditionError("reduce_vertex needs a prime modulus")
    _require_rank_modulus(q, p)
    cut = s.cut if cut is None else cut
    if v not in table.vertices or v in s.reduced:
        raise PreconditionError(f"vertex {v} is not an unreduced vertex of the table")
    if cut.degree(v) != 1:
        raise PreconditionError(f"vertex {v} has cut degree {cut.degree(v)}, need exactly 1")
    k = len(table.vertices)
    j = table.vertices.index(v)
    place = q ** (k - 1 - j)
    out: dict[int, int] = {}
    for key, val in table.entries.items():
        digit = (key // place) % q
        if digit != q - 1:
            out[key] = (out.get(key, 0) + val) % p
        else:
            base = key - digit * place
            for d in range(q - 1):
                nk = base + d * place
                out[nk] = (out.get(nk, 0) - val) % p
    out = {key: val for key, val in out.items() if val}
    return ReducedState(SparseTable(table.vertices, q, out, p), s.reduced | {v}, s.cut)


def fully_reduce(s: ReducedState) -> ReducedState:
    """Reduce every unreduced degree-1 vertex of the cut, in ascending vertex id."""
    _require_rank_modulus(s.table.q, s.table.p)
    for v in sorted(s.unreduced()):
        if s.cut.degree(v) == 1:
            s = reduce_vertex(s, v)
    return s


def is_fully_reduced(s: ReducedState) -> bool:
    return all(s.cut.degree(v) != 1 for v in s.unreduced())


def iterate_cut(s: ReducedState, g: Graph, lists: ColorLists, a: LinearArrangement) -> ReducedState:
    """Advance a fully reduced state from cut ``i-1`` to cut ``i``.

    The table is extended exactly like the folklore recurrence; the new
    reduced set drops vertices with two or more right neighbours and those
    with one right neighbour that is also adjacent to ``v_i``.
    """
    if not is_fully_reduced(s):
        raise PreconditionError(f"state at cut {s.position} is not fully reduced")
    i = s.position + 1
    cut = cut_profile(g, a, i)
    vi = cut.vertex
    table = _extend(s.table, cut.X, vi, lists[vi], g)
    reduced = set()
    for u in cut.X:
        if u == vi:
            continue
        d = cut.degree(u)
        if d >= 2 or (d == 1 and g.has_edge(u, vi)):
            continue
        reduced.add(u)
    return ReducedState(table, frozenset(reduced), cut)


def iter_rank_states(g: Graph, lists: ColorLists, a: LinearArrangement,
                     p: int | PrimeModulus) -> Iterator[tuple[str, ReducedState]]:
    """Run the rank DP on a connected instance, yielding ``("iterate"|"reduce", state)``
    for each cut ``1..n-1`` (``"init"`` stands in for ``"iterate"`` at cut 1)."""
    p = as_modulus(p).p
    _require_rank_modulus(lists.q, p)
    cut = cut_profile(g, a, 1)
    state = ReducedState(_initial_table(cut.vertex, lists, p), frozenset(), cut)
    yield "init", state
    state = fully_reduce(state)
    yield "reduce", state
    for _ in range(2, g.n):
        state = iterate_cut(state, g, lists, a)
        yield "iterate", state
        state = fully_reduce(state)
        yield "reduce", state


def _rank_component(g: Graph, lists: ColorLists, a: LinearArrangement, p: int) -> int:
    if g.n == 1:
        return len(lists[1]) % p
    state = None
    for _, state in iter_rank_states(g, lists, a, p):
        pass
    # sum over colorings y of Y_{n-1} = {v_n} and the support of T'_{n-1}
    vn = a[g.n]
    xs = state.table.vertices
    idx = [j for j, u in enumerate(xs) if g.has_edge(u, vn)]
    total = 0
    for key, val in state.table.entries.items():
        x = decode_assignment(key, len(xs), lists.q)
        seen = {x[j] for j in idx}
        total += val * sum(1 for c in lists[vn] if c not in seen)
    return total % p


def count_colorings_rank(g: Graph, lists: ColorLists, a: LinearArrangement,
                         p: int | PrimeModulus) -> int:
    """Number of list q-colorings modulo ``p`` where ``p | q-1`` and ``q >= 3``.

    Each connected component is run separately on the induced arrangement
    and the results multiplied.
    """
    _check_lists(g, lists)
    _check_arrangement(g, a)
    mod = as_modulus(p).p
    q = lists.q
    if q < 3:
        raise PreconditionError("rank algorithm requires q >= 3; use the folklore DP")
    _require_rank_modulus(q, mod)
    if lists.has_empty():
        return 0
    total = 1
    for sub, sub_lists, sub_a in _components(g, lists, a):
        total = total * _rank_component(sub, sub_lists, sub_a, mod) % mod
    return total % mod
