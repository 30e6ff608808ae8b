"""Exact Tutte polynomial point evaluation and the identities linking it to
connected spanning edge sets, stretched graphs and chromatic polynomials.

Evaluation uses the subset-sum definition directly; all arithmetic is over
:class:`fractions.Fraction`.
"""

from __future__ import annotations

from collections import Counter
from collections.abc import Iterable
from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .errors import CapacityError, PreconditionError, enumeration_limit
from .fplinalg import as_modulus
from .graph import Graph, _edge, k_stretch

Rational = Fraction
EDGE_SUBSET_LIMIT = 2**25


def parse_rational(text: str | int | Fraction) -> Fraction:
    """``"num/den"`` or a plain integer."""
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise PreconditionError(f"not a rational number: {text!r}") from exc


@dataclass(frozen=True)
class EdgeSubsetRankData:
    subset: frozenset[tuple[int, int]]
    rank: int
    components: int


def _components_of(n: int, edges: Iterable[tuple[int, int]]) -> int:
    parent = list(range(n + 1))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    parts = n
    for u, v in edges:
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
            parts -= 1
    return parts


def edgeset_rank(g: Graph, a: Iterable[tuple[int, int]]) -> EdgeSubsetRankData:
    """``k(A)`` components of ``(V, A)`` and rank ``r(A) = n - k(A)``."""
    subset = frozenset(_edge(u, v) for u, v in a)
    foreign = subset - g.edges
    if foreign:
        raise PreconditionError(f"edge {sorted(foreign)[0]} is not in the graph")
    k = _components_of(g.n, subset)
    return EdgeSubsetRankData(subset, g.n - k, k)


def rank_size_histogram(g: Graph) -> Counter:
    """Map ``(|A|, r(A))`` to the number of subsets ``A ⊆ E`` with those values."""
    limit = enumeration_limit(EDGE_SUBSET_LIMIT)
    if 2**g.m > limit:
        raise CapacityError(f"2^{g.m} edge subsets exceed the enumeration guard {limit}")
    edges = g.edge_list
    m = len(edges)
    parent = list(range(g.n + 1))
    size = [1] * (g.n + 1)
    hist: Counter = Counter()

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    # include/exclude recursion with union-by-size so unions can be undone
    def walk(j: int, count: int, rank: int) -> None:
        if j == m:
            hist[(count, rank)] += 1
            return
        walk(j + 1, count, rank)
        u, v = edges[j]
        ru, rv = find(u), find(v)
        if ru == rv:
            walk(j + 1, count + 1, rank)
            return
        if size[ru] < size[rv]:
            ru, rv = rv, ru
        parent[rv] = ru
        size[ru] += size[rv]
        walk(j + 1, count + 1, rank + 1)
        size[ru] -= size[rv]
        parent[rv] = rv

    walk(0, 0, 0)
    return hist


def tutte_eval(g: Graph, x, y) -> Fraction:
    """``T(G; x, y) = sum_A (x-1)^(r(E)-r(A)) (y-1)^(|A|-r(A))`` with ``0^0 = 1``."""
    x, y = parse_rational(x), parse_rational(y)
    hist = rank_size_histogram(g)
    full_rank = g.n - _components_of(g.n, g.edges)
    total = Fraction(0)
    for (count, rank), mult in sorted(hist.items()):
        total += mult * (x - 1) ** (full_rank - rank) * (y - 1) ** (count - rank)
    return total


def _as_int(value: Fraction) -> int:
    if value.denominator != 1:
        raise AssertionError(f"expected an integer, got {value}")
    return value.numerator


def chromatic_at(g: Graph, t: int) -> int:
    """Chromatic polynomial ``P(G; t) = (-1)^r(G) t^k(G) T(G; 1-t, 0)``."""
    k = _components_of(g.n, g.edges)
    r = g.n - k
    return _as_int((-1) ** r * Fraction(t) ** k * tutte_eval(g, 1 - t, 0))


@dataclass(frozen=True)
class StretchReport:
    k: int
    a: Fraction
    b: Fraction
    left: Fraction
    right: Fraction

    @property
    def equal(self) -> bool:
        return self.left == self.right


def verify_stretch_identity(g: Graph, k: int, a, b) -> StretchReport:
    """Evaluate both sides of the k-stretch identity exactly.

    left  = T(^kG; a, b)
    right = s^(m - r(G)) T(G; a^k, (b + s - 1) / s),  s = 1 + a + ... + a^(k-1)

    The exponent is the nullity ``m - r(G)``.  A tree stretches to a tree and
    both sides are then ``a^(km)``, which pins the exponent to zero there.
    """
    a, b = parse_rational(a), parse_rational(b)
    if k < 1:
        raise PreconditionError("stretch factor k must be >= 1")
    s = sum((a**j for j in range(k)), Fraction(0))
    if s == 0:
        raise PreconditionError(f"1 + a + ... + a^(k-1) vanishes at a={a}, k={k}")
    left = tutte_eval(k_stretch(g, k), a, b)
    nullity = g.m - (g.n - _components_of(g.n, g.edges))
    right = s**nullity * tutte_eval(g, a**k, (b + s - 1) / s)
    return StretchReport(k, a, b, left, right)


def stretch_congruence_sides(g: Graph, p) -> tuple[int, int]:
    """``(T(^(p-1)G; 1, 2) mod p, T(G; 1-p, 0) mod p)``; related by ``(-1)^(m - r(G))``."""
    p = as_modulus(p).p
    left = _as_int(tutte_eval(k_stretch(g, p - 1), 1, 2)) % p
    return left, _as_int(tutte_eval(g, 1 - p, 0)) % p


def essentially_distinct_mod(g: Graph, p) -> int:
    """Essentially distinct ``p``-colorings modulo ``p`` from ``T(G; 1-p, 0)``.

    Valid for connected graphs that are not ``(p-1)``-colorable, where
    ``(-1)^(n-1) T(G; 1-p, 0) ≡ -C_p(G)`` by Wilson's theorem.
    """
    p = as_modulus(p).p
    if not g.is_connected():
        raise PreconditionError("graph must be connected")
    if chromatic_at(g, p - 1) != 0:
        raise PreconditionError(f"graph is {p - 1}-colorable; the Tutte relation does not apply")
    t = _as_int(tutte_eval(g, 1 - p, 0))
    return ((-1) ** g.n * t) % p


def wilson_factor(p: int) -> int:
    """``p!``: colorings per essentially distinct class when all ``p`` colors are used."""
    return factorial(p)
