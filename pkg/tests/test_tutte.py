from __future__ import annotations

from fractions import Fraction

import networkx as nx
import pytest
import sympy

from modcount.coloring import count_essentially_distinct_bruteforce
from modcount.cse import count_cse_bruteforce
from modcount.errors import PreconditionError
from modcount.graph import Graph, k_stretch
from modcount.tutte import (
    chromatic_at,
    edgeset_rank,
    essentially_distinct_mod,
    parse_rational,
    rank_size_histogram,
    stretch_congruence_sides,
    tutte_eval,
    verify_stretch_identity,
    wilson_factor,
)

from conftest import atlas_graphs, to_nx


def nx_tutte(g: Graph, x, y) -> Fraction:
    poly = nx.tutte_polynomial(to_nx(g))
    syms = {s.name: s for s in poly.free_symbols}
    val = sympy.sympify(poly).subs({syms.get("x", sympy.Symbol("x")): sympy.Rational(x),
                                    syms.get("y", sympy.Symbol("y")): sympy.Rational(y)})
    val = sympy.Rational(val)
    return Fraction(int(val.p), int(val.q))


def rank(g: Graph) -> int:
    return g.n - nx.number_connected_components(to_nx(g))


SMALL = list(atlas_graphs(max_m=6, connected=False, max_n=6))


def test_parse_rational():
    assert parse_rational("4/3") == Fraction(4, 3)
    assert parse_rational("-2") == -2
    with pytest.raises(PreconditionError):
        parse_rational("1/0")


@pytest.mark.parametrize("edges,k,r", [((), 3, 0), (((1, 2),), 2, 1), (((1, 2), (2, 3), (1, 3)), 1, 2)])
def test_edgeset_rank(edges, k, r):
    data = edgeset_rank(Graph.complete(3), edges)
    assert (data.components, data.rank) == (k, r)


def test_edgeset_rank_foreign_edge():
    with pytest.raises(PreconditionError):
        edgeset_rank(Graph.path(3), [(1, 3)])


def test_histogram_counts_all_subsets():
    g = Graph.complete(4)
    assert sum(rank_size_histogram(g).values()) == 2**6


class TestEval:
    def test_examples(self):
        assert tutte_eval(Graph.edgeless(3), 5, 7) == 1
        assert tutte_eval(Graph.complete(3), 1, 2) == 4
        assert tutte_eval(Graph.complete(3), -2, 0) == 2

    @pytest.mark.parametrize("x,y", [(1, 2), (2, 1), (-2, 0), ("1/2", "3/4"), (3, -1)])
    def test_matches_networkx(self, x, y):
        for g in atlas_graphs(max_m=7, connected=False, max_n=6):
            assert tutte_eval(g, x, y) == nx_tutte(g, x, y)

    def test_at_1_2_counts_connected_spanning_sets(self):
        for g in atlas_graphs(max_m=9, connected=True, max_n=7):
            assert tutte_eval(g, 1, 2) == count_cse_bruteforce(g)


class TestChromatic:
    def test_examples(self):
        assert chromatic_at(Graph.complete(3), 3) == 6
        assert chromatic_at(Graph.complete(3), 2) == 0
        assert chromatic_at(Graph.edgeless(2), 3) == 9

    def test_matches_networkx(self):
        t = sympy.Symbol("x")
        for g in atlas_graphs(max_m=8, connected=False, max_n=6):
            poly = nx.chromatic_polynomial(to_nx(g))
            sym = next(iter(poly.free_symbols), t)
            for q in (1, 2, 3, 4):
                assert chromatic_at(g, q) == int(poly.subs(sym, q))


class TestStretch:
    def test_triangle(self):
        rep = verify_stretch_identity(Graph.complete(3), 2, 1, 2)
        assert rep.left == rep.right == 7

    def test_single_edge(self):
        rep = verify_stretch_identity(Graph.path(2), 3, 1, 2)
        assert rep.left == 1 == tutte_eval(Graph.path(4), 1, 2)
        assert rep.equal

    def test_k1_trivial(self):
        for g in SMALL[:20]:
            rep = verify_stretch_identity(g, 1, "2/3", 5)
            assert rep.left == rep.right

    @pytest.mark.parametrize("k", [2, 3])
    def test_identity_at_1_2(self, k):
        for g in SMALL:
            assert verify_stretch_identity(g, k, 1, 2).equal

    @pytest.mark.parametrize("k", [2, 3, 4])
    @pytest.mark.parametrize("ab", [(2, 3), ("1/2", -1), (-3, "5/2")])
    def test_identity_at_other_points(self, k, ab):
        for g in SMALL:
            if g.m <= 4:
                assert verify_stretch_identity(g, k, *ab).equal

    def test_node_count_exponent_fails_on_a_tree(self):
        # with exponent n - r(G) a single edge would give 3 * T(K_2; 1, 4/3) = 3, not 1
        g = Graph.path(2)
        wrong = 3 ** (g.n - rank(g)) * tutte_eval(g, 1, Fraction(4, 3))
        assert wrong == 3
        assert tutte_eval(k_stretch(g, 3), 1, 2) == 1

    def test_vanishing_sum(self):
        with pytest.raises(PreconditionError):
            verify_stretch_identity(Graph.path(2), 2, -1, 2)


class TestCongruence:
    @pytest.mark.parametrize("p", [2, 3])
    def test_nullity_sign(self, p):
        for g in SMALL:
            left, right = stretch_congruence_sides(g, p)
            sign = (-1) ** (g.m - rank(g))
            assert left == (sign * right) % p

    def test_node_count_sign_breaks_on_even_nullity(self):
        # K_4 minus an edge: m - r = 2 but n - r = 1
        g = Graph(4, [(1, 2), (1, 3), (1, 4), (2, 3), (3, 4)])
        assert stretch_congruence_sides(g, 3) == (1, 1)
        assert (-1) ** (g.n - rank(g)) * 1 % 3 == 2


class TestWilson:
    def test_factor(self):
        assert [wilson_factor(p) for p in (2, 3, 5)] == [2, 6, 120]
        assert all((wilson_factor(p - 1) + 1) % p == 0 for p in (2, 3, 5, 7, 11))

    def test_chain(self):
        hits = 0
        for g in atlas_graphs(max_m=10, connected=True, max_n=6):
            for p in (2, 3):
                if chromatic_at(g, p - 1) != 0:
                    continue
                c = count_essentially_distinct_bruteforce(g, p)
                assert chromatic_at(g, p) == wilson_factor(p) * c
                assert essentially_distinct_mod(g, p) == c % p
                hits += 1
        assert hits > 20

    def test_examples(self):
        assert essentially_distinct_mod(Graph.complete(3), 3) == 1
        assert essentially_distinct_mod(Graph.complete(4), 3) == 0
        assert essentially_distinct_mod(Graph.complete(2), 2) == 1

    def test_preconditions(self):
        with pytest.raises(PreconditionError):
            essentially_distinct_mod(Graph.path(3), 3)
        with pytest.raises(PreconditionError):
            essentially_distinct_mod(Graph(4, [(1, 2), (3, 4)]), 2)
