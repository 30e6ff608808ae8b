from __future__ import annotations

import itertools

import numpy as np
import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from modcount.errors import CapacityError, PreconditionError, SingularMatrixError
from modcount.fplinalg import (
    BipartiteCutGraph,
    FpMatrix,
    PrimeModulus,
    assignment_array,
    compatibility_matrix,
    decode_assignment,
    edge_matrix,
    encode_assignment,
    fp_inverse,
    fp_rank,
    is_prime,
    kronecker,
    kronecker_power,
    lift_representative,
    matching_rank_bound,
)


def sympy_rank_mod_p(m: FpMatrix) -> int:
    """Independent rank: sympy's row echelon form over GF(p)."""
    from sympy.polys.matrices import DomainMatrix
    from sympy import GF

    dm = DomainMatrix.from_list_sympy(m.rows, m.cols, m.tolist()).convert_to(GF(m.p))
    return dm.rank()


def test_prime_modulus_rejects_composites():
    assert PrimeModulus(7).p == 7
    for bad in (0, 1, 4, 9, 15):
        with pytest.raises(PreconditionError):
            PrimeModulus(bad)
    assert [n for n in range(30) if is_prime(n)] == list(sympy.primerange(0, 30))


def test_mixed_radix_keys_put_first_vertex_most_significant():
    assert encode_assignment((1, 1), 3) == 0
    assert encode_assignment((2, 1), 3) == 3
    assert encode_assignment((1, 2), 3) == 1
    for colors in itertools.product(range(1, 4), repeat=3):
        assert decode_assignment(encode_assignment(colors, 3), 3, 3) == colors
    rows = assignment_array(2, 3)
    assert [encode_assignment(r, 3) for r in rows.tolist()] == list(range(9))


def test_assignment_array_guard():
    with pytest.raises(CapacityError):
        assignment_array(21, 2)
    with pytest.raises(PreconditionError):
        assignment_array(2, 3, [[1], []])


def test_fpmatrix_reduces_entries_and_is_immutable():
    m = FpMatrix(np.array([[5, -1], [3, 7]]), 3)
    assert m.tolist() == [[2, 2], [0, 1]]
    with pytest.raises(ValueError):
        m.entries[0, 0] = 1


class TestCompatibilityMatrix:
    def test_single_edge_is_zero_diagonal(self):
        h = BipartiteCutGraph(("u",), ("w",), frozenset({("u", "w")}), 3)
        m = compatibility_matrix(h, 5)
        assert m.tolist() == [[0, 1, 1], [1, 0, 1], [1, 1, 0]]

    def test_no_edges_gives_all_ones(self):
        h = BipartiteCutGraph(("u",), ("w",), frozenset(), 2)
        assert compatibility_matrix(h, 3).tolist() == [[1, 1], [1, 1]]

    @pytest.mark.parametrize("q", [2, 3])
    def test_matching_is_kronecker_square(self, q):
        h = BipartiteCutGraph.matching(2, q)
        j1 = edge_matrix(q, 7)
        assert compatibility_matrix(h, 7) == kronecker(j1, j1)

    def test_lists_restrict_rows_and_columns(self):
        h = BipartiteCutGraph(("u",), ("w",), frozenset({("u", "w")}), 3)
        m = compatibility_matrix(h, 2, {"u": {1, 2}, "w": {2}})
        assert m.tolist() == [[1], [0]]

    def test_entries_match_definition_by_enumeration(self):
        h = BipartiteCutGraph(("a", "b"), ("c",), frozenset({("a", "c"), ("b", "c")}), 3)
        m = compatibility_matrix(h, 2).tolist()
        for xi, x in enumerate(itertools.product(range(1, 4), repeat=2)):
            for yi, (y,) in enumerate(itertools.product(range(1, 4), repeat=1)):
                assert m[xi][yi] == int(x[0] != y and x[1] != y)

    def test_bad_sides(self):
        with pytest.raises(PreconditionError):
            BipartiteCutGraph(("a",), ("a",), frozenset())
        with pytest.raises(PreconditionError):
            BipartiteCutGraph(("a",), ("b",), frozenset({("b", "a")}))


class TestRank:
    def test_edge_matrix_ranks(self):
        assert fp_rank(edge_matrix(3, 2)) == 2
        assert fp_rank(edge_matrix(3, 3)) == 3

    def test_two_pair_matching_over_f2(self):
        assert fp_rank(compatibility_matrix(BipartiteCutGraph.matching(2, 3), 2)) == 4

    def test_input_untouched(self):
        m = edge_matrix(4, 3)
        before = m.tolist()
        fp_rank(m)
        assert m.tolist() == before

    @pytest.mark.parametrize("q,p,t", list(itertools.product(range(2, 6), (2, 3, 5), (1, 2, 3))))
    def test_matching_rank_law(self, q, p, t):
        m = compatibility_matrix(BipartiteCutGraph.matching(t, q), p)
        want = (q - 1) ** t if (q - 1) % p == 0 else q**t
        assert fp_rank(m) == want == matching_rank_bound(q, p, t)

    @settings(max_examples=60, deadline=None)
    @given(st.sampled_from([2, 3, 5, 7]), st.integers(1, 6), st.integers(1, 6), st.data())
    def test_agrees_with_sympy(self, p, r, c, data):
        rows = data.draw(st.lists(st.lists(st.integers(0, p - 1), min_size=c, max_size=c),
                                  min_size=r, max_size=r))
        m = FpMatrix(np.array(rows, dtype=np.int64), p)
        assert fp_rank(m) == sympy_rank_mod_p(m)

    @settings(max_examples=40, deadline=None)
    @given(st.sampled_from([2, 3, 5]), st.data())
    def test_kronecker_rank_is_multiplicative(self, p, data):
        def mat():
            r, c = data.draw(st.integers(1, 3)), data.draw(st.integers(1, 3))
            rows = data.draw(st.lists(st.lists(st.integers(0, p - 1), min_size=c, max_size=c),
                                      min_size=r, max_size=r))
            return FpMatrix(np.array(rows, dtype=np.int64), p)

        a, b = mat(), mat()
        assert fp_rank(kronecker(a, b)) == fp_rank(a) * fp_rank(b)


def test_matching_bound_holds_for_every_small_bipartite_graph():
    sides = [(("x1",), ("y1",)), (("x1", "x2"), ("y1",)), (("x1",), ("y1", "y2")), (("x1", "x2"), ("y1", "y2"))]
    for left, right in sides:
        pairs = [(x, y) for x in left for y in right]
        for mask in range(1 << len(pairs)):
            edges = frozenset(e for j, e in enumerate(pairs) if mask >> j & 1)
            for q in (2, 3):
                for p in (2, 3):
                    h = BipartiteCutGraph(left, right, edges, q)
                    assert fp_rank(compatibility_matrix(h, p)) <= matching_rank_bound(q, p, len(edges))


class TestKronecker:
    def test_identity(self):
        i2 = FpMatrix.identity(2, 5)
        assert kronecker(i2, i2) == FpMatrix.identity(4, 5)

    def test_block_structure(self):
        j1 = edge_matrix(2, 3)
        k = np.array(kronecker(j1, j1).tolist())
        a = np.array(j1.tolist())
        expected = np.array([[a[i // 2, j // 2] * a[i % 2, j % 2] for j in range(4)] for i in range(4)])
        assert (k == expected).all()

    def test_modulus_mismatch(self):
        with pytest.raises(PreconditionError):
            kronecker(edge_matrix(2, 3), edge_matrix(2, 5))

    def test_power(self):
        assert kronecker_power(edge_matrix(3, 2), 2) == kronecker(edge_matrix(3, 2), edge_matrix(3, 2))


class TestInverse:
    def test_edge_matrix_inverse_q3_p3(self):
        inv = fp_inverse(edge_matrix(3, 3))
        assert inv.tolist() == [[1, 2, 2], [2, 1, 2], [2, 2, 1]]
        assert inv @ edge_matrix(3, 3) == FpMatrix.identity(3, 3)

    def test_singular(self):
        with pytest.raises(SingularMatrixError):
            fp_inverse(edge_matrix(3, 2))

    def test_identity(self):
        for p in (2, 3, 7):
            assert fp_inverse(FpMatrix.identity(3, p)) == FpMatrix.identity(3, p)

    def test_non_square(self):
        with pytest.raises(PreconditionError):
            fp_inverse(FpMatrix(np.ones((2, 3), dtype=np.int64), 3))

    @pytest.mark.parametrize("q,p", [(3, 3), (4, 2), (4, 5), (5, 3), (6, 3), (3, 5)])
    def test_edge_matrix_invertible_iff_p_not_dividing_q_minus_1(self, q, p):
        inv = fp_inverse(edge_matrix(q, p))
        assert inv @ edge_matrix(q, p) == FpMatrix.identity(q, p)
        assert edge_matrix(q, p) @ inv == FpMatrix.identity(q, p)

    @settings(max_examples=50, deadline=None)
    @given(st.sampled_from([2, 3, 5, 7]), st.integers(1, 5), st.data())
    def test_inverse_property(self, p, n, data):
        rows = data.draw(st.lists(st.lists(st.integers(0, p - 1), min_size=n, max_size=n),
                                  min_size=n, max_size=n))
        m = FpMatrix(np.array(rows, dtype=np.int64), p)
        if fp_rank(m) < n:
            with pytest.raises(SingularMatrixError):
                fp_inverse(m)
        else:
            assert fp_inverse(m) @ m == FpMatrix.identity(n, p)


def test_lift_representative():
    m = FpMatrix(np.array([[0, 2], [1, 0]]), 3)
    assert lift_representative(m).tolist() == [[3, 2], [1, 3]]
    assert lift_representative(fp_inverse(edge_matrix(3, 3))).tolist() == [[1, 2, 2], [2, 1, 2], [2, 2, 1]]
