import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cobweb.exceptions import CycleError, ParseError, ShapeError
from cobweb.services.boolmat import (
    BoolMatrix,
    bipartite_symmetric_adjacency,
    block_matrix,
    bool_power,
    bool_product,
    is_dag,
    ones_block,
    reflexive_transitive_closure,
    transitive_closure,
    zeta_geometric,
)
from cobweb.services.poset import adjacency, from_blocks

from helpers import FIBONACCI_FIGURE_SIZES, NATURAL_SIZES, cobweb_of, golden_matrix
from strategies import (
    bool_matrices,
    graded_chains,
    has_cycle_oracle,
    reachability_oracle,
    square_matrices,
    strict_reachability_oracle,
)

PATH_3 = BoolMatrix.from_rows([[0, 1, 0], [0, 0, 1], [0, 0, 0]])


def test_constructors():
    assert BoolMatrix.identity(3).to_rows() == [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
    assert BoolMatrix.zeros(2, 3).count_ones() == 0
    assert BoolMatrix.ones(2, 3).count_ones() == 6
    assert ones_block(1, 2).to_rows() == [[1, 1]]
    assert ones_block(1, 1).to_rows() == [[1]]


def test_ones_block_needs_positive_dimensions():
    with pytest.raises(ShapeError):
        ones_block(0, 2)


def test_from_rows_rejects_bad_input():
    with pytest.raises(ShapeError):
        BoolMatrix.from_rows([[1, 0], [1]])
    with pytest.raises(ShapeError):
        BoolMatrix.from_rows([[1, 2]])


@given(bool_matrices(max_rows=5, max_cols=150))
def test_packing_preserves_entries_across_word_boundaries(A):
    dense = A.to_array()
    assert dense.shape == A.shape
    for i, j in [(0, 0), (A.rows - 1, A.cols - 1), (A.rows // 2, 64), (A.rows // 2, 63)]:
        if 0 <= i < A.rows and 0 <= j < A.cols:
            assert A[i, j] == int(dense[i, j])
    assert BoolMatrix.from_array(dense) == A


def test_bool_product_examples():
    B = BoolMatrix.from_rows([[1, 0, 1], [0, 1, 1]])
    assert bool_product(BoolMatrix.identity(2), B) == B
    assert bool_product(
        BoolMatrix.from_rows([[1, 1], [0, 0]]),
        BoolMatrix.from_rows([[0], [1]]),
    ).to_rows() == [[1], [0]]
    assert bool_product(ones_block(1, 2), ones_block(2, 3)) == ones_block(1, 3)


def test_bool_product_shape_mismatch():
    with pytest.raises(ShapeError):
        bool_product(BoolMatrix.ones(2, 3), BoolMatrix.ones(2, 3))


@given(st.integers(0, 7), st.integers(0, 7), st.integers(0, 70), st.data())
def test_bool_product_matches_integer_product(rows, inner, cols, data):
    A = data.draw(bool_matrices(rows=rows, cols=inner))
    B = data.draw(bool_matrices(rows=inner, cols=cols))
    expected = (A.to_array().astype(int) @ B.to_array().astype(int)) > 0
    assert np.array_equal(bool_product(A, B).to_array(), expected)


def test_bool_power():
    assert bool_power(PATH_3, 0) == BoolMatrix.identity(3)
    assert bool_power(PATH_3, 2).to_rows() == [[0, 0, 1], [0, 0, 0], [0, 0, 0]]
    assert not bool_power(PATH_3, 3).any()
    with pytest.raises(ShapeError):
        bool_power(BoolMatrix.ones(2, 3), 2)


def test_transitive_closure_examples():
    assert transitive_closure(BoolMatrix.zeros(4, 4)) == BoolMatrix.zeros(4, 4)
    assert transitive_closure(PATH_3).to_rows() == [[0, 1, 1], [0, 0, 1], [0, 0, 0]]
    closed = transitive_closure(adjacency(cobweb_of(1, 2)))
    assert closed.to_rows() == [[0, 1, 1], [0, 0, 0], [0, 0, 0]]


def test_reflexive_transitive_closure_examples():
    assert reflexive_transitive_closure(BoolMatrix.zeros(3, 3)) == BoolMatrix.identity(3)
    assert reflexive_transitive_closure(PATH_3).to_rows() == [[1, 1, 1], [0, 1, 1], [0, 0, 1]]


def test_zeta_geometric_examples():
    assert zeta_geometric(BoolMatrix.zeros(3, 3)) == BoolMatrix.identity(3)
    with pytest.raises(CycleError):
        zeta_geometric(BoolMatrix.from_rows([[0, 1], [1, 0]]))
    with pytest.raises(CycleError):
        zeta_geometric(BoolMatrix.from_rows([[1]]))


def test_is_dag():
    assert is_dag(PATH_3)
    assert is_dag(BoolMatrix.from_rows([[0, 1, 1], [0, 0, 1], [0, 0, 0]]))
    assert not is_dag(BoolMatrix.from_rows([[0, 1], [1, 0]]))
    assert not is_dag(BoolMatrix.from_rows([[1]]))


@pytest.mark.parametrize("sizes, golden", [
    (NATURAL_SIZES, "zeta_naturals_16x16.txt"),
    (FIBONACCI_FIGURE_SIZES, "zeta_fibonacci_16x16.txt"),
])
def test_closures_reproduce_figure_corners(sizes, golden):
    A = adjacency(cobweb_of(*sizes))
    corner = range(16)
    expected = golden_matrix(golden)
    assert reflexive_transitive_closure(A).submatrix(corner, corner) == expected
    assert zeta_geometric(A).submatrix(corner, corner) == expected


@settings(max_examples=100, deadline=None)
@given(graded_chains(max_levels=8, max_size=5))
def test_closure_methods_agree_with_bfs(chain):
    sizes, blocks = chain
    A = adjacency(from_blocks(sizes, blocks))
    warshall = reflexive_transitive_closure(A)
    assert warshall == zeta_geometric(A)
    assert warshall.to_rows() == reachability_oracle(A)


@settings(max_examples=300, deadline=None)
@given(square_matrices())
def test_closure_on_arbitrary_digraphs(A):
    closure = transitive_closure(A)
    assert closure.to_rows() == strict_reachability_oracle(A)
    assert reflexive_transitive_closure(A).to_rows() == reachability_oracle(A)
    assert transitive_closure(closure) == closure
    assert bool_product(closure, closure).leq_entrywise(closure)


@settings(max_examples=300, deadline=None)
@given(square_matrices())
def test_is_dag_matches_cycle_search(A):
    acyclic = not has_cycle_oracle(A)
    assert is_dag(A) == acyclic
    if acyclic:
        assert zeta_geometric(A) == reflexive_transitive_closure(A)
    else:
        with pytest.raises(CycleError):
            zeta_geometric(A)


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 6), st.integers(0, 6), st.integers(0, 6), st.integers(0, 70), st.data())
def test_bool_product_is_associative(p, q, r, s, data):
    A = data.draw(bool_matrices(rows=p, cols=q))
    B = data.draw(bool_matrices(rows=q, cols=r))
    C = data.draw(bool_matrices(rows=r, cols=s))
    assert bool_product(bool_product(A, B), C) == bool_product(A, bool_product(B, C))


@given(bool_matrices())
def test_identity_is_a_unit_on_both_sides(A):
    assert bool_product(BoolMatrix.identity(A.rows), A) == A
    assert bool_product(A, BoolMatrix.identity(A.cols)) == A


@given(bool_matrices(min_rows=1, min_cols=1), bool_matrices(min_rows=1, min_cols=1))
def test_entrywise_algebra(A, B):
    if A.shape != B.shape:
        with pytest.raises(ShapeError):
            A | B
        return
    dense_a, dense_b = A.to_array(), B.to_array()
    assert np.array_equal((A | B).to_array(), dense_a | dense_b)
    assert np.array_equal((A & B).to_array(), dense_a & dense_b)
    assert A.leq_entrywise(A | B)
    assert (A & B).leq_entrywise(A)
    assert A.leq_entrywise(B) == bool(not (dense_a & ~dense_b).any())


def test_transpose_submatrix_with_bit():
    A = BoolMatrix.from_rows([[1, 0, 1], [0, 1, 0]])
    assert A.transpose().to_rows() == [[1, 0], [0, 1], [1, 0]]
    assert A.submatrix([1], [0, 1]).to_rows() == [[0, 1]]
    cleared = A.with_bit(0, 2, 0)
    assert cleared.to_rows() == [[1, 0, 0], [0, 1, 0]]
    assert A[0, 2] == 1


def test_block_matrix():
    grid = [
        [BoolMatrix.ones(1, 1), BoolMatrix.zeros(1, 2)],
        [BoolMatrix.zeros(2, 1), BoolMatrix.identity(2)],
    ]
    assert block_matrix(grid) == BoolMatrix.identity(3)
    with pytest.raises(ShapeError):
        block_matrix([[BoolMatrix.ones(1, 1), BoolMatrix.ones(2, 2)]])


def test_bipartite_symmetric_adjacency():
    B = BoolMatrix.from_rows([[1, 0], [1, 1], [0, 1]])
    S = bipartite_symmetric_adjacency(B)
    assert S.shape == (5, 5)
    assert S == S.transpose()
    assert S.submatrix(range(3), range(3, 5)) == B


def test_text_codec():
    A = BoolMatrix.from_rows([[1, 0], [0, 1]])
    assert A.to_text() == "1 0\n0 1"
    assert BoolMatrix.from_text("1 0\n\n0 1\n") == A


def test_text_codec_reports_line_numbers():
    with pytest.raises(ParseError, match="line 2"):
        BoolMatrix.from_text("1 0\n0 2")
    with pytest.raises(ParseError, match="line 3"):
        BoolMatrix.from_text("1 0\n0 1\n1")
    with pytest.raises(ParseError, match="line 1"):
        BoolMatrix.from_text("x 1")


def test_json_codec():
    A = BoolMatrix.from_rows([[0, 1, 1], [0, 0, 0]])
    assert A.to_json() == '{"rows":2,"cols":3,"data":[[0,1,1],[0,0,0]]}'
    assert BoolMatrix.from_json(A.to_json()) == A
