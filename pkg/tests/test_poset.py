import pytest
from hypothesis import given, settings

from cobweb.exceptions import ChainError, DomRanError, LevelRangeError, PreconditionError, ShapeError
from cobweb.models.graphs import GradedPoset
from cobweb.services.boolmat import BoolMatrix, ones_block, reflexive_transitive_closure
from cobweb.services.generators import binary_tree, fan, fibonacci_tree, young_lattice
from cobweb.services.poset import (
    adjacency,
    apply_deletions,
    cobweb,
    cover_matrix,
    find_permutation_submatrix,
    from_blocks,
    is_cobweb,
    is_ferrers_dim_one,
    is_partial_order,
    leq,
    lt,
    poset_of,
    staircase_check,
    zeta_closed_form,
)

from helpers import FIBONACCI_FIGURE_SIZES, NATURAL_SIZES, cobweb_of, explicit, golden_matrix
from strategies import bool_matrices, graded_chains, has_permutation_submatrix

ONE = BoolMatrix.from_rows([[1]])


def test_cobweb_blocks():
    G = cobweb_of(1, 2, 3)
    assert G.blocks == (ones_block(1, 2), ones_block(2, 3))
    assert is_cobweb(G)

    single = cobweb(explicit(1), 1)
    assert single.blocks == ()
    assert single.total == 1

    chain = cobweb_of(1, 1, 1, 1)
    assert adjacency(chain).count_ones() == 3
    assert all(B == ONE for B in chain.blocks)


def test_cobweb_levels_out_of_range():
    with pytest.raises(LevelRangeError):
        cobweb(explicit(1, 2), 3)


def test_from_blocks():
    G = from_blocks([1, 2], [BoolMatrix.from_rows([[1, 0]])])
    assert G.arc_count() == 1
    with pytest.raises(ChainError):
        from_blocks([1, 2], [ones_block(2, 2)])
    with pytest.raises(ChainError):
        from_blocks([1, 2, 3], [ones_block(1, 2)])


def test_from_blocks_strict_mode():
    unreached = [BoolMatrix.from_rows([[1, 0]])]
    with pytest.raises(DomRanError, match="column 1"):
        from_blocks([1, 2], unreached, strict=True)

    funnel = [BoolMatrix.from_rows([[1], [1]]), ones_block(1, 2)]
    assert from_blocks([2, 1, 2], funnel, strict=True).total == 5

    dead_end = [BoolMatrix.from_rows([[1], [0]]), ones_block(1, 1)]
    with pytest.raises(DomRanError, match="row 1"):
        from_blocks([2, 1, 1], dead_end, strict=True)
    assert from_blocks([2, 1, 1], dead_end).total == 4

    # a zero row in the last block is allowed: maximal elements reach nothing
    last = [ones_block(1, 2), BoolMatrix.from_rows([[1], [0]])]
    assert from_blocks([1, 2, 1], last, strict=True).levels == 3


def test_adjacency_and_cover_matrix():
    G = cobweb_of(1, 2, 3)
    ones = [(i, j) for i in range(6) for j in range(6) if adjacency(G)[i, j]]
    assert ones == [(0, 1), (0, 2), (1, 3), (1, 4), (1, 5), (2, 3), (2, 4), (2, 5)]
    assert adjacency(cobweb_of(4)) == BoolMatrix.zeros(4, 4)
    assert adjacency(cobweb_of(1, 1, 1)).to_rows() == [[0, 1, 0], [0, 0, 1], [0, 0, 0]]
    assert cover_matrix(cobweb_of(1, 2)).to_rows() == [[0, 1, 1], [0, 0, 0], [0, 0, 0]]
    assert cover_matrix(cobweb_of(1, 1)).to_rows() == [[0, 1], [0, 0]]
    assert cover_matrix(G) == adjacency(G)


@pytest.mark.parametrize("sizes, golden", [
    (NATURAL_SIZES, "zeta_naturals_16x16.txt"),
    (FIBONACCI_FIGURE_SIZES, "zeta_fibonacci_16x16.txt"),
])
def test_closed_form_reproduces_figures(sizes, golden):
    zeta = zeta_closed_form(cobweb_of(*sizes))
    assert zeta.shape == (21, 21)
    assert zeta.submatrix(range(16), range(16)) == golden_matrix(golden)


def test_closed_form_figure_entries(naturals_cobweb, fibonacci_cobweb):
    zeta_n = zeta_closed_form(naturals_cobweb)
    assert zeta_n[1, 2] == 0
    assert zeta_n[1, 3] == 1
    zeta_f = zeta_closed_form(fibonacci_cobweb)
    assert zeta_f[3, 4] == 0
    assert zeta_f[8, 12] == 0
    assert zeta_f[8, 13] == 1
    assert zeta_closed_form(cobweb_of(1)).to_rows() == [[1]]


def test_closed_form_needs_a_cobweb():
    G = from_blocks([1, 2], [BoolMatrix.from_rows([[1, 0]])])
    with pytest.raises(PreconditionError):
        zeta_closed_form(G)


@settings(max_examples=60, deadline=None)
@given(graded_chains(max_levels=8, max_size=6))
def test_closed_form_agrees_with_closure(chain):
    sizes, _ = chain
    G = cobweb_of(*sizes)
    assert zeta_closed_form(G) == reflexive_transitive_closure(adjacency(G))


def test_leq_examples(naturals_cobweb):
    P = poset_of(naturals_cobweb)
    assert leq(P, 4, 4)
    assert not leq(P, 1, 2)
    assert all(leq(P, 0, v) for v in range(P.digraph.total))
    assert not leq(P, 5, 0)
    assert not lt(P, 3, 3)
    assert lt(P, 0, 3)
    with pytest.raises(LevelRangeError):
        leq(P, 0, 21)


def _corpus():
    yield cobweb_of(*NATURAL_SIZES)
    yield cobweb_of(*FIBONACCI_FIGURE_SIZES)
    yield young_lattice(6)
    yield fan(3, 4)
    yield binary_tree(4)
    yield fibonacci_tree(6)
    G = cobweb_of(1, 2, 3, 4)
    yield apply_deletions(G, [(0, 0, 1), (1, 1, 2), (2, 0, 0)])[0]


@pytest.mark.parametrize("G", list(_corpus()))
def test_partial_order_axioms_and_block_products(G):
    P = poset_of(G)
    report = is_partial_order(P.zeta)
    assert report.reflexive and report.antisymmetric and report.transitive
    assert report.holds
    n = G.total
    assert n <= 200
    for x in range(n):
        for y in range(n):
            assert leq(P, x, y) == bool(P.zeta[x, y])


@settings(max_examples=40, deadline=None)
@given(graded_chains(max_levels=6, max_size=4))
def test_block_product_leq_agrees_with_zeta(chain):
    sizes, blocks = chain
    P = poset_of(from_blocks(sizes, blocks))
    for x in range(P.digraph.total):
        for y in range(P.digraph.total):
            assert leq(P, x, y) == bool(P.zeta[x, y])


def test_is_partial_order_detects_failures():
    not_reflexive = is_partial_order(BoolMatrix.zeros(2, 2))
    assert not not_reflexive.reflexive and not not_reflexive.holds
    symmetric = is_partial_order(BoolMatrix.ones(2, 2))
    assert not symmetric.antisymmetric
    gap = is_partial_order(BoolMatrix.from_rows([[1, 1, 0], [0, 1, 1], [0, 0, 1]]))
    assert not gap.transitive


def test_graded_poset_checks_zeta_shape(naturals_cobweb):
    with pytest.raises(ShapeError):
        GradedPoset(digraph=naturals_cobweb, zeta=BoolMatrix.identity(3))


def test_ferrers_examples():
    assert is_ferrers_dim_one(cobweb_of(1, 2, 3, 4)) == (True, None)

    swap = from_blocks([1, 2, 2], [ones_block(1, 2), BoolMatrix.identity(2)])
    holds, witness = is_ferrers_dim_one(swap)
    assert not holds
    assert (witness.block, witness.r1, witness.r2, witness.c1, witness.c2) == (1, 0, 1, 0, 1)

    nested = from_blocks([2, 2], [BoolMatrix.from_rows([[1, 1], [0, 1]])])
    assert is_ferrers_dim_one(nested) == (True, None)


@settings(max_examples=500, deadline=None)
@given(bool_matrices(min_rows=1, max_rows=8, min_cols=1, max_cols=8))
def test_ferrers_detection_matches_exhaustive_scan(B):
    found = find_permutation_submatrix(B)
    assert (found is not None) == has_permutation_submatrix(B)
    if found:
        r1, r2, c1, c2 = found
        assert B[r1, c1] and B[r2, c2] and not B[r1, c2] and not B[r2, c1]


def test_staircase_check(naturals_cobweb):
    assert staircase_check(poset_of(naturals_cobweb))
    assert staircase_check(poset_of(cobweb_of(*FIBONACCI_FIGURE_SIZES)))

    thinned, _ = apply_deletions(cobweb_of(1, 2, 3), [(1, 0, 0), (1, 1, 2)])
    P = poset_of(thinned)
    assert staircase_check(P)
    assert staircase_check(P, complete=False)
    assert not staircase_check(P, complete=True)

    zeta = P.zeta.with_bit(3, 0, 1)
    assert not staircase_check(GradedPoset(digraph=thinned, zeta=zeta))


def test_apply_deletions():
    G = cobweb_of(1, 2, 3)
    thinned, warnings = apply_deletions(G, [(0, 0, 1), (0, 0, 1)])
    assert thinned.blocks[0].to_rows() == [[1, 0]]
    assert len(warnings) == 1 and "already 0" in warnings[0]
    assert G.blocks[0] == ones_block(1, 2)
    with pytest.raises(LevelRangeError):
        apply_deletions(G, [(2, 0, 0)])
    with pytest.raises(LevelRangeError):
        apply_deletions(G, [(1, 2, 0)])
