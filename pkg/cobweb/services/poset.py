import logging
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np

from ..exceptions import ChainError, DomRanError, LevelRangeError, PreconditionError
from ..models.graphs import BipartiteBlock, GradedDigraph, GradedPoset
from ..models.schemas import FerrersWitness, FSequence, PartialOrderReport
from .boolmat import BoolMatrix, block_matrix, bool_product, ones_block, reflexive_transitive_closure
from .fseq import level_of, partition_from_sizes, partition_of
from .njoin import chain_adjacency, compose_chain

logger = logging.getLogger(__name__)


def cobweb(F: FSequence, levels: int) -> GradedDigraph:
    """Complete graded digraph (KoDAG): every block is all-ones"""
    partition = partition_of(F, levels)
    sizes = partition.sizes
    blocks = tuple(ones_block(sizes[k], sizes[k + 1]) for k in range(levels - 1))
    logger.debug(f"Built cobweb over sizes {sizes}")
    return GradedDigraph(partition=partition, blocks=blocks)


def _dom_ran_violation(blocks: Sequence[BipartiteBlock]) -> Optional[str]:
    """
    Strict gradedness: every block has no all-zero column, and every block
    but the last has no all-zero row.
    """
    last = len(blocks) - 1
    for k, B in enumerate(blocks):
        dense = B.to_array()
        empty_cols = np.flatnonzero(~dense.any(axis=0))
        if empty_cols.size:
            return f"block {k}: column {int(empty_cols[0])} of level {k + 1} is never reached"
        if k < last:
            empty_rows = np.flatnonzero(~dense.any(axis=1))
            if empty_rows.size:
                return f"block {k}: row {int(empty_rows[0])} of level {k} reaches nothing upward"
    return None


def from_blocks(sizes: Sequence[int], blocks: Sequence[BipartiteBlock], strict: bool = False) -> GradedDigraph:
    """Validated graded digraph from explicit blocks; arcs may be any subset of the complete blocks"""
    if len(blocks) != len(sizes) - 1:
        raise ChainError(f"{len(sizes)} levels need {len(sizes) - 1} blocks, got {len(blocks)}")
    G = GradedDigraph(partition=partition_from_sizes(sizes), blocks=tuple(blocks))
    if strict:
        violation = _dom_ran_violation(G.blocks)
        if violation:
            raise DomRanError(f"dom/ran condition violated: {violation}")
    return G


def adjacency(G: GradedDigraph) -> BoolMatrix:
    return chain_adjacency(G.sizes, G.blocks)


def cover_matrix(G: GradedDigraph) -> BoolMatrix:
    """κ = χ(≺·); identical to the adjacency in the block-chain representation"""
    return adjacency(G)


def is_cobweb(G: GradedDigraph) -> bool:
    return all(B.count_ones() == B.rows * B.cols for B in G.blocks)


def poset_of(G: GradedDigraph) -> GradedPoset:
    """Close the Hasse digraph into its zeta matrix"""
    logger.info(f"Closing a graded digraph on {G.total} vertices")
    return GradedPoset(digraph=G, zeta=reflexive_transitive_closure(adjacency(G)))


def zeta_closed_form(G: GradedDigraph) -> BoolMatrix:
    """
    Block formula for complete cobwebs: identity blocks on the diagonal,
    all-ones blocks to the right of them, zeros below.
    """
    if not is_cobweb(G):
        raise PreconditionError("Closed-form zeta applies to complete cobwebs only")
    sizes = G.sizes
    grid = []
    for r, height in enumerate(sizes):
        row = []
        for c, width in enumerate(sizes):
            if c == r:
                row.append(BoolMatrix.identity(height))
            elif c > r:
                row.append(BoolMatrix.ones(height, width))
            else:
                row.append(BoolMatrix.zeros(height, width))
        grid.append(row)
    return block_matrix(grid)


def _check_vertex(P: GradedPoset, v: int) -> None:
    if v < 0 or v >= P.digraph.total:
        raise LevelRangeError(f"Vertex {v} out of range [0, {P.digraph.total})")


def leq(P: GradedPoset, x: int, y: int) -> bool:
    """x <= y through the block product R_i © ... © R_{j-1} between their levels"""
    _check_vertex(P, x)
    _check_vertex(P, y)
    if x == y:
        return True
    partition = P.partition
    i, j = level_of(partition, x), level_of(partition, y)
    if i >= j:
        return False
    key = (i, j)
    if key not in P.block_products:
        P.block_products[key] = compose_chain(P.digraph.blocks, i, j)
    return bool(P.block_products[key][x - partition.offsets[i], y - partition.offsets[j]])


def lt(P: GradedPoset, x: int, y: int) -> bool:
    """Strict order: the connectivity relation of the Hasse digraph"""
    return x != y and leq(P, x, y)


def is_partial_order(zeta: BoolMatrix) -> PartialOrderReport:
    dense = zeta.to_array()
    identity = np.eye(zeta.rows, dtype=bool)
    return PartialOrderReport(
        reflexive=bool(dense.diagonal().all()),
        antisymmetric=not bool((dense & dense.T & ~identity).any()),
        transitive=bool_product(zeta, zeta).leq_entrywise(zeta),
    )


def find_permutation_submatrix(B: BipartiteBlock) -> Optional[Tuple[int, int, int, int]]:
    """
    Rows r1 < r2 and columns c1, c2 with B[r1][c1] = B[r2][c2] = 1 and
    B[r1][c2] = B[r2][c1] = 0; exists iff row neighbourhoods are not nested.
    """
    dense = B.to_array()
    for r1 in range(B.rows):
        for r2 in range(r1 + 1, B.rows):
            only_first = np.flatnonzero(dense[r1] & ~dense[r2])
            only_second = np.flatnonzero(dense[r2] & ~dense[r1])
            if only_first.size and only_second.size:
                return r1, r2, int(only_first[0]), int(only_second[0])
    return None


def is_ferrers_dim_one(G: GradedDigraph) -> Tuple[bool, Optional[FerrersWitness]]:
    for k, B in enumerate(G.blocks):
        found = find_permutation_submatrix(B)
        if found:
            r1, r2, c1, c2 = found
            return False, FerrersWitness(block=k, r1=r1, r2=r2, c1=c1, c2=c2)
    return True, None


def staircase_check(P: GradedPoset, complete: Optional[bool] = None) -> bool:
    """
    Zeta staircase: 1s on the diagonal, 0s elsewhere in diagonal level blocks
    and everywhere below them; with `complete`, 1s everywhere above.
    """
    if complete is None:
        complete = is_cobweb(P.digraph)
    dense = P.zeta.to_array()
    partition = P.partition
    level = np.repeat(np.arange(partition.levels), partition.sizes)
    if dense.shape != (level.size, level.size):
        return False
    if not dense.diagonal().all():
        return False
    above = level[:, None] < level[None, :]
    off_diagonal = ~np.eye(level.size, dtype=bool)
    if (dense & ~above & off_diagonal).any():
        return False
    if complete and not dense[above].all():
        return False
    return True


def apply_deletions(G: GradedDigraph, deletions: Iterable[Tuple[int, int, int]]) -> Tuple[GradedDigraph, List[str]]:
    """Clear bit (i, j) of block k for each (k, i, j); clearing a 0 is only a warning"""
    blocks = list(G.blocks)
    warnings = []
    for k, i, j in deletions:
        if k < 0 or k >= len(blocks):
            raise LevelRangeError(f"Deletion ({k}, {i}, {j}): no block {k}")
        B = blocks[k]
        if not (0 <= i < B.rows and 0 <= j < B.cols):
            raise LevelRangeError(f"Deletion ({k}, {i}, {j}): outside the {B.rows}x{B.cols} block")
        if not B[i, j]:
            message = f"Deletion ({k}, {i}, {j}): bit already 0"
            logger.warning(message)
            warnings.append(message)
            continue
        blocks[k] = B.with_bit(i, j, 0)
    return GradedDigraph(partition=G.partition, blocks=tuple(blocks)), warnings
