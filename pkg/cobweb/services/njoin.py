"""
Natural join operators on adjacency matrices of bipartite digraphs.

An embedded adjacency with split (k, m) carries its arcs in the upper-right
k x m block. Two of them satisfy the natural join condition when the first's
target set is the second's source set (same m).
"""

import logging
from functools import reduce
from typing import List, Sequence

import numpy as np

from ..exceptions import ChainError, JoinConditionError, NotGradedError, ShapeError
from ..models.graphs import BipartiteBlock, EmbeddedAdjacency, GradedDigraph, check_block
from ..models.schemas import LevelPartition
from .boolmat import BoolMatrix, block_matrix, bool_product
from .fseq import partition_from_sizes

logger = logging.getLogger(__name__)


def embed_bipartite(B: BipartiteBlock) -> EmbeddedAdjacency:
    """A[D] = [[0_kk, B], [0_mk, 0_mm]]"""
    check_block(B)
    k, m = B.shape
    A = block_matrix([
        [BoolMatrix.zeros(k, k), B],
        [BoolMatrix.zeros(m, k), BoolMatrix.zeros(m, m)],
    ])
    return EmbeddedAdjacency(A=A, split=(k, m))


def satisfies_njoin_condition(A1: EmbeddedAdjacency, A2: EmbeddedAdjacency) -> bool:
    return A1.split[1] == A2.split[0] and A1.has_block_form and A2.has_block_form


def _require_condition(A1: EmbeddedAdjacency, A2: EmbeddedAdjacency, operation: str) -> None:
    if satisfies_njoin_condition(A1, A2):
        return
    if A1.split[1] != A2.split[0]:
        raise JoinConditionError(
            f"{operation}: splits {A1.split} and {A2.split} do not share a middle set "
            f"({A1.split[1]} != {A2.split[0]})"
        )
    raise JoinConditionError(f"{operation}: an operand has arcs outside its upper-right block")


def cjoin(A1: EmbeddedAdjacency, A2: EmbeddedAdjacency) -> EmbeddedAdjacency:
    """Composition ©→: projects out the shared middle set, block = B1 © B2"""
    _require_condition(A1, A2, "cjoin")
    k, s = A1.split[0], A2.split[1]
    composite = bool_product(A1.block, A2.block)
    A = block_matrix([
        [BoolMatrix.zeros(k, k), composite],
        [BoolMatrix.zeros(s, k), BoolMatrix.zeros(s, s)],
    ])
    return EmbeddedAdjacency(A=A, split=(k, s))


def njoin(A1: EmbeddedAdjacency, A2: EmbeddedAdjacency) -> BoolMatrix:
    """Natural join ⊕→: keeps one copy of the middle set, three-band (k+m+s) matrix"""
    _require_condition(A1, A2, "njoin")
    k, m = A1.split
    s = A2.split[1]
    return block_matrix([
        [BoolMatrix.zeros(k, k), A1.block, BoolMatrix.zeros(k, s)],
        [BoolMatrix.zeros(m, k), BoolMatrix.zeros(m, m), A2.block],
        [BoolMatrix.zeros(s, k), BoolMatrix.zeros(s, m), BoolMatrix.zeros(s, s)],
    ])


def chain_adjacency(sizes: Sequence[int], blocks: Sequence[BipartiteBlock]) -> BoolMatrix:
    """Block upper-bidiagonal adjacency: blocks[k] at rows Φ_k, cols Φ_{k+1}"""
    grid = []
    for r, height in enumerate(sizes):
        row = []
        for c, width in enumerate(sizes):
            if c == r + 1:
                row.append(blocks[r])
            else:
                row.append(BoolMatrix.zeros(height, width))
        grid.append(row)
    return block_matrix(grid)


def _check_chain(blocks: Sequence[BipartiteBlock]) -> List[int]:
    if not blocks:
        raise ChainError("A natural join chain needs at least one block")
    for B in blocks:
        check_block(B)
    for k in range(len(blocks) - 1):
        if blocks[k].cols != blocks[k + 1].rows:
            raise ChainError(
                f"Block {k} is {blocks[k].rows}x{blocks[k].cols} but block {k + 1} "
                f"is {blocks[k + 1].rows}x{blocks[k + 1].cols}"
            )
    return [blocks[0].rows] + [B.cols for B in blocks]


def njoin_chain(blocks: Sequence[BipartiteBlock]) -> GradedDigraph:
    """Fold ⊕→ over a chain of biadjacency blocks into a graded digraph"""
    sizes = _check_chain(blocks)
    logger.debug(f"Joining a chain of {len(blocks)} blocks over sizes {sizes}")
    return GradedDigraph(partition=partition_from_sizes(sizes), blocks=tuple(blocks))


def _join_adjacencies(left: BoolMatrix, left_sizes: List[int], right: BoolMatrix, right_sizes: List[int]) -> BoolMatrix:
    """Glue two chain adjacencies that share the boundary level"""
    if left_sizes[-1] != right_sizes[0]:
        raise ChainError(f"Boundary levels differ: {left_sizes[-1]} vs {right_sizes[0]}")
    n_left, n_right = left.rows, right.rows
    shared = left_sizes[-1]
    total = n_left + n_right - shared
    dense = np.zeros((total, total), dtype=bool)
    dense[:n_left, :n_left] |= left.to_array()
    start = n_left - shared
    dense[start:, start:] |= right.to_array()
    return BoolMatrix.from_array(dense)


def njoin_chain_left(blocks: Sequence[BipartiteBlock]) -> BoolMatrix:
    """((B0 ⊕→ B1) ⊕→ B2) ⊕→ ... as a full adjacency matrix"""
    _check_chain(blocks)
    first = blocks[0]
    start = (embed_bipartite(first).A, [first.rows, first.cols])

    def step(acc, B):
        matrix, sizes = acc
        return _join_adjacencies(matrix, sizes, embed_bipartite(B).A, [B.rows, B.cols]), sizes + [B.cols]

    return reduce(step, blocks[1:], start)[0]


def njoin_chain_right(blocks: Sequence[BipartiteBlock]) -> BoolMatrix:
    """B0 ⊕→ (B1 ⊕→ (B2 ⊕→ ...)) as a full adjacency matrix"""
    _check_chain(blocks)
    last = blocks[-1]
    start = (embed_bipartite(last).A, [last.rows, last.cols])

    def step(acc, B):
        matrix, sizes = acc
        return _join_adjacencies(embed_bipartite(B).A, [B.rows, B.cols], matrix, sizes), [B.rows] + sizes

    return reduce(step, reversed(blocks[:-1]), start)[0]


def biadjacency_of(A: BoolMatrix, P: LevelPartition) -> List[BipartiteBlock]:
    """Extract B_k = A restricted to Φ_k x Φ_{k+1}; arcs elsewhere are rejected"""
    if A.shape != (P.total, P.total):
        raise ShapeError(f"Adjacency is {A.rows}x{A.cols}, partition has {P.total} vertices")
    blocks = [A.submatrix(P.level_range(k), P.level_range(k + 1)) for k in range(P.levels - 1)]
    inside = sum(B.count_ones() for B in blocks)
    if inside != A.count_ones():
        raise NotGradedError(
            f"{A.count_ones() - inside} arcs lie outside the super-diagonal level blocks"
        )
    return blocks


def direct_sum(blocks: Sequence[BipartiteBlock]) -> BoolMatrix:
    """diag(B_1, ..., B_n)"""
    if not blocks:
        raise ShapeError("Direct sum of an empty block list")
    grid = []
    for r, B in enumerate(blocks):
        grid.append([
            B if c == r else BoolMatrix.zeros(B.rows, other.cols)
            for c, other in enumerate(blocks)
        ])
    return block_matrix(grid)


def compose_chain(blocks: Sequence[BipartiteBlock], i: int, j: int) -> BoolMatrix:
    """R_i © ... © R_{j-1}; for i == j the identity on level i"""
    if i < 0 or j < i or j > len(blocks):
        raise ChainError(f"Cannot compose blocks {i}..{j} of a chain of {len(blocks)}")
    if i == j:
        size = blocks[i].rows if i < len(blocks) else blocks[i - 1].cols
        return BoolMatrix.identity(size)
    return reduce(bool_product, blocks[i + 1:j], blocks[i])
