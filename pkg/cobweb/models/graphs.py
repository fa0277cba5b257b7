"""
In-memory graph values built on BoolMatrix.

Wire and report models live in schemas.py; these hold numpy-backed
matrices, so they are frozen dataclasses validated on construction.
"""

from dataclasses import dataclass, field
from typing import Dict, List, Tuple

from ..exceptions import ChainError, ShapeError
from ..services.boolmat import BoolMatrix
from .schemas import BlockChainPayload, LevelPartition

# A k x m biadjacency matrix of a bipartite digraph from a k-set to an m-set
BipartiteBlock = BoolMatrix


def check_block(B: BipartiteBlock) -> BipartiteBlock:
    if not isinstance(B, BoolMatrix):
        raise ShapeError(f"Expected a BoolMatrix block, got {type(B).__name__}")
    if B.rows < 1 or B.cols < 1:
        raise ShapeError(f"Bipartite block must be at least 1x1, got {B.rows}x{B.cols}")
    return B


@dataclass(frozen=True)
class EmbeddedAdjacency:
    """
    Square adjacency of a bipartite digraph, vertex sets of sizes split = (k, m).

    Only the upper-right k x m block may carry 1s; `has_block_form` reports
    whether it does, so malformed inputs can still be represented and rejected
    by the natural join condition.
    """
    A: BoolMatrix
    split: Tuple[int, int]

    def __post_init__(self):
        k, m = self.split
        if k < 1 or m < 1:
            raise ShapeError(f"Split sizes must be positive, got {self.split}")
        if self.A.shape != (k + m, k + m):
            raise ShapeError(f"Adjacency is {self.A.rows}x{self.A.cols}, split {self.split} needs {k + m}x{k + m}")

    @property
    def size(self) -> int:
        return self.A.rows

    @property
    def block(self) -> BipartiteBlock:
        k, m = self.split
        return self.A.submatrix(range(k), range(k, k + m))

    @property
    def has_block_form(self) -> bool:
        outside = self.A.count_ones() - self.block.count_ones()
        return outside == 0


@dataclass(frozen=True)
class GradedDigraph:
    """Hasse digraph of a graded poset: levels plus blocks[k] from Φ_k to Φ_{k+1}"""
    partition: LevelPartition
    blocks: Tuple[BipartiteBlock, ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "blocks", tuple(self.blocks))
        sizes = self.partition.sizes
        if len(self.blocks) != len(sizes) - 1:
            raise ChainError(f"{len(sizes)} levels need {len(sizes) - 1} blocks, got {len(self.blocks)}")
        for k, B in enumerate(self.blocks):
            if not isinstance(B, BoolMatrix):
                raise ChainError(f"Block {k} is not a BoolMatrix")
            if B.shape != (sizes[k], sizes[k + 1]):
                raise ChainError(f"Block {k} is {B.rows}x{B.cols}, expected {sizes[k]}x{sizes[k + 1]}")

    @property
    def sizes(self) -> Tuple[int, ...]:
        return self.partition.sizes

    @property
    def levels(self) -> int:
        return self.partition.levels

    @property
    def total(self) -> int:
        return self.partition.total

    def arc_count(self) -> int:
        return sum(B.count_ones() for B in self.blocks)

    def to_payload(self) -> BlockChainPayload:
        return BlockChainPayload(sizes=list(self.sizes), blocks=[B.to_rows() for B in self.blocks])


@dataclass(frozen=True)
class GradedPoset:
    """A graded digraph together with its zeta matrix"""
    digraph: GradedDigraph
    zeta: BoolMatrix
    # (i, j) -> blocks[i] © ... © blocks[j-1], filled lazily by leq
    block_products: Dict[Tuple[int, int], BoolMatrix] = field(
        default_factory=dict, init=False, compare=False, repr=False
    )

    def __post_init__(self):
        n = self.digraph.total
        if self.zeta.shape != (n, n):
            raise ShapeError(f"Zeta is {self.zeta.rows}x{self.zeta.cols}, expected {n}x{n}")

    @property
    def partition(self) -> LevelPartition:
        return self.digraph.partition


def blocks_from_payload(payload: BlockChainPayload) -> List[BipartiteBlock]:
    blocks = []
    for k, rows in enumerate(payload.blocks):
        try:
            blocks.append(BoolMatrix.from_rows(rows))
        except ShapeError as e:
            raise ChainError(f"Block {k}: {e}")
    return blocks
