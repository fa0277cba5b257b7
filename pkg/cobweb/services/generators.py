"""
Named graded digraphs: Young's lattice, fans, complete graded digraphs and
the binary and Fibonacci trees.
"""

import logging
from typing import Dict, List, Sequence, Tuple

import numpy as np

from ..exceptions import LevelRangeError
from ..models.graphs import GradedDigraph
from .boolmat import BoolMatrix, ones_block
from .fseq import partition_from_sizes

logger = logging.getLogger(__name__)

Partition = Tuple[int, ...]


def _require(value: int, minimum: int, name: str) -> None:
    if value < minimum:
        raise LevelRangeError(f"{name} must be >= {minimum}, got {value}")


def _from_children(children: Sequence[Sequence[List[int]]], sizes: Sequence[int]) -> GradedDigraph:
    """children[k][i] lists the level-(k+1) indices below node i of level k"""
    blocks = []
    for k, level in enumerate(children):
        dense = np.zeros((sizes[k], sizes[k + 1]), dtype=bool)
        for i, targets in enumerate(level):
            if targets:
                dense[i, targets] = True
        blocks.append(BoolMatrix.from_array(dense))
    return GradedDigraph(partition=partition_from_sizes(sizes), blocks=tuple(blocks))


def integer_partitions(n: int, largest: int = None) -> List[Partition]:
    """Partitions of n in reverse-lexicographic order: (n), (n-1, 1), ..., (1, ..., 1)"""
    if n == 0:
        return [()]
    largest = n if largest is None else min(largest, n)
    result = []
    for first in range(largest, 0, -1):
        for rest in integer_partitions(n - first, first):
            result.append((first,) + rest)
    return result


def _add_box(shape: Partition) -> List[Partition]:
    """Partitions covering `shape` in Young's lattice"""
    covers = []
    for i in range(len(shape) + 1):
        current = shape[i] if i < len(shape) else 0
        above = shape[i - 1] if i > 0 else None
        if above is None or current < above:
            grown = list(shape)
            if i < len(shape):
                grown[i] += 1
            else:
                grown.append(1)
            covers.append(tuple(grown))
    return covers


def young_lattice(max_rank: int) -> GradedDigraph:
    _require(max_rank, 0, "max_rank")
    levels = [integer_partitions(n) for n in range(max_rank + 1)]
    sizes = [len(level) for level in levels]
    children = []
    for n in range(max_rank):
        index: Dict[Partition, int] = {shape: j for j, shape in enumerate(levels[n + 1])}
        children.append([[index[mu] for mu in _add_box(shape)] for shape in levels[n]])
    logger.info(f"Built Young's lattice up to rank {max_rank}, sizes {sizes}")
    return _from_children(children, sizes)


def fan(k: int, depth: int) -> GradedDigraph:
    """k disjoint chains glued at a common root"""
    _require(k, 1, "k")
    _require(depth, 1, "depth")
    sizes = [1] + [k] * depth
    blocks = [ones_block(1, k)] + [BoolMatrix.identity(k) for _ in range(depth - 1)]
    return GradedDigraph(partition=partition_from_sizes(sizes), blocks=tuple(blocks))


def complete_graded(k: int, depth: int) -> GradedDigraph:
    _require(k, 1, "k")
    _require(depth, 1, "depth")
    sizes = [1] + [k] * depth
    blocks = [ones_block(sizes[n], sizes[n + 1]) for n in range(depth)]
    return GradedDigraph(partition=partition_from_sizes(sizes), blocks=tuple(blocks))


def binary_tree(depth: int) -> GradedDigraph:
    _require(depth, 0, "depth")
    sizes = [2 ** n for n in range(depth + 1)]
    children = [[[2 * i, 2 * i + 1] for i in range(sizes[n])] for n in range(depth)]
    return _from_children(children, sizes)


def fibonacci_tree(depth: int) -> GradedDigraph:
    """
    Rabbit tree: a young node has one mature child, a mature node has a
    mature child followed by a young one.
    """
    _require(depth, 0, "depth")
    mature_levels = [[False]]
    children = []
    for _ in range(depth):
        level, nxt = [], []
        for mature in mature_levels[-1]:
            start = len(nxt)
            nxt.extend([True, False] if mature else [True])
            level.append(list(range(start, len(nxt))))
        children.append(level)
        mature_levels.append(nxt)
    sizes = [len(level) for level in mature_levels]
    return _from_children(children, sizes)
