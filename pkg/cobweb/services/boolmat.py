"""
Bit-parallel Boolean matrix algebra.

Rows are packed into little-endian uint64 words, so a row OR is one numpy
operation over ceil(cols/64) words. Matrices are immutable.
"""

import logging
from typing import Iterable, List, Sequence

import numpy as np

from ..exceptions import CycleError, ParseError, ShapeError
from ..models.schemas import BoolMatrixPayload

logger = logging.getLogger(__name__)

WORD_BITS = 64
_WORD = np.dtype("<u8")
_ONE = np.uint64(1)


def _word_count(cols: int) -> int:
    return max(1, -(-cols // WORD_BITS))


def _pack(dense: np.ndarray) -> np.ndarray:
    rows, cols = dense.shape
    padded = np.zeros((rows, _word_count(cols) * WORD_BITS), dtype=np.uint8)
    padded[:, :cols] = dense
    packed = np.packbits(padded, axis=1, bitorder="little")
    return np.ascontiguousarray(packed).view(_WORD)


def _unpack(words: np.ndarray, cols: int) -> np.ndarray:
    as_bytes = np.ascontiguousarray(words).view(np.uint8)
    return np.unpackbits(as_bytes, axis=1, count=cols, bitorder="little").astype(bool)


def _column_mask(words: np.ndarray, j: int) -> np.ndarray:
    """Boolean vector of rows having bit j set"""
    return ((words[:, j // WORD_BITS] >> np.uint64(j % WORD_BITS)) & _ONE).astype(bool)


class BoolMatrix:
    """Rectangular 0/1 matrix with bit-packed rows"""

    __slots__ = ("rows", "cols", "_words")

    def __init__(self, rows: int, cols: int, words: np.ndarray):
        if rows < 0 or cols < 0:
            raise ShapeError(f"Negative matrix shape {rows}x{cols}")
        if words.shape != (rows, _word_count(cols)):
            raise ShapeError(f"Packed words of shape {words.shape} do not fit a {rows}x{cols} matrix")
        words = words.astype(_WORD, copy=True)
        # keep padding bits clear so equality is entrywise
        tail = cols % WORD_BITS
        if tail and rows:
            words[:, -1] &= np.uint64((1 << tail) - 1)
        elif cols == 0 and rows:
            words[:, :] = 0
        words.flags.writeable = False
        self.rows = rows
        self.cols = cols
        self._words = words

    # Constructors

    @classmethod
    def from_array(cls, dense) -> "BoolMatrix":
        dense = np.asarray(dense)
        if dense.ndim != 2:
            raise ShapeError(f"Expected a 2-D array, got {dense.ndim} dimensions")
        rows, cols = dense.shape
        return cls(rows, cols, _pack(dense.astype(bool)))

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int = None) -> "BoolMatrix":
        rows = [list(row) for row in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        if any(len(row) != cols for row in rows):
            raise ShapeError("Rows of unequal length")
        if any(bit not in (0, 1, True, False) for row in rows for bit in row):
            raise ShapeError("Boolean matrix entries must be 0 or 1")
        return cls.from_array(np.array(rows, dtype=bool).reshape(len(rows), cols))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "BoolMatrix":
        return cls(rows, cols, np.zeros((rows, _word_count(cols)), dtype=_WORD))

    @classmethod
    def identity(cls, n: int) -> "BoolMatrix":
        return cls.from_array(np.eye(n, dtype=bool))

    @classmethod
    def ones(cls, rows: int, cols: int) -> "BoolMatrix":
        return cls.from_array(np.ones((rows, cols), dtype=bool))

    # Access

    @property
    def shape(self) -> tuple:
        return (self.rows, self.cols)

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def __getitem__(self, index) -> int:
        i, j = index
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(f"Entry ({i}, {j}) outside a {self.rows}x{self.cols} matrix")
        return int((self._words[i, j // WORD_BITS] >> np.uint64(j % WORD_BITS)) & _ONE)

    def to_array(self) -> np.ndarray:
        return _unpack(self._words, self.cols)

    def to_rows(self) -> List[List[int]]:
        return self.to_array().astype(int).tolist()

    def row_support(self, i: int) -> List[int]:
        return np.flatnonzero(self.to_array()[i]).tolist()

    def count_ones(self) -> int:
        return int(self.to_array().sum())

    def any(self) -> bool:
        return bool(self._words.any())

    def __eq__(self, other) -> bool:
        if not isinstance(other, BoolMatrix):
            return NotImplemented
        return self.shape == other.shape and bool(np.array_equal(self._words, other._words))

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self._words.tobytes()))

    def __repr__(self) -> str:
        return f"BoolMatrix({self.rows}x{self.cols}, ones={self.count_ones()})"

    # Entrywise algebra

    def _check_same_shape(self, other: "BoolMatrix") -> None:
        if self.shape != other.shape:
            raise ShapeError(f"Shape mismatch: {self.shape} vs {other.shape}")

    def __or__(self, other: "BoolMatrix") -> "BoolMatrix":
        self._check_same_shape(other)
        return BoolMatrix(self.rows, self.cols, self._words | other._words)

    def __and__(self, other: "BoolMatrix") -> "BoolMatrix":
        self._check_same_shape(other)
        return BoolMatrix(self.rows, self.cols, self._words & other._words)

    def leq_entrywise(self, other: "BoolMatrix") -> bool:
        """A <= B iff every 1 of A is a 1 of B"""
        self._check_same_shape(other)
        return not bool((self._words & ~other._words).any())

    def transpose(self) -> "BoolMatrix":
        return BoolMatrix.from_array(self.to_array().T)

    def submatrix(self, rows: Iterable[int], cols: Iterable[int]) -> "BoolMatrix":
        rows, cols = list(rows), list(cols)
        if not rows or not cols:
            return BoolMatrix.zeros(len(rows), len(cols))
        dense = self.to_array()
        return BoolMatrix.from_array(dense[np.ix_(rows, cols)].reshape(len(rows), len(cols)))

    def with_bit(self, i: int, j: int, value: int) -> "BoolMatrix":
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(f"Entry ({i}, {j}) outside a {self.rows}x{self.cols} matrix")
        dense = self.to_array()
        dense[i, j] = bool(value)
        return BoolMatrix.from_array(dense)

    # Codecs

    def to_text(self) -> str:
        return "\n".join(" ".join(str(bit) for bit in row) for row in self.to_rows())

    @classmethod
    def from_text(cls, text: str) -> "BoolMatrix":
        rows = []
        for number, line in enumerate(text.splitlines(), start=1):
            if not line.strip():
                continue
            try:
                row = [int(token) for token in line.split()]
            except ValueError:
                raise ParseError(f"Non-integer entry in {line!r}", line=number)
            if any(bit not in (0, 1) for bit in row):
                raise ParseError(f"Entries must be 0 or 1 in {line!r}", line=number)
            if rows and len(row) != len(rows[0]):
                raise ParseError(f"Row has {len(row)} entries, expected {len(rows[0])}", line=number)
            rows.append(row)
        return cls.from_rows(rows)

    def to_payload(self) -> BoolMatrixPayload:
        return BoolMatrixPayload(rows=self.rows, cols=self.cols, data=self.to_rows())

    @classmethod
    def from_payload(cls, payload: BoolMatrixPayload) -> "BoolMatrix":
        return cls.from_rows(payload.data, cols=payload.cols) if payload.rows else cls.zeros(0, payload.cols)

    def to_json(self) -> str:
        return self.to_payload().model_dump_json()

    @classmethod
    def from_json(cls, text: str) -> "BoolMatrix":
        return cls.from_payload(BoolMatrixPayload.model_validate_json(text))


def _require_square(A: BoolMatrix, operation: str) -> None:
    if not A.is_square:
        raise ShapeError(f"{operation} needs a square matrix, got {A.rows}x{A.cols}")


def bool_product(A: BoolMatrix, B: BoolMatrix) -> BoolMatrix:
    """C[i][j] = OR_t (A[i][t] AND B[t][j])"""
    if A.cols != B.rows:
        raise ShapeError(f"Cannot multiply {A.rows}x{A.cols} by {B.rows}x{B.cols}")
    out = np.zeros((A.rows, _word_count(B.cols)), dtype=_WORD)
    dense = A.to_array()
    for t in range(A.cols):
        mask = dense[:, t]
        if mask.any():
            out[mask] |= B._words[t]
    return BoolMatrix(A.rows, B.cols, out)


def bool_power(A: BoolMatrix, k: int) -> BoolMatrix:
    """k-fold Boolean product; A^0 is the identity"""
    _require_square(A, "bool_power")
    if k < 0:
        raise ValueError(f"Exponent must be >= 0, got {k}")
    result = BoolMatrix.identity(A.rows)
    base = A
    while k:
        if k & 1:
            result = bool_product(result, base)
        k >>= 1
        if k:
            base = bool_product(base, base)
    return result


def transitive_closure(A: BoolMatrix) -> BoolMatrix:
    """Warshall elimination over packed rows: OR over k >= 1 of A^k"""
    _require_square(A, "transitive_closure")
    n = A.rows
    words = A._words.copy()
    for k in range(n):
        mask = _column_mask(words, k)
        if mask.any():
            words[mask] |= words[k]
    logger.debug(f"Closed a {n}x{n} matrix")
    return BoolMatrix(n, n, words)


def reflexive_transitive_closure(A: BoolMatrix) -> BoolMatrix:
    """Reflexive reachability, i.e. the zeta matrix of the digraph of A"""
    return transitive_closure(A) | BoolMatrix.identity(A.rows)


def is_dag(A: BoolMatrix) -> bool:
    """True iff the digraph of A has no directed cycle; self-loops are cycles"""
    _require_square(A, "is_dag")
    dense = A.to_array()
    indegree = dense.sum(axis=0).astype(int)
    ready = [v for v in range(A.rows) if indegree[v] == 0]
    removed = 0
    while ready:
        v = ready.pop()
        removed += 1
        for w in np.flatnonzero(dense[v]):
            indegree[w] -= 1
            if indegree[w] == 0:
                ready.append(int(w))
    return removed == A.rows


def zeta_geometric(A: BoolMatrix) -> BoolMatrix:
    """
    Finite Boolean geometric series I + A + A^2 + ... for an acyclic A.

    Accumulates powers until they vanish (nilpotency); kept independent of
    Warshall so the two can check each other.
    """
    _require_square(A, "zeta_geometric")
    if not is_dag(A):
        raise CycleError("Geometric zeta series needs an acyclic matrix")
    total = BoolMatrix.identity(A.rows)
    power = A
    while power.any():
        total = total | power
        power = bool_product(power, A)
    return total


def ones_block(s: int, k: int) -> BoolMatrix:
    """The s x k matrix of ones"""
    if s < 1 or k < 1:
        raise ShapeError(f"Ones block needs positive dimensions, got {s}x{k}")
    return BoolMatrix.ones(s, k)


def block_matrix(grid: Sequence[Sequence[BoolMatrix]]) -> BoolMatrix:
    """Assemble a 2-D grid of blocks; heights agree along rows, widths along columns"""
    if not grid or not grid[0]:
        raise ShapeError("Empty block grid")
    widths = [block.cols for block in grid[0]]
    bands = []
    for r, row in enumerate(grid):
        if len(row) != len(widths):
            raise ShapeError(f"Block row {r} has {len(row)} blocks, expected {len(widths)}")
        height = row[0].rows
        for c, block in enumerate(row):
            if block.rows != height or block.cols != widths[c]:
                raise ShapeError(f"Block ({r}, {c}) is {block.rows}x{block.cols}, expected {height}x{widths[c]}")
        bands.append(np.hstack([block.to_array() for block in row]))
    return BoolMatrix.from_array(np.vstack(bands))


def bipartite_symmetric_adjacency(B: BoolMatrix) -> BoolMatrix:
    """Undirected bipartite adjacency [[0, B], [B^T, 0]]"""
    k, m = B.shape
    return block_matrix([
        [BoolMatrix.zeros(k, k), B],
        [B.transpose(), BoolMatrix.zeros(m, m)],
    ])
