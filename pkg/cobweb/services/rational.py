"""
Exact rational matrices: numpy object arrays of fractions.Fraction.
"""

from fractions import Fraction
from typing import Iterable, List, Sequence, Tuple

import numpy as np

from ..exceptions import ShapeError
from ..models.schemas import fraction_str
from .boolmat import BoolMatrix

_as_fraction = np.frompyfunc(Fraction, 1, 1)


class RationalMatrix:
    """Immutable rows x cols matrix of exact rationals"""

    __slots__ = ("_entries",)

    def __init__(self, entries):
        array = np.array(entries, dtype=object)
        if array.ndim != 2:
            raise ShapeError(f"Expected a 2-D matrix, got {array.ndim} dimensions")
        if array.size:
            array = _as_fraction(array).astype(object)
        array.flags.writeable = False
        self._entries = array

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "RationalMatrix":
        return cls(np.full((rows, cols), Fraction(0), dtype=object))

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        array = np.full((n, n), Fraction(0), dtype=object)
        for i in range(n):
            array[i, i] = Fraction(1)
        return cls(array)

    @classmethod
    def diagonal(cls, values: Sequence) -> "RationalMatrix":
        n = len(values)
        array = np.full((n, n), Fraction(0), dtype=object)
        for i, value in enumerate(values):
            array[i, i] = Fraction(value)
        return cls(array)

    @classmethod
    def from_bool(cls, B: BoolMatrix) -> "RationalMatrix":
        return cls(B.to_array().astype(int).astype(object).reshape(B.rows, B.cols))

    @property
    def rows(self) -> int:
        return self._entries.shape[0]

    @property
    def cols(self) -> int:
        return self._entries.shape[1]

    @property
    def shape(self) -> Tuple[int, int]:
        return self._entries.shape

    def __getitem__(self, index) -> Fraction:
        i, j = index
        return self._entries[i, j]

    def to_list(self) -> List[List[Fraction]]:
        return self._entries.tolist()

    def to_strings(self) -> List[List[str]]:
        return [[fraction_str(value) for value in row] for row in self._entries.tolist()]

    def __eq__(self, other) -> bool:
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        return self.shape == other.shape and bool(np.all(self._entries == other._entries))

    __hash__ = None

    def __repr__(self) -> str:
        return f"RationalMatrix({self.rows}x{self.cols})"

    def _check_same_shape(self, other: "RationalMatrix") -> None:
        if self.shape != other.shape:
            raise ShapeError(f"Shape mismatch: {self.shape} vs {other.shape}")

    def __add__(self, other: "RationalMatrix") -> "RationalMatrix":
        self._check_same_shape(other)
        return RationalMatrix(self._entries + other._entries)

    def __sub__(self, other: "RationalMatrix") -> "RationalMatrix":
        self._check_same_shape(other)
        return RationalMatrix(self._entries - other._entries)

    def __neg__(self) -> "RationalMatrix":
        return RationalMatrix(-self._entries)

    def scale(self, factor) -> "RationalMatrix":
        return RationalMatrix(self._entries * Fraction(factor))

    def __matmul__(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.cols != other.rows:
            raise ShapeError(f"Cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        if self.cols == 0:
            return RationalMatrix.zeros(self.rows, other.cols)
        return RationalMatrix(self._entries.dot(other._entries))

    def __pow__(self, k: int) -> "RationalMatrix":
        if self.rows != self.cols:
            raise ShapeError(f"Powers need a square matrix, got {self.rows}x{self.cols}")
        if k < 0:
            raise ValueError(f"Exponent must be >= 0, got {k}")
        result = RationalMatrix.identity(self.rows)
        for _ in range(k):
            result = result @ self
        return result

    def transpose(self) -> "RationalMatrix":
        return RationalMatrix(self._entries.T)

    def submatrix(self, rows: Iterable[int], cols: Iterable[int]) -> "RationalMatrix":
        rows, cols = list(rows), list(cols)
        if not rows or not cols:
            return RationalMatrix.zeros(len(rows), len(cols))
        return RationalMatrix(self._entries[np.ix_(rows, cols)])

    def is_zero(self) -> bool:
        return not any(value != 0 for value in self._entries.flat)

    def max_abs(self) -> Fraction:
        return max((abs(value) for value in self._entries.flat), default=Fraction(0))

    def nonzero_entries(self) -> List[Tuple[int, int, Fraction]]:
        rows, cols = np.nonzero(self._entries != 0)
        return [(int(i), int(j), self._entries[i, j]) for i, j in zip(rows, cols)]
