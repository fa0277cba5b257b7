from typing import Annotated, Any, Dict, List, Optional, Tuple
from fractions import Fraction
from numbers import Integral
from enum import Enum
from pydantic import BaseModel, ConfigDict, Field, PlainSerializer, PlainValidator, field_validator, model_validator

from ..exceptions import InvalidSequenceError, LevelRangeError


def _to_fraction(value: Any) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise ValueError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise ValueError(f"Cannot read {value!r} as an exact rational")


def fraction_str(value: Fraction) -> str:
    """Exact "p/q" form used on the wire"""
    return f"{value.numerator}/{value.denominator}"


Rational = Annotated[
    Fraction,
    PlainValidator(_to_fraction),
    PlainSerializer(fraction_str, return_type=str),
]


def check_sequence_values(values: Any) -> Tuple[int, ...]:
    """
    Validate F-sequence entries; raises InvalidSequenceError directly so
    callers see it before pydantic wraps it in a ValidationError
    """
    try:
        values = tuple(values)
    except TypeError:
        raise InvalidSequenceError(f"F-sequence must be a list of integers, got {values!r}")
    if not values:
        raise InvalidSequenceError("F-sequence must be non-empty")
    for k, value in enumerate(values):
        if isinstance(value, bool) or not isinstance(value, Integral):
            raise InvalidSequenceError(f"F-sequence entry {k} is not an integer: {value!r}")
        if value < 1:
            raise InvalidSequenceError(f"F-sequence entry {k} must be >= 1, got {value}")
    return tuple(int(value) for value in values)


class Preset(str, Enum):
    NATURALS = "naturals"
    FIBONACCI = "fibonacci"
    CONSTANT = "constant"
    POWERS_OF_TWO = "powers_of_two"
    EXPLICIT = "explicit"


class Generator(str, Enum):
    COBWEB = "cobweb"
    YOUNG = "young"
    FAN = "fan"
    COMPLETE = "complete"
    BINARY_TREE = "binary-tree"
    FIBONACCI_TREE = "fibonacci-tree"


class ZetaMethod(str, Enum):
    CLOSED_FORM = "closed-form"
    CLOSURE = "closure"
    GEOMETRIC = "geometric"


class OutputFormat(str, Enum):
    TEXT = "text"
    JSON = "json"


class CheckName(str, Enum):
    FERRERS = "ferrers"
    GHW = "ghw"
    DELTA = "delta"
    FOMIN = "fomin"
    FDIFF = "fdiff"
    POWER = "power"


class JoinOp(str, Enum):
    NJOIN = "njoin"
    CJOIN = "cjoin"


class FSequence(BaseModel):
    """Finite truncation of a positive-integer sequence; values[k] = k_F"""
    model_config = ConfigDict(frozen=True)

    values: Tuple[int, ...]
    name: Optional[str] = None

    @field_validator("values", mode="before")
    @classmethod
    def _positive_entries(cls, values: Any) -> Tuple[int, ...]:
        return check_sequence_values(values)

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, k: int) -> int:
        return self.values[k]

    def take(self, n: int) -> "FSequence":
        if n < 1 or n > len(self.values):
            raise LevelRangeError(f"Cannot take {n} entries of an F-sequence of length {len(self.values)}")
        return FSequence(values=self.values[:n], name=self.name)


class LevelPartition(BaseModel):
    """Ordered partition of vertex ids 0..total-1 into levels, level-major"""
    model_config = ConfigDict(frozen=True)

    sizes: Tuple[int, ...]
    offsets: Tuple[int, ...]
    total: int

    @model_validator(mode="after")
    def _prefix_sums(self) -> "LevelPartition":
        if not self.sizes or any(size < 1 for size in self.sizes):
            raise InvalidSequenceError(f"Level sizes must be positive: {self.sizes}")
        running = 0
        for k, size in enumerate(self.sizes):
            if k >= len(self.offsets) or self.offsets[k] != running:
                raise ValueError(f"Offsets {self.offsets} are not the prefix sums of {self.sizes}")
            running += size
        if len(self.offsets) != len(self.sizes) or self.total != running:
            raise ValueError(f"Total {self.total} does not match sizes {self.sizes}")
        return self

    @property
    def levels(self) -> int:
        return len(self.sizes)

    def level_range(self, k: int) -> range:
        if k < 0 or k >= len(self.sizes):
            raise LevelRangeError(f"Level {k} out of range [0, {len(self.sizes)})")
        return range(self.offsets[k], self.offsets[k] + self.sizes[k])


# Wire payloads

class BoolMatrixPayload(BaseModel):
    rows: int = Field(ge=0)
    cols: int = Field(ge=0)
    data: List[List[int]]

    @model_validator(mode="after")
    def _shape_and_bits(self) -> "BoolMatrixPayload":
        if len(self.data) != self.rows:
            raise ValueError(f"Expected {self.rows} rows, got {len(self.data)}")
        for i, row in enumerate(self.data):
            if len(row) != self.cols:
                raise ValueError(f"Row {i} has {len(row)} entries, expected {self.cols}")
            if any(bit not in (0, 1) for bit in row):
                raise ValueError(f"Row {i} has entries other than 0/1")
        return self


class BlockChainPayload(BaseModel):
    sizes: List[int]
    blocks: List[List[List[int]]]


# Reports

class FerrersWitness(BaseModel):
    block: int
    r1: int
    r2: int
    c1: int
    c2: int


class LevelEntry(BaseModel):
    level: int
    holds: Optional[bool]
    detail: Dict[str, Any] = {}


class CheckReport(BaseModel):
    check: str
    holds: bool
    first_counterexample: Optional[Dict[str, Any]] = None
    per_level: List[LevelEntry] = []
    notes: List[str] = []


class GhwReport(CheckReport):
    holds_elementwise: bool
    r_if_uniform: Optional[Rational] = None
    max_abs_discrepancy: Rational = Fraction(0)
    commutator: Optional[List[List[Rational]]] = None
    level_sum_holds: Optional[bool] = None

    @model_validator(mode="after")
    def _zero_discrepancy_when_holding(self) -> "GhwReport":
        if self.holds_elementwise and self.max_abs_discrepancy != 0:
            raise ValueError("An elementwise identity cannot have a nonzero discrepancy")
        return self

    @property
    def per_level_summary(self) -> List[LevelEntry]:
        return self.per_level


class PartialOrderReport(BaseModel):
    reflexive: bool
    antisymmetric: bool
    transitive: bool

    @property
    def holds(self) -> bool:
        return self.reflexive and self.antisymmetric and self.transitive


class CommandSpec(BaseModel):
    """One parsed CLI invocation"""
    subcommand: str
    inputs: List[str] = []
    output: Optional[str] = None
    format: OutputFormat = OutputFormat.JSON
    params: Dict[str, Any] = {}
    check: Optional[CheckName] = None


class PowerIdentityReport(CheckReport):
    """DU^n against n U^(n-1) + U^n D (or its delta-weighted form), n = 1..n_max"""
    n_max: int
    weighted: bool = False
    base_holds: bool
    per_n: List[LevelEntry] = []


class FominReport(CheckReport):
    q_values: Dict[int, Rational] = {}
    r_0: Optional[Rational] = None


class FDifferentialReport(CheckReport):
    condition1_holds: bool
    condition2_holds: bool
