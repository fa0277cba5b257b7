import json
import logging
from bisect import bisect_right
from typing import List, Sequence, Union

from ..exceptions import InvalidSequenceError, LevelRangeError
from ..models.schemas import FSequence, LevelPartition, Preset, check_sequence_values

logger = logging.getLogger(__name__)


def make_fsequence(
    kind: Union[Preset, str],
    length: int = None,
    values: Sequence[int] = None,
    constant: int = 1
) -> FSequence:
    """
    Build an F-sequence from a preset or an explicit list.

    naturals -> 1,2,3,...; fibonacci -> 1,1,2,3,5,...; constant -> c,c,...;
    powers_of_two -> 1,2,4,...; explicit copies `values` verbatim.
    """
    kind = Preset(kind)

    if kind == Preset.EXPLICIT:
        if values is None:
            raise InvalidSequenceError("Explicit F-sequence needs a list of values")
        return FSequence(values=check_sequence_values(values), name=kind.value)

    if length is None or length < 1:
        raise InvalidSequenceError(f"Preset {kind.value} needs length >= 1, got {length}")

    if kind == Preset.NATURALS:
        entries = list(range(1, length + 1))
    elif kind == Preset.FIBONACCI:
        entries = [1, 1]
        while len(entries) < length:
            entries.append(entries[-1] + entries[-2])
        entries = entries[:length]
    elif kind == Preset.CONSTANT:
        if constant < 1:
            raise InvalidSequenceError(f"Constant F-sequence needs c >= 1, got {constant}")
        entries = [constant] * length
    else:
        entries = [2 ** k for k in range(length)]

    return FSequence(values=check_sequence_values(entries), name=kind.value)


def parse_sizes(text: str) -> FSequence:
    """Parse a comma-separated size list such as "1,2,3" """
    parts = [part.strip() for part in text.split(",")]
    if not parts or any(not part for part in parts):
        raise InvalidSequenceError(f"Malformed size list: {text!r}")
    try:
        entries = [int(part) for part in parts]
    except ValueError:
        raise InvalidSequenceError(f"Malformed size list: {text!r}")
    return make_fsequence(Preset.EXPLICIT, values=entries)


def fsequence_to_json(F: FSequence) -> str:
    return json.dumps(list(F.values))


def fsequence_from_json(text: str) -> FSequence:
    try:
        entries = json.loads(text)
    except json.JSONDecodeError as e:
        raise InvalidSequenceError(f"F-sequence is not valid JSON: {e}")
    if not isinstance(entries, list):
        raise InvalidSequenceError("F-sequence JSON must be an array of positive integers")
    return make_fsequence(Preset.EXPLICIT, values=entries)


def partition_from_sizes(sizes: Sequence[int]) -> LevelPartition:
    sizes = check_sequence_values(sizes)
    offsets: List[int] = []
    running = 0
    for size in sizes:
        offsets.append(running)
        running += size
    return LevelPartition(sizes=sizes, offsets=tuple(offsets), total=running)


def partition_of(F: FSequence, levels: int) -> LevelPartition:
    """Level partition Φ_0, ..., Φ_{levels-1} with |Φ_k| = F_k"""
    if levels < 1 or levels > len(F):
        raise LevelRangeError(f"Cannot partition {levels} levels from an F-sequence of length {len(F)}")
    return partition_from_sizes(F.values[:levels])


def level_of(P: LevelPartition, v: int) -> int:
    """Index k of the level Φ_k containing vertex v"""
    if v < 0 or v >= P.total:
        raise LevelRangeError(f"Vertex {v} out of range [0, {P.total})")
    return bisect_right(P.offsets, v) - 1
