"""
Error kinds raised by the cobweb services.

Every error derives from CobwebError; the CLI maps them to exit code 2.
"""


class CobwebError(Exception):
    """Base class for all cobweb errors"""


class InvalidSequenceError(CobwebError, ValueError):
    """An F-sequence entry is zero, negative or not an integer"""


class LevelRangeError(CobwebError, IndexError):
    """A level count, level index or vertex id is out of range"""


class ShapeError(CobwebError, ValueError):
    """Matrix dimensions are incompatible with the operation"""


class CycleError(CobwebError, ValueError):
    """A matrix that must be acyclic has a directed cycle or a self-loop"""


class JoinConditionError(CobwebError, ValueError):
    """Two embedded adjacencies do not satisfy the natural join condition"""


class ChainError(CobwebError, ValueError):
    """Consecutive biadjacency blocks do not fit together"""


class NotGradedError(CobwebError, ValueError):
    """An adjacency matrix has an arc outside the super-diagonal level blocks"""


class DomRanError(CobwebError, ValueError):
    """A block chain violates the strict dom/ran gradedness condition"""


class PreconditionError(CobwebError, ValueError):
    """An operation was applied outside the inputs it is defined for"""


class ParseError(CobwebError, ValueError):
    """Malformed input text (matrix grid, deletion file, size list)"""

    def __init__(self, message: str, line: int = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ConfigError(CobwebError, ValueError):
    """A COBWEB_* setting or the requested log level is invalid"""
