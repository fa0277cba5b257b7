"""
Files and streams: block-chain JSON, zeta matrices, deletion lists and reports.
"""

import logging
import sys
from pathlib import Path
from typing import List, Optional, Tuple

from pydantic import BaseModel, ValidationError

from ..exceptions import CobwebError, ParseError
from ..models.graphs import GradedDigraph, blocks_from_payload
from ..models.schemas import BlockChainPayload, BoolMatrixPayload, OutputFormat
from .boolmat import BoolMatrix
from .poset import from_blocks

logger = logging.getLogger(__name__)

STDIO = "-"


def read_text(path: Optional[str]) -> str:
    """Read a UTF-8 file; None or "-" reads standard input"""
    if path is None or path == STDIO:
        try:
            return sys.stdin.read()
        except UnicodeDecodeError as e:
            raise ParseError(f"Standard input is not UTF-8 text (byte {e.start}: {e.reason})")
    try:
        return Path(path).read_text(encoding="utf-8")
    except UnicodeDecodeError as e:
        logger.error(f"Error reading {path}: {e}")
        raise ParseError(f"{path} is not UTF-8 text (byte {e.start}: {e.reason})")
    except Exception as e:
        logger.error(f"Error reading {path}: {e}")
        raise


def write_text(path: Optional[str], text: str) -> None:
    """Write text plus a trailing newline; None or "-" writes standard output"""
    if not text.endswith("\n"):
        text += "\n"
    if path is None or path == STDIO:
        sys.stdout.write(text)
        return
    try:
        Path(path).write_text(text, encoding="utf-8")
        logger.info(f"Wrote {path}")
    except Exception as e:
        logger.error(f"Error writing {path}: {e}")
        raise


def digraph_to_json(G: GradedDigraph) -> str:
    return G.to_payload().model_dump_json()


def digraph_from_json(text: str) -> GradedDigraph:
    """Block-chain JSON {"sizes": [...], "blocks": [[[0/1, ...], ...], ...]}"""
    try:
        payload = BlockChainPayload.model_validate_json(text)
    except ValidationError as e:
        raise ParseError(f"Not a block-chain document: {e.errors()[0]['msg']}")
    return from_blocks(payload.sizes, blocks_from_payload(payload))


def matrix_to_text(A: BoolMatrix, format: OutputFormat) -> str:
    return A.to_json() if OutputFormat(format) == OutputFormat.JSON else A.to_text()


def matrix_from_text(text: str) -> BoolMatrix:
    """A zeta file is either BoolMatrix JSON or a whitespace-separated 0/1 grid"""
    if text.lstrip().startswith("{"):
        try:
            return BoolMatrix.from_payload(BoolMatrixPayload.model_validate_json(text))
        except ValidationError as e:
            raise ParseError(f"Not a matrix document: {e.errors()[0]['msg']}")
    return BoolMatrix.from_text(text)


def parse_deletions(text: str) -> List[Tuple[int, int, int]]:
    """
    Lines `k i j` (0-based): clear bit (i, j) of block k. Blank lines and
    lines starting with '#' are skipped.
    """
    deletions = []
    for number, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        parts = stripped.split()
        if len(parts) != 3:
            raise ParseError(f"Expected 'k i j', got {stripped!r}", line=number)
        try:
            k, i, j = (int(part) for part in parts)
        except ValueError:
            raise ParseError(f"Non-integer field in {stripped!r}", line=number)
        if min(k, i, j) < 0:
            raise ParseError(f"Negative index in {stripped!r}", line=number)
        deletions.append((k, i, j))
    return deletions


def parse_window(text: str) -> Tuple[int, int]:
    """ "16x16" -> (16, 16) """
    try:
        rows, cols = (int(part) for part in text.lower().split("x"))
    except ValueError:
        raise ParseError(f"Window must look like RxC, got {text!r}")
    if rows < 1 or cols < 1:
        raise ParseError(f"Window dimensions must be positive, got {text!r}")
    return rows, cols


def report_to_json(report: BaseModel) -> str:
    return report.model_dump_json(indent=2)


def load_digraph(path: Optional[str]) -> GradedDigraph:
    text = read_text(path)
    try:
        return digraph_from_json(text)
    except CobwebError as e:
        logger.error(f"Invalid digraph file {path}: {e}")
        raise
