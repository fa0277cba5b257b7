from pathlib import Path

from cobweb.models.schemas import Preset
from cobweb.services.boolmat import BoolMatrix
from cobweb.services.fseq import make_fsequence
from cobweb.services.poset import cobweb

GOLDEN = Path(__file__).parent / "golden"

NATURAL_SIZES = (1, 2, 3, 4, 5, 6)
FIBONACCI_FIGURE_SIZES = (1, 1, 1, 2, 3, 5, 8)


def explicit(*sizes):
    return make_fsequence(Preset.EXPLICIT, values=sizes)


def cobweb_of(*sizes):
    return cobweb(explicit(*sizes), len(sizes))


def golden_text(name: str) -> str:
    return (GOLDEN / name).read_text(encoding="utf-8")


def golden_matrix(name: str) -> BoolMatrix:
    return BoolMatrix.from_text(golden_text(name))
