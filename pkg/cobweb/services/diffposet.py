"""
Up and down operators on the vertex basis of a graded digraph, and the
commutation identities checked against them.

All arithmetic is exact (RationalMatrix); a discrepancy is always an exact
nonzero rational. The top level of a finite truncation has no covers, so
every identity is checked only on vertices whose operator factors stay
inside the truncation.
"""

import logging
from fractions import Fraction
from typing import Dict, List, Optional, Sequence

from ..exceptions import LevelRangeError, PreconditionError
from ..models.graphs import GradedDigraph
from ..models.schemas import (
    FDifferentialReport,
    FominReport,
    FSequence,
    GhwReport,
    LevelEntry,
    PowerIdentityReport,
    fraction_str,
)
from .fseq import level_of
from .poset import adjacency, is_cobweb
from .rational import RationalMatrix

logger = logging.getLogger(__name__)


def up_operator(G: GradedDigraph) -> RationalMatrix:
    """U[y][x] = 1 iff x ≺· y"""
    return RationalMatrix.from_bool(adjacency(G).transpose())


def down_operator(G: GradedDigraph) -> RationalMatrix:
    """D[w][x] = 1 iff w ≺· x; bottom-level columns are zero"""
    return RationalMatrix.from_bool(adjacency(G))


def commutator(G: GradedDigraph) -> RationalMatrix:
    U, D = up_operator(G), down_operator(G)
    return D @ U - U @ D


def up_restricted(G: GradedDigraph, n: int) -> RationalMatrix:
    """U_n: level n -> level n+1"""
    if n < 0 or n >= G.levels - 1:
        raise LevelRangeError(f"U_{n} needs levels {n} and {n + 1}; digraph has {G.levels}")
    return RationalMatrix.from_bool(G.blocks[n].transpose())


def down_restricted(G: GradedDigraph, n: int) -> RationalMatrix:
    """D_n: level n -> level n-1"""
    if n < 1 or n >= G.levels:
        raise LevelRangeError(f"D_{n} needs levels {n - 1} and {n}; digraph has {G.levels}")
    return RationalMatrix.from_bool(G.blocks[n - 1])


def level_sum_vector(G: GradedDigraph, n: int) -> RationalMatrix:
    """s_n = sum of the basis vectors of level n, as a column"""
    members = set(G.partition.level_range(n))
    return RationalMatrix([[1 if v in members else 0] for v in range(G.total)])


def delta_F(G: GradedDigraph, F: FSequence) -> RationalMatrix:
    """
    diag(F_{n+1} - F_n) on every vertex of level n. The top level gets
    F_L - F_{L-1} when F is long enough and 0 otherwise; it is never checked.
    """
    L = G.levels
    if len(F) < L:
        raise LevelRangeError(f"F-sequence of length {len(F)} is too short for {L} levels")
    diagonal = []
    for n, size in enumerate(G.sizes):
        value = F[n + 1] - F[n] if n + 1 < len(F) else 0
        diagonal.extend([value] * size)
    return RationalMatrix.diagonal(diagonal)


def _vertices_below(G: GradedDigraph, top: int) -> List[int]:
    """Vertex ids of levels 0..top inclusive"""
    if top < 0:
        return []
    return list(range(G.partition.offsets[top] + G.sizes[top]))


def _uniform_scalar(M: RationalMatrix) -> Optional[Fraction]:
    """c if the square matrix M equals c*I, else None"""
    if M.rows == 0:
        return None
    c = M[0, 0]
    if (M - RationalMatrix.identity(M.rows).scale(c)).is_zero():
        return c
    return None


def _first_counterexample(residual: RationalMatrix, actual: RationalMatrix, expected: RationalMatrix,
                          index: Sequence[int]) -> Optional[Dict]:
    entries = residual.nonzero_entries()
    if not entries:
        return None
    i, j, _ = entries[0]
    return {
        "row": index[i],
        "col": index[j],
        "actual": fraction_str(actual[i, j]),
        "expected": fraction_str(expected[i, j]),
    }


def _compare_on_levels(G: GradedDigraph, actual: RationalMatrix, expected: RationalMatrix,
                       check: str, notes: List[str]) -> GhwReport:
    """Elementwise comparison restricted to the non-top levels"""
    index = _vertices_below(G, G.levels - 2)
    actual_sub = actual.submatrix(index, index)
    expected_sub = expected.submatrix(index, index)
    residual = actual_sub - expected_sub

    per_level = []
    for n in range(G.levels - 1):
        members = list(G.partition.level_range(n))
        block = residual.submatrix(members, members)
        per_level.append(LevelEntry(
            level=n,
            holds=block.is_zero(),
            detail={"max_abs_discrepancy": fraction_str(block.max_abs())},
        ))

    holds = residual.is_zero()
    return GhwReport(
        check=check,
        holds=holds,
        holds_elementwise=holds,
        first_counterexample=_first_counterexample(residual, actual_sub, expected_sub, index),
        per_level=per_level,
        notes=notes,
        r_if_uniform=_uniform_scalar(actual_sub),
        max_abs_discrepancy=residual.max_abs(),
        commutator=actual.to_list(),
    )


def is_r_differential(G: GradedDigraph, r) -> GhwReport:
    """DU - UD = r I on the non-top levels"""
    r = Fraction(r)
    logger.info(f"Checking DU - UD = {fraction_str(r)} I on {G.total} vertices")
    C = commutator(G)
    notes = []
    if G.levels < 2:
        notes.append("No non-top levels; the relation holds vacuously")
    return _compare_on_levels(G, C, RationalMatrix.identity(G.total).scale(r), "ghw", notes)


def check_delta_relation(G: GradedDigraph, F: FSequence) -> GhwReport:
    """
    DU - UD against delta_F elementwise, plus the level-sum reading:
    whether (DU - UD) s_n = delta_n s_n for each non-top level n.
    """
    logger.info(f"Checking DU - UD = delta_F on {G.total} vertices")
    notes = []
    if tuple(F.values[:G.levels]) != tuple(G.sizes):
        mismatch = f"F-sequence {list(F.values[:G.levels])} differs from level sizes {list(G.sizes)}"
        logger.warning(mismatch)
        notes.append(mismatch)
    C = commutator(G)
    delta = delta_F(G, F)
    report = _compare_on_levels(G, C, delta, "delta", notes)

    level_sum_holds = True
    for entry in report.per_level:
        n = entry.level
        s = level_sum_vector(G, n)
        image = C @ s
        members = set(G.partition.level_range(n))
        values = {image[v, 0] for v in members}
        outside_zero = all(image[v, 0] == 0 for v in range(G.total) if v not in members)
        eigenvalue = values.pop() if len(values) == 1 and outside_zero else None
        delta_n = Fraction(F[n + 1] - F[n])
        entry.detail["delta"] = fraction_str(delta_n)
        entry.detail["level_sum_eigenvalue"] = fraction_str(eigenvalue) if eigenvalue is not None else None
        if eigenvalue != delta_n:
            level_sum_holds = False

    report.level_sum_holds = level_sum_holds
    if not report.holds_elementwise:
        report.notes.append("DU - UD differs from delta_F elementwise on the non-top levels")
    return report


def check_power_identity(G: GradedDigraph, n_max: int, weighted_by_delta: bool = False,
                         F: FSequence = None) -> PowerIdentityReport:
    """
    DU^n = n U^(n-1) + U^n D, or DU^n = n delta_F U^(n-1) + U^n D when
    weighted, on columns of levels <= L-1-n. The base relation (n = 1) is
    checked first; if it fails the higher powers are not applicable.
    """
    if n_max < 1:
        raise LevelRangeError(f"n_max must be >= 1, got {n_max}")
    if weighted_by_delta and F is None:
        raise PreconditionError("The delta-weighted power identity needs an F-sequence")

    U, D = up_operator(G), down_operator(G)
    identity = RationalMatrix.identity(G.total)
    weight = delta_F(G, F) if weighted_by_delta else identity

    base = check_delta_relation(G, F) if weighted_by_delta else is_r_differential(G, 1)
    notes = []
    per_n = []
    if not base.holds_elementwise:
        notes.append(f"Base relation DU - UD = {'delta_F' if weighted_by_delta else 'I'} fails; "
                     f"first counterexample {base.first_counterexample}")
        for n in range(1, n_max + 1):
            per_n.append(LevelEntry(level=n, holds=None, detail={"reason": "base relation fails"}))
        return PowerIdentityReport(
            check="power", holds=False, n_max=n_max, weighted=weighted_by_delta,
            base_holds=False, per_level=base.per_level, per_n=per_n, notes=notes,
            first_counterexample=base.first_counterexample,
        )

    holds = True
    first = None
    U_prev = identity
    for n in range(1, n_max + 1):
        U_n = U_prev @ U
        columns = _vertices_below(G, G.levels - 1 - n)
        if not columns:
            per_n.append(LevelEntry(level=n, holds=None, detail={"reason": "no admissible levels"}))
            U_prev = U_n
            continue
        rows = list(range(G.total))
        lhs = (D @ U_n).submatrix(rows, columns)
        rhs = ((weight @ U_prev).scale(n) + U_n @ D).submatrix(rows, columns)
        residual = lhs - rhs
        ok = residual.is_zero()
        per_n.append(LevelEntry(level=n, holds=ok, detail={
            "admissible_levels": G.levels - n,
            "max_abs_discrepancy": fraction_str(residual.max_abs()),
        }))
        if not ok:
            holds = False
            if first is None:
                i, j, _ = residual.nonzero_entries()[0]
                first = {
                    "n": n,
                    "row": rows[i],
                    "col": columns[j],
                    "actual": fraction_str(lhs[i, j]),
                    "expected": fraction_str(rhs[i, j]),
                }
        U_prev = U_n

    logger.info(f"Power identity up to n={n_max}: {'holds' if holds else 'fails'}")
    return PowerIdentityReport(
        check="power", holds=holds, n_max=n_max, weighted=weighted_by_delta,
        base_holds=True, per_level=base.per_level, per_n=per_n, notes=notes,
        first_counterexample=first,
    )


def fomin_relation_check(G: GradedDigraph, F: FSequence) -> FominReport:
    """
    D_{n+1} U_n = q_n U_{n-1} D_n with q_n = F_{n+1} / F_{n-1} for n >= 1,
    and D_1 U_0 = F_1 I_0 at a singleton root.
    """
    if not is_cobweb(G):
        raise PreconditionError("The Fomin relation is checked on complete cobwebs only")
    L = G.levels
    if len(F) < L or tuple(F.values[:L]) != tuple(G.sizes):
        raise PreconditionError(f"Level sizes {G.sizes} do not come from F = {F.values}")

    per_level = []
    q_values = {}
    notes = []
    first = None
    r_0 = None

    if L >= 2:
        if G.sizes[0] == 1:
            r_0 = Fraction(F[1])
            residual = down_restricted(G, 1) @ up_restricted(G, 0) - RationalMatrix.identity(1).scale(r_0)
            ok = residual.is_zero()
            per_level.append(LevelEntry(level=0, holds=ok, detail={"r_0": fraction_str(r_0)}))
            if not ok:
                first = {"n": 0, "residual": residual.to_strings()}
        else:
            per_level.append(LevelEntry(level=0, holds=None, detail={"reason": "bottom level is not a singleton"}))
            notes.append("n = 0 is not applicable: the bottom level has more than one vertex")

    for n in range(1, L - 1):
        q = Fraction(F[n + 1], F[n - 1])
        q_values[n] = q
        lhs = down_restricted(G, n + 1) @ up_restricted(G, n)
        rhs = (up_restricted(G, n - 1) @ down_restricted(G, n)).scale(q)
        residual = lhs - rhs
        ok = residual.is_zero()
        per_level.append(LevelEntry(level=n, holds=ok, detail={
            "q": fraction_str(q),
            "max_abs_residual": fraction_str(residual.max_abs()),
        }))
        if not ok and first is None:
            first = {"n": n, "residual": residual.to_strings()}

    holds = all(entry.holds is not False for entry in per_level)
    logger.info(f"Fomin relation on sizes {G.sizes}: {'holds' if holds else 'fails'}")
    return FominReport(
        check="fomin", holds=holds, per_level=per_level, q_values=q_values, r_0=r_0,
        first_counterexample=first, notes=notes,
    )


def f_differential_check(G: GradedDigraph, F: FSequence) -> FDifferentialReport:
    """
    Both conditions of F-differentiality, read literally on the non-top levels.

    1. x != y with c common covers, c a value of F: exactly c elements are
       covered by both.
    2. x covering c elements, c a value of F: x is covered by F_{k+1}
       elements for some k with F_k = c.
    """
    if F[0] != 1:
        raise PreconditionError(f"F-differential posets need F_0 = 1, got {F[0]}")
    A = adjacency(G).to_array()
    values = set(F.values)
    notes = []
    first = None
    per_level = []
    condition1 = True
    condition2 = True

    for n in range(G.levels - 1):
        members = list(G.partition.level_range(n))
        level_ok = True
        for a, x in enumerate(members):
            for y in members[a + 1:]:
                up = int((A[x] & A[y]).sum())
                if up not in values:
                    continue
                down = int((A[:, x] & A[:, y]).sum())
                if down != up:
                    condition1 = level_ok = False
                    if first is None:
                        first = {"condition": 1, "x": x, "y": y, "common_covers": up, "commonly_covered": down}

        for x in members:
            down = int(A[:, x].sum())
            up = int(A[x].sum())
            if down not in values:
                continue
            candidates = [k for k, value in enumerate(F.values[:-1]) if value == down]
            if not candidates:
                notes.append(f"vertex {x}: F is too short to decide condition 2")
                continue
            if not any(F[k + 1] == up for k in candidates):
                condition2 = level_ok = False
                if first is None:
                    first = {"condition": 2, "x": x, "covers": down, "covered_by": up}
        per_level.append(LevelEntry(level=n, holds=level_ok))

    return FDifferentialReport(
        check="fdiff",
        holds=condition1 and condition2,
        condition1_holds=condition1,
        condition2_holds=condition2,
        first_counterexample=first,
        per_level=per_level,
        notes=notes,
    )


def count_chains(G: GradedDigraph, x: int, y: int) -> int:
    """Saturated chains from x up to y: entry (y, x) of U^(level(y) - level(x))"""
    i, j = level_of(G.partition, x), level_of(G.partition, y)
    if j < i:
        return 0
    offsets = G.partition.offsets
    product = RationalMatrix.identity(G.sizes[i])
    for n in range(i, j):
        product = up_restricted(G, n) @ product
    return int(product[y - offsets[j], x - offsets[i]])
