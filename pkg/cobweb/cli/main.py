"""
Command-line front end: gen, zeta, join, check and render.

Exit codes: 0 the command succeeded or the checked property holds,
1 the property fails, 2 usage or input error.
"""

import argparse
import logging
import sys
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Tuple

from ..config import configure_logging, get_settings
from ..exceptions import CobwebError, LevelRangeError, ParseError
from ..models.graphs import GradedDigraph
from ..models.schemas import (
    CheckName,
    CheckReport,
    CommandSpec,
    FSequence,
    Generator,
    JoinOp,
    OutputFormat,
    Preset,
    ZetaMethod,
)
from ..services import diffposet, generators
from ..services.boolmat import reflexive_transitive_closure, zeta_geometric
from ..services.fseq import make_fsequence, parse_sizes
from ..services.njoin import cjoin, embed_bipartite, njoin
from ..services.poset import adjacency, apply_deletions, cobweb, is_ferrers_dim_one, zeta_closed_form
from ..services.serialization import (
    digraph_to_json,
    load_digraph,
    matrix_from_text,
    matrix_to_text,
    parse_deletions,
    parse_window,
    read_text,
    report_to_json,
    write_text,
)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILS = 1
EXIT_USAGE = 2

_PRESETS = [preset.value for preset in Preset if preset != Preset.EXPLICIT]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cobweb", description="Cobweb posets and graded digraphs")
    parser.add_argument("--log-level", help="Logging level (default: COBWEB_LOG_LEVEL or INFO)")
    subparsers = parser.add_subparsers(dest="subcommand", required=True)

    gen = subparsers.add_parser("gen", help="Generate a graded digraph as block-chain JSON")
    gen.add_argument("--preset", choices=_PRESETS, help="Named F-sequence for a cobweb")
    gen.add_argument("--sizes", help="Explicit level sizes, e.g. 1,1,1,2,3,5,8")
    gen.add_argument("--levels", type=int, help="Number of levels of the cobweb")
    gen.add_argument("--constant", type=int, default=1, help="Value of the constant preset")
    gen.add_argument("--generator", choices=[g.value for g in Generator], default=Generator.COBWEB.value)
    gen.add_argument("--rank", type=int, help="Maximum rank of Young's lattice")
    gen.add_argument("--width", type=int, help="Chain count of a fan or width of a complete graded digraph")
    gen.add_argument("--depth", type=int, help="Depth of a fan, complete graded digraph or tree")
    gen.add_argument("--delete", help="Deletion file: lines 'k i j' clearing bit (i, j) of block k")
    gen.add_argument("--out", help="Output path (default: stdout)")

    zeta = subparsers.add_parser("zeta", help="Zeta matrix of a graded digraph")
    zeta.add_argument("input", nargs="?", default="-", help="Block-chain JSON (default: stdin)")
    zeta.add_argument("--method", choices=[m.value for m in ZetaMethod], default=ZetaMethod.CLOSURE.value)
    zeta.add_argument("--format", choices=[f.value for f in OutputFormat])
    zeta.add_argument("--out", help="Output path (default: stdout)")

    join = subparsers.add_parser("join", help="Join two biadjacency blocks")
    join.add_argument("file_a", help="First block (JSON or 0/1 grid)")
    join.add_argument("file_b", help="Second block (JSON or 0/1 grid)")
    join.add_argument("--op", choices=[op.value for op in JoinOp], default=JoinOp.NJOIN.value)
    join.add_argument("--format", choices=[f.value for f in OutputFormat])
    join.add_argument("--out", help="Output path (default: stdout)")

    check = subparsers.add_parser("check", help="Check a property; exit 0 holds, 1 fails")
    check.add_argument("name", choices=[c.value for c in CheckName])
    check.add_argument("input", nargs="?", default="-", help="Block-chain JSON (default: stdin)")
    check.add_argument("--r", default="1", help="Scalar r of DU - UD = rI")
    check.add_argument("--sizes", help="F-sequence (default: the digraph's level sizes)")
    check.add_argument("--preset", choices=_PRESETS, help="Named F-sequence instead of --sizes")
    check.add_argument("--n-max", type=int, default=3, help="Largest power for the power identity")
    check.add_argument("--weighted", action="store_true", help="Weight the power identity by delta_F")
    check.add_argument("--out", help="Output path (default: stdout)")

    render = subparsers.add_parser("render", help="Upper-left window of a zeta matrix as a 0/1 grid")
    render.add_argument("input", nargs="?", default="-", help="Zeta matrix (JSON or 0/1 grid)")
    render.add_argument("--window", default="16x16", help="RxC, e.g. 16x16")
    render.add_argument("--out", help="Output path (default: stdout)")

    return parser


def parse_command(argv: Optional[List[str]] = None) -> Tuple[CommandSpec, Optional[str]]:
    """argv -> (CommandSpec, requested log level)"""
    args = vars(build_parser().parse_args(argv))
    subcommand = args.pop("subcommand")
    log_level = args.pop("log_level")
    output = args.pop("out", None)
    format = args.pop("format", None) or get_settings().default_format
    inputs = [args.pop(key) for key in ("input", "file_a", "file_b") if key in args]
    check = args.pop("name", None)
    spec = CommandSpec(
        subcommand=subcommand,
        inputs=inputs,
        output=output,
        format=format,
        params=args,
        check=check,
    )
    return spec, log_level


def _guard_size(G: GradedDigraph) -> GradedDigraph:
    limit = get_settings().max_vertices
    if G.total > limit:
        raise CobwebError(f"Digraph has {G.total} vertices, above COBWEB_MAX_VERTICES={limit}")
    return G


def _fsequence(params: Dict, length: int) -> FSequence:
    if params.get("sizes"):
        return parse_sizes(params["sizes"])
    return make_fsequence(params["preset"], length=length, constant=params.get("constant", 1))


def _required(params: Dict, *names: str) -> None:
    missing = [name for name in names if params.get(name) is None]
    if missing:
        raise CobwebError(f"Missing --{', --'.join(missing)}")


def build_digraph(params: Dict) -> GradedDigraph:
    generator = Generator(params.get("generator") or Generator.COBWEB)
    if generator == Generator.COBWEB:
        if not params.get("sizes") and not params.get("preset"):
            raise CobwebError("gen needs --sizes or --preset")
        if params.get("sizes"):
            F = parse_sizes(params["sizes"])
            levels = params.get("levels") or len(F)
        else:
            _required(params, "levels")
            levels = params["levels"]
            F = _fsequence(params, levels)
        return cobweb(F, levels)
    if generator == Generator.YOUNG:
        _required(params, "rank")
        return generators.young_lattice(params["rank"])
    if generator == Generator.FAN:
        _required(params, "width", "depth")
        return generators.fan(params["width"], params["depth"])
    if generator == Generator.COMPLETE:
        _required(params, "width", "depth")
        return generators.complete_graded(params["width"], params["depth"])
    _required(params, "depth")
    if generator == Generator.BINARY_TREE:
        return generators.binary_tree(params["depth"])
    return generators.fibonacci_tree(params["depth"])


def cmd_gen(spec: CommandSpec) -> int:
    G = _guard_size(build_digraph(spec.params))
    if spec.params.get("delete"):
        deletions = parse_deletions(read_text(spec.params["delete"]))
        G, warnings = apply_deletions(G, deletions)
        logger.info(f"Applied {len(deletions) - len(warnings)} of {len(deletions)} deletions")
    write_text(spec.output, digraph_to_json(G))
    return EXIT_OK


def cmd_zeta(spec: CommandSpec) -> int:
    G = _guard_size(load_digraph(spec.inputs[0]))
    method = ZetaMethod(spec.params["method"])
    if method == ZetaMethod.CLOSED_FORM:
        zeta = zeta_closed_form(G)
    elif method == ZetaMethod.GEOMETRIC:
        zeta = zeta_geometric(adjacency(G))
    else:
        zeta = reflexive_transitive_closure(adjacency(G))
    write_text(spec.output, matrix_to_text(zeta, spec.format))
    return EXIT_OK


def cmd_join(spec: CommandSpec) -> int:
    A1 = embed_bipartite(matrix_from_text(read_text(spec.inputs[0])))
    A2 = embed_bipartite(matrix_from_text(read_text(spec.inputs[1])))
    if JoinOp(spec.params["op"]) == JoinOp.CJOIN:
        result = cjoin(A1, A2).A
    else:
        result = njoin(A1, A2)
    write_text(spec.output, matrix_to_text(result, spec.format))
    return EXIT_OK


def _check_ferrers(G: GradedDigraph, params: Dict) -> CheckReport:
    holds, witness = is_ferrers_dim_one(G)
    return CheckReport(
        check=CheckName.FERRERS.value,
        holds=holds,
        first_counterexample=witness.model_dump() if witness else None,
    )


def _check_fsequence(G: GradedDigraph, params: Dict) -> FSequence:
    if params.get("sizes") or params.get("preset"):
        return _fsequence(params, G.levels + 1)
    return make_fsequence(Preset.EXPLICIT, values=G.sizes)


_CHECKS: Dict[CheckName, Callable[[GradedDigraph, Dict], CheckReport]] = {
    CheckName.FERRERS: _check_ferrers,
    CheckName.GHW: lambda G, p: diffposet.is_r_differential(G, p["r"]),
    CheckName.DELTA: lambda G, p: diffposet.check_delta_relation(G, _check_fsequence(G, p)),
    CheckName.FOMIN: lambda G, p: diffposet.fomin_relation_check(G, _check_fsequence(G, p)),
    CheckName.FDIFF: lambda G, p: diffposet.f_differential_check(G, _check_fsequence(G, p)),
    CheckName.POWER: lambda G, p: diffposet.check_power_identity(
        G, p["n_max"], p["weighted"], _check_fsequence(G, p) if p["weighted"] else None
    ),
}


def cmd_check(spec: CommandSpec) -> int:
    G = _guard_size(load_digraph(spec.inputs[0]))
    params = dict(spec.params)
    try:
        params["r"] = Fraction(params["r"])
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"--r must be a rational number, got {params['r']!r}")
    report = _CHECKS[spec.check](G, params)
    write_text(spec.output, report_to_json(report))
    logger.info(f"check {spec.check.value}: {'holds' if report.holds else 'fails'}")
    return EXIT_OK if report.holds else EXIT_FAILS


def cmd_render(spec: CommandSpec) -> int:
    zeta = matrix_from_text(read_text(spec.inputs[0]))
    rows, cols = parse_window(spec.params["window"])
    if rows > zeta.rows or cols > zeta.cols:
        raise LevelRangeError(f"Window {rows}x{cols} exceeds the {zeta.rows}x{zeta.cols} matrix")
    write_text(spec.output, zeta.submatrix(range(rows), range(cols)).to_text())
    return EXIT_OK


_COMMANDS: Dict[str, Callable[[CommandSpec], int]] = {
    "gen": cmd_gen,
    "zeta": cmd_zeta,
    "join": cmd_join,
    "check": cmd_check,
    "render": cmd_render,
}


def run(argv: Optional[List[str]] = None) -> int:
    """Parse and execute one invocation; returns the exit code"""
    try:
        spec, log_level = parse_command(argv)
        configure_logging(log_level)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE
    except CobwebError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    logger.debug(f"Running {spec.model_dump()}")
    try:
        return _COMMANDS[spec.subcommand](spec)
    except CobwebError as e:
        logger.error(f"{spec.subcommand} failed: {e}")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())
