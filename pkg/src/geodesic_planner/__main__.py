"""CLI entry point for Geodesic Planner."""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Any, Callable, Sequence

import numpy as np
from rich.console import Console
from rich.logging import RichHandler
from rich.markup import escape
from rich.table import Table

from . import __version__
from .config import RunConfig
from .errors import GeodesicPlannerError, InvalidInputError, MissingCardinality
from .geometry.models import TangentAtPoint
from .lens import (
    BoundaryStratum,
    check_consistency,
    covering_degree,
    verify_emptiness,
    verify_trig_inequality,
)
from .oracle import brute_force_minimizers, compare_with_closed_form
from .planner import build_decomposition, continuity_sweep, gc_ledger, plan
from .spaces import (
    ManifoldKind,
    ManifoldPoint,
    ModelManifold,
    classify_pair,
    distance,
    minimal_geodesics,
    parse_manifold,
    parse_point,
    tangent_cut_time,
)
from .spaces.parser import parse_vector
from .symdecomp import (
    RootSystemInput,
    builtin_example,
    enumerate_D,
    group_by_cardinality,
    root_system,
    s_delta_dim,
    symmetric_trace,
)
from .symdecomp.bounds import fibered_trace
from .utils import make_rng, write_document, write_samples_csv

logger = logging.getLogger(__name__)

stderr = Console(stderr=True)

# A command returns its result document and whether every check passed
CommandResult = tuple[dict[str, Any], bool]


# =============================================================================
# Input helpers
# =============================================================================


def _point(manifold: ModelManifold, text: str) -> ManifoldPoint:
    # quotient inputs are normalized; sphere lifts must already be unit
    return parse_point(manifold, text, normalize=manifold.kind is not ManifoldKind.SPHERE)


def _pair(args: argparse.Namespace) -> tuple[ModelManifold, ManifoldPoint, ManifoldPoint]:
    manifold = parse_manifold(args.manifold)
    return manifold, _point(manifold, args.source), _point(manifold, args.target)


def _int_list(text: str) -> list[int]:
    values = parse_vector(text)
    if not np.all(values == np.round(values)):
        raise InvalidInputError(f"expected integers, got {text!r}")
    return [int(v) for v in values]


def _radii(text: str) -> tuple[float, ...]:
    return tuple(float(r) for r in parse_vector(text))


def _load_json(path: Path) -> dict[str, Any]:
    try:
        doc = json.loads(path.read_text(encoding="utf-8"))
    except OSError as exc:
        raise InvalidInputError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise InvalidInputError(f"{path} is not valid JSON: {exc.msg}") from exc
    if not isinstance(doc, dict):
        raise InvalidInputError(f"{path} must hold a JSON object")
    return doc


# =============================================================================
# Commands
# =============================================================================


def cmd_plan(config: RunConfig, args: argparse.Namespace) -> CommandResult:
    manifold, x, y = _pair(args)
    motion = plan(manifold, x, y, samples=config.samples, tie_tol=config.tie_tol)
    if config.csv is not None:
        times = np.linspace(0.0, motion.distance, config.samples)
        write_samples_csv(config.csv, times, motion.sample_array())
    return motion.to_dict(), True


def cmd_classify(config: RunConfig, args: argparse.Namespace) -> CommandResult:
    manifold, x, y = _pair(args)
    label = classify_pair(manifold, x, y, config.tie_tol)
    return {
        "manifold": manifold.spec,
        "x": x.to_list(),
        "y": y.to_list(),
        "distance": distance(manifold, x, y),
        "stratum": label.to_dict(),
    }, True


def cmd_geodesics(config: RunConfig, args: argparse.Namespace) -> CommandResult:
    manifold, x, y = _pair(args)
    enumeration = minimal_geodesics(manifold, x, y, config.tie_tol)
    return {
        "manifold": manifold.spec,
        "x": x.to_list(),
        "y": y.to_list(),
        "count": enumeration.count,
        **enumeration.to_dict(),
    }, True


def cmd_cut_time(config: RunConfig, args: argparse.Namespace) -> CommandResult:
    manifold = parse_manifold(args.manifold)
    x = _point(manifold, args.source)
    v = TangentAtPoint(x.lift, parse_vector(args.velocity))
    return {
        "manifold": manifold.spec,
        "x": x.to_list(),
        "velocity": v.to_list(),
        "cut_time": tangent_cut_time(manifold, x, v),
    }, True


def cmd_verify_lens(config: RunConfig, args: argparse.Namespace) -> CommandResult:
    p = ModelManifold.lens(args.p).p
    rng = make_rng(config.seed)
    emptiness = verify_emptiness(p, config.emptiness_samples, seed=rng, strict=False)
    trig = verify_trig_inequality(config.trig_p_max, strict=False)
    consistency = check_consistency(p, config.consistency_samples, seed=rng)
    covering = {
        "C1": covering_degree(p, BoundaryStratum.disk(p, 1)),
        "Cp-1": covering_degree(p, BoundaryStratum.circle(p)),
    }
    covering_ok = covering == {"C1": 2, "Cp-1": p}
    passed = emptiness.passed and trig.passed and consistency.passed and covering_ok
    logger.info("verify-lens p=%d passed=%s", p, passed)
    return {
        "p": p,
        "violations": emptiness.violations,
        "trig_min_margin": trig.min_margin,
        "covering": covering,
        "emptiness": emptiness.to_dict(),
        "trig": trig.to_dict(),
        "consistency": consistency.to_dict(),
        "passed": passed,
    }, passed


def _symmetric_bounds(doc: dict[str, Any]) -> CommandResult:
    try:
        groups = {int(k): [int(v) for v in values] for k, values in doc["groups"].items()}
    except (AttributeError, TypeError, ValueError) as exc:
        raise InvalidInputError("groups must map cardinalities to lists of integers") from exc
    rank = doc.get("rank")
    if rank is not None and rank != len(groups):
        raise MissingCardinality(f"rank {rank} but {len(groups)} cardinality groups")
    trace = symmetric_trace(groups)
    return {"kind": "symmetric", "groups": {str(k): v for k, v in sorted(groups.items())}, **trace.to_dict()}, True


def _root_data_bounds(doc: dict[str, Any]) -> CommandResult:
    if "root_system" in doc:
        rank = doc.get("rank")
        if not isinstance(rank, int):
            raise InvalidInputError(f"root_system needs an integer rank, got {rank!r}")
        rs = root_system(str(doc["root_system"]), rank)
    else:
        rs = RootSystemInput.from_dict(doc)
    grouped = group_by_cardinality(enumerate_D(rs))
    subsets = {
        str(i): [{"members": list(s.members), "s_delta_dim": s_delta_dim(rs, s)} for s in grouped[i]]
        for i in sorted(grouped)
    }
    return {
        "kind": "root_data",
        "root_data": rs.to_dict(),
        "subsets": subsets,
        "count": sum(len(v) for v in grouped.values()),
    }, True


def cmd_bounds(config: RunConfig, args: argparse.Namespace) -> CommandResult:
    if args.builtin is not None:
        example = builtin_example(args.builtin)
        return {"kind": "builtin", **example.to_dict(), "matches": example.matches}, example.matches
    if args.fibered is not None:
        secat = _int_list(args.fibered)
        return {"kind": "fibered", "secat_bounds": secat, **fibered_trace(secat).to_dict()}, True
    doc = _load_json(args.input)
    if "builtin" in doc:
        example = builtin_example(str(doc["builtin"]))
        return {"kind": "builtin", **example.to_dict(), "matches": example.matches}, example.matches
    if "groups" in doc:
        return _symmetric_bounds(doc)
    if "secat_bounds" in doc:
        secat = doc["secat_bounds"]
        if not isinstance(secat, list) or not all(isinstance(v, int) for v in secat):
            raise InvalidInputError("secat_bounds must be a list of integers")
        return {"kind": "fibered", "secat_bounds": secat, **fibered_trace(secat).to_dict()}, True
    if "simple_roots" in doc or "root_system" in doc:
        return _root_data_bounds(doc)
    raise InvalidInputError("bounds input needs one of builtin, groups, secat_bounds, simple_roots, root_system")


def cmd_oracle(config: RunConfig, args: argparse.Namespace) -> CommandResult:
    manifold, x, y = _pair(args)
    report = brute_force_minimizers(manifold, x, y, grid_size=config.grid_size, land_tol=config.land_tol)
    comparison = compare_with_closed_form(manifold, x, y, report, config.tie_tol)
    passed = comparison.count_match and comparison.family_match
    return {**report.to_dict(), "comparison": comparison.to_dict()}, passed


def cmd_continuity(config: RunConfig, args: argparse.Namespace) -> CommandResult:
    manifold, x, y = _pair(args)
    decomposition = build_decomposition(manifold, config.tie_tol)
    piece_id = decomposition.locate(x, y).id if args.piece is None else args.piece
    sweep = continuity_sweep(
        manifold, decomposition, piece_id, (x, y), config.radii, config.continuity_samples, seed=config.seed
    )
    logger.info("continuity of piece %d: conclusive=%s linear=%s", piece_id, sweep.conclusive, sweep.linear)
    return {"manifold": manifold.spec, "x": x.to_list(), "y": y.to_list(), **sweep.to_dict()}, sweep.passed


def cmd_decompose(config: RunConfig, args: argparse.Namespace) -> CommandResult:
    manifold = parse_manifold(args.manifold)
    decomposition = build_decomposition(manifold, config.tie_tol)
    ledger = gc_ledger(manifold)
    passed = ledger.consistent and ledger.upper_constructed == len(decomposition.pieces)
    return {**decomposition.to_dict(), "gc_ledger": ledger.to_dict()}, passed


COMMANDS: dict[str, Callable[[RunConfig, argparse.Namespace], CommandResult]] = {
    "plan": cmd_plan,
    "classify": cmd_classify,
    "geodesics": cmd_geodesics,
    "cut-time": cmd_cut_time,
    "verify-lens": cmd_verify_lens,
    "bounds": cmd_bounds,
    "oracle": cmd_oracle,
    "decompose": cmd_decompose,
    "continuity": cmd_continuity,
}


# =============================================================================
# Summaries
# =============================================================================


def print_summary(command: str, result: dict[str, Any]) -> None:
    """Render a short rich table of the result on stderr."""
    table = Table(title=command)
    if command == "verify-lens":
        table.add_column("check")
        table.add_column("value", justify="right")
        table.add_row("violations", str(result["violations"]))
        table.add_row("trig min margin", f"{result['trig_min_margin']}")
        table.add_row("covering C1", str(result["covering"]["C1"]))
        table.add_row("covering Cp-1", str(result["covering"]["Cp-1"]))
        for key, hits in result["emptiness"]["stratum_hits"].items():
            table.add_row(f"hits {key}", str(hits))
    elif command == "bounds":
        table.add_column("term", justify="right")
        for term in result.get("trace", []):
            table.add_row(str(term))
        if "result" in result:
            table.add_row(f"[bold]{result['result']}[/]")
    elif command == "decompose":
        table.add_column("id", justify="right")
        table.add_column("piece")
        for piece in result["pieces"]:
            table.add_row(str(piece["id"]), escape(piece["description"]))
    elif command == "oracle":
        table.add_column("length", justify="right")
        table.add_column("population", justify="right")
        table.add_column("landing error", justify="right")
        for cluster in result["clusters"]:
            table.add_row(f"{cluster['length']:.12f}", str(cluster["population"]), f"{cluster['landing_error']:.2e}")
    elif command == "continuity":
        table.add_column("radius", justify="right")
        table.add_column("deviation", justify="right")
        table.add_column("retained", justify="right")
        for report in result["reports"]:
            deviation = report["max_velocity_deviation"]
            table.add_row(
                f"{report['radius']:.1e}",
                "inconclusive" if deviation is None else f"{deviation:.3e}",
                f"{report['retained_samples']}/{report['samples']}",
            )
    else:
        return
    stderr.print(table)


# =============================================================================
# Argument parsing
# =============================================================================


def _common_options() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-v", "--verbose", action="store_true", help="Log at debug level on stderr")
    common.add_argument("--seed", type=int, default=None, help="Seed for every random draw")
    common.add_argument("--tie-tol", dest="tie_tol", type=float, default=None, help="Minimizer tie tolerance")
    common.add_argument("--land-tol", dest="land_tol", type=float, default=None, help="Oracle landing tolerance")
    common.add_argument("--output", "-o", type=Path, default=None, help="Write the JSON document here")
    common.add_argument("--summary", action="store_true", help="Print a summary table on stderr")
    return common


def _pair_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("manifold", help="Manifold spec: s<n>, cp<n>, hp<n> or lens<p>")
    parser.add_argument("--from", dest="source", required=True, help="Start point lift, comma separated")
    parser.add_argument("--to", dest="target", required=True, help="End point lift, comma separated")


def build_parser() -> argparse.ArgumentParser:
    """Parser for the geoplan command line."""
    common = _common_options()
    parser = argparse.ArgumentParser(
        prog="geoplan",
        description="Cut loci and geodesic motion planners for spheres, projective spaces and lens spaces",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("plan", parents=[common], help="Plan a minimizing geodesic")
    _pair_arguments(p)
    p.add_argument("--samples", type=int, default=None, help="Path samples, endpoints included")
    p.add_argument("--csv", type=Path, default=None, help="Also write the samples as CSV")

    p = sub.add_parser("classify", parents=[common], help="Classify a pair into its cut stratum")
    _pair_arguments(p)

    p = sub.add_parser("geodesics", parents=[common], help="Enumerate all minimizing geodesics")
    _pair_arguments(p)

    p = sub.add_parser("cut-time", parents=[common], help="Tangent cut time of a unit direction")
    p.add_argument("manifold", help="Manifold spec: s<n>, cp<n>, hp<n> or lens<p>")
    p.add_argument("--from", dest="source", required=True, help="Base point lift, comma separated")
    p.add_argument("--velocity", required=True, help="Unit tangent direction, comma separated")

    p = sub.add_parser("verify-lens", parents=[common], help="Run the lens fundamental-domain checks")
    p.add_argument("p", type=int, help="Lens parameter, at least 3")
    p.add_argument("--emptiness-samples", dest="emptiness_samples", type=int, default=None)
    p.add_argument("--consistency-samples", dest="consistency_samples", type=int, default=None)
    p.add_argument("--trig-p-max", dest="trig_p_max", type=int, default=None)

    p = sub.add_parser("bounds", parents=[common], help="Evaluate geodesic complexity upper bounds")
    source = p.add_mutually_exclusive_group(required=True)
    source.add_argument("--builtin", help="gr2c4, lens, cpn(<n>) or hpn(<n>)")
    source.add_argument("--input", type=Path, help="JSON description of the bound computation")
    source.add_argument("--fibered", help="Comma separated sectional category bounds")

    p = sub.add_parser("oracle", parents=[common], help="Brute-force minimizers and compare with the closed form")
    _pair_arguments(p)
    p.add_argument("--grid-size", dest="grid_size", type=int, default=None)

    p = sub.add_parser("decompose", parents=[common], help="Describe the planner decomposition and its ledger")
    p.add_argument("manifold", help="Manifold spec: s<n>, cp<n>, hp<n> or lens<p>")

    p = sub.add_parser("continuity", parents=[common], help="Measure section continuity around a pair")
    _pair_arguments(p)
    p.add_argument("--piece", type=int, default=None, help="Piece id, located from the pair when omitted")
    p.add_argument("--radii", type=_radii, default=None, help="Comma separated perturbation radii")
    p.add_argument("--continuity-samples", dest="continuity_samples", type=int, default=None)

    return parser


def setup_logging(verbose: bool) -> None:
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.WARNING,
        format="%(message)s",
        handlers=[RichHandler(console=stderr, show_time=False, show_path=False)],
        force=True,
    )


def _error_datum(exc: GeodesicPlannerError) -> dict[str, Any]:
    datum: dict[str, Any] = {"type": type(exc).__name__, "message": str(exc)}
    for attr in ("margin", "indices", "point", "zero_indices", "p", "m", "accepted"):
        if hasattr(exc, attr):
            value = getattr(exc, attr)
            datum[attr] = list(value) if isinstance(value, tuple) else value
    return datum


def run(argv: Sequence[str] | None = None) -> int:
    """Run one command and emit its JSON document.

    Returns:
        0 when every check passed, 1 on failed checks or diagnostic errors,
        2 on invalid input.
    """
    parser = build_parser()
    args = parser.parse_args(argv)
    setup_logging(args.verbose)

    config = RunConfig.from_args(args)
    doc: dict[str, Any] = {"command": args.command, "config": config.effective()}
    try:
        result, passed = COMMANDS[args.command](config, args)
    except InvalidInputError as e:
        stderr.print(f"[bold red]error:[/] {escape(str(e))}")
        return 2
    except GeodesicPlannerError as e:
        logger.debug("%s failed: %s", args.command, e)
        doc["error"] = _error_datum(e)
        doc["passed"] = False
        write_document(doc, config.output, sys.stdout)
        return 1

    doc["result"] = result
    doc["passed"] = passed
    write_document(doc, config.output, sys.stdout)
    if args.summary:
        print_summary(args.command, result)
    return 0 if passed else 1


def main() -> int:
    """Main entry point."""
    return run(sys.argv[1:])


if __name__ == "__main__":
    sys.exit(main())
