"""
balkit command line.

Complexes travel between subcommands as JSON complex files on stdin and
stdout; reports are printed as RunReport JSON. Logging goes to stderr.

Exit codes: 0 every check passed, 1 some check failed, 2 usage, input or
precondition error, 3 undecided within the search budget.
"""

import argparse
import json
import logging
import sys
import time
from pathlib import Path
from typing import Callable, Dict, List, Optional, Sequence, TextIO

from pydantic import ValidationError

from balkit.config import APP_DESCRIPTION, APP_NAME, APP_VERSION, LOG_LEVEL, REPORT_SCHEMA_VERSION
from balkit.exceptions import BalkitError, BuilderUnavailable, InputError
from balkit.models import (
    ComplexFile,
    EnumerationSpec,
    PredicateReport,
    RunReport,
    SearchOutcome,
    SearchStatus,
    Verdict,
)
from balkit.services.complex import Coloring, SimplicialComplex, flag_vectors, f_vector, from_file, to_file
from balkit.services.construct import NAMED_BUILDERS, build
from balkit.services.decomposition import (
    find_ear_decomposition,
    find_shelling,
    validate_ear_decomposition,
    validate_shelling,
)
from balkit.services.enumeration import census_spectrum, enumerate_balanced_spheres, search_symmetric, write_census
from balkit.services.homology import coefficient_name, homology, normalize_coefficients
from balkit.services.symmetry import automorphism_group, check_generators
from balkit.services.verify import (
    alexander_duality,
    dehn_sommerville_flag,
    find_proper_coloring,
    heegaard_profile,
    is_balanced,
    is_closed_homology_manifold,
    is_homology_ball,
    is_homology_sphere,
    is_k_neighborly,
    link_intersection_profile,
)

logger = logging.getLogger(__name__)

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_INPUT = 2
EXIT_UNDECIDED = 3


# ==================== I/O Helpers ====================

def _read_complex(path: Optional[str], stdin: TextIO) -> SimplicialComplex:
    text = Path(path).read_text() if path else stdin.read()
    try:
        data = ComplexFile.model_validate_json(text)
    except ValidationError as e:
        raise InputError(f"not a complex file: {e.errors()[0]['msg']}")
    return from_file(data)


def _digest(K: SimplicialComplex) -> str:
    return to_file(K).digest()


def _coloring(K: SimplicialComplex, d: Optional[int] = None) -> Coloring:
    """Stored coloring, or a proper d-coloring found by search."""
    kappa = K.coloring
    if kappa is not None:
        return kappa
    if d is None:
        raise InputError("complex carries no coloring; pass --balanced d")
    kappa = find_proper_coloring(K, d)
    if kappa is None:
        raise InputError(f"complex has no proper {d}-coloring")
    return kappa


def _read_spec(path: str) -> EnumerationSpec:
    try:
        return EnumerationSpec.model_validate_json(Path(path).read_text())
    except ValidationError as e:
        raise InputError(f"bad spec file {path}: {e.errors()[0]['msg']}")
    except OSError as e:
        raise InputError(f"cannot read spec file {path}: {e}")


def _exit_code(checks: Sequence[PredicateReport], outcomes: Sequence[SearchOutcome] = ()) -> int:
    if any(not c.passed for c in checks):
        return EXIT_FAIL
    if any(o.status == SearchStatus.UNDECIDED for o in outcomes):
        return EXIT_UNDECIDED
    return EXIT_PASS


def _report(
    command: str,
    started: float,
    checks: Sequence[PredicateReport] = (),
    outcomes: Sequence[SearchOutcome] = (),
    digest: Optional[str] = None,
    exit_code: Optional[int] = None,
) -> RunReport:
    return RunReport(
        schema_version=REPORT_SCHEMA_VERSION,
        command=command,
        input_digest=digest,
        checks=list(checks),
        outcomes=list(outcomes),
        wall_time=round(time.perf_counter() - started, 3),
        nodes=sum(o.nodes for o in outcomes),
        exit_code=_exit_code(checks, outcomes) if exit_code is None else exit_code,
    )


def _emit(payload, stdout: TextIO) -> None:
    if hasattr(payload, "model_dump_json"):
        stdout.write(payload.model_dump_json(indent=2))
    else:
        stdout.write(json.dumps(payload, indent=2, sort_keys=True))
    stdout.write("\n")


# ==================== Subcommands ====================

def cmd_construct(args, stdin: TextIO, stdout: TextIO) -> int:
    K = build(args.name)
    _emit(to_file(K), stdout)
    return EXIT_PASS


def cmd_verify(args, stdin: TextIO, stdout: TextIO) -> int:
    started = time.perf_counter()
    K = _read_complex(args.input, stdin)
    checks: List[PredicateReport] = []
    coefficients = args.coefficients

    if args.balanced is not None:
        checks.append(is_balanced(K, args.balanced))
        if not checks[-1].passed:
            _emit(_report("verify", started, checks, digest=_digest(K)), stdout)
            return EXIT_FAIL
    needs_colors = args.neighborly or args.dehn_sommerville or args.link_profile or args.heegaard or args.alexander
    kappa = _coloring(K, args.balanced) if needs_colors else None

    if args.neighborly:
        checks.append(is_k_neighborly(K, kappa, args.neighborly))
    if args.sphere:
        checks.append(_shape_check(is_homology_sphere, "homology_sphere", K, coefficients))
    if args.ball:
        checks.append(_shape_check(is_homology_ball, "homology_ball", K, coefficients))
    if args.manifold:
        checks.append(_shape_check(is_closed_homology_manifold, "closed_manifold", K, coefficients))
    if args.dehn_sommerville:
        checks.append(dehn_sommerville_flag(K, kappa))
    if args.alexander:
        checks.append(alexander_duality(K, kappa))
    if args.link_profile:
        profile = link_intersection_profile(K, kappa, args.link_profile, with_homology=True)
        checks.append(PredicateReport(
            check="link_profile", verdict=Verdict.PASS,
            detail=f"color {args.link_profile}",
            data=profile.model_dump(),
        ))
    if args.heegaard:
        checks.append(heegaard_profile(K, kappa, _parse_partition(K, args.heegaard)))
    if args.generators:
        checks.extend(check_generators(K, args.generators))
    if not checks:
        raise InputError("verify needs at least one check flag")
    _emit(_report("verify", started, checks, digest=_digest(K)), stdout)
    return _exit_code(checks)


def _shape_check(predicate, check: str, K: SimplicialComplex, coefficients) -> PredicateReport:
    """A non-pure complex is reported as a failure, witnessed by its smallest facet."""
    if not K.is_void and not K.is_pure:
        facet = min(K.facets, key=lambda f: (f.bit_count(), f))
        return PredicateReport(
            check=check, verdict=Verdict.FAIL,
            witness=K.face_labels(facet),
            detail=f"complex is not pure: facet of dimension {facet.bit_count() - 1} in a {K.dim}-dimensional complex",
        )
    return predicate(K, coefficients)


def _parse_partition(K: SimplicialComplex, text: str):
    halves = text.split("/")
    if len(halves) != 2:
        raise InputError(f"--heegaard expects 'a,b/c,d', got '{text}'")
    pairs = []
    for half in halves:
        names = [x.strip() for x in half.split(",") if x.strip()]
        if len(names) != 2:
            raise InputError(f"--heegaard expects two vertices on each side, got '{half}'")
        pairs.append(tuple(K.vertex_by_label(x) for x in names))
    return pairs[0], pairs[1]


def cmd_fvec(args, stdin: TextIO, stdout: TextIO) -> int:
    K = _read_complex(args.input, stdin)
    fv = f_vector(K)
    out: Dict[str, object] = {"f": list(fv.f), "h": list(fv.h)}
    kappa = K.coloring
    if kappa is not None and kappa.is_proper(K):
        flags = flag_vectors(K, kappa)
        out["flag_f"] = {",".join(map(str, S)) or "-": flags.f(S) for S in flags.subsets()}
        out["flag_h"] = {",".join(map(str, S)) or "-": flags.h(S) for S in flags.subsets()}
    _emit(out, stdout)
    return EXIT_PASS


def cmd_homology(args, stdin: TextIO, stdout: TextIO) -> int:
    K = _read_complex(args.input, stdin)
    profile = homology(K, args.coefficients)
    _emit({
        "coefficients": coefficient_name(*normalize_coefficients(args.coefficients)),
        "betti": profile.betti,
        "torsion": {str(k): v for k, v in profile.torsion.items()},
    }, stdout)
    return EXIT_PASS


def cmd_aut(args, stdin: TextIO, stdout: TextIO) -> int:
    K = _read_complex(args.input, stdin)
    _emit(automorphism_group(K, color_preserving=args.color_preserving), stdout)
    return EXIT_PASS


def _read_witness(path: str) -> List[List[int]]:
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as e:
        raise InputError(f"cannot read witness {path}: {e}")
    if not isinstance(data, list) or not all(isinstance(x, list) for x in data):
        raise InputError("witness must be a JSON list of facet-index lists")
    return data


def cmd_ear(args, stdin: TextIO, stdout: TextIO) -> int:
    started = time.perf_counter()
    K = _read_complex(args.input, stdin)
    if args.witness:
        check = validate_ear_decomposition(K, _read_witness(args.witness))
        _emit(_report("ear", started, [check], digest=_digest(K)), stdout)
        return _exit_code([check])
    outcome = find_ear_decomposition(K, args.budget)
    _emit(_report("ear", started, outcomes=[outcome], digest=_digest(K)), stdout)
    return _exit_code([], [outcome])


def cmd_shell(args, stdin: TextIO, stdout: TextIO) -> int:
    started = time.perf_counter()
    K = _read_complex(args.input, stdin)
    if args.witness:
        order = _read_witness(args.witness)
        if len(order) != 1:
            raise InputError("a shelling witness is a single facet-index list")
        check = validate_shelling(K, order[0])
        _emit(_report("shell", started, [check], digest=_digest(K)), stdout)
        return _exit_code([check])
    outcome = find_shelling(K, args.budget)
    _emit(_report("shell", started, outcomes=[outcome], digest=_digest(K)), stdout)
    return _exit_code([], [outcome])


def _census_command(args, stdout: TextIO, runner: Callable[[EnumerationSpec], object], command: str) -> int:
    started = time.perf_counter()
    census = runner(_read_spec(args.spec))
    if args.out:
        index = write_census(census, Path(args.out))
        logger.info("census written to %s", index)
    outcome = SearchOutcome(
        check=command,
        status=census.status,
        nodes=census.nodes,
        detail=f"{len(census.entries)} complexes; edge counts {census_spectrum(census)}",
    )
    report = _report(command, started, outcomes=[outcome])
    _emit({
        "report": json.loads(report.model_dump_json()),
        "entries": [
            {"name": e.name, "f_vector": e.f_vector, "aut_order": e.aut_order, "neighborly": e.neighborly}
            for e in census.entries
        ],
        "notes": census.notes,
    }, stdout)
    return report.exit_code


def cmd_enumerate(args, stdin: TextIO, stdout: TextIO) -> int:
    return _census_command(
        args, stdout,
        lambda spec: enumerate_balanced_spheres(spec, budget=args.budget, jobs=args.jobs),
        "enumerate",
    )


def cmd_search(args, stdin: TextIO, stdout: TextIO) -> int:
    def runner(spec: EnumerationSpec):
        if args.first:
            spec = spec.model_copy(update={"first_only": True})
        return search_symmetric(spec, budget=args.budget, resume=not args.no_resume)

    return _census_command(args, stdout, runner, "search")


def cmd_paper_suite(args, stdin: TextIO, stdout: TextIO) -> int:
    from balkit.suite import run_suite

    started = time.perf_counter()
    board, checks, outcomes = run_suite(budget=args.budget, jobs=args.jobs, full_census=args.full_census)
    sys.stderr.write(board.to_string(index=False) + "\n")
    _emit(_report("paper-suite", started, checks, outcomes), stdout)
    return _exit_code(checks, outcomes)


# ==================== Parser ====================

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog=APP_NAME, description=APP_DESCRIPTION)
    parser.add_argument("--version", action="version", version=f"{APP_NAME} {APP_VERSION}")
    parser.add_argument("--log-level", default=LOG_LEVEL, help="Logging level for stderr output")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="Print a named complex as a complex file")
    p.add_argument("name", choices=sorted(NAMED_BUILDERS))
    p.set_defaults(handler=cmd_construct)

    p = sub.add_parser("verify", help="Run recognition checks on a complex")
    p.add_argument("--input", help="Complex file (default: stdin)")
    p.add_argument("--balanced", type=int, metavar="D", help="Check for a proper D-coloring")
    p.add_argument("--neighborly", type=int, metavar="K", help="Balanced K-neighborliness")
    p.add_argument("--sphere", action="store_true", help="Homology sphere")
    p.add_argument("--ball", action="store_true", help="Homology ball")
    p.add_argument("--manifold", action="store_true", help="Closed homology manifold")
    p.add_argument("--dehn-sommerville", action="store_true", help="Flag h-vector symmetry")
    p.add_argument("--alexander", action="store_true", help="Alexander duality across rank selections")
    p.add_argument("--link-profile", type=int, metavar="COLOR", help="Link intersections within one color class")
    p.add_argument("--heegaard", metavar="a,b/c,d", help="Genus-one splitting along a color class of size 4")
    p.add_argument("--generators", nargs="+", metavar="CYCLES", help="Check automorphisms in cycle notation")
    p.add_argument("--coefficients", default="integer", help="integer, rational or a prime")
    p.set_defaults(handler=cmd_verify)

    p = sub.add_parser("fvec", help="f-, h- and flag vectors")
    p.add_argument("--input")
    p.set_defaults(handler=cmd_fvec)

    p = sub.add_parser("homology", help="Reduced homology")
    p.add_argument("--input")
    p.add_argument("--coefficients", default="integer")
    p.set_defaults(handler=cmd_homology)

    p = sub.add_parser("aut", help="Automorphism group")
    p.add_argument("--input")
    p.add_argument("--color-preserving", action="store_true")
    p.set_defaults(handler=cmd_aut)

    for name, handler, text in (
        ("ear", cmd_ear, "Find or validate an ear decomposition"),
        ("shell", cmd_shell, "Find or validate a shelling"),
    ):
        p = sub.add_parser(name, help=text)
        p.add_argument("--input")
        p.add_argument("--witness", help="JSON facet-index lists to validate instead of searching")
        p.add_argument("--budget", type=int, help="Node budget")
        p.set_defaults(handler=handler)

    p = sub.add_parser("enumerate", help="Exhaustive census of balanced spheres")
    p.add_argument("--spec", required=True, help="EnumerationSpec JSON file")
    p.add_argument("--out", help="Directory for the census files")
    p.add_argument("--budget", type=int)
    p.add_argument("--jobs", type=int)
    p.set_defaults(handler=cmd_enumerate)

    p = sub.add_parser("search", help="Symmetric search for complexes with prescribed invariants")
    p.add_argument("--spec", required=True)
    p.add_argument("--first", action="store_true", help="Stop at the first solution")
    p.add_argument("--out")
    p.add_argument("--budget", type=int)
    p.add_argument("--no-resume", action="store_true", help="Ignore a stored checkpoint")
    p.set_defaults(handler=cmd_search)

    p = sub.add_parser("paper-suite", help="Run the acceptance battery and print a scoreboard")
    p.add_argument("--budget", type=int)
    p.add_argument("--jobs", type=int)
    p.add_argument("--full-census", action="store_true", help="Include the unrestricted 12-vertex census")
    p.set_defaults(handler=cmd_paper_suite)
    return parser


def main(argv: Optional[Sequence[str]] = None, stdin: TextIO = None, stdout: TextIO = None) -> int:
    stdin = stdin or sys.stdin
    stdout = stdout or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_PASS if e.code == 0 else EXIT_INPUT
    logging.basicConfig(level=args.log_level.upper(), stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.handler(args, stdin, stdout)
    except BuilderUnavailable as e:
        logger.error(e.message)
        return EXIT_UNDECIDED
    except BalkitError as e:
        logger.error(getattr(e, "message", str(e)))
        return EXIT_INPUT
