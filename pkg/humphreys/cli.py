"""
Command line entry point: ``python -m humphreys.cli <command> ...``.

Commands:
    humphreys   support-variety prediction for tilting modules of GL_n
    affine      lengths, minimal coset representatives and Bruhat comparisons
    char        graded characters and their identities
    cotstruct   co-t-structure, silting and tilting checks on a quiver algebra

Reports are JSON with sorted keys (``--text`` for a plain listing). Exit
codes: 0 success, 2 input error, 3 calibration failure, 4 inconclusive,
5 internal invariant breach.
"""

import argparse
import json
import logging
import os
import sys
from itertools import product
from typing import Any, Dict, List, Optional, Sequence

from sympy import isprime

from . import cache
from .affine_weyl import (
    affine_simple_reflections, bruhat_leq, coxeter_normal_form, identity_element, length, min_coset_rep,
    weight_leq,
)
from .alcoves import LOWER_CLOSURE_CONVENTION, block_labels
from .cells_type_a import ambc_shape, orbit_of_weight, orientation, to_affine_permutation
from .config import CACHE_DIR, GENERATION_DEPTH, LOG_FORMAT, configure_logging
from .cotstruct import (
    SAMPLE_TWIST, SAMPLE_WIDTH, bounded_sample, silting_census, tstructure_hom_vanishing, two_term_indecomposables,
    verify_cotstructure_axioms,
)
from .errors import HumphreysError, InputError, InvariantBreach
from .exceptional import (
    construct_indecomposable_silting, factorization_holds, quotient_functor_surjectivity_check,
    surjectivity_samples, verify_algebra,
)
from .ktheory_characters import (
    Labelled, aj_character, calibrate_root_sign, free_module_character, nabla_bar_character,
    triangular_expansion, verify_aj_sum_identity,
)
from .nilpotent_gln import orbit_dim, rank_conditions
from .quiver_algebra import QuiverAlgebra, load_algebra
from .reports import (
    AffineReport, BlockLabel, CalibrationBlock, CharacterReport, CharacterTerm, ErrorReport, HumphreysReport,
    IdentityCheckReport, PreExceptionalReport, RankConditionRow, Report, SiltingCensusReport, SurjectivityReport,
    TiltingObject, TiltingReport, TriangularReport,
)
from .root_data import RootDatum, gl, is_dominant, load_datum, make_datum

# =============================================================================
# LOGGING
# =============================================================================

logging.basicConfig(level=logging.INFO, format=LOG_FORMAT)
logger = logging.getLogger(__name__)

FIXTURES_DIR = os.path.join(os.path.dirname(__file__), "fixtures")
DEFAULT_TRUNC = 8


def parse_weight(text: str) -> List[int]:
    try:
        return [int(x) for x in str(text).replace(" ", "").split(",") if x != ""]
    except ValueError:
        raise InputError(f"Cannot parse weight '{text}': expected integers separated by commas")


def parse_word(datum: RootDatum, text: str):
    """Element from comma-separated affine simple reflection labels; 'e' is the identity."""
    gens = dict(affine_simple_reflections(datum))
    w = identity_element(datum)
    if text.strip() in ("", "e"):
        return w
    for label in text.split(","):
        label = label.strip()
        if label not in gens:
            raise InputError(f"Unknown simple reflection '{label}', expected one of {sorted(gens)}")
        w = w * gens[label]
    return w


def resolve_algebra(path: str) -> QuiverAlgebra:
    if not os.path.exists(path):
        bundled = os.path.join(FIXTURES_DIR, os.path.basename(path))
        if not os.path.exists(bundled):
            raise InputError(f"Algebra file not found: {path}")
        path = bundled
    return load_algebra(path)


# =============================================================================
# HUMPHREYS PIPELINE
# =============================================================================

def cmd_humphreys(n: int, p: int, mu: Sequence[int], box: Optional[int] = None,
                  exact_only: bool = False) -> HumphreysReport:
    if n < 2:
        raise InputError(f"n must be at least 2, got {n}")
    if not isprime(p):
        raise InputError(f"p = {p} is not prime")
    if p <= n:
        raise InputError(f"Need p > n, got p = {p}, n = {n}")
    if len(mu) != n:
        raise InputError(f"mu needs {n} coordinates, got {len(mu)}")
    datum = gl(n)
    if not is_dominant(datum, tuple(mu)):
        raise InputError(f"Weight {tuple(mu)} is not dominant")
    calibration = CalibrationBlock(orientation=orientation(n), lower_closure=LOWER_CLOSURE_CONVENTION)
    found = block_labels(datum, mu, p, box, exact_only)
    rows, orbits, warnings = [], set(), []
    for label in found.labels:
        rows.append(BlockLabel(weight=list(label.weight), word=list(coxeter_normal_form(label.element).word),
                               length=length(label.element), exact=label.exact))
        orbits.add(orbit_of_weight(label.weight, n))
    if len(orbits) != 1:
        logger.error(f"Block labels of mu={tuple(mu)} predict different orbits: {sorted(str(o) for o in orbits)}")
        raise InvariantBreach("Block labels disagree on the predicted orbit",
                              {"orbits": sorted(list(o.parts) for o in orbits)})
    orbit = orbits.pop()
    first = found.labels[0]
    shape = ambc_shape(to_affine_permutation(min_coset_rep(datum, first.weight)))
    conditions = rank_conditions(orbit)
    if calibration.orientation == "transpose":
        warnings.append("cell shapes are transposed to match the anchors")
    if not any(label.exact for label in found.labels):
        warnings.append("no label satisfies mu = w_lambda ._p 0 exactly")
    return HumphreysReport(
        n=n, p=p, mu=list(mu), box=found.box, block_labels=rows,
        cell_shape=list(shape.parts), orbit=list(orbit.parts), orbit_dimension=orbit_dim(orbit),
        rank_conditions=[RankConditionRow(power=c.power, max_rank=c.max_rank, generator_count=c.generator_count,
                                          vacuous_on_N=c.vacuous_on_N, implied=c.implied)
                         for c in conditions.conditions],
        nontrivial_conditions=[[c.power, c.max_rank] for c in conditions.nontrivial()],
        calibration=calibration, warnings=warnings,
    )


# =============================================================================
# AFFINE WEYL GROUP
# =============================================================================

def cmd_affine(command: str, datum: RootDatum, args: Sequence[str]) -> AffineReport:
    result: Any
    if command == "len":
        result = length(parse_word(datum, args[0] if args else "e"))
    elif command == "wmin":
        w = min_coset_rep(datum, parse_weight(args[0]))
        result = {"word": list(coxeter_normal_form(w).word), "length": length(w), "element": repr(w)}
    elif command == "bruhat":
        if len(args) != 2:
            raise InputError("bruhat needs two words")
        result = bruhat_leq(parse_word(datum, args[0]), parse_word(datum, args[1]))
    elif command == "order":
        if len(args) != 2:
            raise InputError("order needs two weights")
        lam, mu = parse_weight(args[0]), parse_weight(args[1])
        below, above = weight_leq(datum, lam, mu), weight_leq(datum, mu, lam)
        result = "equal" if below and above else "leq" if below else "geq" if above else "incomparable"
    else:
        raise InputError(f"Unknown affine command '{command}'")
    return AffineReport(command=command, group=datum.name, result=result)


# =============================================================================
# CHARACTERS
# =============================================================================

def _dominant_box(datum: RootDatum, bound: int) -> List[tuple]:
    return [lam for lam in product(range(-bound, bound + 1), repeat=datum.lattice_dim) if is_dominant(datum, lam)]


def cmd_char(command: str, datum: RootDatum, weight: Sequence[int], trunc: int, bound: int = 4) -> Report:
    if command in ("aj", "nabla"):
        build = aj_character if command == "aj" else nabla_bar_character
        character = build(datum, weight, trunc)
        terms = [CharacterTerm(**row) for row in character.to_json(t_variable=True)]
        return CharacterReport(kind=command, group=datum.name, weight=list(weight), trunc=trunc,
                               root_sign=calibrate_root_sign(datum), terms=terms)
    if command == "freecheck":
        return IdentityCheckReport(group=datum.name, weight=list(weight), trunc=trunc,
                                   holds=verify_aj_sum_identity(datum, weight, trunc))
    if command == "triangular":
        labels = _dominant_box(datum, bound)
        targets = [Labelled(lam, free_module_character(datum, lam, trunc)) for lam in labels]
        basis = [Labelled(lam, aj_character(datum, lam, trunc)) for lam in labels]
        result = triangular_expansion(datum, targets, basis)
        return TriangularReport(group=datum.name, labels=[list(lam) for lam in labels],
                                matrix=[[poly.to_json() for poly in row] for row in result.matrix],
                                triangular=result.triangular, unitriangular=result.unitriangular,
                                diagonal=[poly.to_json() for poly in result.diagonal], trunc=result.trunc)
    raise InputError(f"Unknown char command '{command}'")


# =============================================================================
# CO-T-STRUCTURES
# =============================================================================

def cmd_cotstruct(command: str, algebra_path: str, vertex: Optional[str] = None, width: int = 3,
                  depth: int = GENERATION_DEPTH, sample_width: int = SAMPLE_WIDTH,
                  sample_twist: int = SAMPLE_TWIST) -> Report:
    alg = resolve_algebra(algebra_path)
    name = os.path.basename(algebra_path)
    if command == "verify":
        delta, nabla, result = verify_algebra(alg, depth)
        pieces = two_term_indecomposables(alg, 1) + list(delta.values()) + list(nabla.values())
        sample = bounded_sample(pieces, sample_width, sample_twist)
        return PreExceptionalReport(
            algebra=name, order=result.order, verdict=result.verdict, generated=result.generated,
            dualizable=result.dualizable,
            violations=[v.to_dict() for v in result.violations + result.dual_violations],
            self_extensions=[v.to_dict() for v in result.self_extensions],
            cotstructure_violations=verify_cotstructure_axioms(sample.objects, sample.untwisted),
            sampled_objects=len(sample.objects),
            tstructure_witnesses=tstructure_hom_vanishing(nabla),
        )
    if command == "silting-census":
        census = silting_census(alg, depth=depth)
        return SiltingCensusReport(algebra=name, indecomposables=[X.to_json() for X in census.indecomposables],
                                   silting_sets=[list(s) for s in census.silting_sets], count=census.count)
    if command == "tilting":
        delta, nabla, result = verify_algebra(alg, depth)
        vertices = [vertex] if vertex else list(result.order)
        objects = []
        for s in vertices:
            T = construct_indecomposable_silting(alg, s, result, (delta, nabla))
            objects.append(TiltingObject(vertex=s, complex=T.minimal.to_json(),
                                         delta_multiplicities=T.delta_multiplicities,
                                         factorization_holds=factorization_holds(T)))
        return TiltingReport(algebra=name, verdict=result.verdict, objects=objects)
    if command == "surjectivity":
        samples = surjectivity_samples(alg, width)
        result = quotient_functor_surjectivity_check(alg, samples)
        return SurjectivityReport(
            algebra=name, top=result.top, pairs=len(samples), checks=len(result.checks),
            all_surjective=result.all_surjective,
            failures=[{"x": str(c.x), "y": str(c.y), "i": c.i, "k": c.k,
                       "rank": c.image_rank, "expected": c.quotient_dimension} for c in result.failures],
        )
    raise InputError(f"Unknown cotstruct command '{command}'")


# =============================================================================
# MAIN
# =============================================================================

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="humphreys", description="Support varieties of tilting modules and co-t-structures")
    output = parser.add_mutually_exclusive_group()
    output.add_argument("--json", dest="text", action="store_false", help="JSON report (default)")
    output.add_argument("--text", dest="text", action="store_true", help="Plain key: value output instead of JSON")
    parser.set_defaults(text=False)
    parser.add_argument("--cache-dir", default=CACHE_DIR, help="Directory of the persistent memo cache")
    parser.add_argument("--log-level", default=None, help="DEBUG, INFO, WARNING or ERROR")
    sub = parser.add_subparsers(dest="command", required=True)

    hum = sub.add_parser("humphreys", help="Predicted support variety for T(mu) of GL_n")
    hum.add_argument("--n", type=int, required=True)
    hum.add_argument("--p", type=int, required=True)
    hum.add_argument("--mu", required=True, help="Dominant weight, e.g. 4,0")
    hum.add_argument("--box", type=int, default=None, help="Search box for block labels")
    hum.add_argument("--exact-only", action="store_true", help="Keep only labels with mu = w_lambda ._p 0")

    aff = sub.add_parser("affine", help="Affine Weyl group utilities")
    aff.add_argument("action", choices=["len", "wmin", "bruhat", "order"])
    aff.add_argument("args", nargs="*", help="Words (comma-separated labels, 'e') or weights")
    aff.add_argument("--type", default="SL")
    aff.add_argument("--rank", type=int, default=2)
    aff.add_argument("--cartan", default=None, help="Custom Cartan matrix, rows separated by ';'")
    aff.add_argument("--datum", default=None, help="Root datum file (overrides --type)")
    aff.add_argument("--lambda", dest="lam", default=None)

    char = sub.add_parser("char", help="Graded characters")
    char.add_argument("action", choices=["aj", "nabla", "freecheck", "triangular"])
    char.add_argument("--type", default="SL")
    char.add_argument("--rank", type=int, default=2)
    char.add_argument("--cartan", default=None, help="Custom Cartan matrix, rows separated by ';'")
    char.add_argument("--datum", default=None, help="Root datum file (overrides --type)")
    char.add_argument("--lambda", dest="lam", default="0")
    char.add_argument("--tmax", type=int, default=DEFAULT_TRUNC)
    char.add_argument("--bound", type=int, default=4, help="Weight box for triangular")

    cot = sub.add_parser("cotstruct", help="Co-t-structure checks on a quiver algebra")
    cot.add_argument("action", choices=["verify", "silting-census", "tilting", "surjectivity"])
    cot.add_argument("--algebra", required=True, help="Algebra file (bundled fixtures found by name)")
    cot.add_argument("--vertex", default=None)
    cot.add_argument("--two-term", action="store_true", help="Census of two-term complexes (the only census)")
    cot.add_argument("--width", type=int, default=3, help="Degree span of the surjectivity sample")
    cot.add_argument("--sample-width", type=int, default=SAMPLE_WIDTH, help="Degree span of the axiom sample")
    cot.add_argument("--sample-twist", type=int, default=SAMPLE_TWIST, help="Largest |twist| in the axiom sample")
    cot.add_argument("--depth", type=int, default=GENERATION_DEPTH)
    return parser


def _datum(args: argparse.Namespace) -> RootDatum:
    if args.datum:
        if not os.path.exists(args.datum):
            raise InputError(f"Datum file not found: {args.datum}")
        return load_datum(args.datum)
    return make_datum(args.type, args.rank, args.cartan)


def run(args: argparse.Namespace) -> Report:
    if args.command == "humphreys":
        return cmd_humphreys(args.n, args.p, parse_weight(args.mu), args.box, args.exact_only)
    if args.command == "affine":
        datum = _datum(args)
        extra = list(args.args)
        if args.action == "wmin" and args.lam is not None:
            extra = [args.lam]
        return cmd_affine(args.action, datum, extra)
    if args.command == "char":
        datum = _datum(args)
        return cmd_char(args.action, datum, parse_weight(args.lam), args.tmax, args.bound)
    return cmd_cotstruct(args.action, args.algebra, args.vertex, args.width, args.depth,
                             args.sample_width, args.sample_twist)


def _text(payload: Dict[str, Any]) -> str:
    lines = []
    for key in sorted(payload):
        value = payload[key]
        rendered = value if isinstance(value, (str, int, float, bool)) or value is None else json.dumps(value, sort_keys=True)
        lines.append(f"{key}: {rendered}")
    return "\n".join(lines)


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    configure_logging(args.log_level)
    cache.load_cache(args.cache_dir)
    try:
        report = run(args)
        code = 0
    except HumphreysError as e:
        report = ErrorReport(code=e.code, message=e.message, details=e.details)
        code = e.exit_code
        logger.error(f"{e.code}: {e.message}")
    except Exception as e:
        logger.exception("Unexpected failure")
        report = ErrorReport(code="internal", message=str(e))
        code = InvariantBreach.exit_code
    finally:
        cache.save_cache(args.cache_dir)
    payload = report.as_dict()
    print(_text(payload) if args.text else json.dumps(payload, sort_keys=True, indent=2))
    return code


if __name__ == "__main__":
    sys.exit(main())
