"""
The co-t-structure on K^b(proj A) whose coheart is add(A<k>).

Orientation: S[-k] puts P in cohomological degree +k, so the nonnegative
part D>=0 holds the minimal complexes supported in degrees >= 0 and D<=0 the
ones supported in degrees <= 0. Silting checks, the two-term census and
weight truncation all work on minimal models.
"""

import logging
from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Any, Callable, Dict, Iterator, List, Optional, Sequence, Tuple, TypeVar

from .complexes import (
    ChainMap, ProjComplex, cone, decompose, direct_sum, distinct_up_to_shift_twist,
    hom_dimensions, hom_space, identity_matrix, minimal_model, projective, restrict,
    shift, shift_twist_to, twist, twist_candidates,
)
from .config import GENERATION_DEPTH, LOG_FORMAT
from .errors import InconclusiveError, InputError, InvariantBreach
from .quiver_algebra import QuiverAlgebra

# =============================================================================
# LOGGING
# =============================================================================

logging.basicConfig(level=logging.INFO, format=LOG_FORMAT)
logger = logging.getLogger(__name__)

SIDES = (">=0", "<=0")
CENSUS_MULTIPLICITY = 2  # copies of each summand type in the two-term census
SAMPLE_WIDTH = 4         # degrees spanned by the bounded axiom sample
SAMPLE_TWIST = 2         # largest |twist| in the bounded axiom sample

T = TypeVar("T")

# =============================================================================
# MEMBERSHIP AND TRUNCATION
# =============================================================================


def in_nonnegative(X: ProjComplex) -> bool:
    M = minimal_model(X)
    return M.is_zero() or M.min_degree >= 0


def in_nonpositive(X: ProjComplex) -> bool:
    M = minimal_model(X)
    return M.is_zero() or M.max_degree <= 0


def membership(X: ProjComplex, side: str) -> bool:
    if side == ">=0":
        return in_nonnegative(X)
    if side == "<=0":
        return in_nonpositive(X)
    raise InputError(f"side must be one of {SIDES}, got '{side}'")


def in_coheart(X: ProjComplex) -> bool:
    return in_nonnegative(X) and in_nonpositive(X)


@dataclass
class Truncation:
    """A -> X -> B -> A[1] with A in D>=0 and B in D<=0[1]."""
    source: ProjComplex             # minimal model of the input
    a_part: ProjComplex
    b_part: ProjComplex
    inclusion: ChainMap
    projection: ChainMap
    connecting: ChainMap


def weight_truncation(X: ProjComplex) -> Truncation:
    """Brutal truncation of the minimal model: degrees >= 0 into A, degrees <= -1 into B."""
    M = minimal_model(X)
    alg = M.algebra
    upper = {j: list(range(len(M.term(j)))) for j in M.degrees() if j >= 0}
    lower = {j: list(range(len(M.term(j)))) for j in M.degrees() if j < 0}
    A = restrict(M, upper)
    B = restrict(M, lower)
    inclusion = ChainMap(A, M, {j: identity_matrix(alg, M.term(j)) for j in upper})
    projection = ChainMap(M, B, {j: identity_matrix(alg, M.term(j)) for j in lower})
    connecting = ChainMap(B, shift(A, 1), {-1: M.d(-1)} if -1 in lower and 0 in upper else {})
    for name, f in (("inclusion", inclusion), ("projection", projection), ("connecting", connecting)):
        if not f.is_chain_map():
            logger.error(f"Weight truncation {name} is not a chain map for {M}")
            raise InvariantBreach(f"Weight truncation {name} is not a chain map")
    if not in_nonnegative(A) or not in_nonpositive(shift(B, -1)):
        raise InvariantBreach(f"Weight truncation parts land on the wrong side: A={A}, B={B}")
    return Truncation(M, A, B, inclusion, projection, connecting)


@dataclass(frozen=True)
class FiltrationPiece:
    shift: int                  # the piece is stalk[shift]
    stalk: ProjComplex          # coheart object in degree 0


def star_filtration(X: ProjComplex) -> List[FiltrationPiece]:
    """The minimal model as an iterated extension of coheart objects C[k], by ascending k."""
    M = minimal_model(X)
    pieces = [FiltrationPiece(-j, ProjComplex(M.algebra, {0: M.term(j)})) for j in M.degrees()]
    return sorted(pieces, key=lambda p: p.shift)


def star_sort(items: Sequence[T], weight: Callable[[T], Any] = lambda item: item[0]) -> List[T]:
    """Stable reordering with higher weights first."""
    return sorted(items, key=weight, reverse=True)


# =============================================================================
# SILTING
# =============================================================================

def presilting_witness(X: ProjComplex) -> Optional[Tuple[int, int, int]]:
    """First (i, k, dim) with i > 0 and Hom(X, X<k>[i]) nonzero, or None."""
    M = minimal_model(X)
    if M.is_zero():
        return None
    width = M.max_degree - M.min_degree
    for k in twist_candidates(M, M):
        for i in range(1, width + 1):
            dim = hom_space(M, M, i, k).dimension
            if dim:
                return i, k, dim
    return None


def is_presilting(X: ProjComplex) -> bool:
    return presilting_witness(X) is None


def generation_search(generators: Sequence[ProjComplex], targets: Sequence[ProjComplex],
                      depth: int = GENERATION_DEPTH) -> List[bool]:
    """
    Bounded search of the thick closure of ``generators`` (up to shift and twist).

    Each round adds the indecomposable summands of cones of basis maps between
    objects found so far. Returns, per target, whether it was reached.
    """
    pool = distinct_up_to_shift_twist(piece for G in generators for piece in decompose(G))
    wanted = [minimal_model(t) for t in targets]

    def reached(t: ProjComplex) -> bool:
        return any(shift_twist_to(P, t) is not None for P in pool)

    found = [reached(t) for t in wanted]
    for round_no in range(depth):
        if all(found):
            break
        fresh: List[ProjComplex] = []
        for A, B in product(list(pool), repeat=2):
            for (i, k) in hom_dimensions(A, B):
                for f in hom_space(A, B, i, k).basis:
                    for piece in decompose(cone(f)):
                        if not any(shift_twist_to(P, piece) is not None for P in pool + fresh):
                            fresh.append(piece)
        if not fresh:
            break
        pool.extend(fresh)
        logger.debug(f"Generation round {round_no + 1}: {len(pool)} indecomposables")
        found = [f or reached(t) for f, t in zip(found, wanted)]
    return found


@dataclass
class SiltingVerdict:
    status: str                             # "silting" | "not_silting" | "inconclusive"
    summands: List[ProjComplex]             # distinct indecomposables up to shift and twist
    witness: Optional[Tuple[int, int, int]] = None
    reachable: Dict[str, bool] = field(default_factory=dict)


def silting_verdict(X: ProjComplex, depth: int = GENERATION_DEPTH) -> SiltingVerdict:
    alg = X.algebra
    M = minimal_model(X)
    summands = distinct_up_to_shift_twist(decompose(M))
    witness = presilting_witness(M)
    if witness is not None:
        return SiltingVerdict("not_silting", summands, witness)
    if len(summands) != len(alg.vertices):
        return SiltingVerdict("not_silting", summands)
    found = generation_search(summands, [projective(alg, v) for v in alg.vertices], depth)
    reachable = dict(zip(alg.vertices, found))
    if all(found):
        return SiltingVerdict("silting", summands, None, reachable)
    logger.warning(f"Generation search for {M} exhausted depth {depth}: unreached {[v for v, ok in reachable.items() if not ok]}")
    return SiltingVerdict("inconclusive", summands, None, reachable)


def is_silting(X: ProjComplex, depth: int = GENERATION_DEPTH) -> bool:
    verdict = silting_verdict(X, depth)
    if verdict.status == "inconclusive":
        raise InconclusiveError(f"Generation search exhausted at depth {depth}",
                                {"reachable": verdict.reachable})
    return verdict.status == "silting"


# =============================================================================
# TWO-TERM CENSUS
# =============================================================================

def _two_term_shapes(algebra: QuiverAlgebra, multiplicity: int) -> Iterator[Tuple[Tuple, Tuple]]:
    twists = sorted({0} | {p.degree for p in algebra.basis if p.word})
    upper_types = [(v, 0) for v in algebra.vertices]
    lower_types = [(v, t) for v in algebra.vertices for t in twists]
    for up in product(range(multiplicity + 1), repeat=len(upper_types)):
        for low in product(range(multiplicity + 1), repeat=len(lower_types)):
            top = tuple(s for s, m in zip(upper_types, up) for _ in range(m))
            bottom = tuple(s for s, m in zip(lower_types, low) for _ in range(m))
            if top or bottom:
                yield bottom, top


def two_term_complexes(algebra: QuiverAlgebra, multiplicity: int = CENSUS_MULTIPLICITY) -> Iterator[ProjComplex]:
    """Minimal complexes P^-1 -> P^0 with radical entries whose path coefficients are 0 or 1."""
    for bottom, top in _two_term_shapes(algebra, multiplicity):
        slots = []
        for r, (vr, kr) in enumerate(top):
            for c, (vc, kc) in enumerate(bottom):
                for b in algebra.basis_between(vr, vc, kc - kr):
                    if algebra.basis[b].word:
                        slots.append((r, c, b))
        for choice in product((0, 1), repeat=len(slots)):
            d = [[{} for _ in bottom] for _ in top]
            for (r, c, b), on in zip(slots, choice):
                if on:
                    d[r][c] = dict(d[r][c])
                    d[r][c][b] = algebra.K.one
            yield ProjComplex(algebra, {-1: bottom, 0: top}, {-1: d} if top and bottom else {})


def _twist_key(X: ProjComplex) -> str:
    if X.is_zero():
        return "0"
    low = min(k for t in X.terms.values() for _, k in t)
    return str(twist(X, -low).to_json())


@dataclass
class SiltingCensus:
    indecomposables: List[ProjComplex]      # two-term, distinct up to twist
    silting_sets: List[Tuple[int, ...]]     # indices into indecomposables

    @property
    def count(self) -> int:
        return len(self.silting_sets)


def _same_up_to_twist(X: ProjComplex, Y: ProjComplex) -> bool:
    match = shift_twist_to(X, Y)
    return match is not None and match[0] == 0


def two_term_indecomposables(algebra: QuiverAlgebra, multiplicity: int = CENSUS_MULTIPLICITY) -> List[ProjComplex]:
    """Indecomposable two-term complexes, distinct up to twist."""
    seen: Dict[str, bool] = {}
    distinct: List[ProjComplex] = []
    for X in two_term_complexes(algebra, multiplicity):
        for piece in decompose(X):
            key = _twist_key(piece)
            if key in seen:
                continue
            seen[key] = True
            if not any(_same_up_to_twist(D, piece) for D in distinct):
                distinct.append(piece)
    distinct.sort(key=lambda P: (-P.min_degree, str(P)))
    logger.info(f"Two-term census: {len(distinct)} indecomposables up to twist")
    return distinct


def silting_census(algebra: QuiverAlgebra, multiplicity: int = CENSUS_MULTIPLICITY,
                   depth: int = GENERATION_DEPTH) -> SiltingCensus:
    """Basic two-term silting objects, found by brute-force enumeration."""
    distinct = two_term_indecomposables(algebra, multiplicity)
    silting = []
    for subset in combinations(range(len(distinct)), len(algebra.vertices)):
        X = direct_sum(*(distinct[i] for i in subset))
        verdict = silting_verdict(X, depth)
        if verdict.status == "inconclusive":
            raise InconclusiveError(f"Generation search inconclusive for {X}")
        if verdict.status == "silting":
            silting.append(subset)
    logger.info(f"Two-term census: {len(silting)} basic silting objects")
    return SiltingCensus(distinct, silting)


# =============================================================================
# AXIOM CHECKS
# =============================================================================

@dataclass
class BoundedSample:
    """Indecomposables placed in a window of degrees and twists, plus their pairwise sums."""
    singles: List[ProjComplex]
    sums: List[ProjComplex]
    twists: List[int]          # twist applied to each single

    @property
    def objects(self) -> List[ProjComplex]:
        return self.singles + self.sums

    @property
    def untwisted(self) -> List[ProjComplex]:
        return [X for X, k in zip(self.singles, self.twists) if k == 0]


def bounded_sample(indecomposables: Sequence[ProjComplex], width: int = SAMPLE_WIDTH,
                   twist_bound: int = SAMPLE_TWIST) -> BoundedSample:
    """
    Every shift of each indecomposable (up to shift and twist) supported in
    the degrees -(width // 2) .. width - width // 2 - 1, every twist in
    [-twist_bound, twist_bound], and every direct sum of two such objects.
    """
    low = -(width // 2)
    high = low + width - 1
    singles, twists = [], []
    for X in distinct_up_to_shift_twist(indecomposables):
        if X.is_zero() or X.max_degree - X.min_degree >= width:
            continue
        for n in range(X.max_degree - high, X.min_degree - low + 1):
            for k in range(-twist_bound, twist_bound + 1):
                singles.append(twist(shift(X, n), k))
                twists.append(k)
    sums = [direct_sum(singles[i], singles[j]) for i in range(len(singles)) for j in range(i, len(singles))]
    logger.info(f"Bounded sample of width {width}, twists up to {twist_bound}: "
                f"{len(singles)} indecomposables, {len(sums)} sums")
    return BoundedSample(singles, sums, twists)


def verify_cotstructure_axioms(objects: Sequence[ProjComplex],
                               hom_objects: Optional[Sequence[ProjComplex]] = None) -> List[Dict[str, Any]]:
    """
    Violations of the co-t-structure axioms on a finite sample.

    Checks closure under summands, D>=0[-1] in D>=0 and D<=0[1] in D<=0, the
    vanishing Hom(A, B[1]) = 0 for A in D>=0 and B in D<=0, and the weight
    truncation triangle for every object. The Hom vanishing runs over
    ``hom_objects`` when given: Hom is additive, and every twist of B is
    already covered by twist_candidates.
    """
    violations: List[Dict[str, Any]] = []
    nonneg = [X for X in objects if in_nonnegative(X)]
    nonpos = [X for X in objects if in_nonpositive(X)]
    for X in objects:
        for side in SIDES:
            if membership(X, side) and not all(membership(piece, side) for piece in decompose(X)):
                violations.append({"axiom": "summands", "side": side, "object": str(X)})
        weight_truncation(X)
    for X in nonneg:
        if not in_nonnegative(shift(X, -1)):
            violations.append({"axiom": "shift", "side": ">=0", "object": str(X)})
    for X in nonpos:
        if not in_nonpositive(shift(X, 1)):
            violations.append({"axiom": "shift", "side": "<=0", "object": str(X)})
    if hom_objects is not None:
        nonneg = [X for X in hom_objects if in_nonnegative(X)]
        nonpos = [X for X in hom_objects if in_nonpositive(X)]
    for A in nonneg:
        for B in nonpos:
            for k in twist_candidates(A, B):
                if hom_space(A, B, 1, k).dimension:
                    violations.append({"axiom": "orthogonality", "a": str(A), "b": str(B), "twist": k})
    return violations


def tstructure_hom_vanishing(family: Dict[str, ProjComplex]) -> List[Dict[str, Any]]:
    """Witnesses (s, t, i, k) of Hom(nabla_s, nabla_t<k>[i]) != 0 with i < 0."""
    witnesses = []
    for s, X in family.items():
        for t, Y in family.items():
            for (i, k), dim in sorted(hom_dimensions(X, Y).items()):
                if i < 0:
                    witnesses.append({"s": s, "t": t, "i": i, "k": k, "dim": dim})
    return witnesses


def single_generator_coheart(X: ProjComplex) -> bool:
    """Every indecomposable summand of X (in the coheart) is a twist of the single projective."""
    alg = X.algebra
    if len(alg.vertices) != 1:
        raise InputError(f"Single-generator check needs a one-vertex algebra, got {len(alg.vertices)} vertices")
    if not in_coheart(X):
        return False
    v = alg.vertices[0]
    return all(piece.rank() == 1 and piece.degrees() == [0] and piece.term(0)[0][0] == v
               for piece in decompose(X))
