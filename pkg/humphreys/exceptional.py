"""
Graded (pre-)exceptional families of standard and costandard objects.

Families are indexed by the heredity order of a quasi-hereditary
presentation, lowest vertex first. The module verifies the vanishing axioms,
classifies the family as quasi-, co-quasi- or fully exceptional, checks
dualizability of the (Delta, iota) partners, builds the indecomposable
silting objects T_s by universal extension, and tests surjectivity of the
quotient functor to the top vertex.
"""

import logging
from dataclasses import dataclass, field
from itertools import product
from typing import Any, Dict, List, Optional, Sequence, Tuple

from .complexes import (
    ChainMap, ProjComplex, add_maps, compose, cone, cone_inclusion, costandard_complex, decompose,
    direct_sum, hom_dimensions, hom_space, identity_map, minimal_model, projective, scale_map, shift, shift_map,
    standard_complex, twist, twist_candidates, twist_map, zero_matrix,
)
from .config import GENERATION_DEPTH, LOG_FORMAT
from .cotstruct import generation_search, in_nonnegative, in_nonpositive, star_sort, two_term_indecomposables
from .errors import InconclusiveError, InputError, InvariantBreach, NotCoquasiError, PreconditionError
from .linalg import columns_to_rows, independent_modulo, nullspace, rank, solve
from .quiver_algebra import QuiverAlgebra

# =============================================================================
# LOGGING
# =============================================================================

logging.basicConfig(level=logging.INFO, format=LOG_FORMAT)
logger = logging.getLogger(__name__)

MAX_EXTENSION_ROUNDS = 8  # universal-extension passes before giving up on T_s

Family = Dict[str, ProjComplex]


def _order(algebra: QuiverAlgebra) -> List[str]:
    if not algebra.heredity_order:
        raise PreconditionError("Algebra has no heredity_order")
    return list(algebra.heredity_order)


def standard_family(algebra: QuiverAlgebra) -> Family:
    return {s: standard_complex(algebra, s) for s in _order(algebra)}


def costandard_family(algebra: QuiverAlgebra) -> Family:
    return {s: costandard_complex(algebra, s) for s in _order(algebra)}


# =============================================================================
# PRE-EXCEPTIONAL VERIFICATION
# =============================================================================


@dataclass(frozen=True)
class Violation:
    axiom: str          # "vanishing" | "endomorphism" | "dual_vanishing" | "dual_iota" | "dual_cone"
    s: str
    t: str
    i: int = 0
    k: int = 0
    dim: int = 0

    def to_dict(self) -> Dict[str, Any]:
        return {"axiom": self.axiom, "s": self.s, "t": self.t, "i": self.i, "k": self.k, "dim": self.dim}


@dataclass
class PreExceptionalResult:
    order: List[str]
    violations: List[Violation] = field(default_factory=list)
    self_extensions: List[Violation] = field(default_factory=list)
    generated: Optional[bool] = None            # None: search exhausted
    dual_violations: List[Violation] = field(default_factory=list)
    dualizable: Optional[bool] = None           # None: no Delta family given or search exhausted
    iota: Dict[str, ChainMap] = field(default_factory=dict)

    @property
    def quasi(self) -> bool:
        return not any(v.i < 0 for v in self.self_extensions)

    @property
    def coquasi(self) -> bool:
        return not any(v.i > 0 for v in self.self_extensions)

    @property
    def verdict(self) -> str:
        if self.violations:
            return "not_pre_exceptional"
        if self.generated is None:
            return "inconclusive"
        if self.quasi and self.coquasi:
            return "exceptional"
        if self.quasi:
            return "quasi_exceptional"
        if self.coquasi:
            return "co_quasi_exceptional"
        return "pre_exceptional"


def _check_dual(delta: Family, nabla: Family, order: Sequence[str], result: PreExceptionalResult,
                depth: int) -> None:
    undecided = False
    for pos, s in enumerate(order):
        space = hom_space(delta[s], nabla[s])
        if space.dimension != 1:
            result.dual_violations.append(Violation("dual_iota", s, s, 0, 0, space.dimension))
            continue
        iota = space.basis[0]
        result.iota[s] = iota
        C = minimal_model(cone(iota))
        lower = [nabla[t] for t in order[:pos]]
        if not C.is_zero():
            if not lower:
                result.dual_violations.append(Violation("dual_cone", s, s))
            elif not all(generation_search(lower, decompose(C), depth)):
                undecided = True
        for t in order[:pos]:
            for (i, k), dim in sorted(hom_dimensions(delta[s], nabla[t]).items()):
                result.dual_violations.append(Violation("dual_vanishing", s, t, i, k, dim))
    if result.dual_violations:
        result.dualizable = False
    else:
        result.dualizable = None if undecided else True


def verify_pre_exceptional(delta: Optional[Family], nabla: Family, order: Sequence[str],
                           depth: int = GENERATION_DEPTH) -> PreExceptionalResult:
    """
    Check the graded pre-exceptional axioms for ``nabla`` in the given order.

    Vanishing: Hom(nabla_s, nabla_t<n>[i]) = 0 whenever s sits below t.
    Endomorphisms: Hom(nabla_s, nabla_s<n>) is the field at n = 0 and zero
    otherwise. Generation: the family reaches every indecomposable
    projective. Self-extensions in negative (positive) degree rule out the
    quasi (co-quasi) variant. When ``delta`` is given, the standard partners
    are checked for dualizability as well.
    """
    order = list(order)
    if set(order) != set(nabla) or (delta is not None and set(order) != set(delta)):
        raise InputError(f"Families are not indexed by the order {order}")
    result = PreExceptionalResult(order)
    for pos, s in enumerate(order):
        for t in order[pos + 1:]:
            for (i, k), dim in sorted(hom_dimensions(nabla[s], nabla[t]).items()):
                result.violations.append(Violation("vanishing", s, t, i, k, dim))
        ends = hom_dimensions(nabla[s], nabla[s])
        if ends.get((0, 0), 0) != 1:
            result.violations.append(Violation("endomorphism", s, s, 0, 0, ends.get((0, 0), 0)))
        for (i, k), dim in sorted(ends.items()):
            if i == 0 and k != 0:
                result.violations.append(Violation("endomorphism", s, s, i, k, dim))
            elif i != 0:
                result.self_extensions.append(Violation("self_extension", s, s, i, k, dim))
    alg = nabla[order[0]].algebra
    targets = [projective(alg, v) for v in alg.vertices]
    found = generation_search(list(nabla.values()), targets, depth)
    result.generated = True if all(found) else None
    if result.generated is None:
        logger.warning(f"Generation of the projectives by the costandard family is undecided at depth {depth}")
    if delta is not None:
        _check_dual(delta, nabla, order, result, depth)
    for v in result.violations:
        logger.info(f"Axiom violation {v.axiom}: s={v.s} t={v.t} i={v.i} k={v.k}")
    logger.info(f"Family over {order}: {result.verdict}, dualizable={result.dualizable}")
    return result


def verify_algebra(algebra: QuiverAlgebra, depth: int = GENERATION_DEPTH) -> Tuple[Family, Family, PreExceptionalResult]:
    delta, nabla = standard_family(algebra), costandard_family(algebra)
    return delta, nabla, verify_pre_exceptional(delta, nabla, _order(algebra), depth)


# =============================================================================
# INDECOMPOSABLE SILTING OBJECTS
# =============================================================================


@dataclass
class TiltingResult:
    vertex: str
    complex: ProjComplex                    # T_s as built, before reduction
    minimal: ProjComplex                    # minimal model of T_s
    delta_to_t: ChainMap                    # Delta_s -> T_s
    t_to_nabla: ChainMap                    # T_s -> nabla_s
    iota: ChainMap
    delta_multiplicities: Dict[str, int]

    @property
    def filtration_length(self) -> int:
        return sum(self.delta_multiplicities.values())


def _combine(maps: Sequence[ChainMap], target: ProjComplex) -> ChainMap:
    """The map from the direct sum of the sources, one block per map."""
    source = direct_sum(*(f.source for f in maps))
    comps = {}
    for j in source.degrees():
        m = zero_matrix(len(target.term(j)), len(source.term(j)))
        offset = 0
        for f in maps:
            block = f.component(j)
            width = len(f.source.term(j))
            for r in range(len(target.term(j))):
                for c in range(width):
                    m[r][offset + c] = block[r][c]
            offset += width
        comps[j] = m
    return ChainMap(source, target, comps)


def in_glued_coheart(X: ProjComplex, delta: Family, nabla: Family) -> List[Violation]:
    """Witnesses of Hom(X, nabla_t<n>[i]) or Hom(Delta_t<n>, X[i]) being nonzero for i >= 1."""
    witnesses = []
    for t in nabla:
        for (i, k), dim in sorted(hom_dimensions(X, nabla[t]).items()):
            if i >= 1:
                witnesses.append(Violation("coheart_nabla", "T", t, i, k, dim))
        for (i, k), dim in sorted(hom_dimensions(delta[t], X).items()):
            if i >= 1:
                witnesses.append(Violation("coheart_delta", t, "T", i, k, dim))
    return witnesses


def construct_indecomposable_silting(algebra: QuiverAlgebra, s: str,
                                     result: Optional[PreExceptionalResult] = None,
                                     families: Optional[Tuple[Family, Family]] = None) -> TiltingResult:
    """
    T_s with Delta_s -> T_s -> nabla_s composing to iota_s.

    Starting from Delta_s, every degree-one map from a lower Delta_t<n> into
    the current object is killed by a universal extension until none is
    left; the map to nabla_s is then solved for on Hom(Delta_s, nabla_s).
    """
    order = _order(algebra)
    if s not in order:
        raise InputError(f"Unknown vertex '{s}'")
    delta, nabla = families or (standard_family(algebra), costandard_family(algebra))
    if result is None:
        result = verify_pre_exceptional(delta, nabla, order)
    if result.verdict not in ("co_quasi_exceptional", "exceptional"):
        raise NotCoquasiError(f"Costandard family is {result.verdict}, not co-quasi-exceptional")
    rank_of = {v: n for n, v in enumerate(order)}
    lower = star_sort([t for t in order if rank_of[t] < rank_of[s]], weight=lambda t: rank_of[t])

    E = delta[s]
    j = identity_map(E)
    multiplicities = {s: 1}
    for round_no in range(MAX_EXTENSION_ROUNDS):
        extended = False
        for t in lower:
            killers = []
            for k in twist_candidates(delta[t], E):
                for h in hom_space(delta[t], E, 1, k).basis:
                    killers.append(shift_map(twist_map(h, -k), -1))
            if not killers:
                continue
            G = _combine(killers, E)
            C = cone(G)
            j = compose(cone_inclusion(G, C), j)
            E = C
            multiplicities[t] = multiplicities.get(t, 0) + len(killers)
            extended = True
            logger.debug(f"T_{s}: extended by {len(killers)} copies of Delta_{t} in round {round_no + 1}")
        if not extended:
            break
    else:
        raise InconclusiveError(f"Universal extension for T_{s} did not stabilize in {MAX_EXTENSION_ROUNDS} rounds")

    iota_space = hom_space(delta[s], nabla[s])
    if iota_space.dimension != 1:
        raise InvariantBreach(f"Hom(Delta_{s}, nabla_{s}) has dimension {iota_space.dimension}")
    iota = result.iota.get(s) or iota_space.basis[0]
    target = iota_space.coordinates(iota)
    maps = hom_space(E, nabla[s]).basis
    columns = [iota_space.coordinates(compose(g, j)) for g in maps]
    coeffs = solve(columns, target, algebra.K) if maps else None
    if coeffs is None:
        raise InvariantBreach(f"iota_{s} does not factor through T_{s}")
    g = scale_map(algebra.K.zero, maps[0])
    for c, gm in zip(coeffs, maps):
        if c:
            g = add_maps(g, scale_map(c, gm))

    witnesses = in_glued_coheart(E, delta, nabla)
    pieces = decompose(E)
    if witnesses or len(pieces) != 1:
        logger.error(f"T_{s} = {minimal_model(E)} fails the coheart check: {witnesses}, {len(pieces)} summands")
        raise InvariantBreach(f"T_{s} is not an indecomposable coheart object",
                              {"witnesses": [w.to_dict() for w in witnesses], "summands": len(pieces)})
    T = TiltingResult(s, E, minimal_model(E), j, g, iota, multiplicities)
    logger.info(f"T_{s} = {T.minimal} with Delta multiplicities {multiplicities}")
    return T


def factorization_holds(T: TiltingResult) -> bool:
    """g o j agrees with iota_s up to homotopy."""
    space = hom_space(T.iota.source, T.iota.target)
    composite = compose(T.t_to_nabla, T.delta_to_t)
    return space.coordinates(composite) == space.coordinates(T.iota)


# =============================================================================
# QUOTIENT FUNCTOR
# =============================================================================


class _QuotientComplex:
    """X e_t: a complex of graded vector spaces, one slot per (summand, path into t)."""

    def __init__(self, X: ProjComplex, top: str):
        alg = X.algebra
        self.X, self.top = X, top
        self.slots: Dict[int, List[Tuple[int, int, int]]] = {}
        self.position: Dict[int, Dict[Tuple[int, int], int]] = {}
        into_top = [b for b, p in enumerate(alg.basis) if p.target == top]
        for j in X.degrees():
            slots = [(c, b, alg.basis[b].degree + k)
                     for c, (v, k) in enumerate(X.term(j)) for b in into_top if alg.basis[b].source == v]
            self.slots[j] = slots
            self.position[j] = {(c, b): n for n, (c, b, _) in enumerate(slots)}
        self._cohomology: Dict[Tuple[int, int], Tuple[List[List[Any]], List[List[Any]]]] = {}

    def dim(self, j: int) -> int:
        return len(self.slots.get(j, []))

    def internal_degrees(self) -> List[int]:
        return sorted({g for slots in self.slots.values() for _, _, g in slots})

    def apply(self, m, j_src: int, j_dst: int, vector: Sequence[Any]) -> List[Any]:
        """Image of a vector at degree j_src under the algebra matrix m, in degree j_dst."""
        alg = self.X.algebra
        return _apply(alg, m, self.slots.get(j_src, []), vector, self.position.get(j_dst, {}), self.dim(j_dst))

    def cohomology(self, j: int, g: int) -> Tuple[List[List[Any]], List[List[Any]]]:
        """(representatives, boundaries) of H^j in internal degree g."""
        key = (j, g)
        if key in self._cohomology:
            return self._cohomology[key]
        K = self.X.algebra.K
        n = self.dim(j)
        idx = [a for a, (_, _, deg) in enumerate(self.slots.get(j, [])) if deg == g]
        d = self.X.d(j)
        images = [self.apply(d, j, j + 1, _unit(K, n, a)) for a in idx]
        kernel = nullspace(columns_to_rows(images, self.dim(j + 1)), len(idx), K) if idx else []
        cycles = []
        for vec in kernel:
            full = [K.zero] * n
            for a, value in zip(idx, vec):
                full[a] = value
            cycles.append(full)
        prev = self.X.d(j - 1)
        boundaries = [self.apply(prev, j - 1, j, _unit(K, self.dim(j - 1), a))
                      for a, (_, _, deg) in enumerate(self.slots.get(j - 1, [])) if deg == g]
        boundaries = [b for b in boundaries if any(b)]
        reps = [cycles[a] for a in independent_modulo(boundaries, cycles, n, K)]
        self._cohomology[key] = (reps, boundaries)
        return reps, boundaries

    def coordinates(self, j: int, g: int, vector: Sequence[Any]) -> List[Any]:
        reps, boundaries = self.cohomology(j, g)
        coords = solve(reps + boundaries, list(vector), self.X.algebra.K)
        if coords is None:
            raise InvariantBreach("Image of a cycle is not a cycle after the quotient")
        return coords[:len(reps)]


def _unit(K, n: int, a: int) -> List[Any]:
    v = [K.zero] * n
    v[a] = K.one
    return v


def _apply(alg: QuiverAlgebra, m, src_slots, vector, dst_position, dst_dim) -> List[Any]:
    out = [alg.K.zero] * dst_dim
    for a, coeff in enumerate(vector):
        if not coeff:
            continue
        c, b, _ = src_slots[a]
        for r, row in enumerate(m):
            if not row[c]:
                continue
            for path, value in alg.mul(row[c], {b: alg.K.one}).items():
                out[dst_position[(r, path)]] += coeff * value
    return out


@dataclass
class SurjectivityCheck:
    x: ProjComplex
    y: ProjComplex
    i: int
    k: int
    quotient_dimension: int
    image_rank: int

    @property
    def surjective(self) -> bool:
        return self.image_rank == self.quotient_dimension


@dataclass
class SurjectivityResult:
    top: str
    checks: List[SurjectivityCheck]

    @property
    def all_surjective(self) -> bool:
        return all(c.surjective for c in self.checks)

    @property
    def failures(self) -> List[SurjectivityCheck]:
        return [c for c in self.checks if not c.surjective]


def _check_pair(X: ProjComplex, Y: ProjComplex, top: str) -> List[SurjectivityCheck]:
    alg = X.algebra
    K = alg.K
    QX, QY = _QuotientComplex(X, top), _QuotientComplex(Y, top)
    twists = set(twist_candidates(X, Y))
    twists |= {gx - gy for gx in QX.internal_degrees() for gy in QY.internal_degrees()}
    checks = []
    for k in sorted(twists):
        for i in range(Y.min_degree - X.max_degree, Y.max_degree - X.min_degree + 1):
            target = shift(twist(Y, k), i)
            QT = _QuotientComplex(target, top)
            blocks = []
            expected = 0
            for j in X.degrees():
                for g in QX.internal_degrees():
                    src = QX.cohomology(j, g)[0]
                    dst = QT.cohomology(j, g)[0] if j in target.terms else []
                    if src and dst:
                        blocks.append((j, g, src))
                        expected += len(src) * len(dst)
            if not expected:
                continue
            vectors = []
            for f in hom_space(X, Y, i, k).basis:
                flat: List[Any] = []
                for j, g, src in blocks:
                    m = f.component(j)
                    for rep in src:
                        image = _apply(alg, m, QX.slots[j], rep, QT.position[j], QT.dim(j))
                        flat.extend(QT.coordinates(j, g, image))
                vectors.append(flat)
            achieved = rank(vectors, len(vectors[0]), K) if vectors else 0
            checks.append(SurjectivityCheck(X, Y, i, k, expected, achieved))
    return checks


def quotient_functor_surjectivity_check(algebra: QuiverAlgebra,
                                        samples: Sequence[Tuple[ProjComplex, ProjComplex]]) -> SurjectivityResult:
    """
    For X in D>=0 and Y in D<=0, check that Hom(X, Y<k>[i]) maps onto the
    Hom space between their images under X -> X e_t, t the top vertex.
    """
    top = _order(algebra)[-1]
    loops = [p for p in algebra.basis if p.source == top and p.target == top]
    if len(loops) != 1:
        raise PreconditionError(f"e_{top} A e_{top} has dimension {len(loops)}, expected 1")
    checks: List[SurjectivityCheck] = []
    for X, Y in samples:
        if not in_nonnegative(X):
            raise PreconditionError(f"{X} is not in D>=0")
        if not in_nonpositive(Y):
            raise PreconditionError(f"{Y} is not in D<=0")
        checks.extend(_check_pair(minimal_model(X), minimal_model(Y), top))
    result = SurjectivityResult(top, checks)
    for c in result.failures:
        logger.warning(f"Quotient map not surjective for {c.x} -> {c.y}<{c.k}>[{c.i}]: rank {c.image_rank} of {c.quotient_dimension}")
    return result


def surjectivity_samples(algebra: QuiverAlgebra, width: int = 3, twists: Sequence[int] = (-1, 0, 1),
                         multiplicity: int = 1) -> List[Tuple[ProjComplex, ProjComplex]]:
    """Pairs (X, Y) of two-term indecomposables shifted into [0, width-1] and [-(width-1), 0]."""
    pieces = two_term_indecomposables(algebra, multiplicity)
    left: Dict[str, ProjComplex] = {}
    right: Dict[str, ProjComplex] = {}
    for P, n, k in product(pieces, range(-width - 1, width + 2), twists):
        Z = twist(shift(P, n), k)
        key = str(Z.to_json())
        if Z.min_degree >= 0 and Z.max_degree <= width - 1:
            left.setdefault(key, Z)
        if Z.min_degree >= -(width - 1) and Z.max_degree <= 0:
            right.setdefault(key, Z)
    return [(X, Y) for X in left.values() for Y in right.values()]
