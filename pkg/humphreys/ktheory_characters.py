"""
Graded characters of Andersen-Jantzen sheaves.

Characters live in Z[q, q^-1] (x) R(G): a LaurentCharacter stores, for each
dominant weight mu, the Laurent polynomial multiplying the Weyl character
chi(mu). The variable q tracks the internal twist <1>; reports may convert to
t = -q^{-1}, the variable of the twist {1} = <-1>[1].

The multiplicity of chi(mu) in ch A_lambda is the alternating sum

    sum_{w in W} (-1)^{l(w)} P_q(w(mu + rho) - (lambda + rho))

where P_q is the graded partition function (weight q^2 per root). Which half
of the root system P_q runs over is pinned by comparing ch A_0 with the
graded coordinate ring of the nilpotent cone.
"""

import logging
from collections import defaultdict
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, NamedTuple, Optional, Sequence, Tuple

from . import cache
from .affine_weyl import weight_leq
from .config import LOG_FORMAT
from .errors import CalibrationError, InputError, NotInSpanError
from .root_data import (
    RootDatum, Weight, add, as_weight, delta_star, dom, dot_dominant,
    is_dominant, longest_element, positive_roots, rho, root_lattice_coords,
    scale, simple_pairings, sub, weyl_group,
)

# =============================================================================
# LOGGING
# =============================================================================

logging.basicConfig(level=logging.INFO, format=LOG_FORMAT)
logger = logging.getLogger(__name__)

CALIBRATION_TRUNC = 8   # q-degree up to which the root sign is pinned

# =============================================================================
# LAURENT POLYNOMIALS
# =============================================================================


@dataclass(frozen=True)
class LaurentPoly:
    terms: Tuple[Tuple[int, int], ...] = ()     # (exponent, coefficient), sorted, no zeros

    @classmethod
    def of(cls, mapping: Dict[int, int]) -> "LaurentPoly":
        return cls(tuple(sorted((int(e), int(c)) for e, c in mapping.items() if c)))

    @classmethod
    def monomial(cls, exponent: int, coeff: int = 1) -> "LaurentPoly":
        return cls.of({exponent: coeff})

    @classmethod
    def one(cls) -> "LaurentPoly":
        return cls.monomial(0)

    def as_dict(self) -> Dict[int, int]:
        return dict(self.terms)

    def coeff(self, exponent: int) -> int:
        return self.as_dict().get(exponent, 0)

    def is_zero(self) -> bool:
        return not self.terms

    def min_degree(self) -> Optional[int]:
        return self.terms[0][0] if self.terms else None

    def max_degree(self) -> Optional[int]:
        return self.terms[-1][0] if self.terms else None

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        result = self.as_dict()
        for e, c in other.terms:
            result[e] = result.get(e, 0) + c
        return LaurentPoly.of(result)

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly(tuple((e, -c) for e, c in self.terms))

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def __mul__(self, other) -> "LaurentPoly":
        if isinstance(other, int):
            return LaurentPoly.of({e: c * other for e, c in self.terms})
        result: Dict[int, int] = defaultdict(int)
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                result[e1 + e2] += c1 * c2
        return LaurentPoly.of(result)

    __rmul__ = __mul__

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by q^k."""
        return LaurentPoly(tuple((e + k, c) for e, c in self.terms))

    def truncate(self, trunc: int) -> "LaurentPoly":
        return LaurentPoly(tuple((e, c) for e, c in self.terms if e <= trunc))

    def at_one(self) -> int:
        return sum(c for _, c in self.terms)

    def to_json(self) -> Dict[str, int]:
        return {str(e): c for e, c in self.terms}

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"{c}*q^{e}" for e, c in self.terms)


def to_t_variable(poly: LaurentPoly) -> LaurentPoly:
    """Rewrite a polynomial in q as one in t = -q^{-1}: q^k = (-1)^k t^{-k}."""
    return LaurentPoly.of({-e: c * (-1) ** (e % 2) for e, c in poly.terms})


@dataclass(frozen=True)
class TwistLabel:
    """A combined twist <q_exponent>[shift]; {1} is <-1>[1]."""
    q_exponent: int = 0
    shift: int = 0

    def angle(self, n: int = 1) -> "TwistLabel":
        return TwistLabel(self.q_exponent + n, self.shift)

    def brace(self, n: int = 1) -> "TwistLabel":
        return TwistLabel(self.q_exponent - n, self.shift + n)

    def class_factor(self) -> LaurentPoly:
        """Effect on Grothendieck classes: [X<a>[b]] = (-1)^b q^a [X]."""
        return LaurentPoly.monomial(self.q_exponent, (-1) ** (self.shift % 2))


# =============================================================================
# CHARACTERS
# =============================================================================


@dataclass(frozen=True)
class LaurentCharacter:
    datum: RootDatum
    trunc: int
    coeffs: Tuple[Tuple[Weight, LaurentPoly], ...]      # dominant weight -> poly, sorted

    @classmethod
    def build(cls, datum: RootDatum, trunc: int, mapping: Dict[Weight, LaurentPoly]) -> "LaurentCharacter":
        items = []
        for weight, poly in mapping.items():
            poly = poly.truncate(trunc)
            if poly.is_zero():
                continue
            if not is_dominant(datum, weight):
                raise InputError(f"Character coefficient stored at non-dominant weight {weight}")
            items.append((tuple(weight), poly))
        return cls(datum, trunc, tuple(sorted(items, reverse=True)))

    def as_dict(self) -> Dict[Weight, LaurentPoly]:
        return dict(self.coeffs)

    def coeff(self, weight: Sequence[int]) -> LaurentPoly:
        return self.as_dict().get(tuple(weight), LaurentPoly())

    def weights(self) -> List[Weight]:
        return [w for w, _ in self.coeffs]

    def is_zero(self) -> bool:
        return not self.coeffs

    def _combine(self, other: "LaurentCharacter", sign: int) -> "LaurentCharacter":
        if self.datum != other.datum:
            raise InputError("Characters of different root data")
        result = self.as_dict()
        for weight, poly in other.coeffs:
            result[weight] = result.get(weight, LaurentPoly()) + poly * sign
        return LaurentCharacter.build(self.datum, min(self.trunc, other.trunc), result)

    def __add__(self, other: "LaurentCharacter") -> "LaurentCharacter":
        return self._combine(other, 1)

    def __sub__(self, other: "LaurentCharacter") -> "LaurentCharacter":
        return self._combine(other, -1)

    def scale(self, poly: LaurentPoly) -> "LaurentCharacter":
        return LaurentCharacter.build(self.datum, self.trunc, {w: p * poly for w, p in self.coeffs})

    def twist(self, k: int) -> "LaurentCharacter":
        """Apply <k>: multiply by q^k (the truncation moves along)."""
        return LaurentCharacter.build(self.datum, self.trunc + k, {w: p.shift(k) for w, p in self.coeffs})

    def truncate(self, trunc: int) -> "LaurentCharacter":
        return LaurentCharacter.build(self.datum, min(trunc, self.trunc), self.as_dict())

    def min_degree(self) -> Optional[int]:
        degrees = [p.min_degree() for _, p in self.coeffs]
        return min(degrees) if degrees else None

    def to_json(self, t_variable: bool = False) -> List[Dict]:
        rows = []
        for weight, poly in self.coeffs:
            row = {"weight": list(weight), "poly": poly.to_json()}
            if t_variable:
                row["poly_t"] = to_t_variable(poly).to_json()
            rows.append(row)
        return rows


# =============================================================================
# GRADED PARTITION FUNCTION
# =============================================================================

def _check_trunc(trunc: int) -> None:
    if trunc < 0:
        raise InputError(f"Truncation must be non-negative, got {trunc}")


@lru_cache(maxsize=None)
def _count_expressions(datum: RootDatum, index: int, target: Tuple[int, ...], budget: int) -> Tuple[Tuple[int, int], ...]:
    """(number of roots used, ways) for target written with positive roots index.. and at most budget roots."""
    if all(x == 0 for x in target):
        return ((0, 1),)
    roots = positive_roots(datum)
    if index == len(roots) or budget == 0 or any(x < 0 for x in target):
        return ()
    coords = roots[index].simple_coords
    result: Dict[int, int] = defaultdict(int)
    m, remaining = 0, target
    while m <= budget and all(x >= 0 for x in remaining):
        for used, ways in _count_expressions(datum, index + 1, remaining, budget - m):
            result[used + m] += ways
        m += 1
        remaining = tuple(x - c for x, c in zip(remaining, coords))
    return tuple(sorted(result.items()))


def q_kostant(datum: RootDatum, weight: Sequence[int], trunc: int, root_sign: int = 1) -> LaurentPoly:
    """
    Graded partition function P_q(nu), truncated at q-degree ``trunc``.

    Each root used contributes q^2. ``root_sign = -1`` counts expressions by
    negative roots instead.
    """
    _check_trunc(trunc)
    nu = as_weight(datum, weight)
    key = f"{datum.key()}|{nu}|{trunc}|{root_sign}"
    hit = cache.lookup("q_kostant", key)
    if hit is not None:
        return LaurentPoly.of({int(e): c for e, c in hit.items()})
    coords = root_lattice_coords(datum, scale(root_sign, nu))
    if coords is None or any(x < 0 for x in coords):
        poly = LaurentPoly()
    else:
        counts = _count_expressions(datum, 0, coords, trunc // 2)
        poly = LaurentPoly.of({2 * used: ways for used, ways in counts})
    cache.store("q_kostant", key, poly.to_json())
    return poly


# =============================================================================
# ANDERSEN-JANTZEN CHARACTERS
# =============================================================================

def _root_sums(datum: RootDatum, count: int) -> List[Weight]:
    """All sums of at most ``count`` positive roots."""
    layer = {tuple([0] * datum.lattice_dim)}
    seen = set(layer)
    for _ in range(count):
        nxt = set()
        for nu in layer:
            for root in positive_roots(datum):
                candidate = add(nu, root.vector)
                if candidate not in seen:
                    seen.add(candidate)
                    nxt.add(candidate)
        layer = nxt
    return sorted(seen)


def _aj_multiplicities(datum: RootDatum, lam: Weight, trunc: int, root_sign: int) -> Dict[Weight, LaurentPoly]:
    r = rho(datum)
    target = add(lam, r)
    candidates = set()
    for nu in _root_sums(datum, trunc // 2):
        rep = dot_dominant(datum, add(lam, scale(root_sign, nu)))
        if rep is not None:
            candidates.add(rep[0])
    mapping: Dict[Weight, LaurentPoly] = {}
    for mu in candidates:
        shifted = add(mu, r)
        total = LaurentPoly()
        for w in weyl_group(datum):
            term = q_kostant(datum, sub(w.act(shifted), target), trunc, root_sign)
            total = total + term * ((-1) ** w.length)
        mapping[mu] = total
    return mapping


def aj_character(datum: RootDatum, weight: Sequence[int], trunc: int,
                 root_sign: Optional[int] = None) -> LaurentCharacter:
    """ch A_lambda in the Weyl-character basis, up to q-degree ``trunc``."""
    _check_trunc(trunc)
    lam = as_weight(datum, weight)
    sign = calibrate_root_sign(datum) if root_sign is None else root_sign
    return LaurentCharacter.build(datum, trunc, _aj_multiplicities(datum, lam, trunc, sign))


def _require_dominant(datum: RootDatum, lam: Weight) -> None:
    if not is_dominant(datum, lam):
        raise InputError(f"Weight {lam} is not dominant")


def nabla_bar_character(datum: RootDatum, weight: Sequence[int], trunc: int) -> LaurentCharacter:
    """A_lambda<-delta*_lambda>."""
    lam = as_weight(datum, weight)
    _require_dominant(datum, lam)
    return aj_character(datum, lam, trunc).twist(-delta_star(datum, lam))


def delta_bar_character(datum: RootDatum, weight: Sequence[int], trunc: int) -> LaurentCharacter:
    """A_{w_0 lambda}<delta*_lambda>."""
    lam = as_weight(datum, weight)
    _require_dominant(datum, lam)
    w0_lam = longest_element(datum).act(lam)
    return aj_character(datum, w0_lam, trunc).twist(delta_star(datum, lam))


def pushforward_label(datum: RootDatum, weight: Sequence[int]) -> Tuple[Weight, int]:
    """(dom lambda, delta*_lambda): the pushforward of the lambda-labelled object is nabla_bar_{dom}<delta*>."""
    lam = as_weight(datum, weight)
    return dom(datum, lam), delta_star(datum, lam)


def pushforward_character(datum: RootDatum, weight: Sequence[int], trunc: int) -> LaurentCharacter:
    """nabla_bar_{dom lambda}<delta*_lambda>; for dominant lambda this is ch A_lambda."""
    target, twist = pushforward_label(datum, weight)
    return nabla_bar_character(datum, target, trunc).twist(twist)


def leading_twist(datum: RootDatum, weight: Sequence[int]) -> int:
    """q-degree at which chi(dom nu) first appears in ch A_nu: twice the height of dom nu - nu."""
    nu = as_weight(datum, weight)
    coords = root_lattice_coords(datum, sub(dom(datum, nu), nu))
    return 2 * sum(coords)


# =============================================================================
# WEYL CHARACTERS AND THE FREE MODULE
# =============================================================================

def weights_of(datum: RootDatum, lam: Weight) -> List[Weight]:
    """All weights of V(lambda), generated by descending along simple root strings."""
    seen = {lam}
    queue = [lam]
    while queue:
        mu = queue.pop()
        for i, k in enumerate(simple_pairings(datum, mu)):
            for j in range(1, k + 1):
                nxt = sub(mu, scale(j, datum.simple_roots[i]))
                if nxt not in seen:
                    seen.add(nxt)
                    queue.append(nxt)
    return sorted(seen, reverse=True)


def weyl_character(datum: RootDatum, weight: Sequence[int]) -> Dict[Weight, int]:
    """Weight multiplicities of V(lambda) from the alternating Kostant sum at q = 1."""
    lam = as_weight(datum, weight)
    _require_dominant(datum, lam)
    r = rho(datum)
    shifted = add(lam, r)
    result: Dict[Weight, int] = {}
    dominant_mults: Dict[Weight, int] = {}
    for mu in weights_of(datum, lam):
        d = dom(datum, mu)
        if d not in dominant_mults:
            coords = root_lattice_coords(datum, sub(lam, d))
            budget = 2 * sum(coords)
            total = 0
            for w in weyl_group(datum):
                total += (-1) ** w.length * q_kostant(datum, sub(w.act(shifted), add(d, r)), budget).at_one()
            dominant_mults[d] = total
        if dominant_mults[d]:
            result[mu] = dominant_mults[d]
    return result


def _tensor_weyl(datum: RootDatum, mu: Weight, weights: Dict[Weight, int]) -> Dict[Weight, int]:
    """chi(mu) * (sum m_nu e^nu) in the Weyl basis (Brauer-Klimyk)."""
    result: Dict[Weight, int] = defaultdict(int)
    for nu, m in weights.items():
        rep = dot_dominant(datum, add(mu, nu))
        if rep is not None:
            result[rep[0]] += rep[1] * m
    return result


def free_module_character(datum: RootDatum, weight: Sequence[int], trunc: int) -> LaurentCharacter:
    """ch(O_N (x) M(lambda)) = ch A_0 * chi(lambda)."""
    lam = as_weight(datum, weight)
    weights = weyl_character(datum, lam)
    base = aj_character(datum, (0,) * datum.lattice_dim, trunc)
    mapping: Dict[Weight, LaurentPoly] = defaultdict(LaurentPoly)
    for mu, poly in base.coeffs:
        for target, m in _tensor_weyl(datum, mu, weights).items():
            if m:
                mapping[target] = mapping[target] + poly * m
    return LaurentCharacter.build(datum, trunc, dict(mapping))


def verify_aj_sum_identity(datum: RootDatum, weight: Sequence[int], trunc: int) -> bool:
    """ch(O_N (x) M(lambda)) = sum over weights nu of M(lambda), with multiplicity, of ch A_nu."""
    lam = as_weight(datum, weight)
    lhs = free_module_character(datum, lam, trunc)
    rhs = LaurentCharacter.build(datum, trunc, {})
    for nu, m in weyl_character(datum, lam).items():
        rhs = rhs + aj_character(datum, nu, trunc).scale(LaurentPoly.monomial(0, m))
    holds = lhs == rhs
    if not holds:
        logger.warning(f"Sum identity fails for {datum.name}, lambda={lam}, trunc={trunc}")
    return holds


# =============================================================================
# CALIBRATION
# =============================================================================

def invariant_degrees(datum: RootDatum) -> List[int]:
    """Degrees of the basic invariants: exponents + 1, plus a 1 per central direction."""
    heights: Dict[int, int] = defaultdict(int)
    for root in positive_roots(datum):
        heights[root.height] += 1
    degrees = []
    for k in sorted(heights):
        degrees.extend([k + 1] * (heights[k] - heights.get(k + 1, 0)))
    return sorted(degrees + [1] * (datum.lattice_dim - datum.rank))


def _weight_multiset_to_weyl(datum: RootDatum, weights: Dict[Weight, LaurentPoly], trunc: int) -> LaurentCharacter:
    r = rho(datum)
    group = weyl_group(datum)
    mapping: Dict[Weight, LaurentPoly] = {}
    for mu in weights:
        if not is_dominant(datum, mu):
            continue
        total = LaurentPoly()
        for w in group:
            total = total + weights.get(sub(add(mu, r), w.act(r)), LaurentPoly()) * ((-1) ** w.length)
        mapping[mu] = total
    return LaurentCharacter.build(datum, trunc, mapping)


def nilpotent_cone_character(datum: RootDatum, trunc: int) -> LaurentCharacter:
    """ch S(g*) * prod (1 - q^{2 d_i}), generators of S(g*) in q-degree 2."""
    _check_trunc(trunc)
    generators = [root.vector for root in positive_roots(datum)]
    generators += [scale(-1, v) for v in generators]
    generators += [tuple([0] * datum.lattice_dim)] * datum.lattice_dim
    series: Dict[Weight, Dict[int, int]] = {tuple([0] * datum.lattice_dim): {0: 1}}
    for g in generators:
        updated: Dict[Weight, Dict[int, int]] = defaultdict(lambda: defaultdict(int))
        for weight, poly in series.items():
            for e, c in poly.items():
                k = 0
                while e + 2 * k <= trunc:
                    updated[add(weight, scale(k, g))][e + 2 * k] += c
                    k += 1
        series = updated
    factor = LaurentPoly.one()
    for d in invariant_degrees(datum):
        factor = factor * (LaurentPoly.one() - LaurentPoly.monomial(2 * d))
    weights = {w: (LaurentPoly.of(p) * factor).truncate(trunc) for w, p in series.items()}
    return _weight_multiset_to_weyl(datum, weights, trunc)


@lru_cache(maxsize=None)
def calibrate_root_sign(datum: RootDatum, trunc: int = CALIBRATION_TRUNC) -> int:
    """+1 when the partition function runs over positive roots, -1 for negative roots."""
    oracle = nilpotent_cone_character(datum, trunc)
    zero = (0,) * datum.lattice_dim
    passing = [sign for sign in (1, -1)
               if LaurentCharacter.build(datum, trunc, _aj_multiplicities(datum, zero, trunc, sign)) == oracle]
    if not passing:
        raise CalibrationError(f"Neither root sign reproduces the nilpotent cone character of {datum.name}",
                               {"trunc": trunc})
    if passing[0] == 1:
        logger.info(f"Partition function for {datum.name} runs over positive roots")
    else:
        logger.warning(f"Partition function for {datum.name} runs over negative roots")
    return passing[0]


# =============================================================================
# TRIANGULAR EXPANSION
# =============================================================================


class Labelled(NamedTuple):
    label: Weight
    character: LaurentCharacter


@dataclass(frozen=True)
class TriangularResult:
    matrix: Tuple[Tuple[LaurentPoly, ...], ...]     # matrix[i][j]: coefficient of basis j in target i
    triangular: bool
    unitriangular: bool
    trunc: int
    diagonal: Tuple[LaurentPoly, ...] = ()          # coefficient of the basis element sharing each target label


def _lead(character: LaurentCharacter) -> Tuple[Weight, int, int]:
    degree = character.min_degree()
    if degree is None:
        raise InputError("Basis character is zero")
    at_degree = [(w, p.coeff(degree)) for w, p in character.coeffs if p.coeff(degree)]
    if len(at_degree) != 1:
        raise InputError(f"Basis character has {len(at_degree)} weights in its lowest degree {degree}")
    weight, c = at_degree[0]
    return weight, degree, c


def _expand(target: LaurentCharacter, basis: Sequence[Labelled], leads: Dict[Weight, Tuple[int, int, int]],
            bound: int) -> Tuple[List[LaurentPoly], int]:
    coefficients = [LaurentPoly() for _ in basis]
    residual = target.truncate(bound)
    while not residual.is_zero():
        degree = residual.min_degree()
        if degree > bound:
            break
        for weight, poly in list(residual.coeffs):
            a = poly.coeff(degree)
            if not a:
                continue
            if weight not in leads:
                raise NotInSpanError(f"Weight {weight} at q^{degree} is not the lead of any basis element",
                                     {"weight": list(weight), "degree": degree})
            j, lead_degree, c = leads[weight]
            if a % c:
                raise NotInSpanError(f"Coefficient {a} is not divisible by the lead coefficient {c}")
            step = LaurentPoly.monomial(degree - lead_degree, a // c)
            coefficients[j] = coefficients[j] + step
            bound = min(bound, basis[j].character.trunc + degree - lead_degree)
            residual = (residual - basis[j].character.scale(step)).truncate(bound)
        residual = residual.truncate(bound)
    return coefficients, bound


def triangular_expansion(datum: RootDatum, targets: Sequence[Labelled], basis: Sequence[Labelled]) -> TriangularResult:
    """
    Coefficients of each target in the basis, solved degree by degree in q.

    Each basis element must have a single weight in its lowest q-degree; that
    weight is its lead. Triangular means every nonzero coefficient of basis
    mu in target lambda has mu <= lambda. Unitriangular adds that every
    target has a basis element with its label, with coefficient exactly 1.
    """
    leads: Dict[Weight, Tuple[int, int, int]] = {}
    for j, item in enumerate(basis):
        weight, degree, c = _lead(item.character)
        if weight in leads:
            raise InputError(f"Two basis elements share the lead weight {weight}")
        leads[weight] = (j, degree, c)
    bound = min([t.character.trunc for t in targets] + [b.character.trunc for b in basis])
    rows = []
    for target in targets:
        coefficients, used = _expand(target.character, basis, leads, bound)
        bound = min(bound, used)
        rows.append(coefficients)
    rows = [[p.truncate(bound) for p in row] for row in rows]
    triangular = True
    diagonal = []
    for i, target in enumerate(targets):
        diagonal.append(LaurentPoly())
        for j, item in enumerate(basis):
            poly = rows[i][j]
            if item.label == target.label:
                diagonal[i] = poly
            elif not poly.is_zero() and not weight_leq(datum, item.label, target.label):
                triangular = False
    unitriangular = triangular and all(poly == LaurentPoly.one() for poly in diagonal)
    if triangular and not unitriangular:
        logger.info(f"Triangular expansion has diagonal {[str(poly) for poly in diagonal]}")
    return TriangularResult(tuple(tuple(row) for row in rows), triangular, unitriangular, bound, tuple(diagonal))
