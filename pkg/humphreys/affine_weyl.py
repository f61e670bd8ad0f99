"""
The extended affine Weyl group W_aff = W x| X.

Elements are stored in the normal form v * t_lambda and act on X (x) Q by
x -> v(x + lambda). Lengths use the closed sum over positive roots, with the
sign of the shifted term calibrated once per datum against a direct count
of affine hyperplanes separating the fundamental alcove from its image.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Dict, List, Optional, Sequence, Tuple

from . import cache
from .config import LOG_FORMAT
from .errors import CalibrationError, InputError, InvariantBreach
from .root_data import (
    RootDatum, Weight, WeylElement, add, as_weight, highest_roots, identity,
    is_positive_root, positive_roots, rho, root_lattice_coords, root_reflection,
    scale, simple_reflection, sub, weyl_group,
)

# =============================================================================
# LOGGING
# =============================================================================

logging.basicConfig(level=logging.INFO, format=LOG_FORMAT)
logger = logging.getLogger(__name__)

# =============================================================================
# ELEMENTS
# =============================================================================

CALIBRATION_RADIUS = 2  # translation box used to pin the length convention


@dataclass(frozen=True)
class ExtAffineElement:
    finite: WeylElement
    trans: Weight

    @property
    def datum(self) -> RootDatum:
        return self.finite.datum

    def __mul__(self, other: "ExtAffineElement") -> "ExtAffineElement":
        # (v t_lam)(v' t_mu) = vv' t_{v'^{-1} lam + mu}
        v, lam = self.finite, self.trans
        w, mu = other.finite, other.trans
        return ExtAffineElement(v * w, add(w.inverse().act(lam), mu))

    def inverse(self) -> "ExtAffineElement":
        v_inv = self.finite.inverse()
        return ExtAffineElement(v_inv, scale(-1, self.finite.act(self.trans)))

    def act(self, point: Sequence) -> Tuple:
        return self.finite.act(tuple(a + b for a, b in zip(point, self.trans)))

    def key(self) -> str:
        return f"{self.finite.word}|{self.trans}"

    def __repr__(self) -> str:
        return f"{self.finite!r}*t{self.trans}"


@dataclass(frozen=True)
class CoxeterNormalForm:
    word: Tuple[str, ...]           # affine simple reflection labels, reduced
    omega: ExtAffineElement         # length-zero part, on the right

    @property
    def length(self) -> int:
        return len(self.word)


def make_element(datum: RootDatum, v: Optional[WeylElement] = None, trans: Optional[Sequence[int]] = None) -> ExtAffineElement:
    finite = v if v is not None else identity(datum)
    lam = as_weight(datum, trans) if trans is not None else (0,) * datum.lattice_dim
    return ExtAffineElement(finite, lam)


def translation(datum: RootDatum, weight: Sequence[int]) -> ExtAffineElement:
    return make_element(datum, None, weight)


def identity_element(datum: RootDatum) -> ExtAffineElement:
    return make_element(datum)


# =============================================================================
# LENGTH
# =============================================================================

@lru_cache(maxsize=None)
def interior_point(datum: RootDatum) -> Tuple[Fraction, ...]:
    """A point of the open fundamental alcove off every affine hyperplane."""
    top = max((root.coroot_height for root in positive_roots(datum)), default=0)
    return tuple(Fraction(x, top + 1) for x in rho(datum))


def separating_hyperplanes(w: ExtAffineElement) -> int:
    """Count the hyperplanes <x, alpha^vee> = k between A_0 and w(A_0)."""
    x0 = interior_point(w.datum)
    y = w.act(x0)
    total = 0
    for root in positive_roots(w.datum):
        a = sum(c * x for c, x in zip(root.coroot, x0))
        b = sum(c * x for c, x in zip(root.coroot, y))
        total += abs((b.numerator // b.denominator) - (a.numerator // a.denominator))
    return total


def _closed_form_length(w: ExtAffineElement, shift: int) -> int:
    total = 0
    for root in positive_roots(w.datum):
        value = sum(c * x for c, x in zip(root.coroot, w.trans))
        if is_positive_root(w.datum, w.finite.act(root.vector)):
            total += abs(value)
        else:
            total += abs(value + shift)
    return total


@lru_cache(maxsize=None)
def length_shift(datum: RootDatum) -> int:
    """Sign of the shifted term, pinned by the hyperplane count."""
    samples = []
    radius = CALIBRATION_RADIUS if datum.lattice_dim <= 2 else 1
    for v in weyl_group(datum):
        for lam in product(range(-radius, radius + 1), repeat=datum.lattice_dim):
            samples.append(ExtAffineElement(v, tuple(lam)))
    passing = [shift for shift in (-1, 1)
               if all(_closed_form_length(w, shift) == separating_hyperplanes(w) for w in samples)]
    if not passing:
        raise CalibrationError(f"No length convention matches the hyperplane count for {datum.name}")
    logger.info(f"Length convention for {datum.name}: shifted term uses {passing[0]:+d}")
    return passing[0]


def length(w: ExtAffineElement) -> int:
    return _closed_form_length(w, length_shift(w.datum))


# =============================================================================
# COXETER STRUCTURE
# =============================================================================

@lru_cache(maxsize=None)
def affine_simple_reflections(datum: RootDatum) -> Tuple[Tuple[str, ExtAffineElement], ...]:
    """Finite simple reflections s1..sr followed by one s0 per irreducible component."""
    gens: List[Tuple[str, ExtAffineElement]] = []
    for i in range(1, datum.rank + 1):
        gens.append((f"s{i}", make_element(datum, simple_reflection(datum, i))))
    tops = highest_roots(datum)
    for k, theta in enumerate(tops, start=1):
        label = "s0" if len(tops) == 1 else f"s0.{k}"
        s0 = ExtAffineElement(root_reflection(datum, theta), scale(-1, theta.vector))
        if length(s0) != 1:
            raise InvariantBreach(f"{label} has length {length(s0)} in {datum.name}")
        gens.append((label, s0))
    return tuple(gens)


def left_descent(w: ExtAffineElement) -> Optional[Tuple[str, ExtAffineElement]]:
    current = length(w)
    for label, s in affine_simple_reflections(w.datum):
        if length(s * w) < current:
            return label, s
    return None


def coxeter_normal_form(w: ExtAffineElement) -> CoxeterNormalForm:
    word: List[str] = []
    current = w
    while True:
        descent = left_descent(current)
        if descent is None:
            break
        label, s = descent
        word.append(label)
        current = s * current
    if length(current) != 0:
        raise InvariantBreach(f"Descent stopped at {current!r} of positive length")
    return CoxeterNormalForm(tuple(word), current)


def evaluate(form: CoxeterNormalForm) -> ExtAffineElement:
    gens = dict(affine_simple_reflections(form.omega.datum))
    result = form.omega
    for label in reversed(form.word):
        result = gens[label] * result
    return result


def omega_part(w: ExtAffineElement) -> ExtAffineElement:
    return coxeter_normal_form(w).omega


def diagram_automorphism(omega: ExtAffineElement) -> Dict[str, str]:
    """The permutation of affine simple reflections induced by conjugating with omega."""
    gens = affine_simple_reflections(omega.datum)
    by_element = {s: label for label, s in gens}
    inverse = omega.inverse()
    mapping = {}
    for label, s in gens:
        image = omega * s * inverse
        if image not in by_element:
            raise InvariantBreach(f"{omega!r} does not normalize the affine simple reflections")
        mapping[label] = by_element[image]
    return mapping


def omega_label(w: ExtAffineElement) -> str:
    omega = omega_part(w)
    moved = {k: v for k, v in diagram_automorphism(omega).items() if k != v}
    perm = ",".join(f"{k}->{v}" for k, v in sorted(moved.items()))
    return f"{omega!r}[{perm or 'id'}]"


def same_component(u: ExtAffineElement, w: ExtAffineElement) -> bool:
    """u and w differ by an element of the Coxeter part iff their translations agree modulo the root lattice."""
    return root_lattice_coords(u.datum, sub(u.trans, w.trans)) is not None


# =============================================================================
# BRUHAT ORDER
# =============================================================================

def bruhat_leq(u: ExtAffineElement, w: ExtAffineElement) -> bool:
    """
    Bruhat order on the extended group.

    Elements of different length-zero components are incomparable; inside a
    component the lifting property recursion decides the order.
    """
    if u.datum != w.datum:
        raise InputError("Elements belong to different root data")
    if not same_component(u, w):
        return False
    return _bruhat(u, w)


def _bruhat(u: ExtAffineElement, w: ExtAffineElement) -> bool:
    key = f"{u.datum.key()}|{u.key()}|{w.key()}"
    hit = cache.lookup("bruhat", key)
    if hit is not None:
        return hit
    lu, lw = length(u), length(w)
    if lu > lw:
        result = False
    elif lw == 0:
        result = u == w
    elif lu == 0:
        result = True
    else:
        _, s = left_descent(w)
        su = s * u
        if length(su) < lu:
            result = _bruhat(su, s * w)
        else:
            result = _bruhat(u, s * w)
    cache.store("bruhat", key, result)
    return result


# =============================================================================
# MINIMAL COSET REPRESENTATIVES
# =============================================================================

def min_coset_rep(datum: RootDatum, weight: Sequence[int]) -> ExtAffineElement:
    """w_lambda: the shortest element of W t_lambda."""
    w = translation(datum, weight)
    finite = [make_element(datum, simple_reflection(datum, i)) for i in range(1, datum.rank + 1)]
    improved = True
    while improved:
        improved = False
        current = length(w)
        for s in finite:
            candidate = s * w
            if length(candidate) < current:
                w = candidate
                improved = True
                break
    return w


def weight_leq(datum: RootDatum, lam: Sequence[int], mu: Sequence[int]) -> bool:
    """lambda <= mu iff w_lambda <=_Bru w_mu."""
    return bruhat_leq(min_coset_rep(datum, lam), min_coset_rep(datum, mu))


def linear_extension(datum: RootDatum, weights: Sequence[Sequence[int]]) -> List[Weight]:
    """Sort weights compatibly with weight_leq (Bruhat order strictly increases length)."""
    keyed = [(length(min_coset_rep(datum, lam)), tuple(lam)) for lam in weights]
    return [lam for _, lam in sorted(keyed)]


def coset_elements(datum: RootDatum, weight: Sequence[int]) -> List[ExtAffineElement]:
    t = translation(datum, weight)
    return [make_element(datum, v) * t for v in weyl_group(datum)]
