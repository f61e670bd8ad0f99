"""
p-dilated alcove geometry.

The fundamental alcove is C_p = {0 < <x + rho, alpha^vee> < p}. Alcoves are
labelled by their wall offsets n_alpha; a weight belongs to the half-open
lower closure n_alpha p <= <x + rho, alpha^vee> < (n_alpha + 1) p, so the
lower closures tile X. That inequality lives in ``_offset`` only.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import List, NamedTuple, Optional, Sequence, Tuple

from .affine_weyl import ExtAffineElement, interior_point, min_coset_rep
from .config import LOG_FORMAT
from .errors import BoxExhausted, InputError
from .root_data import (
    RootDatum, Weight, add, as_weight, is_dominant, positive_roots, rho,
    scale, sub, varsigma, weyl_group,
)

# =============================================================================
# LOGGING
# =============================================================================

logging.basicConfig(level=logging.INFO, format=LOG_FORMAT)
logger = logging.getLogger(__name__)

LOWER_CLOSURE_CONVENTION = "n_alpha*p <= <x+rho, alpha^vee> < (n_alpha+1)*p"


@dataclass(frozen=True)
class AlcovePosition:
    element: ExtAffineElement
    wall_offsets: Tuple[int, ...]       # one entry per positive root, in positive_roots order


class BlockLabel(NamedTuple):
    weight: Weight
    element: ExtAffineElement
    exact: bool                         # mu == w_lambda ._p 0


class BlockLabels(NamedTuple):
    labels: List[BlockLabel]
    box: int


def _check_p(p: int) -> None:
    if p < 2:
        raise InputError(f"p must be at least 2, got {p}")


def _offset(value, p: int) -> int:
    return value // p if isinstance(value, int) else (value / p).numerator // (value / p).denominator


# =============================================================================
# DOT ACTION
# =============================================================================

def dot_act_p(w: ExtAffineElement, weight: Sequence[int], p: int) -> Weight:
    """v(lambda + rho + p nu) - rho for w = v t_nu."""
    _check_p(p)
    datum = w.datum
    lam = as_weight(datum, weight)
    r = rho(datum)
    return sub(w.finite.act(add(add(lam, r), scale(p, w.trans))), r)


def weight_offsets(datum: RootDatum, weight: Sequence[int], p: int) -> Tuple[int, ...]:
    shifted = add(as_weight(datum, weight), rho(datum))
    return tuple(_offset(sum(c * x for c, x in zip(root.coroot, shifted)), p) for root in positive_roots(datum))


def element_offsets(w: ExtAffineElement) -> Tuple[int, ...]:
    """Wall offsets of w ._p C_p (independent of p)."""
    image = w.act(interior_point(w.datum))
    offsets = []
    for root in positive_roots(w.datum):
        value = sum(c * x for c, x in zip(root.coroot, image))
        offsets.append(value.numerator // value.denominator)
    return tuple(offsets)


def _solve_simple_pairings(datum: RootDatum, values: Sequence[int]) -> Weight:
    """Some nu with <alpha_i^vee, nu> = values[i]."""
    if datum.kind == "GL":
        n = datum.lattice_dim
        nu = [0] * n
        for i in range(n - 2, -1, -1):
            nu[i] = nu[i + 1] + values[i]
        return tuple(nu)
    return tuple(values)


def alcove_element(datum: RootDatum, weight: Sequence[int], p: int) -> ExtAffineElement:
    """An element w with weight in the lower closure of w ._p C_p."""
    _check_p(p)
    x0 = interior_point(datum)
    z = tuple((Fraction(a) + b + c) / p for a, b, c in zip(as_weight(datum, weight), rho(datum), x0))
    for v in weyl_group(datum):
        u = v.inverse().act(z)
        floors = [sum(c * x for c, x in zip(coroot, u)) for coroot in datum.simple_coroots]
        nu = _solve_simple_pairings(datum, [f.numerator // f.denominator for f in floors])
        w = ExtAffineElement(v, nu)
        if lower_closure_contains(w, weight, p):
            return w
    raise InputError(f"No alcove found for {weight} at p={p}")


def alcove_of(datum: RootDatum, weight: Sequence[int], p: int) -> AlcovePosition:
    _check_p(p)
    w = alcove_element(datum, weight, p)
    return AlcovePosition(w, weight_offsets(datum, weight, p))


def lower_closure_contains(w: ExtAffineElement, weight: Sequence[int], p: int) -> bool:
    _check_p(p)
    return element_offsets(w) == weight_offsets(w.datum, weight, p)


def fundamental_alcove_contains(datum: RootDatum, weight: Sequence[int], p: int) -> bool:
    """Open alcove test 0 < <lambda + rho, alpha^vee> < p."""
    shifted = add(as_weight(datum, weight), rho(datum))
    return all(0 < sum(c * x for c, x in zip(root.coroot, shifted)) < p for root in positive_roots(datum))


def steinberg_weight(datum: RootDatum, p: int) -> Weight:
    """(p - 1) varsigma_S."""
    return scale(p - 1, varsigma(datum, range(1, datum.rank + 1)))


# =============================================================================
# BLOCK LABELS
# =============================================================================

def default_box(datum: RootDatum, weight: Sequence[int], p: int) -> int:
    shifted = add(as_weight(datum, weight), rho(datum))
    top = max((sum(c * x for c, x in zip(root.coroot, shifted)) for root in positive_roots(datum)), default=0)
    return -(-top // p) + 1


def block_labels(datum: RootDatum, weight: Sequence[int], p: int,
                 box: Optional[int] = None, exact_only: bool = False) -> BlockLabels:
    """
    All lambda in the box whose w_lambda ._p C_p has mu in its lower closure.

    Args:
        datum: the root datum
        weight: dominant mu
        p: characteristic
        box: bound on |coordinate| of lambda (default from the alcove offsets of mu)
        exact_only: keep only labels with mu = w_lambda ._p 0

    Raises:
        BoxExhausted: nothing found inside the box
    """
    _check_p(p)
    mu = as_weight(datum, weight)
    if not is_dominant(datum, mu):
        raise InputError(f"Weight {mu} is not dominant")
    bound = default_box(datum, mu, p) if box is None else box
    target = weight_offsets(datum, mu, p)
    zero = (0,) * datum.lattice_dim
    labels: List[BlockLabel] = []
    for lam in product(range(-bound, bound + 1), repeat=datum.lattice_dim):
        w = min_coset_rep(datum, lam)
        if element_offsets(w) != target:
            continue
        exact = dot_act_p(w, zero, p) == mu
        if exact_only and not exact:
            continue
        labels.append(BlockLabel(tuple(lam), w, exact))
    if not labels:
        raise BoxExhausted(f"No block label for {mu} at p={p} within box {bound}",
                           {"mu": list(mu), "p": p, "box": bound})
    logger.info(f"{len(labels)} block labels for mu={mu}, p={p}, box={bound}")
    return BlockLabels(labels, bound)
