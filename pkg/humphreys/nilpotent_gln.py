"""
Nilpotent orbits of gl_n, labelled by partitions (Jordan block sizes).

Orbit closures are cut out by rank conditions on matrix powers: X lies in
the closure of the orbit of lambda iff rank(X^k) <= n - (lambda'_1 + ... +
lambda'_k) for every k. The determinantal generators of the closure ideal
are the (r_k + 1)-minors of X^k.
"""

import logging
from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Iterable, List, Sequence, Tuple

from sympy import Matrix, Rational, sympify

from .cells_type_a import Partition
from .config import LOG_FORMAT
from .errors import InputError, InvariantBreach

# =============================================================================
# LOGGING
# =============================================================================

logging.basicConfig(level=logging.INFO, format=LOG_FORMAT)
logger = logging.getLogger(__name__)

MAX_LISTED_MINORS = 20000  # generators() refuses to enumerate more


@dataclass(frozen=True)
class RankCondition:
    power: int
    max_rank: int
    generator_count: int        # binomial(n, r_k + 1)^2
    vacuous_on_N: bool          # every nilpotent matrix satisfies it
    implied: bool               # follows from the conditions of lower power


@dataclass(frozen=True)
class RankConditions:
    n: int
    partition: Partition
    conditions: Tuple[RankCondition, ...]

    def nontrivial(self) -> List[RankCondition]:
        return [c for c in self.conditions if not c.vacuous_on_N and not c.implied]


def transpose(partition: Partition) -> Partition:
    return partition.transpose()


def partitions_of(n: int) -> List[Partition]:
    """All partitions of n, in reverse lexicographic order."""
    result: List[Partition] = []

    def build(remaining: int, cap: int, prefix: List[int]) -> None:
        if remaining == 0:
            result.append(Partition(tuple(prefix)))
            return
        for part in range(min(remaining, cap), 0, -1):
            build(remaining - part, part, prefix + [part])

    build(n, n, [])
    return result


def dominance_leq(mu: Partition, lam: Partition) -> bool:
    if mu.size != lam.size:
        raise InputError(f"Cannot compare partitions of {mu.size} and {lam.size}")
    a = b = 0
    for k in range(max(len(mu), len(lam))):
        a += mu.parts[k] if k < len(mu) else 0
        b += lam.parts[k] if k < len(lam) else 0
        if a > b:
            return False
    return True


def orbit_dim(partition: Partition) -> int:
    n = partition.size
    return n * n - sum(c * c for c in partition.transpose().parts)


def jordan_rank(partition: Partition, k: int) -> int:
    """rank(J_lambda^k) = n - (lambda'_1 + ... + lambda'_k)."""
    return sum(max(p - k, 0) for p in partition.parts)


def levi_blocks(subset: Iterable[int], n: int) -> List[int]:
    """Block sizes of the Levi of the parabolic generated by ``subset``."""
    chosen = set(subset)
    if any(not 1 <= s <= n - 1 for s in chosen):
        raise InputError(f"Simple reflections of GL_{n} are s1..s{n - 1}, got {sorted(chosen)}")
    blocks, size = [], 1
    for j in range(1, n):
        if j in chosen:
            size += 1
        else:
            blocks.append(size)
            size = 1
    blocks.append(size)
    return blocks


def richardson_orbit(subset: Iterable[int], n: int) -> Partition:
    """Partition of the orbit whose closure is G . n_I."""
    blocks = levi_blocks(subset, n)
    orbit = Partition.of(blocks).transpose()
    nilradical = n * (n - 1) // 2 - sum(b * (b - 1) // 2 for b in blocks)
    if 2 * nilradical != orbit_dim(orbit):
        raise InvariantBreach(f"2 dim n_I = {2 * nilradical} but dim C = {orbit_dim(orbit)} for blocks {blocks}")
    return orbit


def rank_conditions(partition: Partition) -> RankConditions:
    """
    Rank conditions for the closure of the orbit of ``partition``, k = 1..lambda_1.

    A condition is flagged ``vacuous_on_N`` when every nilpotent n x n matrix
    meets it, and ``implied`` when the conditions of lower power already force it.
    """
    n = partition.size
    top = partition.parts[0] if partition.parts else 0
    everyone = partitions_of(n)
    conditions = []
    for k in range(1, top + 1):
        r = jordan_rank(partition, k)
        vacuous = all(jordan_rank(mu, k) <= r for mu in everyone)
        survivors = [mu for mu in everyone
                     if all(jordan_rank(mu, j) <= jordan_rank(partition, j) for j in range(1, k))]
        implied = k > 1 and all(jordan_rank(mu, k) <= r for mu in survivors)
        conditions.append(RankCondition(k, r, comb(n, r + 1) ** 2, vacuous, implied))
    return RankConditions(n, partition, tuple(conditions))


def jordan_matrix(partition: Partition) -> List[List[int]]:
    n = partition.size
    matrix = [[0] * n for _ in range(n)]
    start = 0
    for part in partition.parts:
        for i in range(start, start + part - 1):
            matrix[i][i + 1] = 1
        start += part
    return matrix


def generators(partition: Partition, k: int) -> List[Tuple[Tuple[int, ...], Tuple[int, ...]]]:
    """Row and column index sets (0-based) of every (r_k + 1)-minor of X^k."""
    n = partition.size
    size = jordan_rank(partition, k) + 1
    count = comb(n, size) ** 2
    if count > MAX_LISTED_MINORS:
        raise InputError(f"{count} minors is too many to list (limit {MAX_LISTED_MINORS})")
    subsets = list(combinations(range(n), size))
    return [(rows, cols) for rows in subsets for cols in subsets]


def _as_matrix(rows: Sequence[Sequence]) -> Matrix:
    n = len(rows)
    if n == 0 or any(len(row) != n for row in rows):
        raise InputError("Point must be a non-empty square matrix")
    try:
        return Matrix([[Rational(sympify(x)) for x in row] for row in rows])
    except (TypeError, ValueError) as e:
        raise InputError(f"Matrix entries must be integers or rationals: {e}")


def contains_point(partition: Partition, rows: Sequence[Sequence]) -> bool:
    """Exact membership of X in the closure of the orbit of ``partition``."""
    X = _as_matrix(rows)
    n = X.shape[0]
    if n != partition.size:
        raise InputError(f"Matrix is {n}x{n} but the partition has size {partition.size}")
    if not (X ** n).is_zero_matrix:
        return False
    power = Matrix.eye(n)
    for k in range(1, n + 1):
        power = power * X
        if power.rank() > jordan_rank(partition, k):
            return False
    return True
