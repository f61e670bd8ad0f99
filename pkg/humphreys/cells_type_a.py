"""
Two-sided cells of the extended affine symmetric group.

GL_n elements v * t_lambda become periodic bijections of Z. The two-sided
cell of such a bijection is labelled by a partition of n: the shape of the
affine matrix-ball construction, run forward on one period of balls. On a
finite permutation this is the Robinson-Schensted shape. The chain-density
reading of the same shape is kept alongside for comparison.
"""

import logging
from bisect import bisect_left
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Iterable, List, Optional, Sequence, Tuple

from .affine_weyl import ExtAffineElement, min_coset_rep
from .config import LOG_FORMAT
from .errors import CalibrationError, InputError, InvariantBreach
from .root_data import (
    RootDatum, Weight, element_from_matrix, gl, is_dominant, longest_element,
)

# =============================================================================
# LOGGING
# =============================================================================

logging.basicConfig(level=logging.INFO, format=LOG_FORMAT)
logger = logging.getLogger(__name__)

DEEP_ANCHOR_STEP = 8  # lambda_i = -8 (n - i) is deep enough for the zero-orbit anchor

# =============================================================================
# TYPES
# =============================================================================


@dataclass(frozen=True)
class Partition:
    parts: Tuple[int, ...]

    def __post_init__(self):
        if any(p <= 0 for p in self.parts):
            raise InputError(f"Partition parts must be positive: {self.parts}")
        if any(a < b for a, b in zip(self.parts, self.parts[1:])):
            raise InputError(f"Partition parts must be weakly decreasing: {self.parts}")

    @classmethod
    def of(cls, parts: Iterable[int]) -> "Partition":
        return cls(tuple(sorted((int(p) for p in parts if p), reverse=True)))

    @property
    def size(self) -> int:
        return sum(self.parts)

    def transpose(self) -> "Partition":
        if not self.parts:
            return self
        return Partition(tuple(sum(1 for p in self.parts if p > j) for j in range(self.parts[0])))

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def __str__(self) -> str:
        return "(" + ",".join(str(p) for p in self.parts) + ")"


@dataclass(frozen=True)
class AffinePermutation:
    n: int
    window: Tuple[int, ...]

    def __post_init__(self):
        if self.n < 1 or len(self.window) != self.n:
            raise InputError(f"Window {self.window} must have exactly n={self.n} entries")
        if sorted(x % self.n for x in self.window) != list(range(self.n)):
            raise InputError(f"Window {self.window} does not define a bijection of Z: residues repeat mod {self.n}")

    def __call__(self, i: int) -> int:
        q, r = divmod(i - 1, self.n)
        return self.window[r] + q * self.n

    def __mul__(self, other: "AffinePermutation") -> "AffinePermutation":
        if self.n != other.n:
            raise InputError("Affine permutations of different sizes")
        return AffinePermutation(self.n, tuple(self(other(i)) for i in range(1, self.n + 1)))

    def inverse(self) -> "AffinePermutation":
        values = [0] * self.n
        for i, x in enumerate(self.window, start=1):
            q, r = divmod(x - 1, self.n)
            values[r] = i - q * self.n
        return AffinePermutation(self.n, tuple(values))

    @property
    def shift_class(self) -> int:
        """(sum of w(i) - i) / n: the component of the extended group."""
        return sum(x - i for i, x in enumerate(self.window, start=1)) // self.n

    @property
    def spread(self) -> int:
        return max(abs(x - i) for i, x in enumerate(self.window, start=1))

    def length(self) -> int:
        """Inversions (i, j) with 1 <= i <= n, i < j and w(i) > w(j)."""
        reach = 2 * self.spread + self.n
        return sum(1 for i in range(1, self.n + 1) for j in range(i + 1, i + reach + 1) if self(i) > self(j))


def _check_gl(datum: RootDatum) -> int:
    if datum.kind != "GL":
        raise InputError(f"Affine permutations need a GL_n datum, got {datum.name}")
    return datum.lattice_dim


# =============================================================================
# CONVERSIONS
# =============================================================================

def to_affine_permutation(w: ExtAffineElement, n: Optional[int] = None) -> AffinePermutation:
    """i -> sigma_v(i) + n lambda_i for w = v t_lambda."""
    size = _check_gl(w.datum)
    if n is not None and n != size:
        raise InputError(f"Element of GL_{size} cannot be read as an affine permutation of size {n}")
    matrix = w.finite.matrix
    window = []
    for i in range(size):
        sigma = next(r for r in range(size) if matrix[r][i] == 1) + 1
        window.append(sigma + size * w.trans[i])
    return AffinePermutation(size, tuple(window))


def from_affine_permutation(perm: AffinePermutation) -> ExtAffineElement:
    n = perm.n
    sigma = [(x - 1) % n + 1 for x in perm.window]
    trans = tuple((x - s) // n for x, s in zip(perm.window, sigma))
    matrix = tuple(tuple(1 if sigma[c] == r + 1 else 0 for c in range(n)) for r in range(n))
    return ExtAffineElement(element_from_matrix(gl(n), matrix), trans)


def omega_generator(n: int) -> AffinePermutation:
    """The length-zero shift i -> i + 1."""
    return AffinePermutation(n, tuple(range(2, n + 2)))


# =============================================================================
# SHAPES
# =============================================================================

def _rs_rows(sequence: Sequence[int]) -> List[int]:
    rows: List[List[int]] = []
    for x in sequence:
        for row in rows:
            k = bisect_left(row, x)
            if k == len(row):
                row.append(x)
                break
            row[k], x = x, row[k]
        else:
            rows.append([x])
    return [len(row) for row in rows]


def rs_shape(sequence: Sequence[int]) -> Partition:
    """Robinson-Schensted shape of a sequence of distinct integers."""
    if len(set(sequence)) != len(sequence):
        raise InputError("Robinson-Schensted insertion needs distinct entries")
    return Partition(tuple(_rs_rows(sequence)))


def _partial_sums(sequence: Sequence[int], n: int) -> List[int]:
    rows = _rs_rows(sequence)
    sums, running = [], 0
    for k in range(n):
        running += rows[k] if k < len(rows) else 0
        sums.append(running)
    return sums


def chain_density_shape(w: AffinePermutation) -> Partition:
    """
    Partition of n whose k-th partial sum is the number of positions per
    period covered by k increasing subsequences of i -> w(i).

    Measured on two long stretches of the one-line notation; boundary effects
    cancel in the difference. Agrees with ambc_shape.
    """
    n = w.n
    period = -(-w.spread // n) + 1
    short = 2 * period + 4
    gap = 8 * n * n * (period + 1)
    first = _partial_sums([w(i) for i in range(1, n * short + 1)], n)
    second = _partial_sums([w(i) for i in range(1, n * (short + gap) + 1)], n)
    densities = [0] + [round((b - a) / gap) for a, b in zip(first, second)]
    parts = [densities[k] - densities[k - 1] for k in range(1, n + 1)]
    if densities[n] != n or any(a < b for a, b in zip(parts, parts[1:])) or parts[-1] < 0:
        raise InvariantBreach(f"Chain densities {densities[1:]} of {w.window} do not form a partition of {n}")
    return Partition.of(parts)


# =============================================================================
# AFFINE MATRIX-BALL CONSTRUCTION
# =============================================================================

Ball = Tuple[int, int]  # (row, column), row normalised into 1..n


def _normalise(ball: Ball, n: int) -> Ball:
    t = (ball[0] - 1) // n
    return ball[0] - t * n, ball[1] - t * n


def _min_shift(u: Ball, v: Ball, n: int) -> int:
    """Least t with u strictly north-west of v + t(n, n)."""
    return max((u[0] - v[0]) // n, (u[1] - v[1]) // n) + 1


def _longest_walks(balls: Sequence[Ball], n: int, density: int) -> List[List[int]]:
    """
    Heaviest walks between ball classes when stepping south-east to a ball
    t periods further on costs t * density and gains one.
    """
    size = len(balls)
    best = [[1 - density * _min_shift(u, v, n) for v in balls] for u in balls]
    for k in range(size):
        for i in range(size):
            for j in range(size):
                through = best[i][k] + best[k][j]
                if through > best[i][j]:
                    best[i][j] = through
    return best


def _channel_numbering(balls: Sequence[Ball], n: int) -> Tuple[int, List[int]]:
    """
    Channel density m and a numbering d of the balls of one period.

    The ball b + t(n, n) gets d(b) + t m, and every ball is numbered one more
    than the largest number north-west of it. The numbering is read off the
    longest walks from a ball lying on a channel.
    """
    for density in range(1, len(balls) + 1):
        best = _longest_walks(balls, n, density)
        diagonal = [best[i][i] for i in range(len(balls))]
        if max(diagonal) > 0:
            continue
        if 0 not in diagonal:
            raise InvariantBreach(f"Chains through {list(balls)} have non-integral density below {density}")
        channel = diagonal.index(0)
        return density, list(best[channel])
    raise InvariantBreach(f"No channel found through {list(balls)}")


def _forward_step(balls: Sequence[Ball], n: int) -> Tuple[int, List[Ball]]:
    """One matrix-ball step: (row length, balls of the next step)."""
    density, numbers = _channel_numbering(balls, n)
    next_balls: List[Ball] = []
    for k in range(density):
        zigzag: List[Ball] = []
        for (row, col), d in zip(balls, numbers):
            if (k - d) % density == 0:
                t = (k - d) // density
                zigzag.append((row + t * n, col + t * n))
        zigzag.sort()
        for (r1, c1), (r2, c2) in zip(zigzag, zigzag[1:]):
            if c2 >= c1:
                raise InvariantBreach(f"Balls ({r1}, {c1}) and ({r2}, {c2}) share the number {k}")
            next_balls.append(_normalise((r2, c1), n))
    return density, next_balls


def ambc_shape(w: AffinePermutation) -> Partition:
    """
    Partition of n labelling the two-sided cell of w, as the shape of the
    affine matrix-ball construction.

    Each forward step numbers the balls (i, w(i)) along a channel, splits
    them into zigzags of equal number, and replaces every zigzag by its
    inner south-east corners. The number of zigzags per period is the next
    row of the shape.
    """
    n = w.n
    balls: List[Ball] = [(i, x) for i, x in enumerate(w.window, start=1)]
    rows: List[int] = []
    while balls:
        density, balls = _forward_step(balls, n)
        rows.append(density)
    if sum(rows) != n or any(a < b for a, b in zip(rows, rows[1:])):
        raise InvariantBreach(f"Matrix-ball rows {rows} of {w.window} do not form a partition of {n}")
    return Partition(tuple(rows))


# =============================================================================
# ORBIT OF A WEIGHT
# =============================================================================

def _raw_shape(datum: RootDatum, weight: Sequence[int]) -> Partition:
    return ambc_shape(to_affine_permutation(min_coset_rep(datum, weight)))


@lru_cache(maxsize=None)
def orientation(n: int) -> str:
    """'identity' or 'transpose', pinned by the regular and zero-orbit anchors."""
    datum = gl(n)
    regular = Partition((n,))
    zero_orbit = Partition((1,) * n)
    at_zero = _raw_shape(datum, (0,) * n)
    deep = _raw_shape(datum, tuple(-DEEP_ANCHOR_STEP * (n - i) for i in range(1, n + 1)))
    if at_zero == regular and deep == zero_orbit:
        logger.info(f"Cell orientation for GL_{n}: identity")
        return "identity"
    if at_zero.transpose() == regular and deep.transpose() == zero_orbit:
        logger.warning(f"Cell orientation for GL_{n}: anchors come out transposed, using the transpose")
        return "transpose"
    raise CalibrationError(f"Cell anchors for GL_{n} gave {at_zero} and {deep}",
                           {"anchor_zero": list(at_zero.parts), "anchor_deep": list(deep.parts)})


def orbit_of_weight(weight: Sequence[int], n: int) -> Partition:
    datum = gl(n)
    shape = _raw_shape(datum, weight)
    return shape.transpose() if orientation(n) == "transpose" else shape


def canonical_cell_weights(orbit: Partition, n: int, box: int) -> List[Weight]:
    """Dominant weights w_0(lambda) for lambda in the box with orbit_of_weight(lambda) = orbit."""
    if orbit.size != n:
        raise InputError(f"{orbit} is not a partition of {n}")
    datum = gl(n)
    w0 = longest_element(datum)
    found = set()
    for lam in product(range(-box, box + 1), repeat=n):
        image = w0.act(lam)
        if is_dominant(datum, image) and orbit_of_weight(lam, n) == orbit:
            found.add(image)
    return sorted(found, reverse=True)
