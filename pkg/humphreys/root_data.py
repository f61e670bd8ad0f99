"""
Root data, weight lattices and finite Weyl groups.

Key Features:
1. BUILT-IN TYPES: GL_n on X = Z^n and SL_n on its weight lattice
2. CUSTOM CARTAN MATRICES: any finite-type matrix, checked by reflection closure
3. WEYL GROUP: enumerated once per datum, elements carry reduced words
4. DOMINANCE: greedy descent for dom(lambda), delta_lambda and delta*_lambda

All values are immutable; integers only, no floating point anywhere.
"""

import logging
from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, Iterable, List, NamedTuple, Optional, Sequence, Tuple

from sympy import QQ

from .config import LOG_FORMAT, MAX_ROOTS
from .errors import InputError
from .linalg import solve

# =============================================================================
# LOGGING
# =============================================================================

logging.basicConfig(level=logging.INFO, format=LOG_FORMAT)
logger = logging.getLogger(__name__)

# =============================================================================
# TYPES
# =============================================================================

Weight = Tuple[int, ...]
Coroot = Tuple[int, ...]
Matrix = Tuple[Tuple[int, ...], ...]

MAX_WEYL_ORDER = 50000  # refuse to enumerate anything larger


@dataclass(frozen=True)
class Root:
    vector: Weight          # coordinates in X
    coroot: Coroot          # coordinates in the dual lattice
    simple_coords: Tuple[int, ...]
    coroot_simple_coords: Tuple[int, ...]

    @property
    def height(self) -> int:
        return sum(self.simple_coords)

    @property
    def coroot_height(self) -> int:
        return sum(self.coroot_simple_coords)


@dataclass(frozen=True)
class RootDatum:
    kind: str                       # "GL" | "SL" | "custom"
    rank: int
    cartan: Matrix                  # cartan[s][t] = <alpha_s^vee, alpha_t>
    lattice_dim: int
    simple_roots: Matrix
    simple_coroots: Matrix
    n: Optional[int] = None         # matrix size for GL_n / SL_n

    def __post_init__(self):
        _check_cartan(self.cartan)
        if len(self.cartan) != self.rank:
            raise InputError(f"Cartan matrix has {len(self.cartan)} rows, expected rank {self.rank}")
        for vectors, what in ((self.simple_roots, "simple root"), (self.simple_coroots, "simple coroot")):
            if len(vectors) != self.rank or any(len(v) != self.lattice_dim for v in vectors):
                raise InputError(f"Each {what} must have {self.lattice_dim} coordinates")
        for s in range(self.rank):
            for t in range(self.rank):
                if _dot(self.simple_coroots[s], self.simple_roots[t]) != self.cartan[s][t]:
                    raise InputError(f"Pairing <alpha_{s + 1}^vee, alpha_{t + 1}> disagrees with the Cartan matrix")

    @property
    def name(self) -> str:
        if self.kind in ("GL", "SL"):
            return f"{self.kind}_{self.n}"
        return "custom(" + ";".join(",".join(str(x) for x in row) for row in self.cartan) + ")"

    def key(self) -> str:
        """Stable string used in cache keys and reports."""
        return self.name


class DominantData(NamedTuple):
    dom: Weight
    v: "WeylElement"
    delta: int


# =============================================================================
# CONSTRUCTORS
# =============================================================================

def _dot(a: Sequence[int], b: Sequence[int]) -> int:
    return sum(x * y for x, y in zip(a, b))


def _check_cartan(cartan: Matrix) -> None:
    size = len(cartan)
    for i, row in enumerate(cartan):
        if len(row) != size:
            raise InputError("Cartan matrix must be square")
        if row[i] != 2:
            raise InputError(f"Cartan diagonal entry ({i + 1},{i + 1}) must be 2")
        for j, a in enumerate(row):
            if i != j and a > 0:
                raise InputError(f"Cartan off-diagonal entry ({i + 1},{j + 1}) must be <= 0")
            if i != j and (a == 0) != (cartan[j][i] == 0):
                raise InputError(f"Cartan entries ({i + 1},{j + 1}) and ({j + 1},{i + 1}) must vanish together")


def type_a_cartan(rank: int) -> Matrix:
    return tuple(
        tuple(2 if i == j else (-1 if abs(i - j) == 1 else 0) for j in range(rank))
        for i in range(rank)
    )


@lru_cache(maxsize=None)
def gl(n: int) -> RootDatum:
    """GL_n with X = Z^n and simple roots e_i - e_{i+1}."""
    if n < 1:
        raise InputError("GL_n needs n >= 1")
    simple = tuple(
        tuple(1 if k == i else (-1 if k == i + 1 else 0) for k in range(n))
        for i in range(n - 1)
    )
    return RootDatum("GL", n - 1, type_a_cartan(n - 1), n, simple, simple, n)


@lru_cache(maxsize=None)
def sl(n: int) -> RootDatum:
    """SL_n on its weight lattice (coordinates = pairings with simple coroots)."""
    if n < 2:
        raise InputError("SL_n needs n >= 2")
    datum = from_cartan(type_a_cartan(n - 1))
    return RootDatum("SL", datum.rank, datum.cartan, datum.lattice_dim,
                     datum.simple_roots, datum.simple_coroots, n)


def from_cartan(cartan: Sequence[Sequence[int]]) -> RootDatum:
    """Simply connected datum for a Cartan matrix, in fundamental-weight coordinates."""
    matrix = tuple(tuple(int(x) for x in row) for row in cartan)
    rank = len(matrix)
    _check_cartan(matrix)
    simple_roots = tuple(tuple(matrix[i][j] for i in range(rank)) for j in range(rank))
    simple_coroots = tuple(tuple(1 if k == i else 0 for k in range(rank)) for i in range(rank))
    datum = RootDatum("custom", rank, matrix, rank, simple_roots, simple_coroots)
    positive_roots(datum)  # rejects non-finite types early
    return datum


def parse_datum(text: str) -> RootDatum:
    """
    Parse the key-value root datum format.

    Lines are ``key = value``; ``#`` starts a comment. Keys:
        type   GL | SL | custom
        rank   matrix size n for GL_n / SL_n
        cartan rows separated by ';', entries by ',' (custom only)
    """
    values: Dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise InputError(f"Line {lineno}: expected 'key = value'")
        key, value = (part.strip() for part in line.split("=", 1))
        values[key.lower()] = value
    kind = values.get("type", "").upper()
    if kind in ("GL", "SL"):
        try:
            n = int(values["rank"])
        except (KeyError, ValueError):
            raise InputError(f"{kind} datum needs an integer 'rank'")
        return gl(n) if kind == "GL" else sl(n)
    if kind == "CUSTOM":
        if "cartan" not in values:
            raise InputError("custom datum needs a 'cartan' key")
        try:
            rows = [[int(x) for x in row.split(",")] for row in values["cartan"].split(";") if row.strip()]
        except ValueError:
            raise InputError("cartan entries must be integers")
        datum = from_cartan(rows)
        if "rank" in values and int(values["rank"]) != datum.rank:
            raise InputError("rank disagrees with the cartan matrix")
        return datum
    raise InputError(f"Unknown datum type '{values.get('type', '')}'")


def load_datum(path: str) -> RootDatum:
    with open(path, 'r', encoding='utf-8') as f:
        return parse_datum(f.read())


def make_datum(kind: str, n: Optional[int] = None, cartan: Optional[str] = None) -> RootDatum:
    """Build a datum from CLI-style arguments."""
    kind = kind.upper()
    if kind == "GL":
        return gl(int(n or 2))
    if kind == "SL":
        return sl(int(n or 2))
    if kind == "CUSTOM" and cartan:
        return parse_datum(f"type = custom\ncartan = {cartan}")
    raise InputError(f"Cannot build a datum of type '{kind}'")


# =============================================================================
# WEIGHTS
# =============================================================================

def as_weight(datum: RootDatum, coords: Iterable[int]) -> Weight:
    weight = tuple(int(x) for x in coords)
    if len(weight) != datum.lattice_dim:
        raise InputError(f"Weight {weight} has {len(weight)} coordinates, {datum.name} needs {datum.lattice_dim}")
    return weight


def pairing(datum: RootDatum, coroot: Coroot, weight: Weight) -> int:
    """Canonical pairing <coroot, weight>."""
    if len(coroot) != datum.lattice_dim or len(weight) != datum.lattice_dim:
        raise InputError(f"Dimension mismatch: {datum.name} pairs vectors of length {datum.lattice_dim}")
    return _dot(coroot, weight)


def simple_pairings(datum: RootDatum, weight: Weight) -> Tuple[int, ...]:
    return tuple(_dot(c, weight) for c in datum.simple_coroots)


def add(a: Weight, b: Weight) -> Weight:
    return tuple(x + y for x, y in zip(a, b))


def sub(a: Weight, b: Weight) -> Weight:
    return tuple(x - y for x, y in zip(a, b))


def scale(k: int, a: Weight) -> Weight:
    return tuple(k * x for x in a)


def zero(datum: RootDatum) -> Weight:
    return (0,) * datum.lattice_dim


def rho(datum: RootDatum) -> Weight:
    """Integral rho: pairs to 1 with every simple coroot."""
    if datum.kind == "GL":
        return tuple(range(datum.lattice_dim - 1, -1, -1))
    return (1,) * datum.lattice_dim


def fundamental_weights(datum: RootDatum) -> Tuple[Weight, ...]:
    if datum.kind == "GL":
        n = datum.lattice_dim
        return tuple(tuple(1 if k <= i else 0 for k in range(n)) for i in range(n - 1))
    return tuple(tuple(1 if k == i else 0 for k in range(datum.rank)) for i in range(datum.rank))


def varsigma(datum: RootDatum, subset: Iterable[int]) -> Weight:
    """Sum of the fundamental weights indexed by ``subset`` (1-based simple indices)."""
    fundamentals = fundamental_weights(datum)
    result = zero(datum)
    for s in subset:
        if not 1 <= s <= datum.rank:
            raise InputError(f"Simple reflection index {s} out of range 1..{datum.rank}")
        result = add(result, fundamentals[s - 1])
    return result


def is_dominant(datum: RootDatum, weight: Weight) -> bool:
    return all(x >= 0 for x in simple_pairings(datum, weight))


def parabolic_dominant(datum: RootDatum, subset: Iterable[int], weight: Weight) -> bool:
    """Membership in X_I^+."""
    pairs = simple_pairings(datum, weight)
    return all(pairs[s - 1] >= 0 for s in subset)


def is_regular_for(datum: RootDatum, subset: Iterable[int], weight: Weight) -> bool:
    """Membership in X_I^{+,reg}: strictly positive on the coroots of I."""
    pairs = simple_pairings(datum, weight)
    return all(pairs[s - 1] > 0 for s in subset)


# =============================================================================
# ROOTS
# =============================================================================

@lru_cache(maxsize=None)
def all_roots(datum: RootDatum) -> Tuple[Root, ...]:
    """Reflection closure of the simple roots (with matching coroots)."""
    r = datum.rank
    C = datum.cartan
    unit = [tuple(1 if k == i else 0 for k in range(r)) for i in range(r)]
    seen: Dict[Tuple[int, ...], Tuple[int, ...]] = {u: u for u in unit}
    queue = deque(unit)
    while queue:
        c = queue.popleft()
        d = seen[c]
        for i in range(r):
            p = sum(C[i][j] * c[j] for j in range(r))          # <alpha_i^vee, beta>
            q = sum(d[k] * C[k][i] for k in range(r))          # <beta^vee, alpha_i>
            c2 = tuple(c[k] - (p if k == i else 0) for k in range(r))
            d2 = tuple(d[k] - (q if k == i else 0) for k in range(r))
            if c2 not in seen:
                if len(seen) >= MAX_ROOTS:
                    raise InputError(f"Reflection closure exceeds {MAX_ROOTS} roots: Cartan matrix is not of finite type")
                seen[c2] = d2
                queue.append(c2)
    roots = []
    for c, d in seen.items():
        vector = tuple(sum(c[j] * datum.simple_roots[j][k] for j in range(r)) for k in range(datum.lattice_dim))
        coroot = tuple(sum(d[j] * datum.simple_coroots[j][k] for j in range(r)) for k in range(datum.lattice_dim))
        roots.append(Root(vector, coroot, c, d))
    roots.sort(key=lambda root: (-root.height, root.simple_coords))
    return tuple(roots)


@lru_cache(maxsize=None)
def positive_roots(datum: RootDatum) -> Tuple[Root, ...]:
    """Positive roots, highest first."""
    roots = all_roots(datum)
    positive = tuple(root for root in roots if all(x >= 0 for x in root.simple_coords))
    negative = [root for root in roots if all(x <= 0 for x in root.simple_coords)]
    if len(positive) + len(negative) != len(roots):
        raise InputError("Root system has roots that are neither positive nor negative")
    return positive


@lru_cache(maxsize=None)
def _positive_vectors(datum: RootDatum) -> frozenset:
    return frozenset(root.vector for root in positive_roots(datum))


def is_positive_root(datum: RootDatum, vector: Weight) -> bool:
    return vector in _positive_vectors(datum)


def components(datum: RootDatum) -> List[List[int]]:
    """Connected components of the Dynkin diagram (0-based simple indices)."""
    unvisited = set(range(datum.rank))
    result = []
    while unvisited:
        start = min(unvisited)
        stack, comp = [start], []
        unvisited.discard(start)
        while stack:
            i = stack.pop()
            comp.append(i)
            for j in list(unvisited):
                if datum.cartan[i][j] != 0:
                    unvisited.discard(j)
                    stack.append(j)
        result.append(sorted(comp))
    return result


def highest_roots(datum: RootDatum) -> List[Root]:
    """Highest root of each irreducible component."""
    result = []
    for comp in components(datum):
        support = set(comp)
        candidates = [root for root in positive_roots(datum)
                      if all(root.simple_coords[k] == 0 for k in range(datum.rank) if k not in support)]
        result.append(max(candidates, key=lambda root: root.height))
    return result


def root_lattice_coords(datum: RootDatum, weight: Weight) -> Optional[Tuple[int, ...]]:
    """Coordinates of ``weight`` in the simple-root basis, or None if outside the root lattice."""

    if datum.rank == 0:
        return () if all(x == 0 for x in weight) else None
    columns = [[QQ(x) for x in root] for root in datum.simple_roots]
    solution = solve(columns, [QQ(x) for x in weight], QQ)
    if solution is None:
        return None
    coords = []
    for value in solution:
        if value.denominator != 1:
            return None
        coords.append(int(value.numerator))
    return tuple(coords)


# =============================================================================
# WEYL GROUP
# =============================================================================

@dataclass(frozen=True)
class WeylElement:
    datum: RootDatum
    matrix: Matrix
    word: Tuple[int, ...] = field(compare=False)    # 1-based simple reflection indices, reduced

    def act(self, weight: Weight) -> Weight:
        return tuple(_dot(row, weight) for row in self.matrix)

    def __mul__(self, other: "WeylElement") -> "WeylElement":
        product = tuple(
            tuple(sum(self.matrix[i][k] * other.matrix[k][j] for k in range(len(other.matrix)))
                  for j in range(len(other.matrix[0]) if other.matrix else 0))
            for i in range(len(self.matrix))
        )
        return element_from_matrix(self.datum, product)

    def inverse(self) -> "WeylElement":
        return _group_table(self.datum)[1][self.matrix]

    @property
    def length(self) -> int:
        return len(self.word)

    def __repr__(self) -> str:
        return "e" if not self.word else "s" + ".s".join(str(i) for i in self.word)


def _identity_matrix(size: int) -> Matrix:
    return tuple(tuple(1 if i == j else 0 for j in range(size)) for i in range(size))


def reflection_matrix(datum: RootDatum, root: Weight, coroot: Coroot) -> Matrix:
    """x -> x - <coroot, x> root."""
    size = datum.lattice_dim
    return tuple(
        tuple((1 if i == j else 0) - root[i] * coroot[j] for j in range(size))
        for i in range(size)
    )


def _matmul(a: Matrix, b: Matrix) -> Matrix:
    size = len(a)
    return tuple(tuple(sum(a[i][k] * b[k][j] for k in range(size)) for j in range(size)) for i in range(size))


@lru_cache(maxsize=None)
def _group_table(datum: RootDatum) -> Tuple[Dict[Matrix, "WeylElement"], Dict[Matrix, "WeylElement"]]:
    """Breadth-first enumeration of W; returns (by matrix, inverse by matrix)."""
    positive_roots(datum)
    identity = _identity_matrix(datum.lattice_dim)
    generators = [reflection_matrix(datum, datum.simple_roots[i], datum.simple_coroots[i]) for i in range(datum.rank)]
    words: Dict[Matrix, Tuple[int, ...]] = {identity: ()}
    queue = deque([identity])
    while queue:
        m = queue.popleft()
        for i, g in enumerate(generators):
            prod = _matmul(g, m)
            if prod not in words:
                words[prod] = (i + 1,) + words[m]
                if len(words) > MAX_WEYL_ORDER:
                    raise InputError(f"Weyl group of {datum.name} is larger than {MAX_WEYL_ORDER}")
                queue.append(prod)
    by_matrix = {m: WeylElement(datum, m, w) for m, w in words.items()}
    inverse = {}
    for m, element in by_matrix.items():
        inverse[m] = by_matrix[_reverse_word_matrix(datum, element.word, generators)]
    return by_matrix, inverse


def _reverse_word_matrix(datum: RootDatum, word: Tuple[int, ...], generators: List[Matrix]) -> Matrix:
    m = _identity_matrix(datum.lattice_dim)
    for i in word:                   # reversed product s_{ik} ... s_{i1}
        m = _matmul(generators[i - 1], m)
    return m


def weyl_group(datum: RootDatum) -> Tuple[WeylElement, ...]:
    """All elements of W, sorted by length then word."""
    return tuple(sorted(_group_table(datum)[0].values(), key=lambda v: (len(v.word), v.word)))


def element_from_matrix(datum: RootDatum, matrix: Matrix) -> WeylElement:
    try:
        return _group_table(datum)[0][matrix]
    except KeyError:
        raise InputError("Matrix is not an element of the Weyl group")


def identity(datum: RootDatum) -> WeylElement:
    return element_from_matrix(datum, _identity_matrix(datum.lattice_dim))


def simple_reflection(datum: RootDatum, i: int) -> WeylElement:
    if not 1 <= i <= datum.rank:
        raise InputError(f"Simple reflection index {i} out of range 1..{datum.rank}")
    return element_from_matrix(datum, reflection_matrix(datum, datum.simple_roots[i - 1], datum.simple_coroots[i - 1]))


def from_word(datum: RootDatum, word: Iterable[int]) -> WeylElement:
    element = identity(datum)
    for i in word:
        element = element * simple_reflection(datum, i)
    return element


def root_reflection(datum: RootDatum, root: Root) -> WeylElement:
    return element_from_matrix(datum, reflection_matrix(datum, root.vector, root.coroot))


def weyl_act(v: WeylElement, weight: Weight) -> Weight:
    return v.act(weight)


def inversion_count(v: WeylElement) -> int:
    """Number of positive roots sent to negative roots."""
    return sum(1 for root in positive_roots(v.datum) if not is_positive_root(v.datum, v.act(root.vector)))


@lru_cache(maxsize=None)
def longest_element(datum: RootDatum) -> WeylElement:
    return max(weyl_group(datum), key=lambda v: len(v.word))


# =============================================================================
# DOMINANCE
# =============================================================================

def dominant_data(datum: RootDatum, weight: Weight) -> DominantData:
    """
    Greedy descent to the dominant chamber.

    Args:
        datum: the root datum
        weight: any weight

    Returns:
        (dom, v, delta) with v * weight = dom, v of minimal length, delta = l(v)

    Examples:
        GL_2, (0, 3) -> ((3, 0), s1, 1)
    """
    weight = as_weight(datum, weight)
    steps: List[int] = []
    current = weight
    while True:
        pairs = simple_pairings(datum, current)
        negative = [i for i, p in enumerate(pairs) if p < 0]
        if not negative:
            break
        i = negative[0]
        current = sub(current, scale(pairs[i], datum.simple_roots[i]))
        steps.append(i + 1)
    v = from_word(datum, reversed(steps))
    return DominantData(current, v, len(steps))


def dom(datum: RootDatum, weight: Weight) -> Weight:
    return dominant_data(datum, weight).dom


def delta(datum: RootDatum, weight: Weight) -> int:
    return dominant_data(datum, weight).delta


def delta_star(datum: RootDatum, weight: Weight) -> int:
    """delta*_lambda = delta_{w_0 lambda}."""
    return delta(datum, longest_element(datum).act(as_weight(datum, weight)))


def dot_dominant(datum: RootDatum, weight: Weight) -> Optional[Tuple[Weight, int]]:
    """
    Dominant representative of ``weight`` under the rho-shifted action.

    Returns (mu, sign) with chi(weight) = sign * chi(mu), or None when
    weight + rho lies on a wall (the character vanishes).
    """
    shifted = add(weight, rho(datum))
    data = dominant_data(datum, shifted)
    if any(p == 0 for p in simple_pairings(datum, data.dom)):
        return None
    return sub(data.dom, rho(datum)), (-1) ** data.delta
