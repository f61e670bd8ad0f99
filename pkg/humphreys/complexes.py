"""
Bounded complexes of graded projective modules over a quiver algebra.

A term is a tuple of summands (vertex, twist) standing for P_vertex<twist>;
d^j : X^j -> X^{j+1} is a matrix of algebra elements with rows indexed by
X^{j+1} and columns by X^j. The entry from P_u<k> to P_w<l> is an element
of e_w A e_u of internal degree k - l.

Hom^n(X, Y) collects families f^j : X^j -> Y^{j+n} with differential
D(f) = d_Y f - (-1)^n f d_X, so Hom_K(X, Y<k>[n]) is H^n(Hom(X, Y<k>)).
"""

import logging
import random
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple

from sympy import Poly, Symbol
from sympy.polys.matrices import DomainMatrix

from .config import DECOMPOSE_RANDOM_TRIES, DECOMPOSE_SEED, LOG_FORMAT
from .errors import InputError, InvariantBreach
from .linalg import columns_to_rows, independent_modulo, nullspace, rref, solve
from .quiver_algebra import Element, GradedModule, QuiverAlgebra

# =============================================================================
# LOGGING
# =============================================================================

logging.basicConfig(level=logging.INFO, format=LOG_FORMAT)
logger = logging.getLogger(__name__)

Summand = Tuple[str, int]
Matrix = List[List[Element]]

MAX_RESOLUTION_LENGTH = 32  # longer projective resolutions are treated as infinite


# =============================================================================
# MATRICES OVER THE ALGEBRA
# =============================================================================

def zero_matrix(rows: int, cols: int) -> Matrix:
    return [[{} for _ in range(cols)] for _ in range(rows)]


def identity_matrix(algebra: QuiverAlgebra, summands: Sequence[Summand]) -> Matrix:
    m = zero_matrix(len(summands), len(summands))
    for i, (v, _) in enumerate(summands):
        m[i][i] = algebra.idempotent(v)
    return m


def mat_mul(algebra: QuiverAlgebra, left: Matrix, right: Matrix, inner: int, cols: Optional[int] = None) -> Matrix:
    """left o right; pass ``cols`` when ``inner`` may be zero."""
    rows = len(left)
    if cols is None:
        cols = len(right[0]) if right else 0
    out = zero_matrix(rows, cols)
    for r in range(rows):
        for c in range(cols):
            acc: Element = {}
            for m in range(inner):
                if left[r][m] and right[m][c]:
                    acc = algebra.add(acc, algebra.mul(left[r][m], right[m][c]))
            out[r][c] = acc
    return out


def mat_add(algebra: QuiverAlgebra, a: Matrix, b: Matrix) -> Matrix:
    return [[algebra.add(x, y) for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_scale(algebra: QuiverAlgebra, c, a: Matrix) -> Matrix:
    return [[algebra.scale(c, x) for x in row] for row in a]


def is_zero_matrix(m: Matrix) -> bool:
    return all(not x for row in m for x in row)


# =============================================================================
# COMPLEXES
# =============================================================================


@dataclass
class ProjComplex:
    algebra: QuiverAlgebra
    terms: Dict[int, Tuple[Summand, ...]]
    diffs: Dict[int, Matrix] = field(default_factory=dict)

    def __post_init__(self):
        self.terms = {j: tuple((str(v), int(k)) for v, k in t) for j, t in self.terms.items() if t}
        for v, _ in (s for t in self.terms.values() for s in t):
            if v not in self.algebra.vertices:
                raise InputError(f"Unknown vertex '{v}' in complex")
        self.diffs = {j: m for j, m in self.diffs.items() if self.term(j) and self.term(j + 1)}
        for j, m in self.diffs.items():
            if len(m) != len(self.term(j + 1)) or any(len(row) != len(self.term(j)) for row in m):
                raise InputError(f"d^{j} has the wrong shape for terms {self.term(j)} -> {self.term(j + 1)}")

    def term(self, j: int) -> Tuple[Summand, ...]:
        return self.terms.get(j, ())

    def d(self, j: int) -> Matrix:
        if j in self.diffs:
            return self.diffs[j]
        return zero_matrix(len(self.term(j + 1)), len(self.term(j)))

    def degrees(self) -> List[int]:
        return sorted(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def min_degree(self) -> int:
        return min(self.terms) if self.terms else 0

    @property
    def max_degree(self) -> int:
        return max(self.terms) if self.terms else 0

    def rank(self) -> int:
        return sum(len(t) for t in self.terms.values())

    def shape(self) -> Dict[int, Tuple[Summand, ...]]:
        return {j: tuple(sorted(t)) for j, t in self.terms.items()}

    def validate(self) -> None:
        """Entries homogeneous of the right shape and d o d = 0."""
        alg = self.algebra
        for j in self.diffs:
            for r, (vr, kr) in enumerate(self.term(j + 1)):
                for c, (vc, kc) in enumerate(self.term(j)):
                    allowed = set(alg.basis_between(vr, vc, kc - kr))
                    if set(self.diffs[j][r][c]) - allowed:
                        raise InputError(f"d^{j}[{r}][{c}] is not in e_{vr} A e_{vc} of degree {kc - kr}")
        for j in self.degrees():
            square = mat_mul(alg, self.d(j + 1), self.d(j), len(self.term(j + 1)))
            if not is_zero_matrix(square):
                raise InputError(f"d^{j + 1} o d^{j} is not zero")

    def to_json(self) -> Dict[str, Any]:
        return {
            "terms": {str(j): [[v, k] for v, k in self.terms[j]] for j in self.degrees()},
            "differentials": {str(j): [[self.algebra.format_element(x) for x in row] for row in m]
                              for j, m in sorted(self.diffs.items()) if not is_zero_matrix(m)},
        }

    def __str__(self) -> str:
        parts = []
        for j in self.degrees():
            summands = " + ".join(f"P{v}<{k}>" if k else f"P{v}" for v, k in self.terms[j])
            parts.append(f"{j}: {summands}")
        return "[" + "; ".join(parts) + "]" if parts else "0"


def complex_from_json(algebra: QuiverAlgebra, data: Dict[str, Any]) -> ProjComplex:
    terms = {int(j): tuple((str(v), int(k)) for v, k in summands) for j, summands in data.get("terms", {}).items()}
    diffs = {int(j): [[algebra.parse_element(x) for x in row] for row in m]
             for j, m in data.get("differentials", {}).items()}
    X = ProjComplex(algebra, terms, diffs)
    X.validate()
    return X


def zero_complex(algebra: QuiverAlgebra) -> ProjComplex:
    return ProjComplex(algebra, {})


def stalk(algebra: QuiverAlgebra, summands: Sequence[Summand], degree: int = 0) -> ProjComplex:
    return ProjComplex(algebra, {degree: tuple(summands)})


def projective(algebra: QuiverAlgebra, vertex: str, twist: int = 0, degree: int = 0) -> ProjComplex:
    return stalk(algebra, [(vertex, twist)], degree)


def shift(X: ProjComplex, n: int = 1) -> ProjComplex:
    """X[n]: (X[n])^j = X^{j+n}, d -> (-1)^n d."""
    sign = -1 if n % 2 else 1
    terms = {j - n: t for j, t in X.terms.items()}
    diffs = {j - n: mat_scale(X.algebra, X.algebra.K(sign), m) for j, m in X.diffs.items()}
    return ProjComplex(X.algebra, terms, diffs)


def twist(X: ProjComplex, k: int) -> ProjComplex:
    terms = {j: tuple((v, t + k) for v, t in summands) for j, summands in X.terms.items()}
    return ProjComplex(X.algebra, terms, dict(X.diffs))


def direct_sum(*complexes: ProjComplex) -> ProjComplex:
    if not complexes:
        raise InputError("direct_sum needs at least one complex")
    alg = complexes[0].algebra
    if any(X.algebra is not alg for X in complexes):
        raise InputError("Complexes live over different algebras")
    degrees = sorted({j for X in complexes for j in X.terms})
    terms = {j: tuple(s for X in complexes for s in X.term(j)) for j in degrees}
    diffs = {}
    for j in degrees:
        rows, cols = len(terms.get(j + 1, ())), len(terms[j])
        m = zero_matrix(rows, cols)
        r0 = c0 = 0
        for X in complexes:
            block = X.d(j)
            for r, row in enumerate(block):
                for c, x in enumerate(row):
                    m[r0 + r][c0 + c] = x
            r0 += len(X.term(j + 1))
            c0 += len(X.term(j))
        diffs[j] = m
    return ProjComplex(alg, terms, diffs)


def _same_algebra(X: ProjComplex, Y: ProjComplex) -> QuiverAlgebra:
    if X.algebra is not Y.algebra:
        raise InputError("Complexes live over different algebras")
    return X.algebra


# =============================================================================
# CHAIN MAPS
# =============================================================================


@dataclass
class ChainMap:
    source: ProjComplex
    target: ProjComplex
    components: Dict[int, Matrix]       # f^j : source^j -> target^j

    def component(self, j: int) -> Matrix:
        if j in self.components:
            return self.components[j]
        return zero_matrix(len(self.target.term(j)), len(self.source.term(j)))

    def is_chain_map(self) -> bool:
        alg = _same_algebra(self.source, self.target)
        for j in set(self.source.degrees()) | set(self.target.degrees()) | {j - 1 for j in self.source.degrees()}:
            width = len(self.source.term(j))
            left = mat_mul(alg, self.target.d(j), self.component(j), len(self.target.term(j)), width)
            right = mat_mul(alg, self.component(j + 1), self.source.d(j), len(self.source.term(j + 1)), width)
            if not is_zero_matrix(mat_add(alg, left, mat_scale(alg, -alg.K.one, right))):
                return False
        return True

    def is_zero(self) -> bool:
        return all(is_zero_matrix(m) for m in self.components.values())


def identity_map(X: ProjComplex) -> ChainMap:
    return ChainMap(X, X, {j: identity_matrix(X.algebra, X.term(j)) for j in X.degrees()})


def compose(g: ChainMap, f: ChainMap) -> ChainMap:
    """g o f for f: X -> Y and g: Y -> Z."""
    alg = _same_algebra(f.source, g.target)
    if f.target.terms != g.source.terms:
        raise InputError("Chain maps do not compose: target and source differ")
    comps = {j: mat_mul(alg, g.component(j), f.component(j), len(f.target.term(j)), len(f.source.term(j)))
             for j in f.source.degrees()}
    return ChainMap(f.source, g.target, comps)


def add_maps(f: ChainMap, g: ChainMap) -> ChainMap:
    alg = f.source.algebra
    degrees = set(f.components) | set(g.components)
    return ChainMap(f.source, f.target, {j: mat_add(alg, f.component(j), g.component(j)) for j in degrees})


def scale_map(c, f: ChainMap) -> ChainMap:
    alg = f.source.algebra
    return ChainMap(f.source, f.target, {j: mat_scale(alg, c, m) for j, m in f.components.items()})


def shift_map(f: ChainMap, n: int) -> ChainMap:
    """f[n] : X[n] -> Y[n] with f[n]^j = f^{j+n}."""
    return ChainMap(shift(f.source, n), shift(f.target, n), {j - n: m for j, m in f.components.items()})


def twist_map(f: ChainMap, k: int) -> ChainMap:
    return ChainMap(twist(f.source, k), twist(f.target, k), dict(f.components))


def cone(f: ChainMap) -> ProjComplex:
    """Cone^j = X^{j+1} + Y^j with d = [[-d_X, 0], [f, d_Y]]."""
    X, Y = f.source, f.target
    alg = _same_algebra(X, Y)
    degrees = sorted({j - 1 for j in X.degrees()} | set(Y.degrees()))
    terms = {j: X.term(j + 1) + Y.term(j) for j in degrees}
    diffs = {}
    for j in degrees:
        x_src, y_src = len(X.term(j + 1)), len(Y.term(j))
        x_dst, y_dst = len(X.term(j + 2)), len(Y.term(j + 1))
        m = zero_matrix(x_dst + y_dst, x_src + y_src)
        dX, fj, dY = X.d(j + 1), f.component(j + 1), Y.d(j)
        for r in range(x_dst):
            for c in range(x_src):
                m[r][c] = alg.neg(dX[r][c])
        for r in range(y_dst):
            for c in range(x_src):
                m[x_dst + r][c] = fj[r][c]
            for c in range(y_src):
                m[x_dst + r][x_src + c] = dY[r][c]
        diffs[j] = m
    return ProjComplex(alg, terms, diffs)


def cone_inclusion(f: ChainMap, C: Optional[ProjComplex] = None) -> ChainMap:
    """The canonical map Y -> Cone(f)."""
    C = C or cone(f)
    alg = f.source.algebra
    comps = {}
    for j in f.target.degrees():
        offset = len(f.source.term(j + 1))
        m = zero_matrix(len(C.term(j)), len(f.target.term(j)))
        for i, (v, _) in enumerate(f.target.term(j)):
            m[offset + i][i] = alg.idempotent(v)
        comps[j] = m
    return ChainMap(f.target, C, comps)


# =============================================================================
# HOM COMPLEX
# =============================================================================


class _HomIndex:
    """Coordinates of Hom^n(X, Y): one per (degree, row, column, basis path)."""

    def __init__(self, X: ProjComplex, Y: ProjComplex, n: int):
        alg = _same_algebra(X, Y)
        self.X, self.Y, self.n = X, Y, n
        self.entries: List[Tuple[int, int, int, int]] = []
        self.position: Dict[Tuple[int, int, int, int], int] = {}
        for j in X.degrees():
            for r, (vr, kr) in enumerate(Y.term(j + n)):
                for c, (vc, kc) in enumerate(X.term(j)):
                    for b in alg.basis_between(vr, vc, kc - kr):
                        self.position[(j, r, c, b)] = len(self.entries)
                        self.entries.append((j, r, c, b))

    def __len__(self) -> int:
        return len(self.entries)

    def vector(self, components: Dict[int, Matrix]) -> List[Any]:
        K = self.X.algebra.K
        v = [K.zero] * len(self.entries)
        for j, m in components.items():
            for r, row in enumerate(m):
                for c, x in enumerate(row):
                    for b, coeff in x.items():
                        key = (j, r, c, b)
                        if key not in self.position:
                            raise InvariantBreach(f"Map component {key} is outside Hom^{self.n}")
                        v[self.position[key]] += coeff
        return v

    def matrices(self, vector: Sequence[Any]) -> Dict[int, Matrix]:
        comps: Dict[int, Matrix] = {}
        for (j, r, c, b), coeff in zip(self.entries, vector):
            if not coeff:
                continue
            if j not in comps:
                comps[j] = zero_matrix(len(self.Y.term(j + self.n)), len(self.X.term(j)))
            comps[j][r][c] = dict(comps[j][r][c])
            comps[j][r][c][b] = comps[j][r][c].get(b, self.X.algebra.K.zero) + coeff
        return comps

    def differential_images(self, nxt: "_HomIndex") -> List[List[Any]]:
        """D applied to each coordinate vector, as vectors of ``nxt``."""
        X, Y, n = self.X, self.Y, self.n
        alg = X.algebra
        sign = alg.K(-1 if n % 2 else 1)
        images = []
        for (j, r, c, b) in self.entries:
            unit = {b: alg.K.one}
            out = [alg.K.zero] * len(nxt)
            dY = Y.d(j + n)
            for r2 in range(len(Y.term(j + n + 1))):
                for k, coeff in alg.mul(dY[r2][r], unit).items():
                    out[nxt.position[(j, r2, c, k)]] += coeff
            dX = X.d(j - 1)
            for c2 in range(len(X.term(j - 1))):
                for k, coeff in alg.mul(unit, dX[c][c2]).items():
                    out[nxt.position[(j - 1, r, c2, k)]] -= sign * coeff
            images.append(out)
        return images


def _cycles(index: _HomIndex) -> List[List[Any]]:
    nxt = _HomIndex(index.X, index.Y, index.n + 1)
    K = index.X.algebra.K
    images = index.differential_images(nxt)
    if not len(nxt):
        return nullspace([], len(index), K)
    return nullspace(columns_to_rows(images, len(nxt)), len(index), K)


@dataclass
class HomSpace:
    """Hom_K(source, Y<twist>[shift]); each basis element is a chain map source -> target."""
    source: ProjComplex
    target: ProjComplex
    shift: int
    twist: int
    basis: List[ChainMap]
    _index: _HomIndex
    _reps: List[List[Any]]
    _boundaries: List[List[Any]]

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def coordinates(self, f: ChainMap) -> List[Any]:
        """Coefficients of f modulo null-homotopic maps."""
        v = self._index.vector(f.components)
        coords = solve(self._reps + self._boundaries, v, self.source.algebra.K)
        if coords is None:
            raise InvariantBreach("Map is not a cycle of the Hom complex")
        return coords[:len(self._reps)]

    def is_null_homotopic(self, f: ChainMap) -> bool:
        return all(not c for c in self.coordinates(f))


def hom_space(X: ProjComplex, Y: ProjComplex, shift_by: int = 0, twist_by: int = 0) -> HomSpace:
    _same_algebra(X, Y)
    Yk = twist(Y, twist_by) if twist_by else Y
    index = _HomIndex(X, Yk, shift_by)
    K = X.algebra.K
    cycles = _cycles(index)
    prev = _HomIndex(X, Yk, shift_by - 1)
    boundaries = prev.differential_images(index) if len(prev) else []
    reps = [cycles[i] for i in independent_modulo(boundaries, cycles, len(index), K)]
    target = shift(Yk, shift_by)
    basis = [ChainMap(X, target, index.matrices(v)) for v in reps]
    return HomSpace(X, target, shift_by, twist_by, basis, index, reps, boundaries)


def chain_maps(X: ProjComplex, Y: ProjComplex) -> List[ChainMap]:
    """Basis of strict chain maps X -> Y (not modulo homotopy)."""
    index = _HomIndex(X, Y, 0)
    return [ChainMap(X, Y, index.matrices(v)) for v in _cycles(index)]


def twist_candidates(X: ProjComplex, Y: ProjComplex) -> List[int]:
    """Every k for which some Hom(X^j, Y<k>^i) is nonzero."""
    alg = _same_algebra(X, Y)
    found = set()
    xs = {s for t in X.terms.values() for s in t}
    ys = {s for t in Y.terms.values() for s in t}
    for vc, kc in xs:
        for vr, kr in ys:
            for deg in alg.degrees_between(vr, vc):
                found.add(kc - kr - deg)
    return sorted(found)


def hom_dimensions(X: ProjComplex, Y: ProjComplex) -> Dict[Tuple[int, int], int]:
    """Nonzero dim Hom(X, Y<k>[i]) keyed by (i, k)."""
    dims = {}
    if X.is_zero() or Y.is_zero():
        return dims
    for k in twist_candidates(X, Y):
        for i in range(Y.min_degree - X.max_degree, Y.max_degree - X.min_degree + 1):
            dim = hom_space(X, Y, i, k).dimension
            if dim:
                dims[(i, k)] = dim
    return dims


# =============================================================================
# MINIMAL MODELS
# =============================================================================

def _find_unit(X: ProjComplex) -> Optional[Tuple[int, int, int]]:
    alg = X.algebra
    for j in sorted(X.diffs):
        m = X.diffs[j]
        for r, (vr, kr) in enumerate(X.term(j + 1)):
            for c, (vc, kc) in enumerate(X.term(j)):
                if vr == vc and kr == kc and alg.is_invertible(m[r][c], vr):
                    return j, r, c
    return None


def _eliminate(X: ProjComplex, j: int, r: int, c: int) -> ProjComplex:
    """Gaussian elimination of an invertible entry of d^j; new d^j = eps - gamma phi^-1 delta."""
    alg = X.algebra
    d = X.d(j)
    v = X.term(j)[c][0]
    phi_inv = alg.inverse(d[r][c], v)
    rows = [i for i in range(len(X.term(j + 1))) if i != r]
    cols = [i for i in range(len(X.term(j))) if i != c]
    new_d = zero_matrix(len(rows), len(cols))
    for a, r2 in enumerate(rows):
        gamma = alg.mul(d[r2][c], phi_inv) if d[r2][c] else {}
        for b, c2 in enumerate(cols):
            correction = alg.mul(gamma, d[r][c2]) if gamma and d[r][c2] else {}
            new_d[a][b] = alg.add(d[r2][c2], alg.neg(correction))
    terms = dict(X.terms)
    terms[j] = tuple(X.term(j)[i] for i in cols)
    terms[j + 1] = tuple(X.term(j + 1)[i] for i in rows)
    diffs = dict(X.diffs)
    diffs[j] = new_d
    if j - 1 in diffs:
        diffs[j - 1] = [diffs[j - 1][i] for i in cols]
    if j + 1 in diffs:
        diffs[j + 1] = [[row[i] for i in rows] for row in diffs[j + 1]]
    return ProjComplex(alg, terms, diffs)


def minimal_model(X: ProjComplex) -> ProjComplex:
    """Homotopy-equivalent complex with every differential entry in the radical."""
    current = X
    while True:
        unit = _find_unit(current)
        if unit is None:
            return current
        current = _eliminate(current, *unit)


def is_minimal(X: ProjComplex) -> bool:
    return _find_unit(X) is None


def is_contractible(X: ProjComplex) -> bool:
    return minimal_model(X).is_zero()


# =============================================================================
# DECOMPOSITION
# =============================================================================

def _connected_pieces(X: ProjComplex) -> List[ProjComplex]:
    nodes = [(j, i) for j in X.degrees() for i in range(len(X.term(j)))]
    parent = {n: n for n in nodes}

    def find(n):
        while parent[n] != n:
            parent[n] = parent[parent[n]]
            n = parent[n]
        return n

    for j, m in X.diffs.items():
        for r, row in enumerate(m):
            for c, x in enumerate(row):
                if x:
                    parent[find((j, c))] = find((j + 1, r))
    groups: Dict[Tuple[int, int], List[Tuple[int, int]]] = defaultdict(list)
    for n in nodes:
        groups[find(n)].append(n)
    pieces = []
    for members in groups.values():
        keep = defaultdict(list)
        for j, i in sorted(members):
            keep[j].append(i)
        pieces.append(restrict(X, keep))
    pieces.sort(key=lambda P: (P.min_degree, str(P)))
    return pieces


def restrict(X: ProjComplex, keep: Dict[int, List[int]]) -> ProjComplex:
    """Summands at the kept indices of each term, with the matching blocks of d."""
    terms = {j: tuple(X.term(j)[i] for i in idx) for j, idx in keep.items()}
    diffs = {}
    for j in keep:
        if j + 1 in keep:
            diffs[j] = [[X.d(j)[r][c] for c in keep[j]] for r in keep[j + 1]]
    return ProjComplex(X.algebra, terms, diffs)


def _scalar_matrix(X: ProjComplex, j: int, m: Matrix) -> List[List[Any]]:
    alg = X.algebra
    t = X.term(j)
    return [[alg.scalar_part(m[r][c], t[r][0]) if t[r] == t[c] else alg.K.zero for c in range(len(t))]
            for r in range(len(t))]


def _is_automorphism(X: ProjComplex, f: ChainMap) -> bool:
    K = X.algebra.K
    for j in X.degrees():
        s = _scalar_matrix(X, j, f.component(j))
        if DomainMatrix(s, (len(s), len(s)), K).rank() < len(s):
            return False
    return True


def _min_poly(X: ProjComplex, f: ChainMap, index: _HomIndex) -> List[Any]:
    """Coefficients c_0..c_d (monic) of the minimal polynomial of f in End_C(X)."""
    K = X.algebra.K
    powers = [index.vector(identity_map(X).components)]
    current = identity_map(X)
    while True:
        current = compose(f, current)
        v = index.vector(current.components)
        coords = solve(powers, v, K)
        if coords is not None:
            return [-c for c in coords] + [K.one]
        powers.append(v)


def _evaluate(X: ProjComplex, coeffs: Sequence[Any], f: ChainMap) -> ChainMap:
    result = ChainMap(X, X, {})
    for c in reversed(coeffs):
        result = add_maps(compose(f, result) if result.components else result, scale_map(c, identity_map(X)))
    return result


def _splitting_idempotent(X: ProjComplex, f: ChainMap, index: _HomIndex) -> Optional[ChainMap]:
    K = X.algebra.K
    x = Symbol("x")
    coeffs = _min_poly(X, f, index)
    m = Poly([K.to_sympy(c) for c in reversed(coeffs)], x, domain=K)
    _, factors = m.factor_list()
    if len(factors) < 2:
        return None
    first = factors[0][0] ** factors[0][1]
    rest = m.exquo(first)
    s, t, h = first.gcdex(rest)
    u = (t * rest).rem(m)
    poly = [K.from_sympy(c) for c in reversed(u.all_coeffs())]
    return _evaluate(X, poly, f)


def _split(X: ProjComplex, pi: ChainMap) -> Tuple[ProjComplex, ProjComplex]:
    """Split X along a chain-level idempotent pi into image and kernel complexes."""
    alg = X.algebra
    K = alg.K
    bases: Dict[int, Tuple[List[List[Any]], int]] = {}
    new_terms: Dict[int, Tuple[Summand, ...]] = {}
    for j in X.degrees():
        t = X.term(j)
        size = len(t)
        scalar = _scalar_matrix(X, j, pi.component(j))
        image_cols, kernel_cols, types = [], [], []
        for kind in sorted(set(t)):
            idx = [i for i in range(size) if t[i] == kind]
            block_rows = [[scalar[r][c] for c in idx] for r in idx]
            columns = [[block_rows[r][c] for r in range(len(idx))] for c in range(len(idx))]
            _, pivots = rref(columns_to_rows(columns, len(idx)), len(idx), K)
            kernel = nullspace(block_rows, len(idx), K)
            for p in pivots:
                full = [K.zero] * size
                for a, i in enumerate(idx):
                    full[i] = columns[p][a]
                image_cols.append((kind, full))
            for vec in kernel:
                full = [K.zero] * size
                for a, i in enumerate(idx):
                    full[i] = vec[a]
                kernel_cols.append((kind, full))
        ordered = image_cols + kernel_cols
        if len(ordered) != size:
            raise InvariantBreach("Scalar reduction of an idempotent did not split")
        bases[j] = ([vec for _, vec in ordered], len(image_cols))
        new_terms[j] = tuple(kind for kind, _ in ordered)

    def as_algebra(j: int, scalar_cols: List[List[Any]], target_terms) -> Matrix:
        m = zero_matrix(len(scalar_cols[0]) if scalar_cols else 0, len(scalar_cols))
        for c, col in enumerate(scalar_cols):
            for r, value in enumerate(col):
                if value:
                    m[r][c] = alg.scale(value, alg.idempotent(target_terms[r][0]))
        return m

    S, S_inv = {}, {}
    for j in X.degrees():
        cols, _ = bases[j]
        size = len(cols)
        S[j] = as_algebra(j, cols, X.term(j))
        inv = DomainMatrix(columns_to_rows(cols, size), (size, size), K).inv().to_list()
        S_inv[j] = as_algebra(j, [[inv[r][c] for r in range(size)] for c in range(size)], new_terms[j])
    conj_d = {j: mat_mul(alg, S_inv[j + 1], mat_mul(alg, X.d(j), S[j], len(X.term(j))), len(X.term(j + 1)))
              for j in X.diffs if j + 1 in S}
    conj_pi = {j: mat_mul(alg, S_inv[j], mat_mul(alg, pi.component(j), S[j], len(X.term(j))), len(X.term(j)))
               for j in X.degrees()}
    u, u_inv = {}, {}
    for j in X.degrees():
        size = len(new_terms[j])
        cut = bases[j][1]
        ident = identity_matrix(alg, new_terms[j])
        pi0 = [[ident[r][c] if r == c and r < cut else {} for c in range(size)] for r in range(size)]
        one_minus_pi0 = mat_add(alg, ident, mat_scale(alg, -K.one, pi0))
        one_minus_pi = mat_add(alg, ident, mat_scale(alg, -K.one, conj_pi[j]))
        u[j] = mat_add(alg, mat_mul(alg, conj_pi[j], pi0, size), mat_mul(alg, one_minus_pi, one_minus_pi0, size))
        # u is the identity modulo the radical
        nil = mat_add(alg, u[j], mat_scale(alg, -K.one, ident))
        inv, power = ident, ident
        for _ in range(alg.length_bound + 1):
            power = mat_scale(alg, -K.one, mat_mul(alg, power, nil, size))
            if is_zero_matrix(power):
                break
            inv = mat_add(alg, inv, power)
        u_inv[j] = inv
    new_d = {j: mat_mul(alg, u_inv[j + 1], mat_mul(alg, conj_d[j], u[j], len(new_terms[j])), len(new_terms[j + 1]))
             for j in conj_d}
    Y = ProjComplex(alg, new_terms, new_d)
    image = {j: list(range(bases[j][1])) for j in X.degrees() if bases[j][1]}
    kernel = {j: list(range(bases[j][1], len(new_terms[j]))) for j in X.degrees() if len(new_terms[j]) > bases[j][1]}
    for j, m in new_d.items():
        for r in image.get(j + 1, []):
            for c in kernel.get(j, []):
                if m[r][c]:
                    raise InvariantBreach("Idempotent splitting left a mixed differential entry")
        for r in kernel.get(j + 1, []):
            for c in image.get(j, []):
                if m[r][c]:
                    raise InvariantBreach("Idempotent splitting left a mixed differential entry")
    return restrict(Y, image), restrict(Y, kernel)


def _candidates(basis: List[ChainMap]) -> Iterable[ChainMap]:
    yield from basis
    for a in range(len(basis)):
        for b in range(a + 1, len(basis)):
            yield add_maps(basis[a], basis[b])
    if not basis:
        return
    K = basis[0].source.algebra.K
    rng = random.Random(DECOMPOSE_SEED)
    for _ in range(DECOMPOSE_RANDOM_TRIES):
        combo = scale_map(K(rng.randint(-3, 3)), basis[0])
        for f in basis[1:]:
            combo = add_maps(combo, scale_map(K(rng.randint(-3, 3)), f))
        yield combo


def _residue_scalar(X: ProjComplex, f: ChainMap, index: _HomIndex) -> Optional[Any]:
    """c with f - c nilpotent, or None when the minimal polynomial of f is not a power of x - c."""
    K = X.algebra.K
    coeffs = _min_poly(X, f, index)
    m = Poly([K.to_sympy(c) for c in reversed(coeffs)], Symbol("x"), domain=K)
    _, factors = m.factor_list()
    if len(factors) != 1 or factors[0][0].degree() != 1:
        return None
    a, b = [K.from_sympy(c) for c in factors[0][0].all_coeffs()]
    return -b / a


def _independent_maps(maps: Sequence[ChainMap], index: _HomIndex) -> List[ChainMap]:
    vectors = [index.vector(f.components) for f in maps]
    return [maps[i] for i in independent_modulo([], vectors, len(index), index.X.algebra.K)]


def _locality_witnesses(X: ProjComplex, basis: List[ChainMap], index: _HomIndex) -> Optional[List[ChainMap]]:
    """
    None when End(X) is K plus a nilpotent ideal, so X is indecomposable.
    Otherwise the maps that show it is not: basis maps with no single
    eigenvalue in K, products leaving the span of the nilpotent parts, or
    elements of a power of that span that never vanishes.
    """
    K = X.algebra.K
    ident = identity_map(X)
    witnesses, nilpotent = [], []
    for f in basis:
        c = _residue_scalar(X, f, index)
        if c is None:
            witnesses.append(f)
        else:
            nilpotent.append(add_maps(f, scale_map(-c, ident)))
    if witnesses:
        return witnesses
    span = [index.vector(g.components) for g in nilpotent]
    for g in nilpotent:
        for h in nilpotent:
            gh = compose(g, h)
            if solve(span, index.vector(gh.components), K) is None:
                witnesses.append(gh)
    if witnesses:
        return witnesses
    power = _independent_maps(nilpotent, index)
    while power:
        following = _independent_maps([compose(g, h) for g in power for h in nilpotent], index)
        if len(following) == len(power):
            return following
        power = following
    return None


def _decompose_piece(X: ProjComplex) -> List[ProjComplex]:
    if X.rank() == 1:
        return [X]
    index = _HomIndex(X, X, 0)
    basis = chain_maps(X, X)
    for f in _candidates(basis):
        pi = _splitting_idempotent(X, f, index)
        if pi is None:
            continue
        left, right = _split(X, pi)
        logger.debug(f"Split {X} into {left} and {right}")
        return decompose(left) + decompose(right)
    witnesses = _locality_witnesses(X, basis, index)
    if witnesses is None:
        return [X]
    for f in witnesses:
        pi = _splitting_idempotent(X, f, index)
        if pi is not None:
            left, right = _split(X, pi)
            logger.info(f"Split {X} along a non-unit outside the nilpotent part of its endomorphisms")
            return decompose(left) + decompose(right)
    raise InvariantBreach(f"End({X}) is not K plus a nilpotent ideal, yet no splitting idempotent was found",
                          {"complex": X.to_json(), "endomorphisms": len(basis)})


def decompose(X: ProjComplex) -> List[ProjComplex]:
    """Indecomposable summands of the minimal model of X."""
    result = []
    for piece in _connected_pieces(minimal_model(X)):
        result.extend(_decompose_piece(piece))
    return result


def are_isomorphic(X: ProjComplex, Y: ProjComplex) -> bool:
    """Isomorphism test for minimal complexes with local endomorphism rings."""
    X, Y = minimal_model(X), minimal_model(Y)
    if X.shape() != Y.shape():
        return False
    if X.is_zero():
        return True
    forward = chain_maps(X, Y)
    backward = chain_maps(Y, X)
    return any(_is_automorphism(X, compose(g, f)) for f in forward for g in backward)


def shift_twist_to(X: ProjComplex, Y: ProjComplex) -> Optional[Tuple[int, int]]:
    """(n, k) with X[n]<k> isomorphic to Y, for indecomposable minimal X and Y."""
    if X.is_zero() or Y.is_zero() or X.rank() != Y.rank():
        return None
    n = X.min_degree - Y.min_degree
    k = min(t for _, t in Y.term(Y.min_degree)) - min(t for _, t in X.term(X.min_degree))
    if are_isomorphic(twist(shift(X, n), k), Y):
        return n, k
    return None


def distinct_up_to_shift_twist(objects: Iterable[ProjComplex]) -> List[ProjComplex]:
    distinct: List[ProjComplex] = []
    for X in objects:
        if not any(shift_twist_to(D, X) is not None for D in distinct):
            distinct.append(X)
    return distinct


# =============================================================================
# PROJECTIVE RESOLUTIONS
# =============================================================================

def _free_module(algebra: QuiverAlgebra, summands: Sequence[Summand]):
    """The module of a projective term, with slot -> (summand, basis path)."""
    slots, owners, action = [], [], {}
    pieces = [algebra.projective(v, k) for v, k in summands]
    offsets = []
    for i, (P, (v, _)) in enumerate(zip(pieces, summands)):
        offsets.append(len(slots))
        slots.extend(P.slots)
        owners.extend((i, b) for b, p in enumerate(algebra.basis) if p.source == v)
    dim = len(slots)
    for name in algebra.arrows:
        m = [[algebra.K.zero] * dim for _ in range(dim)]
        for P, off in zip(pieces, offsets):
            block = P.action[name]
            for r in range(P.dim):
                for c in range(P.dim):
                    m[off + r][off + c] = block[r][c]
        action[name] = m
    return GradedModule(algebra, slots, action), owners


def projective_resolution(module: GradedModule, max_length: int = MAX_RESOLUTION_LENGTH) -> ProjComplex:
    """Minimal graded projective resolution, placed in degrees <= 0."""
    alg = module.algebra
    K = alg.K
    generators = module.top_generators(module.full_basis())
    summands = [comp for comp, _ in generators]
    if not summands:
        return zero_complex(alg)
    terms = {0: tuple(summands)}
    diffs: Dict[int, Matrix] = {}
    free, owners = _free_module(alg, summands)
    # phi: free -> module, slot (i, b) -> generator_i . b
    images = [module.act_path(generators[i][1], alg.basis[b].word) for i, b in owners]
    ambient_dim = module.dim
    degree = 0
    while True:
        kernel: Dict[Tuple[str, int], List[List[Any]]] = {}
        for comp in free.components():
            cols = free.slots_in(comp)
            matrix = [[images[c][r] for c in cols] for r in range(ambient_dim)]
            null = nullspace([row for row in matrix if any(row)], len(cols), K)
            vectors = []
            for vec in null:
                full = [K.zero] * free.dim
                for a, c in enumerate(cols):
                    full[c] = vec[a]
                vectors.append(full)
            if vectors:
                kernel[comp] = vectors
        if not kernel:
            break
        if -degree >= max_length:
            raise InputError(f"Projective resolution longer than {max_length}: infinite global dimension?")
        gens = free.top_generators(kernel)
        new_summands = [comp for comp, _ in gens]
        d = zero_matrix(len(summands), len(new_summands))
        for col, (_, vec) in enumerate(gens):
            for slot, coeff in enumerate(vec):
                if coeff:
                    i, b = owners[slot]
                    d[i][col] = alg.add(d[i][col], {b: coeff})
        degree -= 1
        terms[degree] = tuple(new_summands)
        diffs[degree] = d
        next_free, next_owners = _free_module(alg, new_summands)
        images = [free.act_path(gens[i][1], alg.basis[b].word) for i, b in next_owners]
        ambient_dim = free.dim
        free, owners, summands = next_free, next_owners, new_summands
    X = ProjComplex(alg, terms, diffs)
    X.validate()
    return X


def standard_complex(algebra: QuiverAlgebra, s: str) -> ProjComplex:
    return projective_resolution(algebra.standard_module(s))


def costandard_complex(algebra: QuiverAlgebra, s: str) -> ProjComplex:
    return projective_resolution(algebra.costandard_module(s))
