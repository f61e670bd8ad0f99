"""
Finite-dimensional graded quiver algebras and their graded modules.

Paths compose left to right: ``a.b`` is a followed by b. The right module
P_v = e_v A has basis the paths starting at v, so

    Hom(P_u<k>, P_w<l>) = e_w A e_u   (paths w -> u of internal degree k - l)

acting by left multiplication, and composing g after f multiplies g.f.
A module is a graded representation: a basis of slots, each sitting at a
(vertex, internal degree) component, with one action matrix per arrow.
"""

import logging
import re
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple

from .config import LOG_FORMAT, PATH_BOUND
from .errors import InputError, InvariantBreach
from .linalg import field_from_spec, field_name, independent_modulo, nullspace, rref, solve

# =============================================================================
# LOGGING
# =============================================================================

logging.basicConfig(level=logging.INFO, format=LOG_FORMAT)
logger = logging.getLogger(__name__)

MAX_PATHS = 4000  # paths enumerated before the presentation is rejected

Element = Dict[int, Any]        # basis index -> nonzero field element
Component = Tuple[str, int]     # (vertex, internal degree)

# =============================================================================
# PRESENTATION
# =============================================================================


@dataclass(frozen=True)
class Arrow:
    name: str
    source: str
    target: str
    degree: int


@dataclass(frozen=True)
class Path:
    source: str
    target: str
    degree: int
    word: Tuple[str, ...]

    def __str__(self) -> str:
        return ".".join(self.word) if self.word else f"e{self.source}"


@dataclass
class AlgebraPresentation:
    field_spec: str
    vertices: List[str]
    arrows: List[Arrow]
    relations: List[Dict[Tuple[str, ...], Fraction]] = field(default_factory=list)
    heredity_order: Optional[List[str]] = None      # lowest first


_SECTION = re.compile(r"^\[(\w+)\]$")
_ARROW = re.compile(r"^(\w+)\s*:\s*(\w+)\s*->\s*(\w+)\s*(?:,\s*(-?\d+))?$")
_TERM = re.compile(r"([+-]?)\s*(?:(\d+(?:/\d+)?)\s*\*\s*)?([\w.]+)")


def _parse_relation(text: str) -> Dict[Tuple[str, ...], Fraction]:
    compact = text.replace(" ", "")
    if not compact:
        raise InputError("Empty relation")
    relation: Dict[Tuple[str, ...], Fraction] = defaultdict(Fraction)
    pos = 0
    for m in _TERM.finditer(compact):
        if m.start() != pos:
            raise InputError(f"Cannot parse relation '{text}'")
        sign = -1 if m.group(1) == "-" else 1
        coeff = Fraction(m.group(2)) if m.group(2) else Fraction(1)
        relation[tuple(m.group(3).split("."))] += sign * coeff
        pos = m.end()
    if pos != len(compact):
        raise InputError(f"Cannot parse relation '{text}'")
    return {w: c for w, c in relation.items() if c}


def parse_algebra(text: str) -> AlgebraPresentation:
    """
    Parse the sectioned algebra format.

    Sections: [field] Q | GF(p); [vertices] one name per line; [arrows]
    ``name: src -> dst, degree``; [relations] ``2*a.b - c.d`` with paths
    composed left to right; [heredity_order] vertices, lowest first.
    """
    sections: Dict[str, List[str]] = defaultdict(list)
    current = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = _SECTION.match(line)
        if m:
            current = m.group(1).lower()
            continue
        if current is None:
            raise InputError(f"Line {lineno}: content outside of a section")
        sections[current].append(line)
    field_lines = sections.get("field", ["Q"])
    vertices = [v for line in sections.get("vertices", []) for v in re.split(r"[,\s]+", line) if v]
    if not vertices:
        raise InputError("Algebra needs at least one vertex")
    if len(set(vertices)) != len(vertices):
        raise InputError("Vertex names must be distinct")
    arrows = []
    for line in sections.get("arrows", []):
        m = _ARROW.match(line)
        if not m:
            raise InputError(f"Cannot parse arrow '{line}': expected 'name: src -> dst, degree'")
        name, src, dst, deg = m.group(1), m.group(2), m.group(3), int(m.group(4) or 0)
        if src not in vertices or dst not in vertices:
            raise InputError(f"Arrow {name} uses an unknown vertex")
        if deg < 0:
            raise InputError(f"Arrow {name} has negative internal degree {deg}")
        arrows.append(Arrow(name, src, dst, deg))
    if len({a.name for a in arrows}) != len(arrows):
        raise InputError("Arrow names must be distinct")
    relations = [_parse_relation(line) for line in sections.get("relations", [])]
    order = None
    if "heredity_order" in sections:
        order = [v for line in sections["heredity_order"] for v in re.split(r"[,\s]+", line) if v]
        if sorted(order) != sorted(vertices):
            raise InputError("heredity_order must list every vertex exactly once")
    return AlgebraPresentation(field_lines[0], vertices, arrows, relations, order)


def load_algebra(path: str) -> "QuiverAlgebra":
    with open(path, 'r', encoding='utf-8') as f:
        return QuiverAlgebra(parse_algebra(f.read()))


# =============================================================================
# ALGEBRA
# =============================================================================


class QuiverAlgebra:
    """
    kQ / I with a basis of normal-form paths.

    Normal forms prefer shorter paths: inside each (source, target, degree)
    block the ideal is row-reduced with longer paths as pivots.
    """

    def __init__(self, presentation: AlgebraPresentation, path_bound: int = PATH_BOUND):
        self.presentation = presentation
        self.K = field_from_spec(presentation.field_spec)
        self.vertices = list(presentation.vertices)
        self.arrows = {a.name: a for a in presentation.arrows}
        self.heredity_order = presentation.heredity_order
        self._paths = self._enumerate_paths(path_bound)
        self._reduce(presentation.relations, path_bound)
        logger.info(f"Algebra over {field_name(self.K)}: {len(self.vertices)} vertices, dimension {len(self.basis)}")

    # -- construction -------------------------------------------------------

    def _enumerate_paths(self, bound: int) -> List[Path]:
        paths = [Path(v, v, 0, ()) for v in self.vertices]
        frontier = [p for p in paths]
        for _ in range(bound):
            nxt = []
            for p in frontier:
                for a in self.arrows.values():
                    if a.source == p.target:
                        nxt.append(Path(p.source, a.target, p.degree + a.degree, p.word + (a.name,)))
            paths.extend(nxt)
            if len(paths) > MAX_PATHS:
                raise InputError(f"More than {MAX_PATHS} paths: the presentation is too large or not finite-dimensional")
            frontier = nxt
            if not frontier:
                break
        return paths

    def _path_of(self, source: str, word: Tuple[str, ...]) -> Optional[Path]:
        if not word:
            return Path(source, source, 0, ())
        current, degree = source, 0
        for name in word:
            a = self.arrows.get(name)
            if a is None:
                raise InputError(f"Unknown arrow '{name}'")
            if a.source != current:
                return None
            current, degree = a.target, degree + a.degree
        return Path(source, current, degree, word)

    def _word_path(self, word: Tuple[str, ...]) -> Path:
        if not word or word[0] not in self.arrows:
            raise InputError(f"Unknown arrow in '{'.'.join(word)}'")
        p = self._path_of(self.arrows[word[0]].source, word)
        if p is None:
            raise InputError(f"'{'.'.join(word)}' is not a path")
        return p

    def _reduce(self, relations: Sequence[Dict[Tuple[str, ...], Fraction]], bound: int) -> None:
        K = self.K
        blocks: Dict[Tuple[str, str, int], List[Path]] = defaultdict(list)
        for p in self._paths:
            blocks[(p.source, p.target, p.degree)].append(p)
        for key in blocks:
            blocks[key].sort(key=lambda p: (-len(p.word), p.word))
        ideal: Dict[Tuple[str, str, int], List[Dict[Tuple[str, ...], Any]]] = defaultdict(list)
        for relation in relations:
            shapes = {(p.source, p.target, p.degree) for p in map(self._word_path, relation)}
            if len(shapes) != 1:
                raise InputError("Relations must be homogeneous: one source, target and internal degree")
            src, dst, degree = shapes.pop()
            for u in self._paths:
                if u.target != src:
                    continue
                for v in self._paths:
                    if v.source != dst:
                        continue
                    element = {u.word + word + v.word: _coerce(K, c) for word, c in relation.items()
                               if len(u.word) + len(word) + len(v.word) <= bound}
                    if element:
                        ideal[(u.source, v.target, u.degree + degree + v.degree)].append(element)
        self.basis: List[Path] = []
        self._index: Dict[Tuple[str, Tuple[str, ...]], int] = {}
        pending = []
        for key in sorted(blocks):
            paths = blocks[key]
            words = [p.word for p in paths]
            rows = [[elem.get(w, K.zero) for w in words] for elem in ideal.get(key, [])]
            reduced, pivots = rref(rows, len(words), K)
            for k, p in enumerate(paths):
                if k not in pivots:
                    self._index[(p.source, p.word)] = len(self.basis)
                    self.basis.append(p)
            for row, k in zip(reduced, pivots):
                pending.append((paths[k], [(words[c], row[c]) for c in range(len(words)) if c != k and row[c]]))
        # a pivot path p with row p + sum c_q q reduces to -sum c_q q
        self._reduction: Dict[Tuple[str, Tuple[str, ...]], Element] = {
            (p.source, p.word): {self._index[(p.source, w)]: -c for w, c in rest} for p, rest in pending
        }
        self.length_bound = self._nilpotency_length(bound)

    def _nilpotency_length(self, bound: int) -> int:
        """Smallest L with every path of length L zero in the algebra."""
        by_length: Dict[int, List[Path]] = defaultdict(list)
        for p in self._paths:
            by_length[len(p.word)].append(p)
        for length in range(1, bound + 1):
            if all(not self.normal_form(p.source, p.word) for p in by_length.get(length, [])):
                return length
        raise InputError(f"Paths of length {bound} survive: the algebra is not finite-dimensional within the path bound")

    # -- basis and products -------------------------------------------------

    @property
    def field(self):
        return self.K

    @property
    def dim(self) -> int:
        return len(self.basis)

    def normal_form(self, source: str, word: Tuple[str, ...]) -> Element:
        # words beyond the enumerated paths lie in the ideal
        key = (source, tuple(word))
        if key in self._index:
            return {self._index[key]: self.K.one}
        return dict(self._reduction.get(key, {}))

    def element(self, text: str) -> Element:
        """Element from a path word such as ``a.b`` or ``e1``."""
        text = text.strip()
        if text.startswith("e") and text[1:] in self.vertices:
            return self.idempotent(text[1:])
        word = tuple(text.split("."))
        return self.normal_form(self._word_path(word).source, word)

    def idempotent(self, v: str) -> Element:
        return {self._index[(v, ())]: self.K.one}

    def trivial_index(self, v: str) -> int:
        return self._index[(v, ())]

    @lru_cache(maxsize=None)
    def _product(self, i: int, j: int) -> Tuple[Tuple[int, Any], ...]:
        a, b = self.basis[i], self.basis[j]
        if a.target != b.source:
            return ()
        return tuple(self.normal_form(a.source, a.word + b.word).items())

    def mul(self, x: Element, y: Element) -> Element:
        result: Dict[int, Any] = {}
        for i, c in x.items():
            for j, d in y.items():
                for k, e in self._product(i, j):
                    result[k] = result.get(k, self.K.zero) + c * d * e
        return {k: v for k, v in result.items() if v}

    def add(self, x: Element, y: Element) -> Element:
        result = dict(x)
        for k, v in y.items():
            result[k] = result.get(k, self.K.zero) + v
        return {k: v for k, v in result.items() if v}

    def scale(self, c, x: Element) -> Element:
        return {k: c * v for k, v in x.items() if c * v}

    def neg(self, x: Element) -> Element:
        return {k: -v for k, v in x.items()}

    def basis_between(self, source: str, target: str, degree: int) -> List[int]:
        """Indices of basis paths source -> target of the given degree."""
        if not hasattr(self, "_shapes"):
            self._shapes: Dict[Tuple[str, str, int], List[int]] = defaultdict(list)
            for i, p in enumerate(self.basis):
                self._shapes[(p.source, p.target, p.degree)].append(i)
        return self._shapes.get((source, target, degree), [])

    def degrees_between(self, source: str, target: str) -> List[int]:
        return sorted({p.degree for p in self.basis if p.source == source and p.target == target})

    @property
    def max_degree(self) -> int:
        return max((p.degree for p in self.basis), default=0)

    def scalar_part(self, x: Element, v: str) -> Any:
        return x.get(self._index[(v, ())], self.K.zero)

    def is_invertible(self, x: Element, v: str) -> bool:
        return bool(self.scalar_part(x, v))

    def inverse(self, x: Element, v: str) -> Element:
        """Inverse in the local ring e_v A e_v (scalar part nonzero)."""
        c = self.scalar_part(x, v)
        if not c:
            raise InvariantBreach("Element is not invertible")
        c_inv = self.K.one / c
        nilpotent = self.neg(self.scale(c_inv, {k: val for k, val in x.items() if k != self.trivial_index(v)}))
        result = self.idempotent(v)
        power = self.idempotent(v)
        for _ in range(self.length_bound + 1):
            power = self.mul(power, nilpotent)
            if not power:
                break
            result = self.add(result, power)
        return self.scale(c_inv, result)

    def format_element(self, x: Element) -> str:
        """``2*a.b - c`` style text, the inverse of parse_element."""
        if not x:
            return "0"
        text = ""
        for i, c in sorted(x.items()):
            value = self.K.to_sympy(c)
            sign = "-" if value < 0 else "+"
            value = abs(value)
            term = str(self.basis[i]) if value == 1 else f"{value}*{self.basis[i]}"
            text += (f" {sign} " if text else ("-" if sign == "-" else "")) + term
        return text

    def parse_element(self, text: str) -> Element:
        compact = str(text).replace(" ", "")
        if compact in ("", "0"):
            return {}
        result: Element = {}
        for word, c in _parse_relation(compact).items():
            result = self.add(result, self.scale(_coerce(self.K, c), self.element(".".join(word))))
        return result

    def order_rank(self, v: str) -> int:
        if not self.heredity_order:
            raise InputError("Algebra has no heredity_order")
        return self.heredity_order.index(v)

    # -- modules ------------------------------------------------------------

    def projective(self, v: str, twist: int = 0) -> "GradedModule":
        """P_v<twist> = e_v A with its generator in degree ``twist``."""
        indices = [i for i, p in enumerate(self.basis) if p.source == v]
        position = {i: n for n, i in enumerate(indices)}
        slots = [(self.basis[i].target, self.basis[i].degree + twist) for i in indices]
        action = {}
        for name, a in self.arrows.items():
            matrix = [[self.K.zero] * len(indices) for _ in indices]
            arrow = self.normal_form(a.source, (name,))
            for col, i in enumerate(indices):
                for k, c in self.mul({i: self.K.one}, arrow).items():
                    matrix[position[k]][col] += c
            action[name] = matrix
        return GradedModule(self, slots, action)

    def injective(self, v: str) -> "GradedModule":
        """I(v) = D(A e_v), dual basis of the paths ending at v."""
        indices = [i for i, p in enumerate(self.basis) if p.target == v]
        position = {i: n for n, i in enumerate(indices)}
        slots = [(self.basis[i].source, -self.basis[i].degree) for i in indices]
        action = {}
        for name, a in self.arrows.items():
            matrix = [[self.K.zero] * len(indices) for _ in indices]
            arrow = self.normal_form(a.source, (name,))
            for row, x in enumerate(indices):
                # (b* . a)(x) = b*(a x)
                for k, c in self.mul(arrow, {x: self.K.one}).items():
                    if k in position:
                        matrix[row][position[k]] += c
            action[name] = matrix
        return GradedModule(self, slots, action)

    def standard_module(self, s: str) -> "GradedModule":
        """Delta(s) = P_s modulo the trace of every P_t with t above s."""
        rank = self.order_rank(s)
        higher = set(self.heredity_order[rank + 1:])
        P = self.projective(s)
        generators = []
        for n, i in enumerate(i for i, p in enumerate(self.basis) if p.source == s):
            if self.basis[i].target in higher:
                vector = [self.K.zero] * P.dim
                vector[n] = self.K.one
                generators.append(vector)
        return P.quotient(P.closure(generators))

    def costandard_module(self, s: str) -> "GradedModule":
        """nabla(s): the largest submodule of I(s) with composition factors at or below s."""
        rank = self.order_rank(s)
        allowed = set(self.heredity_order[:rank + 1])
        return self.injective(s).largest_submodule_within(allowed)


# =============================================================================
# MODULES
# =============================================================================


def _coerce(K, value: Fraction):
    den = K(value.denominator)
    if not den:
        raise InputError(f"Coefficient {value} is undefined in {field_name(K)}")
    return K(value.numerator) / den


@dataclass
class GradedModule:
    algebra: QuiverAlgebra
    slots: List[Component]
    action: Dict[str, List[List[Any]]]      # arrow -> matrix; column j is the image of slot j

    @property
    def dim(self) -> int:
        return len(self.slots)

    @property
    def K(self):
        return self.algebra.K

    def zero_vector(self) -> List[Any]:
        return [self.K.zero] * self.dim

    def unit(self, j: int) -> List[Any]:
        v = self.zero_vector()
        v[j] = self.K.one
        return v

    def act(self, vector: Sequence[Any], arrow: str) -> List[Any]:
        matrix = self.action[arrow]
        return [sum((matrix[r][c] * vector[c] for c in range(self.dim) if vector[c]), self.K.zero)
                for r in range(self.dim)]

    def act_path(self, vector: Sequence[Any], word: Sequence[str]) -> List[Any]:
        result = list(vector)
        for name in word:
            result = self.act(result, name)
        return result

    def component_of(self, vector: Sequence[Any]) -> Optional[Component]:
        comps = {self.slots[j] for j, x in enumerate(vector) if x}
        if not comps:
            return None
        if len(comps) > 1:
            raise InvariantBreach(f"Vector is not homogeneous: spans {sorted(comps)}")
        return comps.pop()

    def components(self) -> List[Component]:
        return sorted(set(self.slots))

    def slots_in(self, comp: Component) -> List[int]:
        return [j for j, s in enumerate(self.slots) if s == comp]

    def dimension_vector(self) -> Dict[str, int]:
        counts = {v: 0 for v in self.algebra.vertices}
        for v, _ in self.slots:
            counts[v] += 1
        return counts

    def closure(self, vectors: Iterable[Sequence[Any]]) -> Dict[Component, List[List[Any]]]:
        """Homogeneous basis (per component) of the submodule generated by ``vectors``."""
        basis: Dict[Component, List[List[Any]]] = defaultdict(list)
        queue = [list(v) for v in vectors]
        while queue:
            v = queue.pop()
            comp = self.component_of(v)
            if comp is None:
                continue
            if independent_modulo(basis[comp], [v], self.dim, self.K):
                basis[comp].append(v)
                for name in self.action:
                    queue.append(self.act(v, name))
        return {c: b for c, b in basis.items() if b}

    def submodule(self, basis: Dict[Component, List[List[Any]]]) -> "GradedModule":
        ordered = [(c, v) for c in sorted(basis) for v in basis[c]]
        slots = [c for c, _ in ordered]
        position = {}
        for n, (c, _) in enumerate(ordered):
            position.setdefault(c, []).append(n)
        action = {}
        for name in self.action:
            matrix = [[self.K.zero] * len(ordered) for _ in ordered]
            for col, (_, v) in enumerate(ordered):
                image = self.act(v, name)
                comp = self.component_of(image)
                if comp is None:
                    continue
                coords = solve(basis.get(comp, []), image, self.K)
                if coords is None:
                    raise InvariantBreach("Span is not closed under the arrow action")
                for n, c in zip(position[comp], coords):
                    matrix[n][col] = c
            action[name] = matrix
        return GradedModule(self.algebra, slots, action)

    def quotient(self, sub: Dict[Component, List[List[Any]]]) -> "GradedModule":
        chosen: Dict[Component, List[int]] = {}
        for comp in self.components():
            units = [self.unit(j) for j in self.slots_in(comp)]
            picks = independent_modulo(sub.get(comp, []), units, self.dim, self.K)
            chosen[comp] = [self.slots_in(comp)[k] for k in picks]
        ordered = [(c, j) for c in sorted(chosen) for j in chosen[c]]
        slots = [c for c, _ in ordered]
        position = {j: n for n, (_, j) in enumerate(ordered)}
        action = {}
        for name in self.action:
            matrix = [[self.K.zero] * len(ordered) for _ in ordered]
            for col, (_, j) in enumerate(ordered):
                image = self.act(self.unit(j), name)
                comp = self.component_of(image)
                if comp is None:
                    continue
                base = sub.get(comp, [])
                complement = [self.unit(k) for k in chosen[comp]]
                coords = solve(base + complement, image, self.K)
                if coords is None:
                    raise InvariantBreach("Quotient basis does not span")
                for k, c in zip(chosen[comp], coords[len(base):]):
                    matrix[position[k]][col] = c
            action[name] = matrix
        return GradedModule(self.algebra, slots, action)

    def largest_submodule_within(self, vertices: Iterable[str]) -> "GradedModule":
        """Largest submodule whose composition factors all sit at ``vertices``."""
        allowed = set(vertices)
        K = self.K
        spaces: Dict[Component, List[List[Any]]] = {
            c: [self.unit(j) for j in self.slots_in(c)] for c in self.components() if c[0] in allowed
        }
        changed = True
        while changed:
            changed = False
            for comp in list(spaces):
                basis = spaces[comp]
                conditions = []
                for name, a in self.algebra.arrows.items():
                    if a.source != comp[0]:
                        continue
                    target_slots = self.slots_in((a.target, comp[1] + a.degree))
                    if not target_slots:
                        continue
                    # the image must stay inside the surviving target space
                    kept = [[t[j] for j in target_slots] for t in spaces.get((a.target, comp[1] + a.degree), [])]
                    annihilators = nullspace(kept, len(target_slots), K)
                    images = [[self.act(v, name)[j] for j in target_slots] for v in basis]
                    for y in annihilators:
                        conditions.append([sum((yk * xk for yk, xk in zip(y, img)), K.zero) for img in images])
                if not conditions:
                    continue
                kernel = nullspace(conditions, len(basis), K)
                if len(kernel) < len(basis):
                    changed = True
                    spaces[comp] = [[sum((c[i] * basis[i][k] for i in range(len(basis))), K.zero)
                                     for k in range(self.dim)] for c in kernel]
            spaces = {c: b for c, b in spaces.items() if b}
        return self.submodule(spaces)

    def top_generators(self, basis: Dict[Component, List[List[Any]]]) -> List[Tuple[Component, List[Any]]]:
        """Homogeneous generators of the submodule spanned by ``basis``, minimal modulo its radical."""
        radical: Dict[Component, List[List[Any]]] = defaultdict(list)
        for vectors in basis.values():
            for v in vectors:
                for name in self.action:
                    image = self.act(v, name)
                    comp = self.component_of(image)
                    if comp is not None:
                        radical[comp].append(image)
        generators = []
        for comp in sorted(basis):
            for k in independent_modulo(radical.get(comp, []), basis[comp], self.dim, self.K):
                generators.append((comp, basis[comp][k]))
        return generators

    def full_basis(self) -> Dict[Component, List[List[Any]]]:
        return {c: [self.unit(j) for j in self.slots_in(c)] for c in self.components()}
