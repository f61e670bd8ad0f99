"""
Exact linear algebra over Q and F_p.

Thin helpers over sympy's DomainMatrix: every matrix is a list of rows of
domain elements, every vector a list of domain elements.
"""

import re
from typing import Any, List, Optional, Sequence, Tuple

from sympy import GF, QQ, isprime
from sympy.polys.matrices import DomainMatrix

from .errors import InputError

Vector = List[Any]


def field_from_spec(spec: str):
    """Parse ``Q`` / ``QQ`` / ``GF(p)`` / ``F_p`` into a sympy domain."""
    text = spec.strip().replace(" ", "")
    if text in ("Q", "QQ"):
        return QQ
    m = re.fullmatch(r"(?:GF\((\d+)\)|F_?(\d+))", text)
    if not m:
        raise InputError(f"Unknown base field '{spec}'")
    p = int(m.group(1) or m.group(2))
    if not isprime(p):
        raise InputError(f"GF({p}): {p} is not prime")
    return GF(p)


def field_name(K) -> str:
    return "Q" if K == QQ else f"GF({K.mod})"


def is_zero_vector(v: Sequence[Any]) -> bool:
    return all(not x for x in v)


def _matrix(rows: Sequence[Sequence[Any]], ncols: int, K) -> DomainMatrix:
    return DomainMatrix([list(r) for r in rows], (len(rows), ncols), K)


def rank(rows: Sequence[Sequence[Any]], ncols: int, K) -> int:
    if not rows or ncols == 0:
        return 0
    return _matrix(rows, ncols, K).rank()


def rref(rows: Sequence[Sequence[Any]], ncols: int, K) -> Tuple[List[Vector], Tuple[int, ...]]:
    if not rows or ncols == 0:
        return [], ()
    reduced, pivots = _matrix(rows, ncols, K).rref()
    return reduced.to_list()[:len(pivots)], tuple(pivots)


def nullspace(rows: Sequence[Sequence[Any]], ncols: int, K) -> List[Vector]:
    """Basis of {x : M x = 0}."""
    if ncols == 0:
        return []
    if not rows:
        return [[K.one if i == j else K.zero for j in range(ncols)] for i in range(ncols)]
    return _matrix(rows, ncols, K).nullspace().to_list()


def columns_to_rows(columns: Sequence[Sequence[Any]], nrows: int) -> List[Vector]:
    return [[col[i] for col in columns] for i in range(nrows)]


def independent_modulo(base: Sequence[Vector], candidates: Sequence[Vector], dim: int, K) -> List[int]:
    """Indices of a maximal subset of ``candidates`` independent modulo span(base)."""
    columns = list(base) + list(candidates)
    if not columns or dim == 0:
        return []
    _, pivots = rref(columns_to_rows(columns, dim), len(columns), K)
    return [p - len(base) for p in pivots if p >= len(base)]


def solve(columns: Sequence[Vector], target: Vector, K) -> Optional[Vector]:
    """Coefficients c with sum c_i columns[i] = target, or None."""
    dim = len(target)
    if not columns:
        return [] if is_zero_vector(target) else None
    augmented = columns_to_rows(list(columns) + [target], dim)
    if dim == 0:
        return [K.zero] * len(columns)
    reduced, pivots = rref(augmented, len(columns) + 1, K)
    if len(columns) in pivots:
        return None
    solution = [K.zero] * len(columns)
    for row, p in zip(reduced, pivots):
        solution[p] = row[-1]
    return solution
