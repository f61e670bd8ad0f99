"""
JSON report models for the command line.

Every report carries the ``schema`` version tag and is emitted with sorted
keys, so identical inputs give byte-identical output.
"""

import json
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field

from .config import SCHEMA_VERSION


class Report(BaseModel):
    schema_version: str = Field(SCHEMA_VERSION, alias="schema")

    def as_dict(self) -> Dict[str, Any]:
        if hasattr(self, "model_dump"):
            return self.model_dump(by_alias=True)
        return self.dict(by_alias=True)

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), sort_keys=True, indent=2)


# -- Humphreys pipeline --------------------------------------------------------

class CalibrationBlock(Report):
    orientation: str                    # "identity" | "transpose"
    lower_closure: str
    anchors_ok: bool = True


class BlockLabel(Report):
    weight: List[int]
    word: List[str]
    length: int
    exact: bool


class RankConditionRow(Report):
    power: int
    max_rank: int
    generator_count: int
    vacuous_on_N: bool
    implied: bool


class HumphreysReport(Report):
    status: str = "ok"
    n: int
    p: int
    mu: List[int]
    box: int
    block_labels: List[BlockLabel]
    cell_shape: List[int]
    orbit: List[int]
    orbit_dimension: int
    rank_conditions: List[RankConditionRow]
    nontrivial_conditions: List[List[int]]      # (power, max_rank) pairs
    calibration: CalibrationBlock
    warnings: List[str] = []


# -- characters ----------------------------------------------------------------

class CharacterTerm(Report):
    weight: List[int]
    poly: Dict[str, int]
    poly_t: Dict[str, int]


class CharacterReport(Report):
    status: str = "ok"
    kind: str                           # "aj" | "nabla"
    group: str
    weight: List[int]
    trunc: int
    root_sign: int
    terms: List[CharacterTerm]


class IdentityCheckReport(Report):
    status: str = "ok"
    group: str
    weight: List[int]
    trunc: int
    holds: bool


class TriangularReport(Report):
    status: str = "ok"
    group: str
    labels: List[List[int]]
    matrix: List[List[Dict[str, int]]]
    triangular: bool
    unitriangular: bool
    diagonal: List[Dict[str, int]]
    trunc: int


class AffineReport(Report):
    status: str = "ok"
    command: str
    group: str
    result: Any


# -- co-t-structures -------------------------------------------------------------

class PreExceptionalReport(Report):
    status: str = "ok"
    algebra: str
    order: List[str]
    verdict: str
    generated: Optional[bool]
    dualizable: Optional[bool]
    violations: List[Dict[str, Any]]
    self_extensions: List[Dict[str, Any]]
    cotstructure_violations: List[Dict[str, Any]]
    tstructure_witnesses: List[Dict[str, Any]]
    sampled_objects: int = 0


class SiltingCensusReport(Report):
    status: str = "ok"
    algebra: str
    indecomposables: List[Dict[str, Any]]
    silting_sets: List[List[int]]
    count: int


class TiltingObject(BaseModel):
    vertex: str
    complex: Dict[str, Any]
    delta_multiplicities: Dict[str, int]
    factorization_holds: bool


class TiltingReport(Report):
    status: str = "ok"
    algebra: str
    verdict: str
    objects: List[TiltingObject]


class SurjectivityReport(Report):
    status: str = "ok"
    algebra: str
    top: str
    pairs: int
    checks: int
    all_surjective: bool
    failures: List[Dict[str, Any]]


class ErrorReport(Report):
    status: str = "error"
    code: str
    message: str
    details: Dict[str, Any] = {}
