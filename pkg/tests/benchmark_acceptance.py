#!/usr/bin/env python3
"""
Humphreys - Acceptance Benchmark

Runs the hand-verifiable anchors end to end through the command layer and
times each one against its target.

Usage:
    python tests/benchmark_acceptance.py

Metrics:
    - Execution Time (seconds)
    - Checks passed per case
"""

import sys
import time
from dataclasses import dataclass
from itertools import product
from typing import Callable, List, Tuple

# Add project root to path
sys.path.insert(0, '.')

from humphreys import cache
from humphreys.affine_weyl import length, make_element, separating_hyperplanes
from humphreys.cells_type_a import orbit_of_weight, orientation
from humphreys.cli import cmd_affine, cmd_char, cmd_cotstruct, cmd_humphreys
from humphreys.root_data import gl, sl, weyl_group


# =============================================================================
# TEST CASES
# =============================================================================

Check = Tuple[str, object, object]  # (label, observed, expected)


@dataclass
class AcceptanceCase:
    """One acceptance anchor: a callable producing (label, observed, expected) checks."""
    name: str
    run: Callable[[], List[Check]]
    expected_time: float  # seconds


def length_oracle() -> List[Check]:
    mismatches = 0
    for datum in (sl(2), sl(3)):
        for v in weyl_group(datum):
            for lam in product(range(-4, 5), repeat=datum.lattice_dim):
                w = make_element(datum, v, lam)
                mismatches += length(w) != separating_hyperplanes(w)
    return [("closed form vs hyperplane count", mismatches, 0)]


def cell_anchors() -> List[Check]:
    checks: List[Check] = []
    for n in (2, 3):
        deep = [-8 * (n - i) for i in range(1, n + 1)]
        checks.append((f"n={n} weight 0", list(orbit_of_weight([0] * n, n).parts), [n]))
        checks.append((f"n={n} deep antidominant", list(orbit_of_weight(deep, n).parts), [1] * n))
        checks.append((f"n={n} orientation", orientation(n) in ("identity", "transpose"), True))
    return checks


def humphreys_anchors() -> List[Check]:
    expected = {(0, 0): [2], (3, 0): [2], (4, 0): [1, 1], (8, 0): [1, 1]}
    checks: List[Check] = []
    for mu, orbit in expected.items():
        report = cmd_humphreys(2, 5, list(mu))
        checks.append((f"mu={mu} orbit", report.orbit, orbit))
    checks.append(("mu=(0,0) conditions", cmd_humphreys(2, 5, [0, 0]).nontrivial_conditions, []))
    checks.append(("mu=(4,0) conditions", cmd_humphreys(2, 5, [4, 0]).nontrivial_conditions, [[1, 0]]))
    return checks


def affine_anchors() -> List[Check]:
    datum = sl(2)
    return [
        ("len s0,s1", cmd_affine("len", datum, ["s0,s1"]).result, 2),
        ("wmin(-1) length", cmd_affine("wmin", datum, ["-1"]).result["length"], 0),
        ("order 0 vs 1", cmd_affine("order", datum, ["0", "1"]).result, "incomparable"),
        ("gl2 t(1,0) length", length(make_element(gl(2), None, (1, 0))), 1),
    ]


def character_anchors() -> List[Check]:
    datum = sl(2)
    report = cmd_char("aj", datum, [0], 4)
    triangular = cmd_char("triangular", datum, [0], 6, bound=4)
    return [
        ("root sign", report.root_sign, 1),
        ("A_0 weights", [term.weight for term in report.terms], [[4], [2], [0]]),
        ("sum identity", all(cmd_char("freecheck", datum, [k], 4).holds for k in range(3)), True),
        ("triangular", triangular.triangular, True),
        ("unitriangular", triangular.unitriangular, False),
        ("diagonal", triangular.diagonal, [{"0": 1}] + [{"0": 1, "2": 1}] * 4),
    ]


def cotstruct_anchors() -> List[Check]:
    verify = cmd_cotstruct("verify", "a2.alg")
    tilting = cmd_cotstruct("tilting", "a2.alg")
    surjectivity = cmd_cotstruct("surjectivity", "a2.alg", width=3)
    checks: List[Check] = [
        ("a2 verdict", verify.verdict, "exceptional"),
        ("a2 dualizable", verify.dualizable, True),
        ("bounded sample size", verify.sampled_objects, 55 + 55 * 56 // 2),
        ("axioms on bounded sample", verify.cotstructure_violations, []),
        ("quotient functor", surjectivity.all_surjective, True),
    ]
    for obj in tilting.objects:
        checks.append((f"T_{obj.vertex} factorization", obj.factorization_holds, True))
    return checks


def silting_census() -> List[Check]:
    return [("basic two-term silting objects", cmd_cotstruct("silting-census", "a2.alg").count, 5)]


TEST_CASES = [
    AcceptanceCase(name="Length Oracle", run=length_oracle, expected_time=5.0),
    AcceptanceCase(name="Cell Anchors", run=cell_anchors, expected_time=5.0),
    AcceptanceCase(name="Humphreys GL2 p=5", run=humphreys_anchors, expected_time=5.0),
    AcceptanceCase(name="Affine Commands", run=affine_anchors, expected_time=5.0),
    AcceptanceCase(name="Characters SL2", run=character_anchors, expected_time=30.0),
    AcceptanceCase(name="Co-t-structure A2", run=cotstruct_anchors, expected_time=180.0),
    AcceptanceCase(name="Silting Census A2", run=silting_census, expected_time=60.0),
]


# =============================================================================
# RUNNER
# =============================================================================

def run_case(case: AcceptanceCase) -> bool:
    """Run one case, print its failed checks and timing; True when every check passed."""
    start_time = time.time()
    try:
        checks = case.run()
    except Exception as e:
        print(f"❌ {case.name}: {e}")
        return False
    elapsed = time.time() - start_time
    failures = [c for c in checks if c[1] != c[2]]
    for label, observed, expected in failures:
        print(f"   ❌ {label}: got {observed!r}, expected {expected!r}")
    status = "❌ FAIL" if failures else ("✅ PASS" if elapsed <= case.expected_time else "⚠️ SLOW")
    print(f"{status} {case.name:<22} {len(checks) - len(failures)}/{len(checks)} checks "
          f"in {elapsed:.2f}s (target {case.expected_time}s)")
    return not failures


def main():
    cache.clear()
    results = [run_case(case) for case in TEST_CASES]
    print(f"\n{sum(results)}/{len(results)} cases passed")
    sys.exit(0 if all(results) else 1)


if __name__ == "__main__":
    main()
