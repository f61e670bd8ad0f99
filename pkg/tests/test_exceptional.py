import unittest
import sys
import os

# Add project root to path
sys.path.append(os.path.join(os.path.dirname(__file__), '..'))

from humphreys.complexes import costandard_complex, projective, shift
from humphreys.errors import InputError, NotCoquasiError, PreconditionError
from humphreys.exceptional import (
    PreExceptionalResult, Violation, construct_indecomposable_silting, costandard_family, factorization_holds,
    in_glued_coheart, quotient_functor_surjectivity_check, standard_family, surjectivity_samples, verify_algebra,
    verify_pre_exceptional,
)
from humphreys.quiver_algebra import load_algebra, parse_algebra, QuiverAlgebra

FIXTURES = os.path.join(os.path.dirname(__file__), '..', 'humphreys', 'fixtures')


class TestVerdicts(unittest.TestCase):
    def test_verdict_from_self_extensions(self):
        up = Violation("self_extension", "1", "1", 1, 0, 1)
        down = Violation("self_extension", "1", "1", -1, 0, 1)
        self.assertEqual(PreExceptionalResult(["1"], generated=True).verdict, "exceptional")
        self.assertEqual(PreExceptionalResult(["1"], self_extensions=[down], generated=True).verdict,
                         "co_quasi_exceptional")
        self.assertEqual(PreExceptionalResult(["1"], self_extensions=[up], generated=True).verdict,
                         "quasi_exceptional")
        self.assertEqual(PreExceptionalResult(["1"], self_extensions=[up, down], generated=True).verdict,
                         "pre_exceptional")
        self.assertEqual(PreExceptionalResult(["1"]).verdict, "inconclusive")


class TestFamilies(unittest.TestCase):
    def setUp(self):
        self.alg = load_algebra(os.path.join(FIXTURES, 'a2.alg'))

    def test_a2_is_exceptional_and_dualizable(self):
        delta, nabla, result = verify_algebra(self.alg)
        self.assertEqual(result.violations, [])
        self.assertTrue(result.generated)
        self.assertEqual(result.verdict, "exceptional")
        self.assertTrue(result.dualizable)
        self.assertEqual(set(result.iota), {"1", "2"})
        self.assertEqual(nabla["1"].shape(), {-1: (("2", 1),), 0: (("1", 0),)})
        self.assertEqual(delta["1"].shape(), {0: (("1", 0),)})

    def test_reversed_order_is_caught(self):
        nabla = costandard_family(self.alg)
        result = verify_pre_exceptional(None, nabla, ["1", "2"])
        self.assertEqual(result.verdict, "not_pre_exceptional")
        self.assertIn(Violation("vanishing", "1", "2", 1, 1, 1), result.violations)
        self.assertIsNone(result.dualizable)

    def test_mismatched_order(self):
        with self.assertRaises(InputError):
            verify_pre_exceptional(None, costandard_family(self.alg), ["1"])

    def test_one_vertex_algebra(self):
        one = load_algebra(os.path.join(FIXTURES, 'one_vertex.alg'))
        _, nabla, result = verify_algebra(one)
        self.assertEqual(result.verdict, "exceptional")
        self.assertTrue(result.dualizable)
        self.assertEqual(nabla["1"].shape(), {0: (("1", 0),)})

    def test_missing_order(self):
        bare = QuiverAlgebra(parse_algebra("[vertices]\n1"))
        with self.assertRaises(PreconditionError):
            standard_family(bare)


class TestSiltingObjects(unittest.TestCase):
    def setUp(self):
        self.alg = load_algebra(os.path.join(FIXTURES, 'a2.alg'))
        self.delta, self.nabla, self.result = verify_algebra(self.alg)

    def test_silting_objects_are_projective(self):
        for s in ("1", "2"):
            T = construct_indecomposable_silting(self.alg, s, self.result, (self.delta, self.nabla))
            self.assertEqual(T.minimal.shape(), {0: ((s, 0),)})
            self.assertEqual(T.filtration_length, 1)
            self.assertTrue(factorization_holds(T))
            self.assertEqual(in_glued_coheart(T.complex, self.delta, self.nabla), [])

    def test_requires_coquasi_family(self):
        bad = verify_pre_exceptional(None, self.nabla, ["1", "2"])
        with self.assertRaises(NotCoquasiError):
            construct_indecomposable_silting(self.alg, "1", bad, (self.delta, self.nabla))
        with self.assertRaises(InputError):
            construct_indecomposable_silting(self.alg, "9", self.result, (self.delta, self.nabla))


class TestQuotientFunctor(unittest.TestCase):
    def setUp(self):
        self.alg = load_algebra(os.path.join(FIXTURES, 'a2.alg'))
        self.P1 = projective(self.alg, "1")
        self.P2 = projective(self.alg, "2")
        self.S1 = costandard_complex(self.alg, "1")

    def test_small_samples_are_surjective(self):
        result = quotient_functor_surjectivity_check(self.alg, [(self.P1, self.P1), (self.P1, self.S1)])
        self.assertEqual(result.top, "1")
        self.assertTrue(result.checks)
        self.assertTrue(result.all_surjective)
        self.assertEqual(result.failures, [])

    def test_width_three_sample(self):
        pairs = surjectivity_samples(self.alg, 3)
        # three placements each of P1 and P2, two of S1, three twists
        self.assertEqual(len(pairs), 24 * 24)
        for X, Y in pairs:
            self.assertTrue(0 <= X.min_degree and X.max_degree <= 2)
            self.assertTrue(-2 <= Y.min_degree and Y.max_degree <= 0)

    def test_preconditions(self):
        with self.assertRaises(PreconditionError):
            quotient_functor_surjectivity_check(self.alg, [(shift(self.P1, 2), self.P1)])
        with self.assertRaises(PreconditionError):
            quotient_functor_surjectivity_check(self.alg, [(self.P1, shift(self.P2, -2))])


if __name__ == '__main__':
    unittest.main()
