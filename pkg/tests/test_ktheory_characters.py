import unittest
import sys
import os

# Add project root to path
sys.path.append(os.path.join(os.path.dirname(__file__), '..'))

from humphreys import cache
from humphreys.errors import InputError, NotInSpanError
from humphreys.ktheory_characters import (
    LaurentCharacter, LaurentPoly, Labelled, TwistLabel, aj_character, calibrate_root_sign, delta_bar_character,
    free_module_character, invariant_degrees, leading_twist, nabla_bar_character, nilpotent_cone_character,
    pushforward_character, pushforward_label, q_kostant, to_t_variable, triangular_expansion, verify_aj_sum_identity,
    weyl_character,
)
from humphreys.root_data import gl, sl

q = LaurentPoly.monomial
ONE = LaurentPoly.one()


class TestLaurentPoly(unittest.TestCase):
    def test_arithmetic(self):
        self.assertEqual((ONE + q(1)) * (ONE - q(1)), ONE - q(2))
        self.assertEqual(q(2, 3).shift(-5), q(-3, 3))
        self.assertTrue((q(4) - q(4)).is_zero())
        self.assertEqual(LaurentPoly.of({0: 1, 2: 1, 6: 1}).truncate(4), LaurentPoly.of({0: 1, 2: 1}))
        self.assertEqual(LaurentPoly.of({-1: 2, 3: -5}).at_one(), -3)
        self.assertEqual(q(1) * 3, q(1, 3))

    def test_t_variable(self):
        self.assertEqual(to_t_variable(q(1)), q(-1, -1))
        self.assertEqual(to_t_variable(q(2, 3)), q(-2, 3))
        # the class of the brace twist {1} is t itself
        self.assertEqual(to_t_variable(TwistLabel().brace().class_factor()), q(1))

    def test_twist_labels(self):
        label = TwistLabel().brace(2).angle(1)
        self.assertEqual(label, TwistLabel(-1, 2))
        self.assertEqual(label.class_factor(), q(-1))


class TestCharacters(unittest.TestCase):
    def setUp(self):
        cache.clear()

    def test_partition_function(self):
        self.assertEqual(q_kostant(sl(2), (4,), 8), q(4))
        self.assertTrue(q_kostant(sl(2), (-2,), 8).is_zero())
        # alpha_1 + alpha_2 is itself a root: two ways
        self.assertEqual(q_kostant(sl(3), (1, 1), 8), q(2) + q(4))
        with self.assertRaises(InputError):
            q_kostant(sl(2), (0,), -1)

    def test_root_sign_calibration(self):
        self.assertEqual(calibrate_root_sign(sl(2)), 1)
        self.assertIn(calibrate_root_sign(gl(2)), (1, -1))

    def test_zero_weight_matches_nilpotent_cone(self):
        for datum in (sl(2), gl(2), sl(3)):
            self.assertEqual(aj_character(datum, (0,) * datum.lattice_dim, 6), nilpotent_cone_character(datum, 6))
        character = aj_character(sl(2), (0,), 6)
        self.assertEqual(character.coeff((0,)), ONE)
        self.assertEqual(character.coeff((2,)), q(2))
        self.assertEqual(character.coeff((4,)), q(4))

    def test_antidominant_weight(self):
        character = aj_character(sl(2), (-2,), 8)
        self.assertEqual(character.coeff((0,)), q(2) - ONE)
        self.assertEqual(character.coeff((2,)).min_degree(), leading_twist(sl(2), (-2,)))
        self.assertEqual(leading_twist(sl(2), (-2,)), 4)
        self.assertEqual(leading_twist(sl(2), (3,)), 0)

    def test_invariant_degrees(self):
        self.assertEqual(invariant_degrees(sl(3)), [2, 3])
        self.assertEqual(invariant_degrees(gl(2)), [1, 2])

    def test_weyl_character(self):
        self.assertEqual(weyl_character(sl(2), (2,)), {(2,): 1, (0,): 1, (-2,): 1})
        self.assertEqual(weyl_character(sl(3), (1, 1))[(0, 0)], 2)

    def test_sum_identity(self):
        self.assertTrue(verify_aj_sum_identity(sl(2), (1,), 6))
        self.assertTrue(verify_aj_sum_identity(sl(2), (2,), 6))
        self.assertTrue(verify_aj_sum_identity(gl(2), (1, 0), 4))

    def test_pushforward_of_dominant_weight(self):
        self.assertEqual(pushforward_character(gl(2), (3, 0), 6), aj_character(gl(2), (3, 0), 6))

    def test_pushforward_labels(self):
        self.assertEqual(pushforward_label(sl(2), (2,)), ((2,), 1))
        self.assertEqual(pushforward_label(sl(2), (-2,)), ((2,), 0))
        self.assertEqual(nabla_bar_character(sl(2), (2,), 6).twist(1), aj_character(sl(2), (2,), 6))
        self.assertEqual(delta_bar_character(sl(2), (0,), 6), aj_character(sl(2), (0,), 6))

    def test_non_dominant_storage_rejected(self):
        with self.assertRaises(InputError):
            LaurentCharacter.build(sl(2), 4, {(-1,): ONE})


class TestTriangularExpansion(unittest.TestCase):
    def setUp(self):
        cache.clear()
        self.datum = sl(2)
        self.labels = [(0,), (1,), (2,)]
        self.basis = [Labelled(lam, aj_character(self.datum, lam, 6)) for lam in self.labels]

    def test_free_modules_expand_triangularly(self):
        targets = [Labelled(lam, free_module_character(self.datum, lam, 6)) for lam in self.labels]
        result = triangular_expansion(self.datum, targets, self.basis)
        self.assertTrue(result.triangular)
        # 1 + q^2 is 1 modulo q but is not 1
        self.assertFalse(result.unitriangular)
        self.assertEqual(result.diagonal, (ONE, ONE + q(2), ONE + q(2)))
        self.assertEqual(result.matrix[0][0], ONE)
        self.assertEqual(result.matrix[1][1], ONE + q(2))
        self.assertEqual(result.matrix[2][0], q(2))
        self.assertEqual(result.matrix[2][2], ONE + q(2))
        self.assertTrue(result.matrix[0][2].is_zero())

    def test_basis_expands_in_itself_with_unit_diagonal(self):
        result = triangular_expansion(self.datum, self.basis, self.basis)
        self.assertTrue(result.unitriangular)
        self.assertEqual(result.diagonal, (ONE, ONE, ONE))
        self.assertTrue(result.matrix[2][0].is_zero())

    def test_not_in_span(self):
        targets = [Labelled((3,), aj_character(self.datum, (3,), 6))]
        with self.assertRaises(NotInSpanError):
            triangular_expansion(self.datum, targets, self.basis)

    def test_duplicate_leads_rejected(self):
        with self.assertRaises(InputError):
            triangular_expansion(self.datum, [], self.basis + [self.basis[0]])


if __name__ == '__main__':
    unittest.main()
