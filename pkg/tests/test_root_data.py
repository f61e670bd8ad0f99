import unittest
import sys
import os

# Add project root to path
sys.path.append(os.path.join(os.path.dirname(__file__), '..'))

from humphreys.errors import InputError
from humphreys.root_data import (
    as_weight, delta, delta_star, dom, dominant_data, dot_dominant, from_cartan, fundamental_weights, gl,
    highest_roots, inversion_count, is_dominant, is_regular_for, load_datum, longest_element, parabolic_dominant,
    pairing, parse_datum, positive_roots, rho, root_lattice_coords, simple_reflection, sl, varsigma, weyl_act,
    weyl_group,
)

FIXTURES = os.path.join(os.path.dirname(__file__), '..', 'humphreys', 'fixtures')


class TestRootData(unittest.TestCase):
    def test_gl_basics(self):
        datum = gl(3)
        self.assertEqual(datum.name, "GL_3")
        self.assertEqual(len(positive_roots(datum)), 3)
        self.assertEqual(len(weyl_group(datum)), 6)
        self.assertEqual(rho(datum), (2, 1, 0))
        self.assertEqual(len(longest_element(datum).word), 3)

    def test_sl_highest_root(self):
        datum = sl(3)
        tops = highest_roots(datum)
        self.assertEqual(len(tops), 1)
        self.assertEqual(tops[0].simple_coords, (1, 1))
        self.assertEqual(rho(datum), (1, 1))

    def test_pairing_and_action(self):
        datum = gl(2)
        self.assertEqual(pairing(datum, (1, -1), (3, 0)), 3)
        self.assertEqual(weyl_act(simple_reflection(datum, 1), (3, 0)), (0, 3))
        with self.assertRaises(InputError):
            pairing(datum, (1, -1, 0), (3, 0))

    def test_custom_b2(self):
        datum = from_cartan([[2, -1], [-2, 2]])
        self.assertEqual(len(positive_roots(datum)), 4)
        self.assertEqual(len(weyl_group(datum)), 8)

    def test_affine_cartan_rejected(self):
        with self.assertRaises(InputError):
            from_cartan([[2, -2], [-2, 2]])

    def test_dominance(self):
        datum = gl(2)
        data = dominant_data(datum, (0, 3))
        self.assertEqual(data.dom, (3, 0))
        self.assertEqual(data.delta, 1)
        self.assertEqual(data.v.act((0, 3)), (3, 0))
        self.assertEqual(dom(datum, (5, 1)), (5, 1))
        self.assertEqual(delta(datum, (5, 1)), 0)
        self.assertEqual(delta_star(datum, (3, 0)), 1)
        self.assertEqual(delta_star(datum, (2, 2)), 0)

    def test_dot_dominant(self):
        datum = sl(2)
        self.assertIsNone(dot_dominant(datum, (-1,)))
        self.assertEqual(dot_dominant(datum, (-3,)), ((1,), -1))
        self.assertEqual(dot_dominant(datum, (2,)), ((2,), 1))

    def test_root_lattice(self):
        datum = gl(2)
        self.assertEqual(root_lattice_coords(datum, (1, -1)), (1,))
        self.assertIsNone(root_lattice_coords(datum, (1, 0)))

    def test_fundamental_weights_and_varsigma(self):
        datum = gl(3)
        self.assertEqual(fundamental_weights(datum), ((1, 0, 0), (1, 1, 0)))
        self.assertEqual(varsigma(datum, [1, 2]), (2, 1, 0))
        with self.assertRaises(InputError):
            varsigma(datum, [3])

    def test_parabolic_membership(self):
        datum = gl(3)
        self.assertTrue(parabolic_dominant(datum, [1], (2, 1, 5)))
        self.assertFalse(is_dominant(datum, (2, 1, 5)))
        self.assertFalse(is_regular_for(datum, [1], (1, 1, 0)))
        self.assertTrue(is_regular_for(datum, [2], (1, 1, 0)))

    def test_inversions_match_length(self):
        datum = sl(3)
        for v in weyl_group(datum):
            self.assertEqual(inversion_count(v), len(v.word))

    def test_input_errors(self):
        datum = gl(2)
        with self.assertRaises(InputError):
            as_weight(datum, (1, 2, 3))
        with self.assertRaises(ValueError):
            simple_reflection(datum, 2)
        with self.assertRaises(InputError):
            parse_datum("type = E9\nrank = 2")
        with self.assertRaises(InputError):
            parse_datum("type = GL")

    def test_datum_files(self):
        self.assertEqual(load_datum(os.path.join(FIXTURES, 'gl2.datum')), gl(2))
        self.assertEqual(load_datum(os.path.join(FIXTURES, 'sl3.datum')), sl(3))
        custom = parse_datum("type = custom\ncartan = 2,-1; -1,2  # A2")
        self.assertEqual(len(positive_roots(custom)), 3)


if __name__ == '__main__':
    unittest.main()
