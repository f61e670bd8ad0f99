import unittest
import sys
import os
import random

# Add project root to path
sys.path.append(os.path.join(os.path.dirname(__file__), '..'))

from humphreys.affine_weyl import affine_simple_reflections, identity_element, min_coset_rep
from humphreys.alcoves import (
    alcove_element, alcove_of, block_labels, default_box, dot_act_p, element_offsets, fundamental_alcove_contains,
    lower_closure_contains, steinberg_weight,
)
from humphreys.errors import BoxExhausted, InputError
from humphreys.root_data import gl, sl


class TestLowerClosures(unittest.TestCase):
    def test_random_weights_land_in_one_alcove(self):
        rng = random.Random(7)
        for datum in (sl(2), gl(2), sl(3), gl(3)):
            for p in (5, 7):
                for _ in range(500):
                    lam = tuple(rng.randint(-20, 20) for _ in range(datum.lattice_dim))
                    w = alcove_element(datum, lam, p)
                    self.assertTrue(lower_closure_contains(w, lam, p))
                    self.assertEqual(alcove_of(datum, lam, p).wall_offsets, element_offsets(w))

    def test_half_open_walls(self):
        datum = sl(2)
        e = identity_element(datum)
        self.assertTrue(lower_closure_contains(e, (-1,), 5))
        self.assertTrue(lower_closure_contains(e, (3,), 5))
        self.assertFalse(lower_closure_contains(e, (4,), 5))
        self.assertFalse(fundamental_alcove_contains(datum, (-1,), 5))
        self.assertTrue(fundamental_alcove_contains(datum, (3,), 5))

    def test_neighbouring_alcoves_differ(self):
        datum = sl(3)
        base = element_offsets(identity_element(datum))
        for label, s in affine_simple_reflections(datum):
            self.assertNotEqual(element_offsets(s), base, label)

    def test_bad_p(self):
        with self.assertRaises(InputError):
            dot_act_p(identity_element(sl(2)), (0,), 1)
        with self.assertRaises(InputError):
            alcove_element(sl(2), (0,), 0)


class TestDotAction(unittest.TestCase):
    def test_affine_reflection_of_zero(self):
        datum = sl(2)
        gens = dict(affine_simple_reflections(datum))
        self.assertEqual(dot_act_p(identity_element(datum), (0,), 5), (0,))
        self.assertEqual(dot_act_p(gens["s0"], (0,), 5), (8,))
        self.assertEqual(dot_act_p(gens["s1"], (0,), 5), (-2,))

    def test_steinberg(self):
        self.assertEqual(steinberg_weight(gl(2), 5), (4, 0))
        self.assertEqual(steinberg_weight(sl(3), 5), (4, 4))


class TestBlockLabels(unittest.TestCase):
    def test_trivial_weight_has_exact_label(self):
        found = block_labels(gl(2), (0, 0), 5)
        self.assertTrue(found.labels)
        self.assertIn((0, 0), [label.weight for label in found.labels if label.exact])
        for label in found.labels:
            self.assertEqual(label.element, min_coset_rep(gl(2), label.weight))
            self.assertTrue(lower_closure_contains(label.element, (0, 0), 5))

    def test_exact_only_filter(self):
        found = block_labels(gl(2), (0, 0), 5, exact_only=True)
        self.assertTrue(all(label.exact for label in found.labels))
        for label in found.labels:
            self.assertEqual(dot_act_p(label.element, (0, 0), 5), (0, 0))

    def test_default_box_is_fixed(self):
        bound = default_box(gl(2), (8, 0), 5)
        found = block_labels(gl(2), (8, 0), 5)
        self.assertTrue(found.labels)
        self.assertTrue(all(max(abs(x) for x in label.weight) <= bound for label in found.labels))
        explicit = block_labels(gl(2), (8, 0), 5, box=bound)
        self.assertEqual([label.weight for label in explicit.labels], [label.weight for label in found.labels])

    def test_errors(self):
        with self.assertRaises(InputError):
            block_labels(gl(2), (0, 3), 5)
        with self.assertRaises(BoxExhausted):
            block_labels(gl(2), (8, 0), 5, box=0)


if __name__ == '__main__':
    unittest.main()
