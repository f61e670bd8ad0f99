import unittest
import sys
import os
import random
from itertools import permutations, product

# Add project root to path
sys.path.append(os.path.join(os.path.dirname(__file__), '..'))

from humphreys.affine_weyl import translation
from humphreys.cells_type_a import (
    AffinePermutation, Partition, ambc_shape, canonical_cell_weights, chain_density_shape, from_affine_permutation,
    omega_generator, orbit_of_weight, orientation, rs_shape, to_affine_permutation,
)
from humphreys.errors import InputError
from humphreys.root_data import gl, is_dominant, sl


class TestPartition(unittest.TestCase):
    def test_validation(self):
        with self.assertRaises(InputError):
            Partition((1, 2))
        with self.assertRaises(InputError):
            Partition((2, 0))
        self.assertEqual(Partition.of([1, 0, 3]), Partition((3, 1)))

    def test_transpose(self):
        self.assertEqual(Partition((3, 1)).transpose(), Partition((2, 1, 1)))
        self.assertEqual(Partition((2, 2)).transpose(), Partition((2, 2)))


class TestAffinePermutation(unittest.TestCase):
    def test_window_validation(self):
        with self.assertRaises(InputError):
            AffinePermutation(2, (1, 3))
        with self.assertRaises(InputError):
            AffinePermutation(3, (1, 2))

    def test_inverse_and_shift_class(self):
        w = AffinePermutation(3, (5, 0, 1))
        identity = AffinePermutation(3, (1, 2, 3))
        self.assertEqual(w * w.inverse(), identity)
        self.assertEqual(w.inverse() * w, identity)
        self.assertEqual(omega_generator(3).shift_class, 1)
        self.assertEqual(identity.shift_class, 0)

    def test_round_trip_through_extended_group(self):
        datum = gl(3)
        for lam in product(range(-2, 3), repeat=3):
            w = translation(datum, lam)
            perm = to_affine_permutation(w)
            self.assertEqual(from_affine_permutation(perm), w)

    def test_sl_rejected(self):
        with self.assertRaises(InputError):
            to_affine_permutation(translation(sl(2), (0,)))


class TestShapes(unittest.TestCase):
    def test_rs_shape(self):
        self.assertEqual(rs_shape([3, 1, 2]), Partition((2, 1)))
        self.assertEqual(rs_shape([1, 2, 3, 4]), Partition((4,)))
        self.assertEqual(rs_shape([4, 3, 2, 1]), Partition((1, 1, 1, 1)))
        with self.assertRaises(InputError):
            rs_shape([1, 1])

    def test_finite_permutations_match_rs(self):
        for n in (2, 3, 4):
            for window in permutations(range(1, n + 1)):
                self.assertEqual(ambc_shape(AffinePermutation(n, window)), rs_shape(window))

    def test_sampled_finite_permutations_of_five(self):
        rng = random.Random(5)
        for _ in range(60):
            window = rng.sample(range(1, 6), 5)
            self.assertEqual(ambc_shape(AffinePermutation(5, tuple(window))), rs_shape(window))

    def test_periodic_shapes(self):
        self.assertEqual(ambc_shape(omega_generator(3)), Partition((3,)))
        self.assertEqual(ambc_shape(AffinePermutation(2, (3, 2))), Partition((1, 1)))
        self.assertEqual(ambc_shape(AffinePermutation(2, (0, 3))), Partition((1, 1)))

    def test_shape_is_partition_of_n(self):
        for lam in product(range(-3, 4), repeat=3):
            shape = ambc_shape(to_affine_permutation(translation(gl(3), lam)))
            self.assertEqual(shape.size, 3)


def windows(n, bound):
    """Every affine permutation of size n with window entries in [-bound, bound]."""
    for window in product(range(-bound, bound + 1), repeat=n):
        if sorted(x % n for x in window) == list(range(n)):
            yield AffinePermutation(n, window)


class TestCellInvariance(unittest.TestCase):
    def test_inverse_has_same_shape(self):
        for n in (2, 3, 4):
            for w in windows(n, 2 * n):
                self.assertEqual(ambc_shape(w), ambc_shape(w.inverse()), w.window)

    def test_stable_under_length_zero_shift(self):
        for n in (2, 3):
            om = omega_generator(n)
            for w in windows(n, 2 * n):
                shape = ambc_shape(w)
                self.assertEqual(ambc_shape(om * w), shape, w.window)
                self.assertEqual(ambc_shape(w * om), shape, w.window)
                self.assertEqual(ambc_shape(om.inverse() * w), shape, w.window)

    def test_agrees_with_chain_densities(self):
        for n in (2, 3):
            for w in windows(n, n):
                self.assertEqual(ambc_shape(w), chain_density_shape(w), w.window)

    def test_hand_worked_element(self):
        # 0, 2, 4, 3, 5, 7, ...: two positions per period on a chain, never three
        self.assertEqual(ambc_shape(AffinePermutation(3, (0, 2, 4))), Partition((2, 1)))


class TestOrbitOfWeight(unittest.TestCase):
    def test_anchors(self):
        for n in (2, 3):
            self.assertIn(orientation(n), ("identity", "transpose"))
            self.assertEqual(orbit_of_weight((0,) * n, n), Partition((n,)))
            deep = tuple(-8 * (n - i) for i in range(1, n + 1))
            self.assertEqual(orbit_of_weight(deep, n), Partition((1,) * n))

    def test_canonical_weights(self):
        regular = canonical_cell_weights(Partition((2,)), 2, 2)
        self.assertIn((0, 0), regular)
        self.assertTrue(all(is_dominant(gl(2), lam) for lam in regular))
        self.assertIn((0, -8), canonical_cell_weights(Partition((1, 1)), 2, 8))
        with self.assertRaises(InputError):
            canonical_cell_weights(Partition((2,)), 3, 1)


if __name__ == '__main__':
    unittest.main()
