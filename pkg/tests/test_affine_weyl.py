import unittest
import sys
import os
from itertools import combinations, product

# Add project root to path
sys.path.append(os.path.join(os.path.dirname(__file__), '..'))

from humphreys import cache
from humphreys.affine_weyl import (
    ExtAffineElement, affine_simple_reflections, bruhat_leq, coset_elements, coxeter_normal_form,
    diagram_automorphism, evaluate, identity_element, length, linear_extension, min_coset_rep, omega_label,
    same_component, separating_hyperplanes, translation, weight_leq,
)
from humphreys.errors import InputError
from humphreys.root_data import gl, sl, weyl_group


def elements_up_to(datum, max_length):
    """Coxeter-part elements reachable by words of length <= max_length, with one reduced word each."""
    gens = affine_simple_reflections(datum)
    found = {identity_element(datum): ()}
    frontier = [identity_element(datum)]
    for _ in range(max_length):
        nxt = []
        for w in frontier:
            for label, s in gens:
                ws = w * s
                if ws not in found and length(ws) == length(w) + 1:
                    found[ws] = found[w] + (label,)
                    nxt.append(ws)
        frontier = nxt
    return found


def subword_set(datum, word):
    gens = dict(affine_simple_reflections(datum))
    result = set()
    for size in range(len(word) + 1):
        for picked in combinations(range(len(word)), size):
            w = identity_element(datum)
            for i in picked:
                w = w * gens[word[i]]
            result.add(w)
    return result


class TestLength(unittest.TestCase):
    def test_length_matches_hyperplane_count(self):
        for datum, radius in ((sl(2), 3), (gl(2), 2), (sl(3), 2)):
            for v in weyl_group(datum):
                for lam in product(range(-radius, radius + 1), repeat=datum.lattice_dim):
                    w = ExtAffineElement(v, tuple(lam))
                    self.assertEqual(length(w), separating_hyperplanes(w), f"{datum.name} {w!r}")

    def test_simple_reflections_have_length_one(self):
        for datum in (sl(2), sl(3), gl(3)):
            for label, s in affine_simple_reflections(datum):
                self.assertEqual(length(s), 1, label)
                self.assertEqual(length(s * s), 0)

    def test_normal_form_round_trip(self):
        datum = sl(3)
        for lam in product(range(-2, 3), repeat=2):
            w = translation(datum, lam)
            form = coxeter_normal_form(w)
            self.assertEqual(form.length, length(w))
            self.assertEqual(length(form.omega), 0)
            self.assertEqual(evaluate(form), w)


class TestMinimalCosetRepresentatives(unittest.TestCase):
    def test_strict_minimum_over_coset(self):
        for datum, radius in ((sl(2), 4), (gl(2), 2), (sl(3), 2)):
            for lam in product(range(-radius, radius + 1), repeat=datum.lattice_dim):
                w = min_coset_rep(datum, lam)
                lengths = sorted(length(x) for x in coset_elements(datum, lam))
                self.assertEqual(length(w), lengths[0])
                self.assertLess(lengths[0], lengths[1])
                self.assertEqual(w.trans, tuple(lam))

    def test_sl2_anchors(self):
        datum = sl(2)
        self.assertEqual(length(min_coset_rep(datum, (-1,))), 0)
        self.assertEqual(length(min_coset_rep(datum, (1,))), 1)
        self.assertEqual(length(min_coset_rep(datum, (0,))), 0)

    def test_length_zero_element_swaps_affine_nodes(self):
        omega = min_coset_rep(sl(2), (-1,))
        self.assertEqual(diagram_automorphism(omega), {"s1": "s0", "s0": "s1"})
        self.assertIn("s0->s1", omega_label(omega))


class TestBruhatOrder(unittest.TestCase):
    def setUp(self):
        cache.clear()

    def test_matches_subword_property_affine_a1(self):
        datum = sl(2)
        elements = elements_up_to(datum, 8)
        below = {w: subword_set(datum, word) for w, word in elements.items()}
        for u in elements:
            for w in elements:
                self.assertEqual(bruhat_leq(u, w), u in below[w], f"{u!r} <= {w!r}")

    def test_matches_subword_property_affine_a2_sample(self):
        datum = sl(3)
        elements = elements_up_to(datum, 4)
        below = {w: subword_set(datum, word) for w, word in elements.items()}
        for u in elements:
            for w in elements:
                self.assertEqual(bruhat_leq(u, w), u in below[w])

    def test_components_are_incomparable(self):
        datum = sl(2)
        self.assertFalse(same_component(translation(datum, (0,)), translation(datum, (1,))))
        self.assertFalse(weight_leq(datum, (0,), (1,)))
        self.assertFalse(weight_leq(datum, (1,), (0,)))
        self.assertTrue(weight_leq(datum, (0,), (2,)))

    def test_mixed_data_rejected(self):
        with self.assertRaises(InputError):
            bruhat_leq(identity_element(sl(2)), identity_element(sl(3)))

    def test_linear_extension_respects_order(self):
        datum = sl(2)
        weights = [(4,), (-2,), (0,), (2,)]
        ordered = linear_extension(datum, weights)
        for i, lam in enumerate(ordered):
            for mu in ordered[:i]:
                self.assertFalse(weight_leq(datum, lam, mu) and lam != mu)


if __name__ == '__main__':
    unittest.main()
