import unittest
import sys
import os

# Add project root to path
sys.path.append(os.path.join(os.path.dirname(__file__), '..'))

from humphreys.errors import InputError
from humphreys.quiver_algebra import QuiverAlgebra, load_algebra, parse_algebra

FIXTURES = os.path.join(os.path.dirname(__file__), '..', 'humphreys', 'fixtures')

SQUARE = """
[field]
Q
[vertices]
1 2 3 4
[arrows]
a: 1 -> 2, 1
b: 1 -> 3, 1
c: 2 -> 4, 1
d: 3 -> 4, 1
[relations]
a.c - b.d
"""

CYCLE = """
[vertices]
1 2
[arrows]
a: 1 -> 2, 1
b: 2 -> 1, 1
"""


class TestParsing(unittest.TestCase):
    def test_a2_fixture(self):
        algebra = load_algebra(os.path.join(FIXTURES, 'a2.alg'))
        self.assertEqual(algebra.dim, 3)
        self.assertEqual(algebra.vertices, ["1", "2"])
        self.assertEqual(algebra.heredity_order, ["2", "1"])
        self.assertEqual(algebra.arrows["a"].degree, 1)
        self.assertEqual(algebra.max_degree, 1)

    def test_errors(self):
        with self.assertRaises(InputError):
            parse_algebra("1 2\n[vertices]\n1")
        with self.assertRaises(InputError):
            parse_algebra("[vertices]\n1 1")
        with self.assertRaises(InputError):
            parse_algebra("[vertices]\n1\n[arrows]\na: 1 -> 3")
        with self.assertRaises(InputError):
            parse_algebra("[vertices]\n1 2\n[arrows]\na 1 2")
        with self.assertRaises(InputError):
            parse_algebra("[vertices]\n1 2\n[heredity_order]\n1")
        with self.assertRaises(InputError):
            QuiverAlgebra(parse_algebra("[field]\nGF(4)\n[vertices]\n1"))

    def test_infinite_dimensional_rejected(self):
        with self.assertRaises(InputError):
            QuiverAlgebra(parse_algebra(CYCLE))

    def test_relations_cut_the_cycle(self):
        algebra = QuiverAlgebra(parse_algebra(CYCLE + "[relations]\na.b\nb.a\n"))
        self.assertEqual(algebra.dim, 4)
        self.assertEqual(algebra.mul(algebra.element("a"), algebra.element("b")), {})

    def test_bad_relations(self):
        with self.assertRaises(InputError):
            QuiverAlgebra(parse_algebra(CYCLE + "[relations]\na - e1\n"))
        with self.assertRaises(InputError):
            QuiverAlgebra(parse_algebra(CYCLE + "[relations]\na.a\n"))
        with self.assertRaises(InputError):
            QuiverAlgebra(parse_algebra("[field]\nGF(3)\n" + CYCLE + "[relations]\n1/3*a.b\nb.a\n"))


class TestMultiplication(unittest.TestCase):
    def setUp(self):
        self.algebra = load_algebra(os.path.join(FIXTURES, 'a2.alg'))

    def test_paths_compose_left_to_right(self):
        A = self.algebra
        a = A.element("a")
        self.assertEqual(A.mul(A.idempotent("1"), a), a)
        self.assertEqual(A.mul(a, A.idempotent("2")), a)
        self.assertEqual(A.mul(a, A.idempotent("1")), {})
        self.assertEqual(A.mul(A.idempotent("2"), a), {})

    def test_commutative_square(self):
        A = QuiverAlgebra(parse_algebra(SQUARE))
        self.assertEqual(A.dim, 9)
        self.assertEqual(A.element("a.c"), A.element("b.d"))
        self.assertEqual(A.mul(A.element("a"), A.element("c")), A.element("b.d"))
        self.assertEqual(len(A.basis_between("1", "4", 2)), 1)
        self.assertEqual(A.degrees_between("1", "4"), [2])

    def test_format_and_parse(self):
        A = self.algebra
        x = A.add(A.scale(A.K(2), A.element("a")), A.neg(A.idempotent("1")))
        text = A.format_element(x)
        self.assertEqual(A.parse_element(text), x)
        self.assertEqual(A.format_element({}), "0")

    def test_inverse_in_local_ring(self):
        A = self.algebra
        x = A.scale(A.K(2), A.idempotent("1"))
        self.assertEqual(A.mul(x, A.inverse(x, "1")), A.idempotent("1"))
        self.assertFalse(A.is_invertible(A.element("a"), "1"))


class TestModules(unittest.TestCase):
    def setUp(self):
        self.algebra = load_algebra(os.path.join(FIXTURES, 'a2.alg'))

    def test_projectives(self):
        P1 = self.algebra.projective("1")
        self.assertEqual(P1.dimension_vector(), {"1": 1, "2": 1})
        self.assertEqual(sorted(P1.slots), [("1", 0), ("2", 1)])
        self.assertEqual(self.algebra.projective("2", twist=3).slots, [("2", 3)])

    def test_standard_and_costandard(self):
        A = self.algebra
        self.assertEqual(A.standard_module("1").dimension_vector(), {"1": 1, "2": 1})
        self.assertEqual(A.standard_module("2").dimension_vector(), {"1": 0, "2": 1})
        self.assertEqual(A.costandard_module("1").dimension_vector(), {"1": 1, "2": 0})
        self.assertEqual(A.costandard_module("2").dimension_vector(), {"1": 0, "2": 1})

    def test_injective(self):
        I2 = self.algebra.injective("2")
        self.assertEqual(I2.dimension_vector(), {"1": 1, "2": 1})

    def test_submodule_closure(self):
        P1 = self.algebra.projective("1")
        top = P1.unit(P1.slots.index(("1", 0)))
        self.assertEqual(sum(len(b) for b in P1.closure([top]).values()), 2)
        socle = P1.unit(P1.slots.index(("2", 1)))
        sub = P1.closure([socle])
        self.assertEqual(P1.quotient(sub).dimension_vector(), {"1": 1, "2": 0})
        self.assertEqual(len(P1.top_generators(P1.full_basis())), 1)

    def test_no_order(self):
        algebra = QuiverAlgebra(parse_algebra("[vertices]\n1"))
        with self.assertRaises(InputError):
            algebra.order_rank("1")


if __name__ == '__main__':
    unittest.main()
