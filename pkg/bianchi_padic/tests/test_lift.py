"""Divisor tree bookkeeping and the ordinary lift at depth one."""

import unittest
from fractions import Fraction

from bianchi_padic.arith import CycNum, PadicEmbedding, embed_padic
from bianchi_padic.exceptions import LiftError
from bianchi_padic.heckechar import HeckeCharacter, canonical_cm_character, character_family
from bianchi_padic.lift import (
    PRIME,
    PRIME_BAR,
    DivisorTree,
    LiftResult,
    LiftState,
    eigen_check,
    eigen_lift,
    initial_lift,
    measure_check,
    uniqueness_check,
)
from bianchi_padic.quadfield import Cusp, FieldK, factor_prime
from bianchi_padic.symbols import PartialSymbol, TableSums

BETA = CycNum.gaussian(-1, 2)
C_ZERO = CycNum.gaussian(Fraction(4, 50), Fraction(3, 50))
N = 3


def table_symbol(K, prime, prime_bar):
    table = {HeckeCharacter.trivial(K).fingerprint(): C_ZERO}
    for index, psi in enumerate(c for c in character_family(K, prime * prime_bar) if c.is_primitive()):
        table[psi.fingerprint()] = CycNum.gaussian(index + 1, -index)
    return PartialSymbol(TableSums(BETA, prime, prime_bar, table), 0)


class TestDivisorTree(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        cls.K = FieldK(4)
        cls.prime, cls.prime_bar = factor_prime(cls.K, 5, seed=2).primes
        cls.tree = DivisorTree(cls.prime, cls.prime_bar, (1, 1))

    def test_level_sizes(self):
        self.assertEqual(self.tree.node_count(0, 0), 1)
        self.assertEqual(self.tree.node_count(1, 0), 5)
        self.assertEqual(self.tree.node_count(0, 1), 5)
        self.assertEqual(self.tree.node_count(1, 1), 25)
        self.assertEqual(len(self.tree), 36)

    def test_refinement_path(self):
        self.assertEqual(self.tree.path(), [(0, 0), (1, 0), (1, 1)])
        deeper = DivisorTree(self.prime, self.prime_bar, (2, 1))
        self.assertEqual(deeper.path(), [(0, 0), (1, 0), (1, 1), (2, 1)])

    def test_children_partition_the_disc(self):
        root_children = self.tree.children(self.tree.root)
        self.assertEqual(len(root_children), 5)
        self.assertTrue(all(child.level == (1, 0) for child in root_children))
        grandchildren = [g for child in root_children for g in self.tree.children(child)]
        self.assertEqual(len(set(grandchildren)), 25)
        self.assertEqual(len(self.tree.children(self.tree.root, PRIME_BAR)), 5)
        self.assertEqual(self.tree.children(grandchildren[0]), [])
        self.assertEqual(self.tree.expansion(0, 0), PRIME)

    def test_cusps_stay_in_C(self):
        report = self.tree.c_stability(canonical_cm_character(self.K).modulus)
        self.assertTrue(report.ok)
        self.assertEqual(report.checked, 36)

    def test_serialization(self):
        data = self.tree.serialize()
        self.assertEqual(data["nodes"], 36)
        self.assertEqual(data["levels"]["1,1"], 25)
        self.assertEqual(data["path"], [[0, 0], [1, 0], [1, 1]])

    def test_unit_rescaling(self):
        i = self.K.elem(0, 1)
        rescaled = DivisorTree(self.prime, self.prime_bar, (1, 1), unit=i)
        self.assertEqual(rescaled.pi, i * self.tree.pi)
        self.assertEqual(rescaled.pi_bar, i.conj() * self.tree.pi_bar)

    def test_negative_depth(self):
        with self.assertRaises(LiftError):
            DivisorTree(self.prime, self.prime_bar, (-1, 0))


class TestEigenLift(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        cls.K = FieldK(4)
        cls.prime, cls.prime_bar = factor_prime(cls.K, 5, seed=2).primes
        cls.embedding = PadicEmbedding.build(4, 5, N + 12, 2)
        cls.symbol = table_symbol(cls.K, cls.prime, cls.prime_bar)
        cls.result = eigen_lift(cls.symbol, cls.embedding, BETA, 1, N)

    def test_initial_lift_specializes(self):
        zero = Cusp.from_element(self.K, self.K.elem(0))
        start = initial_lift(self.symbol, zero, self.embedding, 4, N)
        self.assertEqual(start[0, 0], embed_padic(C_ZERO, self.embedding))
        self.assertEqual(start[1, 1].absolute_precision, 0)

    def test_total_mass_is_the_classical_value(self):
        scale = self.result.state.scale_exponent
        expected = embed_padic(C_ZERO * 5 ** scale, self.embedding)
        self.assertTrue(self.result.root()[0, 0].agrees_with(expected, N))

    def test_sweeps(self):
        levels = [record.level for record in self.result.state.log]
        self.assertEqual(levels, [(0, 0), (1, 0), (1, 1)])
        self.assertTrue(self.result.state.monotone())

    def test_nodes_sum_to_parents(self):
        tree = self.result.tree
        for node in tree.level_nodes(1, 0):
            total = None
            for child in tree.children(node):
                value = self.result.node_value(child)
                total = value if total is None else total + value
            self.assertTrue(total.agrees_to_profile(self.result.node_value(node)))

    def test_guaranteed_precision(self):
        self.assertEqual(self.result.guaranteed(0, 0), N)
        self.assertEqual(self.result.guaranteed(2, 0), 1)
        self.assertEqual(self.result.guaranteed(0, 1), 1)

    def test_checks(self):
        self.assertTrue(measure_check(self.result).ok)
        check = eigen_check(self.result)
        self.assertTrue(check.ok, check.details)
        self.assertEqual(set(self.result.state.extra), {PRIME, PRIME_BAR})

    def test_extra_sweep_at_p(self):
        extra = self.result.extra_sweep(PRIME)
        self.assertEqual(self.result.tree.nodes_at(2, 1)[0].level, (2, 1))
        self.assertEqual(len(self.result.tree.nodes_at(2, 1)), 125)
        self.assertTrue(extra[0, 0].agrees_with(self.result.final()[0, 0], N))

    def test_extra_sweep_at_pbar(self):
        extra = self.result.extra_sweep(PRIME_BAR)
        self.assertEqual(len(self.result.tree.nodes_at(1, 2)), 125)
        self.assertTrue(extra[0, 0].agrees_with(self.result.final()[0, 0], N))
        self.assertIs(self.result.extra_sweep(PRIME_BAR), extra)

    def test_extra_sweep_needs_the_lifter(self):
        detached = LiftResult(self.result.tree, LiftState((1, 1), self.result.state.eigenvalue, 0), 0, N, self.result.M)
        with self.assertRaises(LiftError):
            detached.extra_sweep(PRIME)

    def test_uniqueness(self):
        self.assertTrue(uniqueness_check(self.symbol, self.embedding, BETA, 1, N).ok)

    def test_report(self):
        data = self.result.as_dict()
        self.assertEqual(data["depth"], [1, 1])
        self.assertEqual(data["tree"]["nodes"], 36)
        self.assertEqual(len(self.result.admissibility()), (N + 1) ** 2)

    def test_non_ordinary_eigenvalue_is_rejected(self):
        with self.assertRaises(LiftError):
            eigen_lift(self.symbol, self.embedding, CycNum.gaussian(-1, -2), 1, N)

    def test_unknown_node(self):
        outside = DivisorTree(self.prime, self.prime_bar, (2, 0)).leaves()[0]
        with self.assertRaises(LiftError):
            self.result.node_value(outside)


if __name__ == "__main__":
    unittest.main()
