import random

from django.test import SimpleTestCase

from gadgets.services.base import PROVENANCE_MERGED
from gadgets.services.composition import cross_compose, merge_layered, trivial_no_instance
from gadgets.services.sat3 import gen_sat3_layered
from graphs.exceptions import GadgetInputError
from graphs.services.formats import CNF
from graphs.services.graph_core import Graph, Instance, distance
from graphs.services.verify import verify_layering
from solvers.services.reports import ANSWER_NO, ANSWER_YES
from solvers.services.solve import ALGO_BRUTE, solve


class ComposeFixturesMixin:

    def get_chains(self, lam, k):
        """k disjoint monotone chains over lam layers, a yes-instance."""
        arcs = [(a * lam + layer, a * lam + layer + 1, 1) for a in range(k) for layer in range(lam - 1)]
        pairs = [(a * lam, a * lam + lam - 1) for a in range(k)]
        layering = [[a * lam + layer for a in range(k)] for layer in range(lam)]
        return Instance(Graph(k * lam, arcs, directed=False), pairs, k, layering)

    def get_sat3_yes(self):
        return gen_sat3_layered(CNF(1, ((1,), (1,))))

    def get_sat3_no(self):
        return gen_sat3_layered(CNF(1, ((1,), (-1,))))


class TrivialNoInstanceTest(SimpleTestCase):

    def test_first_pair_is_cut(self):
        instance = trivial_no_instance(5, 3)

        self.assertEqual(len(instance.layering), 5)
        self.assertIsNone(distance(instance.graph, *instance.pairs[0]))
        self.assertEqual(distance(instance.graph, *instance.pairs[1]), 4)
        self.assertTrue(verify_layering(instance, require_connected=False).feasible)
        self.assertFalse(verify_layering(instance).feasible)

    def test_too_small(self):
        with self.assertRaises(GadgetInputError):
            trivial_no_instance(1, 2)


class MergeLayeredTest(ComposeFixturesMixin, SimpleTestCase):

    def test_yes_with_no_is_a_yes(self):
        merged = merge_layered(self.get_chains(9, 3), trivial_no_instance(9, 3))
        instance = merged.instance

        self.assertEqual(merged.provenance, PROVENANCE_MERGED)
        self.assertEqual(len(instance.layering), 15)
        self.assertEqual(merged.metadata["layers"], 15)
        self.assertEqual(merged.metadata["ell"], 3 * 14)
        self.assertTrue(verify_layering(instance).feasible)
        self.assertEqual(solve(instance, ALGO_BRUTE).answer, ANSWER_YES)

    def test_two_yes_instances(self):
        merged = merge_layered(self.get_chains(9, 3), self.get_chains(9, 3))

        self.assertEqual(len(merged.instance.layering), 15)
        self.assertTrue(verify_layering(merged.instance).feasible)
        self.assertEqual(solve(merged.instance, ALGO_BRUTE).answer, ANSWER_YES)

    def test_order_does_not_matter(self):
        merged = merge_layered(trivial_no_instance(4, 2), self.get_chains(4, 2))
        self.assertEqual(solve(merged.instance, ALGO_BRUTE).answer, ANSWER_YES)

    def test_pair_cut_on_both_sides_is_rejected(self):
        for lam, k in [(6, 2), (9, 3)]:
            with self.assertRaises(GadgetInputError):
                merge_layered(trivial_no_instance(lam, k), trivial_no_instance(lam, k))

    def test_sat3_pairs(self):
        yes, no = self.get_sat3_yes(), self.get_sat3_no()

        self.assertEqual(solve(merge_layered(no, yes).instance, ALGO_BRUTE).answer, ANSWER_YES)
        self.assertEqual(solve(merge_layered(yes, no).instance, ALGO_BRUTE).answer, ANSWER_YES)
        self.assertEqual(solve(merge_layered(no, no).instance, ALGO_BRUTE).answer, ANSWER_NO)

    def test_mismatched_inputs(self):
        with self.assertRaises(GadgetInputError):
            merge_layered(self.get_chains(4, 2), self.get_chains(5, 2))
        with self.assertRaises(GadgetInputError):
            merge_layered(self.get_chains(4, 2), self.get_chains(4, 3))
        unlayered = Instance(Graph(2, [(0, 1, 1)], directed=False), [(0, 1)], 1)
        with self.assertRaises(GadgetInputError):
            merge_layered(unlayered, self.get_chains(2, 1))


class CrossComposeTest(ComposeFixturesMixin, SimpleTestCase):

    def test_three_inputs_are_padded_to_four(self):
        composed = cross_compose([self.get_sat3_no(), self.get_sat3_no(), self.get_sat3_yes()])
        lam, k = 4, 3

        self.assertEqual(composed.metadata["rounds"], 2)
        self.assertEqual(composed.metadata["inputs"], 3)
        self.assertEqual(len(composed.instance.layering), lam + 4 * k)
        self.assertEqual(composed.metadata["ell"], k * (lam + 4 * k - 1))
        self.assertEqual(solve(composed.instance, ALGO_BRUTE).answer, ANSWER_YES)

    def test_all_no_inputs(self):
        composed = cross_compose([self.get_sat3_no(), self.get_sat3_no()])

        self.assertEqual(composed.metadata["rounds"], 1)
        self.assertEqual(solve(composed.instance, ALGO_BRUTE).answer, ANSWER_NO)

    def test_answer_is_the_or_of_the_inputs(self):
        rng = random.Random(17)
        formulas = [((1,), (1,)), ((1,), (-1,)), ((-1,), (-1,)), ((-1,), (1,))]
        for _ in range(30):
            chosen = [rng.choice(formulas) for _ in range(rng.choice([2, 3, 4]))]
            inputs = [gen_sat3_layered(CNF(1, clauses)) for clauses in chosen]
            expected = any(clauses[0] == clauses[1] for clauses in chosen)

            answer = solve(cross_compose(inputs).instance, ALGO_BRUTE).answer
            self.assertEqual(answer, ANSWER_YES if expected else ANSWER_NO, f"inputs {chosen}")

    def test_single_input_is_returned_unchanged(self):
        gadget = self.get_sat3_yes()
        self.assertIs(cross_compose([gadget]), gadget)

        chains = self.get_chains(3, 1)
        wrapped = cross_compose([chains])
        self.assertIs(wrapped.instance, chains)
        self.assertEqual(wrapped.metadata["rounds"], 0)

    def test_nothing_to_compose(self):
        with self.assertRaises(GadgetInputError):
            cross_compose([])
