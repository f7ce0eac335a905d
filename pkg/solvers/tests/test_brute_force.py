from django.test import SimpleTestCase

from graphs.exceptions import PathCapExceededError
from graphs.services.graph_core import Graph, Instance
from solvers.services.brute_force import brute_force_optimum, enumerate_shortest_paths
from solvers.services.reports import ANSWER_NO, ANSWER_YES, MODE_BRUTE_FORCE
from solvers.tests.fixtures import InstanceFixturesMixin


class BruteForceTest(InstanceFixturesMixin, SimpleTestCase):

    def test_single_adjacent_pair(self):
        graph = Graph(2, [(0, 1, 1)], directed=False)
        report = brute_force_optimum(Instance(graph, [(0, 1)], 1))

        self.assertEqual(report.size, 1)
        self.assertTrue(report.optimal)
        self.assertEqual(report.mode, MODE_BRUTE_FORCE)
        self.assertEqual(report.ell_used, 1)

    def test_disjoint_components(self):
        k = 4
        graph = Graph(2 * k, [(2 * i, 2 * i + 1, 1) for i in range(k)], directed=False)
        instance = Instance(graph, [(2 * i, 2 * i + 1) for i in range(k)], k)

        self.assertEqual(brute_force_optimum(instance).size, k)

    def test_conflict(self):
        instance = self.get_conflict_instance(p=2)
        report = brute_force_optimum(instance)

        self.assertEqual(report.size, 1)
        self.assertEqual(report.answer, ANSWER_NO)
        self.assertEqual(report.ell_used, instance.n)
        # Among the optimal single paths the one with fewest arcs wins
        self.assertEqual(report.solution.pair_indices, [1])

    def test_fewest_arcs_among_equal_weight_paths(self):
        graph = Graph(3, [(0, 2, 2), (0, 1, 1), (1, 2, 1)], directed=False)
        report = brute_force_optimum(Instance(graph, [(0, 2)], 1))

        self.assertEqual(report.answer, ANSWER_YES)
        self.assertEqual(report.solution.entries[0][1].vertices, (0, 2))

    def test_enumeration_lists_every_shortest_path(self):
        instance = self.get_diamond_instance()
        paths = enumerate_shortest_paths(instance, 0, path_cap=10)

        self.assertEqual([path.vertices for path in paths], [(0, 1, 3), (0, 2, 3)])

    def test_path_cap_names_the_pair(self):
        with self.assertRaises(PathCapExceededError) as ctx:
            brute_force_optimum(self.get_diamond_instance(), path_cap=1)
        self.assertEqual(ctx.exception.pair_index, 0)

    def get_diamond_instance(self):
        graph = Graph(4, [(0, 1, 1), (0, 2, 1), (1, 3, 1), (2, 3, 1)], directed=False)
        return Instance(graph, [(0, 3)], 1)
