import math
import random
import time
from itertools import combinations

from django.test import SimpleTestCase, tag

from graphs.exceptions import ParameterTooLargeError
from graphs.services.graph_core import Graph, Instance, lex_dijkstra
from graphs.services.verify import verify_solution
from solvers.services.color_coding import (
    DETERMINISTIC,
    RANDOMIZED,
    ColorCodingService,
    color_coding_exact,
    colorful_base_case,
    dp_fill,
)
from solvers.services.colorings import DeterministicFamily, random_coloring
from solvers.services.reports import (
    ANSWER_NO,
    ANSWER_NOT_FOUND,
    ANSWER_YES,
    MODE_CC_DETERMINISTIC,
    MODE_CC_RANDOMIZED,
    Coloring,
)
from solvers.tests.fixtures import InstanceFixturesMixin


class BaseCaseTest(InstanceFixturesMixin, SimpleTestCase):

    def setUp(self):
        self.instance = self.get_single_pair_instance()
        self.coloring = Coloring((0, 1, 2), 3)

    def test_empty_mask(self):
        self.assertEqual(colorful_base_case(self.instance, self.coloring, 0), (math.inf, None))

    def test_full_mask_matches_lex_dijkstra(self):
        arcs, witness = colorful_base_case(self.instance, self.coloring, 0b111)

        self.assertEqual(arcs, lex_dijkstra(self.instance.graph, 0)[2].hops)
        self.assertEqual(witness[0], 0)
        self.assertEqual(witness[1].vertices, (0, 1, 2))

    def test_missing_middle_color_breaks_the_path(self):
        self.assertEqual(colorful_base_case(self.instance, self.coloring, 0b101)[0], math.inf)

    def test_only_distance_preserving_pairs_count(self):
        # Inside {0, 4, 3} pair (0, 3) only has the longer detour left
        instance = self.get_detour_instance()
        coloring = Coloring((0, 1, 2, 3, 4), 5)

        self.assertEqual(colorful_base_case(instance, coloring, 0b11001)[0], math.inf)
        self.assertEqual(colorful_base_case(instance, coloring, 0b01011)[0], 2)

    def get_detour_instance(self):
        graph = Graph(5, [(0, 1, 1), (1, 3, 1), (0, 4, 2), (4, 3, 1)], directed=False)
        return Instance(graph, [(0, 3)], 1)


class DpFillTest(InstanceFixturesMixin, SimpleTestCase):

    def test_single_path_table_is_the_base_case(self):
        instance = self.get_single_pair_instance()
        coloring = Coloring((0, 1, 2), 3)
        table = dp_fill(instance, coloring, 1, 2)

        for mask in range(8):
            arcs, _ = colorful_base_case(instance, coloring, mask)
            expected = None if arcs == math.inf else arcs
            self.assertEqual(table.value(mask, 1), expected)

    def test_disjoint_components_add_up(self):
        instance = self.get_two_component_instance()
        table = dp_fill(instance, Coloring((0, 1, 2, 3, 4), 5), 2, 3)

        self.assertEqual(table.value(table.full_mask, 2), 1 + 2)
        solution = table.extract(table.full_mask, 2)
        self.assertEqual(solution.pair_indices, [0, 1])

    def test_conflict_has_no_colorful_pair_of_paths(self):
        instance = self.get_conflict_instance(p=2)
        table = dp_fill(instance, Coloring((0, 1, 2, 3), 4), 2, 2)

        self.assertIsNone(table.value(table.full_mask, 2))

    def test_wrong_color_count_is_rejected(self):
        with self.assertRaises(ValueError):
            dp_fill(self.get_single_pair_instance(), Coloring((0, 1, 2), 3), 1, 1)

    def test_table_invariants_and_colorful_soundness(self):
        rng = random.Random(13)
        checked = 0
        for index in range(60):
            instance = self.get_random_instance(rng)
            service = ColorCodingService(instance)
            p = max(1, len(service.connectable))
            ell = 3
            coloring = random_coloring(instance.n, service.relevant, p + ell, seed=index, ell=ell, iteration=0)
            table = service.fill(coloring, p, ell)

            for r in range(1, p + 1):
                for mask in range(table.full_mask + 1):
                    value = table.value(mask, r)
                    if value is None:
                        continue
                    # Every path has at least one arc
                    self.assertGreaterEqual(value, r)
                    for bit in range(table.num_colors):
                        larger = table.value(mask | (1 << bit), r)
                        self.assertIsNotNone(larger)
                        self.assertLessEqual(larger, value)
                    solution = table.extract(mask, r)
                    self.assertEqual(solution.size, r)
                    self.assertEqual(solution.total_arcs, value)
                    self.assertTrue(verify_solution(instance, solution).feasible)
                    checked += 1
        self.assertGreater(checked, 0)


@tag("slow")
class DpFillGrowthTest(SimpleTestCase):

    def get_grid_instance(self):
        arcs = [(3 * row + col, 3 * row + col + 1, 1) for row in range(3) for col in range(2)]
        arcs += [(3 * row + col, 3 * row + col + 3, 1) for row in range(2) for col in range(3)]
        return Instance(Graph(9, arcs, directed=False), [(0, 8), (2, 6)], 2)

    def time_fill(self, service, p, ell):
        coloring = random_coloring(service.instance.n, service.relevant, p + ell, seed=0, ell=ell, iteration=0)
        best = math.inf
        for _ in range(3):
            start = time.perf_counter()
            service.fill(coloring, p, ell)
            best = min(best, time.perf_counter() - start)
        return best

    def test_time_grows_exponentially_in_ell(self):
        # Table size doubles per extra color; interpreter overhead flattens the small cases
        service = ColorCodingService(self.get_grid_instance())
        timings = [self.time_fill(service, 2, ell) for ell in range(2, 9)]
        ratio = (timings[-1] / timings[0]) ** (1 / (len(timings) - 1))

        self.assertGreaterEqual(ratio, 1.5, f"timings {timings}")
        self.assertLessEqual(ratio, 5, f"timings {timings}")


class ColorCodingExactTest(InstanceFixturesMixin, SimpleTestCase):

    def test_single_pair(self):
        report = color_coding_exact(self.get_single_pair_instance())

        self.assertEqual(report.answer, ANSWER_YES)
        self.assertEqual(report.ell_used, 2)
        self.assertEqual(report.solution.entries[0][1].vertices, (0, 1, 2))
        self.assertTrue(report.optimal)
        self.assertEqual(report.mode, MODE_CC_DETERMINISTIC)

    def test_conflict_is_a_certified_no(self):
        instance = self.get_conflict_instance(p=2)
        report = color_coding_exact(instance)

        self.assertEqual(report.answer, ANSWER_NO)
        self.assertEqual(report.ell_used, instance.n)
        self.assertTrue(report.optimal)

    def test_p_zero_short_circuits(self):
        report = color_coding_exact(self.get_single_pair_instance().with_p(0))

        self.assertEqual(report.answer, ANSWER_YES)
        self.assertEqual(report.size, 0)
        self.assertEqual(report.iterations, 0)

    def test_ell_limit_leaves_the_answer_open(self):
        report = color_coding_exact(self.get_single_pair_instance(), max_ell=1)

        self.assertEqual(report.answer, ANSWER_NOT_FOUND)
        self.assertTrue(report.budget_exhausted)
        self.assertFalse(report.optimal)

    def test_randomized_mode_is_reproducible(self):
        instance = self.get_two_component_instance()
        first = color_coding_exact(instance, mode=RANDOMIZED, seed=7)
        second = color_coding_exact(instance, mode=RANDOMIZED, seed=7)

        self.assertEqual(first, second)
        self.assertEqual(first.mode, MODE_CC_RANDOMIZED)
        # Randomized answers never claim optimality
        self.assertFalse(first.optimal)
        self.assertIn(first.answer, (ANSWER_YES, ANSWER_NOT_FOUND))
        self.assertTrue(verify_solution(instance, first.solution).feasible)

    def test_randomized_no_is_not_certified(self):
        report = color_coding_exact(self.get_conflict_instance(p=2), mode=RANDOMIZED, seed=1)

        self.assertEqual(report.answer, ANSWER_NOT_FOUND)
        self.assertFalse(report.budget_exhausted)

    def test_iteration_cap_is_reported(self):
        report = color_coding_exact(self.get_conflict_instance(p=2), mode=RANDOMIZED, max_iterations=3)

        self.assertEqual(report.answer, ANSWER_NOT_FOUND)
        self.assertTrue(report.budget_exhausted)
        self.assertEqual(report.iterations, 3)

    def test_too_many_colors(self):
        instance = self.get_conflict_instance(p=2)
        service = ColorCodingService(instance)
        service.max_colors = 3

        with self.assertRaises(ParameterTooLargeError):
            service.solve(2, mode=DETERMINISTIC)


class DeterministicFamilyTest(SimpleTestCase):

    def test_identity_when_colors_suffice(self):
        family = DeterministicFamily(5, [1, 3], 3)

        self.assertEqual(family.strategy, DeterministicFamily.IDENTITY)
        self.assertEqual([coloring.colors for coloring in family], [(0, 0, 0, 1, 0)])

    def test_exhaustive_enumeration(self):
        family = DeterministicFamily(3, [0, 1, 2], 2, exhaustive_bound=8)

        self.assertEqual(family.strategy, DeterministicFamily.EXHAUSTIVE)
        self.assertEqual(len(list(family)), 8)

    def test_cover_separates_every_subset(self):
        relevant = list(range(9))
        family = DeterministicFamily(9, relevant, 4, seed=3, exhaustive_bound=0)

        self.assertEqual(family.strategy, DeterministicFamily.COVERING)
        colorings = list(family)
        self.assertEqual(len(colorings), len(family))
        for subset in combinations(relevant, 4):
            self.assertTrue(any(coloring.is_colorful(subset) for coloring in colorings), subset)

    def test_cover_size_is_bounded(self):
        with self.assertRaises(ParameterTooLargeError):
            DeterministicFamily(30, list(range(30)), 10, exhaustive_bound=0, covering_bound=1000)
