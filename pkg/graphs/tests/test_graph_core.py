import random
from fractions import Fraction

import networkx as nx
from django.test import SimpleTestCase

from graphs.exceptions import InvalidInstanceError, UnreachableTargetError
from graphs.services.graph_core import (
    UNREACHABLE,
    DistLabel,
    Graph,
    Instance,
    Path,
    distance,
    iter_dag_paths,
    lex_dijkstra,
    min_arc_shortest_path,
    parse_weight,
    relevant_vertices,
    shortest_path_dag,
)


class GraphModelTest(SimpleTestCase):

    def test_parallel_arcs_keep_the_lighter_weight(self):
        graph = Graph(2, [(0, 1, 3), (0, 1, Fraction(1, 2))])

        self.assertEqual(graph.arc_count, 1)
        self.assertEqual(graph.weight(0, 1), Fraction(1, 2))
        self.assertIsNone(graph.weight(1, 0))

    def test_undirected_edges_are_stored_both_ways(self):
        graph = Graph(3, [(0, 1, 1), (1, 2, 2)], directed=False)

        self.assertEqual(graph.arc_count, 4)
        self.assertEqual(graph.edge_count, 2)
        self.assertTrue(graph.has_arc(2, 1))
        self.assertEqual(graph.degree(1), 2)

    def test_self_loops_and_bad_ids_are_rejected(self):
        with self.assertRaises(InvalidInstanceError):
            Graph(2, [(1, 1, 1)])
        with self.assertRaises(InvalidInstanceError):
            Graph(2, [(0, 2, 1)])
        with self.assertRaises(InvalidInstanceError):
            Graph(2, [(0, 1, -1)])

    def test_parse_weight(self):
        self.assertEqual(parse_weight("3/2"), Fraction(3, 2))
        self.assertEqual(parse_weight("6/4"), Fraction(3, 2))
        self.assertEqual(parse_weight(4), Fraction(4))
        for bad in ("-1", "1/0", "x", "1.5"):
            with self.assertRaises(ValueError):
                parse_weight(bad)

    def test_instance_invariants(self):
        graph = Graph(3, [(0, 1, 1), (1, 2, 1)])
        with self.assertRaises(InvalidInstanceError):
            Instance(graph, [(0, 2)], 2)
        with self.assertRaises(InvalidInstanceError):
            Instance(graph, [(1, 1)], 1)
        with self.assertRaises(InvalidInstanceError):
            Instance(graph, [(0, 2)], 1, [[0], [1]])

        instance = Instance(graph, [(0, 2), (1, 2)], 1, [[0], [1], [2]])
        self.assertEqual(instance.k, 2)

    def test_layers_are_kept_in_vertex_order(self):
        graph = Graph(4, [(0, 1, 1), (3, 2, 1)])
        instance = Instance(graph, [(0, 1), (3, 2)], 2, [[3, 0], [2, 1]])

        self.assertEqual(instance.layering, ((0, 3), (1, 2)))
        self.assertEqual(instance, Instance(graph, [(0, 1), (3, 2)], 2, [[0, 3], [1, 2]]))

    def test_dist_label_order(self):
        # Lower distance wins, then fewer arcs; unreachable is largest
        self.assertLess(DistLabel(Fraction(1), 5), DistLabel(Fraction(2), 1))
        self.assertLess(DistLabel(Fraction(2), 1), DistLabel(Fraction(2), 3))
        self.assertLess(DistLabel(Fraction(100), 100), UNREACHABLE)


class LexSearchTest(SimpleTestCase):

    def setUp(self):
        self.rng = random.Random(8)

    def test_labels_match_exhaustive_enumeration(self):
        for _ in range(100):
            graph = self.get_random_graph()
            digraph = nx.DiGraph()
            digraph.add_nodes_from(range(graph.n))
            digraph.add_edges_from((arc.tail, arc.head) for arc in graph.arcs)
            source = self.rng.randrange(graph.n)
            labels = lex_dijkstra(graph, source)

            for target in range(graph.n):
                if target == source:
                    self.assertEqual(labels[target], DistLabel(Fraction(0), 0))
                    continue
                best = None
                for vertices in nx.all_simple_paths(digraph, source, target):
                    path = Path(tuple(vertices))
                    candidate = (path.weight(graph), path.arcs)
                    if best is None or candidate < best:
                        best = candidate
                expected = UNREACHABLE if best is None else DistLabel(*best)
                # Both components must agree with brute force
                self.assertEqual(labels[target], expected)

    def test_unit_weights_match_breadth_first_search(self):
        for _ in range(30):
            nx_graph = nx.gnp_random_graph(8, 0.3, seed=self.rng.randrange(10**6))
            graph = Graph(8, [(u, v, 1) for u, v in nx_graph.edges], directed=False)
            lengths = nx.single_source_shortest_path_length(nx_graph, 0)
            for target in range(8):
                expected = lengths.get(target)
                self.assertEqual(distance(graph, 0, target), expected)

    def test_min_arc_shortest_path_prefers_fewer_arcs(self):
        graph = Graph(3, [(0, 1, 2), (0, 2, 1), (2, 1, 1)])

        self.assertEqual(min_arc_shortest_path(graph, 0, 1).vertices, (0, 1))
        self.assertEqual(min_arc_shortest_path(graph, 0, 1, allowed={0, 1, 2}).vertices, (0, 1))
        self.assertIsNone(min_arc_shortest_path(graph, 1, 0))

    def test_allowed_set_restricts_the_search(self):
        graph = Graph(3, [(0, 1, 1), (1, 2, 1)], directed=False)

        self.assertFalse(lex_dijkstra(graph, 0, allowed={0, 2})[2].reachable)
        self.assertFalse(lex_dijkstra(graph, 0, allowed={1, 2})[1].reachable)

    def get_random_graph(self):
        n = self.rng.randint(2, 8)
        weights = [1, 2, 3, Fraction(1, 2), Fraction(3, 2)]
        arcs = [
            (u, v, self.rng.choice(weights))
            for u in range(n)
            for v in range(n)
            if u != v and self.rng.random() < 0.3
        ]
        return Graph(n, arcs, directed=self.rng.random() < 0.5)


class ShortestPathDagTest(SimpleTestCase):

    def setUp(self):
        self.rng = random.Random(21)

    def test_dag_holds_exactly_the_shortest_paths(self):
        checked = 0
        while checked < 40:
            n = self.rng.randint(3, 7)
            arcs = [
                (u, v, self.rng.choice([1, 2, Fraction(1, 2)]))
                for u in range(n)
                for v in range(u + 1, n)
                if self.rng.random() < 0.5
            ]
            graph = Graph(n, arcs, directed=False)
            s, t = 0, n - 1
            target = distance(graph, s, t)
            if target is None:
                continue
            checked += 1
            dag = shortest_path_dag(graph, s, t)

            digraph = nx.DiGraph([(arc.tail, arc.head) for arc in dag.arcs])
            # Positive weights give an acyclic DAG
            self.assertTrue(nx.is_directed_acyclic_graph(digraph))

            nx_graph = nx.Graph()
            nx_graph.add_edges_from((arc.tail, arc.head) for arc in graph.arcs)
            shortest = {
                tuple(vertices)
                for vertices in nx.all_simple_paths(nx_graph, s, t)
                if Path(tuple(vertices)).weight(graph) == target
            }
            enumerated = {path.vertices for path in iter_dag_paths(dag, s, t)}
            self.assertEqual(enumerated, shortest)

    def test_zero_weight_cycle_paths_stay_simple(self):
        graph = Graph(4, [(0, 1, 0), (1, 2, 0), (2, 1, 0), (1, 3, 1), (2, 3, 1)])
        dag = shortest_path_dag(graph, 0, 3)
        paths = list(iter_dag_paths(dag, 0, 3))

        self.assertEqual({path.vertices for path in paths}, {(0, 1, 3), (0, 1, 2, 3)})
        self.assertTrue(all(path.is_simple() for path in paths))

    def test_unreachable_target_raises(self):
        graph = Graph(3, [(0, 1, 1)])
        with self.assertRaises(UnreachableTargetError):
            shortest_path_dag(graph, 0, 2)

    def test_relevant_vertices(self):
        # 0-1-2 is the only shortest 0->2 path; 3 hangs off and 4 is a detour
        graph = Graph(5, [(0, 1, 1), (1, 2, 1), (1, 3, 1), (0, 4, 2), (4, 2, 1)], directed=False)
        instance = Instance(graph, [(0, 2)], 1)

        self.assertEqual(relevant_vertices(instance), frozenset({0, 1, 2}))
