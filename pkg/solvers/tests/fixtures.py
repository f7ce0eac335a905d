import itertools
from fractions import Fraction

from graphs.services.graph_core import Graph, Instance


class InstanceFixturesMixin:
    """get_* builders shared by the solver test cases."""

    def get_single_pair_instance(self):
        # a - b - c with pair (a, c)
        graph = Graph(3, [(0, 1, 1), (1, 2, 1)], directed=False)
        return Instance(graph, [(0, 2)], 1)

    def get_conflict_instance(self, p=1):
        # a - b - c - d with pairs (a, d) and (b, c)
        graph = Graph(4, [(0, 1, 1), (1, 2, 1), (2, 3, 1)], directed=False)
        return Instance(graph, [(0, 3), (1, 2)], p)

    def get_two_component_instance(self):
        # 0 - 1 and 2 - 3 - 4
        graph = Graph(5, [(0, 1, 1), (2, 3, 1), (3, 4, 1)], directed=False)
        return Instance(graph, [(0, 1), (2, 4)], 2)

    def get_random_instance(self, rng, weighted=False):
        """Up to 10 vertices and 4 pairs; terminals may repeat and digraphs may have cycles."""
        n = rng.randint(3, 10)
        weights = [0, 1, 2, Fraction(1, 2), Fraction(3, 2)] if weighted else [1]
        directed = rng.random() < 0.3
        candidates = itertools.permutations(range(n), 2) if directed else itertools.combinations(range(n), 2)
        arcs = [(u, v, rng.choice(weights)) for u, v in candidates if rng.random() < 0.3]
        k = rng.randint(1, 4)
        pairs = [tuple(rng.sample(range(n), 2)) for _ in range(k)]
        return Instance(Graph(n, arcs, directed=directed), pairs, rng.randint(0, k))
