# clique.py
"""
Clique -> MVDSP with unique terminal shortest paths.

Input vertex i (1-based, in sorted node order) becomes pair (s_i, t_i).
Region (i, x), i < x, holds a top/bottom edge a-b on pair i's route and a
left/right edge c-d on pair x's route; without the input edge {i, x} the
region collapses to a single edge (a = c, b = d) and the routes collide.
Every connector has one internal vertex, so each unique route has 3N - 1
edges.
"""
import logging

import networkx as nx

from gadgets.services.base import (
    CLAIMS,
    PROVENANCE_CLIQUE,
    GadgetBuilder,
    GadgetInstance,
    check_undirected_unit_graph,
)
from graphs.exceptions import GadgetConstructionError, GadgetInputError
from graphs.services.graph_core import distance, iter_dag_paths, shortest_path_dag

logger = logging.getLogger(__name__)


def _region(i: int, x: int, role: str, adjacent: bool):
    if adjacent:
        return ("r", i, x, role)
    return ("r", i, x, "ac" if role in "ac" else "bd")


def unique_path_waypoints(i: int, size: int) -> list:
    """Waypoint labels of pair i's route, terminals included."""
    if size == 1:
        return [("s", 1), ("t", 1)]
    points = [("s", i)]
    for h in range(1, i):
        points += [("r", h, i, "c"), ("r", h, i, "d")]
    for x in range(i + 1, size + 1):
        points += [("r", i, x, "a"), ("r", i, x, "b")]
    points.append(("t", i))
    return points


def gen_clique(graph: nx.Graph, p=None) -> GadgetInstance:
    check_undirected_unit_graph(graph)
    nodes = sorted(graph.nodes)
    size = len(nodes)
    if size == 0:
        raise GadgetInputError("input graph has no vertices")
    index_of = {v: i for i, v in enumerate(nodes, start=1)}
    adjacent = {frozenset((index_of[u], index_of[v])) for u, v in graph.edges}

    builder = GadgetBuilder()
    for i in range(1, size + 1):
        builder.add(("s", i))
        builder.add(("t", i))
    for i in range(1, size + 1):
        for x in range(i + 1, size + 1):
            linked = frozenset((i, x)) in adjacent
            for role in "abcd":
                builder.add(_region(i, x, role, linked))
                if not linked:
                    builder.alias(("r", i, x, role), _region(i, x, role, False))
            builder.edge(("r", i, x, "a"), ("r", i, x, "b"))
            if linked:
                builder.edge(("r", i, x, "c"), ("r", i, x, "d"))

    if size == 1:
        builder.connect(("s", 1), ("t", 1), 2)
    else:
        for x in range(2, size + 1):
            for i in range(1, x - 1):
                builder.connect(("r", i, x, "d"), ("r", i + 1, x, "c"), 2)
        for i in range(1, size):
            for x in range(i + 1, size):
                builder.connect(("r", i, x, "b"), ("r", i, x + 1, "a"), 2)
        builder.connect(("s", 1), ("r", 1, 2, "a"), 2)
        for i in range(2, size + 1):
            builder.connect(("s", i), ("r", 1, i, "c"), 2)
        for i in range(1, size):
            builder.connect(("r", i, size, "b"), ("t", i), 2)
        builder.connect(("r", size - 1, size, "d"), ("t", size), 2)
        for i in range(2, size):
            builder.connect(("r", i - 1, i, "d"), ("r", i, i + 1, "a"), 2)

    pairs = [(("s", i), ("t", i)) for i in range(1, size + 1)]
    instance, labels, id_of = builder.build(pairs, p=p)
    routes = [[id_of[label] for label in builder.walk(*unique_path_waypoints(i, size))] for i in range(1, size + 1)]
    _self_check(instance, routes, size)

    logger.info(f"Clique gadget: {size} pairs, {instance.n} vertices, {instance.graph.edge_count} edges")
    return GadgetInstance(
        instance=instance,
        provenance=PROVENANCE_CLIQUE,
        claim=CLAIMS[PROVENANCE_CLIQUE],
        vertex_labels=labels,
        metadata={"pair_vertices": nodes, "routes": routes, "path_length": 3 * size - 1},
    )


def _self_check(instance, routes, size):
    bound = 3 * size * size
    if instance.graph.edge_count > bound or instance.n > bound:
        raise GadgetConstructionError(
            f"{instance.n} vertices and {instance.graph.edge_count} edges exceed 3N^2 = {bound}"
        )
    expected = 3 * size - 1
    for index, (s, t) in enumerate(instance.pairs):
        if distance(instance.graph, s, t) != expected:
            raise GadgetConstructionError(f"pair {index} has distance {distance(instance.graph, s, t)}, expected {expected}")
        if len(routes[index]) - 1 != expected:
            raise GadgetConstructionError(f"route of pair {index} has {len(routes[index]) - 1} edges, expected {expected}")
        found = iter_dag_paths(shortest_path_dag(instance.graph, s, t), s, t)
        if next(found, None) is None or next(found, None) is not None:
            raise GadgetConstructionError(f"pair {index} does not have exactly one shortest path")
