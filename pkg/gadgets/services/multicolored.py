# multicolored.py
"""
Multicolored clique -> MVDSP with max degree three.

Color i (1..k) becomes pair (s_i, t_i); vertex j (1..nu) of color i becomes
the leaves s_i^j / t_i^j of two binary trees hanging off s_i / t_i. For
every i < a and vertices j of color i, b of color a there is a crossing
gadget u-v (row of color i) and x-y (column of color a); without the input
edge the gadget is a single edge with x = u and y = v.

Route (i, j) is an L on a grid: down column X(i, j) from its top point to
its corner at height Y(i, j), then right along row Y(i, j) to its end point.
A connector spanning d grid units costs d times the unit of its line: rows
of color i cost ROW_UNIT(i) per unit, columns of color i COLUMN_UNIT(i).
Row units fall and column units grow with the color, so leaving the own
row or column at a merged gadget is strictly longer, and the leaf
connectors even out the routes of one color. Every shortest s_i-t_i path is
one of the nu canonical routes of color i.
"""
import logging
import math
from collections import defaultdict
from itertools import islice

import networkx as nx

from gadgets.services.base import (
    CLAIMS,
    PROVENANCE_MULTICOLORED_CLIQUE,
    GadgetBuilder,
    GadgetInstance,
    check_undirected_unit_graph,
)
from graphs.exceptions import GadgetConstructionError, GadgetInputError
from graphs.services.graph_core import distance, iter_dag_paths, shortest_path_dag

logger = logging.getLogger(__name__)


def color_classes(graph: nx.Graph, k: int, nu: int, allow_extra_colors: bool = False) -> list:
    """
    Split the input into k classes of nu vertices.

    Classes come from a "color" node attribute when every node has one,
    otherwise vertex v belongs to class v // nu (nodes must be 0..k*nu-1).
    """
    check_undirected_unit_graph(graph)
    if k < 1 or nu < 1:
        raise GadgetInputError("k and nu must be positive")
    if graph.number_of_nodes() and all("color" in data for _, data in graph.nodes(data=True)):
        grouped = defaultdict(list)
        for v, color in graph.nodes(data="color"):
            grouped[color].append(v)
        classes = [sorted(grouped[color]) for color in sorted(grouped)]
    else:
        nodes = sorted(graph.nodes)
        if any(not isinstance(v, int) or v < 0 for v in nodes):
            raise GadgetInputError("without a 'color' attribute nodes must be non-negative integers")
        grouped = defaultdict(list)
        for v in nodes:
            grouped[v // nu].append(v)
        classes = [grouped[c] for c in sorted(grouped)]

    if len(classes) > k and allow_extra_colors:
        classes = classes[:k]
    if len(classes) != k:
        raise GadgetInputError(f"input has {len(classes)} color classes, expected {k}")
    for index, members in enumerate(classes, start=1):
        if len(members) != nu:
            raise GadgetInputError(f"color class {index} has {len(members)} vertices, expected {nu}")
    color_of = {v: index for index, members in enumerate(classes) for v in members}
    for u, v in graph.edges:
        if u in color_of and v in color_of and color_of[u] == color_of[v]:
            raise GadgetInputError(f"edge ({u}, {v}) joins two vertices of color {color_of[u] + 1}; input is not k-partite")
    return classes


class GridLayout:
    """Grid coordinates and unit costs of the routes for k colors of nu vertices."""

    def __init__(self, k: int, nu: int):
        self.k = k
        self.nu = nu
        self.height = math.ceil(math.log2(nu)) if nu > 1 else 0
        self.base = k * nu + 2
        self.leaf_slack = (k - 1) * (nu - 1) + 1

    def column_x(self, i: int, j: int) -> int:
        return (i - 1) * self.nu + j

    def row_y(self, i: int, j: int) -> int:
        return i * self.nu - j + 1

    @property
    def end_x(self) -> int:
        return self.k * self.nu + 1

    def row_unit(self, i: int) -> int:
        return self.base + self.k - i

    def column_unit(self, i: int) -> int:
        return self.base + i

    def source_leaf_length(self, i: int, j: int) -> int:
        return self.leaf_slack + self.row_unit(i) * (j - 1)

    def target_leaf_length(self, i: int, j: int) -> int:
        return self.leaf_slack + self.column_unit(i) * (j - 1)

    def path_length(self, i: int) -> int:
        """Length of every canonical route of color i."""
        nu = self.nu
        return (
            2 * (self.height + 1)
            + 2 * self.leaf_slack
            + self.row_unit(i) * (self.k - i + 1) * nu
            + self.column_unit(i) * i * nu
        )

    def column_points(self, i: int, j: int) -> list:
        """(label, y, is_gadget) along column (i, j), top to corner."""
        points = [(("top", i, j), 0, False)]
        for row in range(1, i):
            for row_vertex in range(self.nu, 0, -1):
                points.append(((row, i, row_vertex, j), self.row_y(row, row_vertex), True))
        points.append((("corner", i, j), self.row_y(i, j), False))
        return points

    def row_points(self, i: int, j: int) -> list:
        """(label, x, is_gadget) along row (i, j), corner to end."""
        points = [(("corner", i, j), self.column_x(i, j), False)]
        for a in range(i + 1, self.k + 1):
            for b in range(1, self.nu + 1):
                points.append(((i, a, j, b), self.column_x(a, b), True))
        points.append((("end", i, j), self.end_x, False))
        return points


def _tree(builder: GadgetBuilder, side: str, i: int, nu: int, height: int):
    """Binary tree of uniform leaf depth `height`, leaves (side_leaf, i, j); unused leaves pruned."""
    leaf_tag = f"{side}_leaf"

    def node(depth, position):
        if depth == height:
            return (leaf_tag, i, position + 1)
        return (f"{side}_tree", i, depth, position)

    builder.edge((side, i), node(0, 0))
    for depth in range(height):
        for position in range(2 ** depth):
            if position * 2 ** (height - depth) >= nu:
                continue
            for child in (2 * position, 2 * position + 1):
                if child * 2 ** (height - depth - 1) < nu:
                    builder.edge(node(depth, position), node(depth + 1, child))
    if height == 0:
        builder.add(node(0, 0))
    return node


def _wire(builder: GadgetBuilder, points: list, unit: int, entry: str, exit_: str):
    """Connect consecutive points of one line; a gadget is entered at `entry` and left at `exit_`."""
    for (label, at, is_gadget), (nxt, nxt_at, nxt_gadget) in zip(points, points[1:]):
        tail = (exit_, *label) if is_gadget else label
        head = (entry, *nxt) if nxt_gadget else nxt
        builder.connect(tail, head, unit * (nxt_at - at) - (1 if is_gadget else 0))


def canonical_waypoints(layout: GridLayout, i: int, j: int) -> list:
    """Waypoints of the j-th canonical route for color i."""
    height = layout.height
    points = [("s", i)]
    points += [("s_tree", i, depth, (j - 1) >> (height - depth)) for depth in range(height)]
    points.append(("s_leaf", i, j))
    for label, _, is_gadget in layout.column_points(i, j):
        points += [("x", *label), ("y", *label)] if is_gadget else [label]
    for label, _, is_gadget in layout.row_points(i, j)[1:]:
        points += [("u", *label), ("v", *label)] if is_gadget else [label]
    points.append(("t_leaf", i, j))
    points += [("t_tree", i, depth, (j - 1) >> (height - depth)) for depth in reversed(range(height))]
    points.append(("t", i))
    return points


def gen_multicolored_clique(graph: nx.Graph, k: int, nu: int, allow_extra_colors: bool = False, p=None) -> GadgetInstance:
    classes = color_classes(graph, k, nu, allow_extra_colors)
    edges = {frozenset(edge) for edge in graph.edges}
    layout = GridLayout(k, nu)
    builder = GadgetBuilder()

    for i in range(1, k + 1):
        _tree(builder, "s", i, nu, layout.height)
        _tree(builder, "t", i, nu, layout.height)

    for i in range(1, k + 1):
        for a in range(i + 1, k + 1):
            for j in range(1, nu + 1):
                for b in range(1, nu + 1):
                    u, v, x, y = (("u", i, a, j, b), ("v", i, a, j, b), ("x", i, a, j, b), ("y", i, a, j, b))
                    builder.edge(u, v)
                    if frozenset((classes[i - 1][j - 1], classes[a - 1][b - 1])) in edges:
                        builder.edge(x, y)
                    else:
                        builder.alias(x, u)
                        builder.alias(y, v)

    for i in range(1, k + 1):
        for j in range(1, nu + 1):
            _wire(builder, layout.column_points(i, j), layout.column_unit(i), "x", "y")
            _wire(builder, layout.row_points(i, j), layout.row_unit(i), "u", "v")
            builder.connect(("s_leaf", i, j), ("top", i, j), layout.source_leaf_length(i, j))
            builder.connect(("end", i, j), ("t_leaf", i, j), layout.target_leaf_length(i, j))

    pairs = [(("s", i), ("t", i)) for i in range(1, k + 1)]
    instance, labels, id_of = builder.build(pairs, p=p)
    canonical = {
        (i, j): [id_of[label] for label in builder.walk(*canonical_waypoints(layout, i, j))]
        for i in range(1, k + 1)
        for j in range(1, nu + 1)
    }
    expected = [layout.path_length(i) for i in range(1, k + 1)]
    _self_check(instance, canonical, expected, nu)

    leaf_vertices = {id_of[("s_leaf", i, j)]: classes[i - 1][j - 1] for i in range(1, k + 1) for j in range(1, nu + 1)}
    logger.info(f"Multicolored clique gadget: k={k}, nu={nu}, {instance.n} vertices, path lengths {expected}")
    return GadgetInstance(
        instance=instance,
        provenance=PROVENANCE_MULTICOLORED_CLIQUE,
        claim=CLAIMS[PROVENANCE_MULTICOLORED_CLIQUE],
        vertex_labels=labels,
        metadata={"leaf_vertices": leaf_vertices, "canonical_paths": canonical, "path_lengths": expected},
    )


def _self_check(instance, canonical, expected, nu):
    graph = instance.graph
    for v in range(graph.n):
        if graph.degree(v) > 3:
            raise GadgetConstructionError(f"vertex {v} has degree {graph.degree(v)} > 3")
    for index, (s, t) in enumerate(instance.pairs):
        if graph.degree(s) != 1 or graph.degree(t) != 1:
            raise GadgetConstructionError(f"terminals of pair {index} must have degree one")
        found = distance(graph, s, t)
        if found != expected[index]:
            raise GadgetConstructionError(f"pair {index} has distance {found}, expected {expected[index]}")
        routes = sum(1 for _ in islice(iter_dag_paths(shortest_path_dag(graph, s, t), s, t), nu + 1))
        if routes != nu:
            raise GadgetConstructionError(f"pair {index} has {routes} shortest paths, expected {nu}")
    for (i, j), route in canonical.items():
        if len(route) - 1 != expected[i - 1] or len(set(route)) != len(route):
            raise GadgetConstructionError(
                f"canonical path {j} of color {i} has {len(route) - 1} edges, expected {expected[i - 1]}"
            )
