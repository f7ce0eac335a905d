# base.py
"""
Shared plumbing for gadget generators.

Gadget vertices are named by structured labels (tuples whose first entry is
a tag such as "u", "s" or "~"). GadgetBuilder collects labelled vertices and
edges, subdivides connectors with anonymous "~" vertices, and numbers the
final vertex set by sorted label order so output is byte-stable.
"""
import logging
from dataclasses import dataclass, field

import networkx as nx

from graphs.exceptions import GadgetConstructionError, GadgetInputError
from graphs.services.graph_core import Graph, Instance

logger = logging.getLogger(__name__)

PROVENANCE_MULTICOLORED_CLIQUE = "multicolored_clique"
PROVENANCE_CLIQUE = "clique"
PROVENANCE_SAT3_LAYERED = "sat3_layered"
PROVENANCE_MERGED = "merged"

CLAIMS = {
    PROVENANCE_MULTICOLORED_CLIQUE: "maximum number of disjoint shortest terminal paths = maximum multicolored clique size",
    PROVENANCE_CLIQUE: "optimum = maximum clique size",
    PROVENANCE_SAT3_LAYERED: "yes-instance (all m+1 pairs) iff formula satisfiable",
    PROVENANCE_MERGED: "yes iff at least one merged input is yes",
}


def format_label(label) -> str:
    """Readable form of a structured label, e.g. u^{1,2}_{3,1} or s_2."""
    tag, *rest = label
    if tag == "~":
        return f"~({format_label(rest[0])}->{format_label(rest[1])})#{rest[2]}"
    if tag in ("A", "B"):
        return f"{tag}:{format_label(rest[0])}"
    if tag in ("u", "v", "x", "y") and len(rest) == 4:
        i, a, j, b = rest
        return f"{tag}^{{{i},{a}}}_{{{j},{b}}}"
    return tag + "".join(f"_{part}" for part in rest)


@dataclass(frozen=True)
class GadgetInstance:
    instance: Instance
    provenance: str
    claim: str
    vertex_labels: tuple
    metadata: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if len(self.vertex_labels) != self.instance.n or len(set(self.vertex_labels)) != self.instance.n:
            raise GadgetConstructionError("vertex labels must be unique and cover every vertex")
        if self.claim != CLAIMS.get(self.provenance):
            raise GadgetConstructionError(f"claim does not match provenance {self.provenance!r}")

    def lift(self, solution):
        """
        Map a solution of the generated instance back to the source object:
        a clique vertex list for clique gadgets, a truth assignment for
        3-SAT gadgets.
        """
        if self.provenance == PROVENANCE_CLIQUE:
            return sorted(self.metadata["pair_vertices"][index] for index, _ in solution.entries)
        if self.provenance == PROVENANCE_MULTICOLORED_CLIQUE:
            leaves = self.metadata["leaf_vertices"]
            chosen = []
            for _, path in solution.entries:
                hits = [leaves[v] for v in path.vertices if v in leaves]
                if len(hits) != 1:
                    raise GadgetInputError("path does not pass exactly one selection leaf")
                chosen.append(hits[0])
            return sorted(chosen)
        if self.provenance == PROVENANCE_SAT3_LAYERED:
            selection = self.metadata["selection_pair"]
            routes = dict(solution.entries)
            if selection not in routes:
                raise GadgetInputError("solution does not route the selection pair")
            used = set(routes[selection].vertices)
            return [first in used for first in self.metadata["true_markers"]]
        raise GadgetInputError(f"{self.provenance} instances have no source object to lift to")


class GadgetBuilder:
    def __init__(self):
        self._labels = {}
        self._alias = {}
        self._edges = set()
        self._connectors = {}

    def resolve(self, label):
        return self._alias.get(label, label)

    def add(self, label):
        label = self.resolve(label)
        self._labels.setdefault(label, None)
        return label

    def alias(self, label, target):
        """Make `label` another name for `target` (used for merged gadget vertices)."""
        self._alias[label] = self.resolve(target)

    def edge(self, a, b):
        a, b = self.add(a), self.add(b)
        if a == b:
            raise GadgetConstructionError(f"edge would be a loop at {format_label(a)}")
        self._edges.add((a, b) if (a, b) < (b, a) else (b, a))

    def has_edge(self, a, b) -> bool:
        a, b = self.resolve(a), self.resolve(b)
        return ((a, b) if (a, b) < (b, a) else (b, a)) in self._edges

    def connect(self, a, b, length: int):
        """Join a and b by a path of `length` edges through fresh vertices."""
        if length < 1:
            raise GadgetConstructionError("connector length must be positive")
        a, b = self.add(a), self.add(b)
        chain = [a] + [self.add(("~", a, b, step)) for step in range(1, length)] + [b]
        for left, right in zip(chain, chain[1:]):
            self.edge(left, right)
        self._connectors[(a, b)] = chain[1:-1]

    def walk(self, *waypoints) -> list:
        """Expand consecutive waypoints through their connectors or direct edges."""
        route = [self.resolve(waypoints[0])]
        for nxt in waypoints[1:]:
            here, nxt = route[-1], self.resolve(nxt)
            if (here, nxt) in self._connectors:
                route.extend(self._connectors[(here, nxt)])
            elif (nxt, here) in self._connectors:
                route.extend(reversed(self._connectors[(nxt, here)]))
            elif not self.has_edge(here, nxt):
                raise GadgetConstructionError(f"{format_label(here)} and {format_label(nxt)} are not joined")
            route.append(nxt)
        return route

    def build(self, pairs, p=None, layers=None):
        """Return (Instance, labels, id_of) with ids assigned in sorted label order."""
        labels = tuple(sorted(self._labels))
        id_of = {label: index for index, label in enumerate(labels)}
        arcs = [(id_of[a], id_of[b], 1) for a, b in self._edges]
        pair_ids = tuple((id_of[self.resolve(s)], id_of[self.resolve(t)]) for s, t in pairs)
        layering = None
        if layers is not None:
            count = max(layers[self.resolve(label)] for label in labels)
            grouped = [[] for _ in range(count)]
            for label in labels:
                grouped[layers[label] - 1].append(id_of[label])
            layering = tuple(tuple(layer) for layer in grouped)
        instance = Instance(Graph(len(labels), arcs, directed=False), pair_ids, len(pair_ids) if p is None else p, layering)
        return instance, labels, id_of


def check_undirected_unit_graph(graph) -> None:
    if not isinstance(graph, nx.Graph):
        raise GadgetInputError("expected a networkx graph")
    if graph.is_directed():
        raise GadgetInputError("input graph must be undirected")
    if graph.is_multigraph():
        raise GadgetInputError("input graph must be simple")
    if nx.number_of_selfloops(graph):
        raise GadgetInputError("input graph has self-loops")
    for u, v, weight in graph.edges(data="weight", default=1):
        if weight != 1:
            raise GadgetInputError(f"edge ({u}, {v}) has weight {weight}; input must be unweighted")
