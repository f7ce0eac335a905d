# graph_core.py
"""
Graph representation with exact rational weights, lexicographic
(distance, arc count) shortest-path search and shortest-path DAG extraction.

All algorithms work on the directed arc form; undirected input is stored as
symmetric arc pairs.
"""
import heapq
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import total_ordering
from typing import Iterable, Iterator, Optional

from graphs.exceptions import InvalidInstanceError, UnreachableTargetError

logger = logging.getLogger(__name__)

Weight = Fraction


def parse_weight(value) -> Fraction:
    """
    Build an exact non-negative weight from an int, a Fraction or a
    string of the form "<int>" or "<int>/<int>".
    """
    if isinstance(value, Fraction):
        weight = value
    elif isinstance(value, int):
        weight = Fraction(value)
    elif isinstance(value, str):
        text = value.strip()
        num, sep, den = text.partition("/")
        if not num.lstrip("-").isdigit() or (sep and not den.isdigit()):
            raise ValueError(f"weight {value!r} is not an integer or a fraction of integers")
        if sep and int(den) == 0:
            raise ValueError(f"weight {value!r} has a zero denominator")
        weight = Fraction(int(num), int(den) if sep else 1)
    else:
        raise ValueError(f"unsupported weight type {type(value).__name__}")
    if weight < 0:
        raise ValueError(f"weight {value!r} is negative")
    return weight


def format_weight(weight: Fraction) -> str:
    if weight.denominator == 1:
        return str(weight.numerator)
    return f"{weight.numerator}/{weight.denominator}"


@dataclass(frozen=True, order=True)
class Arc:
    tail: int
    head: int
    weight: Fraction


class Graph:
    """
    Immutable graph on vertices 0..n-1.

    Parallel arcs collapse to the minimum weight; undirected edges are stored
    as two arcs with equal weight.
    """

    __slots__ = ("n", "directed", "_out", "_arcs")

    def __init__(self, n: int, arcs: Iterable = (), directed: bool = True):
        if n < 0:
            raise InvalidInstanceError("vertex count must be non-negative")
        best = {}
        for arc in arcs:
            tail, head, weight = arc if not isinstance(arc, Arc) else (arc.tail, arc.head, arc.weight)
            if not (0 <= tail < n and 0 <= head < n):
                raise InvalidInstanceError(f"arc ({tail}, {head}) has an endpoint outside 0..{n - 1}")
            if tail == head:
                raise InvalidInstanceError(f"self-loop at vertex {tail}")
            try:
                weight = parse_weight(weight)
            except ValueError as exc:
                raise InvalidInstanceError(str(exc)) from exc
            keys = [(tail, head)] if directed else [(tail, head), (head, tail)]
            for key in keys:
                if key not in best or weight < best[key]:
                    best[key] = weight

        out = [[] for _ in range(n)]
        for (tail, head), weight in sorted(best.items()):
            out[tail].append((head, weight))
        self.n = n
        self.directed = directed
        self._out = tuple(tuple(adj) for adj in out)
        self._arcs = tuple(Arc(t, h, w) for (t, h), w in sorted(best.items()))

    def __repr__(self):
        kind = "directed" if self.directed else "undirected"
        return f"<Graph {kind} n={self.n} arcs={len(self._arcs)}>"

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.directed == other.directed and self._arcs == other._arcs

    def __hash__(self):
        return hash((self.n, self.directed, self._arcs))

    @property
    def arcs(self) -> tuple:
        return self._arcs

    @property
    def arc_count(self) -> int:
        return len(self._arcs)

    @property
    def edge_count(self) -> int:
        """Arc lines in the serialized form: arcs, or arc pairs when undirected."""
        return len(self._arcs) if self.directed else len(self._arcs) // 2

    def out_arcs(self, vertex: int) -> tuple:
        return self._out[vertex]

    def weight(self, tail: int, head: int) -> Optional[Fraction]:
        for other, weight in self._out[tail]:
            if other == head:
                return weight
        return None

    def has_arc(self, tail: int, head: int) -> bool:
        return self.weight(tail, head) is not None

    def degree(self, vertex: int) -> int:
        """Number of distinct neighbours (in or out)."""
        return len(self.neighbours(vertex))

    def neighbours(self, vertex: int) -> set:
        found = {head for head, _ in self._out[vertex]}
        if self.directed:
            found.update(arc.tail for arc in self._arcs if arc.head == vertex)
        return found

    def reverse(self) -> "Graph":
        return Graph(self.n, ((a.head, a.tail, a.weight) for a in self._arcs), directed=self.directed)

    def is_unit_weight(self) -> bool:
        return all(arc.weight == 1 for arc in self._arcs)


@dataclass(frozen=True)
class Instance:
    graph: Graph
    pairs: tuple
    p: int
    layering: Optional[tuple] = None

    def __post_init__(self):
        object.__setattr__(self, "pairs", tuple((int(s), int(t)) for s, t in self.pairs))
        if self.layering is not None:
            layering = tuple(tuple(sorted(int(v) for v in layer)) for layer in self.layering)
            object.__setattr__(self, "layering", layering)
        n = self.graph.n
        for index, (s, t) in enumerate(self.pairs):
            if not (0 <= s < n and 0 <= t < n):
                raise InvalidInstanceError(f"terminal pair {index} has an endpoint outside 0..{n - 1}")
            if s == t:
                raise InvalidInstanceError(f"terminal pair {index} has s == t == {s}")
        if not 0 <= self.p <= len(self.pairs):
            raise InvalidInstanceError(f"target p={self.p} must lie in 0..k={len(self.pairs)}")
        if self.layering is not None:
            seen = [v for layer in self.layering for v in layer]
            if len(self.layering) < 2:
                raise InvalidInstanceError("a layering needs at least two layers")
            if sorted(seen) != list(range(n)):
                raise InvalidInstanceError("layers do not partition the vertex set")

    @property
    def k(self) -> int:
        return len(self.pairs)

    @property
    def n(self) -> int:
        return self.graph.n

    def with_p(self, p: int) -> "Instance":
        return Instance(self.graph, self.pairs, p, self.layering)


@total_ordering
@dataclass(frozen=True)
class DistLabel:
    """Lexicographic (distance, arc count) label; dist None means unreachable."""

    dist: Optional[Fraction]
    hops: Optional[int]

    def __post_init__(self):
        if (self.dist is None) != (self.hops is None):
            raise ValueError("hops is defined exactly when dist is finite")

    @property
    def reachable(self) -> bool:
        return self.dist is not None

    def _key(self):
        return (0, self.dist, self.hops) if self.reachable else (1, 0, 0)

    def __lt__(self, other):
        if not isinstance(other, DistLabel):
            return NotImplemented
        return self._key() < other._key()


UNREACHABLE = DistLabel(None, None)


@dataclass(frozen=True)
class Path:
    vertices: tuple = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(int(v) for v in self.vertices))

    def __len__(self):
        return len(self.vertices)

    def __iter__(self):
        return iter(self.vertices)

    @property
    def source(self) -> int:
        return self.vertices[0]

    @property
    def target(self) -> int:
        return self.vertices[-1]

    @property
    def arcs(self) -> int:
        return len(self.vertices) - 1

    def arc_list(self) -> list:
        return list(zip(self.vertices, self.vertices[1:]))

    def is_simple(self) -> bool:
        return len(set(self.vertices)) == len(self.vertices)

    def is_valid_in(self, graph: Graph) -> bool:
        if not self.vertices or not self.is_simple():
            return False
        if not all(0 <= v < graph.n for v in self.vertices):
            return False
        return all(graph.has_arc(u, v) for u, v in self.arc_list())

    def weight(self, graph: Graph) -> Fraction:
        total = Fraction(0)
        for u, v in self.arc_list():
            w = graph.weight(u, v)
            if w is None:
                raise InvalidInstanceError(f"({u}, {v}) is not an arc of the graph")
            total += w
        return total


def lex_search(graph: Graph, source: int, allowed=None):
    """
    Dijkstra over lexicographic (dist, hops) labels.

    Returns (labels, predecessors) as lists indexed by vertex. `allowed`
    restricts the search to a vertex subset; the source must belong to it.
    Ties are broken by vertex id through the heap order.
    """
    n = graph.n
    dist = [None] * n
    hops = [None] * n
    pred = [None] * n
    done = [False] * n
    if allowed is not None and source not in allowed:
        return [UNREACHABLE] * n, pred
    dist[source] = Fraction(0)
    hops[source] = 0
    frontier = [(Fraction(0), 0, source)]
    while frontier:
        d, h, u = heapq.heappop(frontier)
        if done[u]:
            continue
        done[u] = True
        for v, w in graph.out_arcs(u):
            if done[v] or (allowed is not None and v not in allowed):
                continue
            candidate = (d + w, h + 1)
            if dist[v] is None or candidate < (dist[v], hops[v]):
                dist[v], hops[v] = candidate
                pred[v] = u
                heapq.heappush(frontier, (candidate[0], candidate[1], v))
    labels = [DistLabel(dist[v], hops[v]) if dist[v] is not None else UNREACHABLE for v in range(n)]
    return labels, pred


def lex_dijkstra(graph: Graph, source: int, allowed=None) -> dict:
    """Map every vertex to its (distance, minimum arc count) label from `source`."""
    labels, _ = lex_search(graph, source, allowed)
    return dict(enumerate(labels))


def min_arc_shortest_path(graph: Graph, s: int, t: int, allowed=None) -> Optional[Path]:
    """A minimum-weight s-t path with the fewest arcs, or None if t is unreachable."""
    labels, pred = lex_search(graph, s, allowed)
    if not labels[t].reachable:
        return None
    vertices = [t]
    while vertices[-1] != s:
        vertices.append(pred[vertices[-1]])
    return Path(tuple(reversed(vertices)))


def distance(graph: Graph, s: int, t: int) -> Optional[Fraction]:
    return lex_search(graph, s)[0][t].dist


def shortest_path_dag(graph: Graph, s: int, t: int) -> Graph:
    """
    Subgraph of the arcs (u, v) with dist(s,u) + w(u,v) + dist(v,t) = dist(s,t).

    Every s-t path inside it has weight dist(s,t) and every shortest s-t
    path of `graph` lies inside it.
    """
    forward, _ = lex_search(graph, s)
    if not forward[t].reachable:
        raise UnreachableTargetError(s, t)
    backward, _ = lex_search(graph.reverse(), t)
    total = forward[t].dist
    arcs = []
    for arc in graph.arcs:
        head_label = backward[arc.head]
        tail_label = forward[arc.tail]
        if not (tail_label.reachable and head_label.reachable):
            continue
        if tail_label.dist + arc.weight + head_label.dist == total:
            arcs.append(arc)
    return Graph(graph.n, arcs, directed=True)


def iter_dag_paths(dag: Graph, s: int, t: int) -> Iterator[Path]:
    """
    Depth-first enumeration of the simple s-t paths of a shortest-path DAG.

    Zero-weight cycles may occur; the visited set keeps paths simple.
    """
    stack = [(s, iter(dag.out_arcs(s)))]
    on_path = [s]
    visited = {s}
    if s == t:
        yield Path((s,))
        return
    while stack:
        vertex, arcs = stack[-1]
        advanced = False
        for head, _ in arcs:
            if head in visited:
                continue
            if head == t:
                yield Path(tuple(on_path) + (t,))
                continue
            visited.add(head)
            on_path.append(head)
            stack.append((head, iter(dag.out_arcs(head))))
            advanced = True
            break
        if not advanced:
            stack.pop()
            visited.discard(on_path.pop())


def relevant_vertices(instance: Instance) -> frozenset:
    """Vertices on at least one shortest terminal path of some pair."""
    found = set()
    for s, t in instance.pairs:
        if distance(instance.graph, s, t) is None:
            continue
        dag = shortest_path_dag(instance.graph, s, t)
        found.update((s, t))
        for arc in dag.arcs:
            found.update((arc.tail, arc.head))
    return frozenset(found)
