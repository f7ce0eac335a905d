# verify.py
"""
Independent validation of solutions and layered instances.

Nothing here trusts solver annotations: every distance is recomputed with
lex_dijkstra and every problem is returned as a Violation, never raised.
"""
import logging
from collections import defaultdict
from dataclasses import dataclass, field

from graphs.services.graph_core import Instance, Path, lex_dijkstra

logger = logging.getLogger(__name__)

NOT_A_PATH = "not_a_path"
WRONG_ENDPOINTS = "wrong_endpoints"
NOT_SHORTEST = "not_shortest"
VERTEX_OVERLAP = "vertex_overlap"
DUPLICATE_PAIR = "duplicate_pair"

NOT_LAYERED = "not_layered"
BAD_PARTITION = "bad_partition"
ARC_SKIPS_LAYER = "arc_skips_layer"
TERMINAL_MISPLACED = "terminal_misplaced"
WRONG_DISTANCE = "wrong_distance"

VIOLATION_CHOICES = [
    (NOT_A_PATH, "Not a path of the graph"),
    (WRONG_ENDPOINTS, "Endpoints differ from the claimed pair"),
    (NOT_SHORTEST, "Path weight exceeds the terminal distance"),
    (VERTEX_OVERLAP, "Vertex used by two paths"),
    (DUPLICATE_PAIR, "Pair index used twice"),
    (NOT_LAYERED, "Instance has no layering"),
    (BAD_PARTITION, "Layers do not partition the vertices"),
    (ARC_SKIPS_LAYER, "Arc does not join consecutive layers"),
    (TERMINAL_MISPLACED, "Terminal outside the first or last layer"),
    (WRONG_DISTANCE, "Terminal distance differs from the layer count minus one"),
]


@dataclass(frozen=True)
class Violation:
    kind: str
    detail: str


@dataclass(frozen=True)
class VerifyReport:
    violations: tuple = field(default_factory=tuple)
    size: int = 0
    total_arcs: int = 0

    @property
    def feasible(self) -> bool:
        return not self.violations

    def kinds(self) -> set:
        return {violation.kind for violation in self.violations}


def verify_solution(instance: Instance, solution) -> VerifyReport:
    """
    Check every entry of `solution` against `instance`.

    Entries are (pair index, Path) tuples; all violations are collected.
    """
    graph = instance.graph
    violations = []
    distances = {}
    seen_pairs = set()
    owners = defaultdict(list)
    total_arcs = 0

    for position, (pair_index, path) in enumerate(solution.entries):
        if not isinstance(path, Path):
            path = Path(tuple(path))
        total_arcs += max(path.arcs, 0)

        if pair_index in seen_pairs:
            violations.append(Violation(DUPLICATE_PAIR, f"pair {pair_index} appears more than once"))
        seen_pairs.add(pair_index)

        if not path.is_valid_in(graph):
            violations.append(Violation(NOT_A_PATH, f"entry {position} ({list(path.vertices)}) is not a simple path"))
            continue
        for v in set(path.vertices):
            owners[v].append(pair_index)

        if not 0 <= pair_index < instance.k:
            violations.append(Violation(WRONG_ENDPOINTS, f"pair index {pair_index} is outside 0..{instance.k - 1}"))
            continue
        s, t = instance.pairs[pair_index]
        if (path.source, path.target) != (s, t):
            violations.append(
                Violation(WRONG_ENDPOINTS, f"pair {pair_index} expects {s}->{t}, path runs {path.source}->{path.target}")
            )
            continue

        if s not in distances:
            distances[s] = lex_dijkstra(graph, s)
        expected = distances[s][t].dist
        actual = path.weight(graph)
        if expected is None or actual != expected:
            violations.append(Violation(NOT_SHORTEST, f"pair {pair_index} path has weight {actual}, distance is {expected}"))

    for v in sorted(owners):
        if len(owners[v]) > 1:
            violations.append(Violation(VERTEX_OVERLAP, f"vertex {v} is shared by pairs {owners[v]}"))

    if violations:
        logger.debug(f"Solution rejected with {len(violations)} violation(s)")
    return VerifyReport(tuple(violations), len(solution.entries), total_arcs)


def verify_layering(instance: Instance, require_connected: bool = True) -> VerifyReport:
    """
    Check the layered-instance invariants.

    With require_connected=False an unreachable terminal is accepted, which is
    how padding instances and their merges are checked structurally.
    """
    if instance.layering is None:
        return VerifyReport((Violation(NOT_LAYERED, "instance declares no layering"),))

    graph = instance.graph
    layers = instance.layering
    violations = []
    layer_of = {}
    for index, layer in enumerate(layers):
        for v in layer:
            if v in layer_of or not 0 <= v < graph.n:
                violations.append(Violation(BAD_PARTITION, f"vertex {v} is repeated or out of range"))
            layer_of[v] = index
    missing = set(range(graph.n)) - set(layer_of)
    if missing:
        violations.append(Violation(BAD_PARTITION, f"vertices {sorted(missing)} belong to no layer"))

    for arc in graph.arcs:
        if arc.tail not in layer_of or arc.head not in layer_of:
            continue
        step = layer_of[arc.head] - layer_of[arc.tail]
        ok = abs(step) == 1 if not graph.directed else step == 1
        if not ok:
            violations.append(
                Violation(ARC_SKIPS_LAYER, f"arc {arc.tail}->{arc.head} joins layers {layer_of[arc.tail]} and {layer_of[arc.head]}")
            )

    last = len(layers) - 1
    for index, (s, t) in enumerate(instance.pairs):
        if layer_of.get(s) != 0 or layer_of.get(t) != last:
            violations.append(Violation(TERMINAL_MISPLACED, f"pair {index} ({s}, {t}) is not first-to-last layer"))
            continue
        dist = lex_dijkstra(graph, s)[t].dist
        if dist is None and not require_connected:
            continue
        if dist != last:
            violations.append(Violation(WRONG_DISTANCE, f"pair {index} has distance {dist}, expected {last}"))

    return VerifyReport(tuple(violations), len(layers), 0)
