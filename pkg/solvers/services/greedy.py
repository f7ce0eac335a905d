import logging
from math import isqrt

from graphs.services.graph_core import Instance, lex_search, min_arc_shortest_path
from solvers.services.reports import (
    ANSWER_NOT_FOUND,
    ANSWER_YES,
    MODE_GREEDY,
    Solution,
    SolveReport,
)

logger = logging.getLogger(__name__)


def ceil_sqrt(value: int) -> int:
    return 0 if value <= 0 else isqrt(value - 1) + 1


def within_approximation_bound(size: int, optimum: int, n: int, ell: int) -> bool:
    """Exact integer test of size * min{sqrt(n), ceil(sqrt(ell))} >= optimum."""
    if optimum <= 0:
        return True
    if size <= 0:
        return False
    return size * size * n >= optimum * optimum and size * ceil_sqrt(ell) >= optimum


def greedy_approx(instance: Instance) -> SolveReport:
    """
    Repeatedly route the connectable pair whose min-arc shortest path has the
    fewest arcs (lowest index on ties), delete its vertices, and drop every
    pair whose terminal was deleted or whose distance grew.
    """
    graph = instance.graph
    original = {}
    for index, (s, t) in enumerate(instance.pairs):
        labels, _ = lex_search(graph, s)
        if labels[t].reachable:
            original[index] = labels[t].dist

    alive = set(range(graph.n))
    active = sorted(original)
    entries = []
    rounds = 0
    while active:
        rounds += 1
        survivors = []
        best = None
        for index in active:
            s, t = instance.pairs[index]
            if s not in alive or t not in alive:
                continue
            label = lex_search(graph, s, alive)[0][t]
            if not label.reachable or label.dist != original[index]:
                continue
            survivors.append(index)
            if best is None or (label.hops, index) < best:
                best = (label.hops, index)
        if best is None:
            break
        _, chosen = best
        s, t = instance.pairs[chosen]
        path = min_arc_shortest_path(graph, s, t, alive)
        entries.append((chosen, path))
        alive.difference_update(path.vertices)
        logger.debug(f"Greedy round {rounds}: pair {chosen} routed with {path.arcs} arcs")
        active = [index for index in survivors if index != chosen]

    solution = Solution(tuple(entries)).canonical()
    logger.info(f"Greedy routed {solution.size} of {instance.k} pairs in {rounds} rounds")
    return SolveReport(
        solution=solution,
        optimal=False,
        ell_used=None,
        iterations=rounds,
        mode=MODE_GREEDY,
        p=instance.p,
        answer=ANSWER_YES if solution.size >= instance.p else ANSWER_NOT_FOUND,
    )
