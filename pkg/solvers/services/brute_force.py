import logging

from django.conf import settings

from graphs.exceptions import PathCapExceededError
from graphs.services.graph_core import Instance, distance, iter_dag_paths, shortest_path_dag
from solvers.services.reports import ANSWER_NO, ANSWER_YES, MODE_BRUTE_FORCE, Solution, SolveReport

logger = logging.getLogger(__name__)


def enumerate_shortest_paths(instance: Instance, pair_index: int, path_cap: int) -> list:
    """All shortest paths of one pair, fewest arcs first; more than path_cap is an error."""
    s, t = instance.pairs[pair_index]
    if distance(instance.graph, s, t) is None:
        return []
    paths = []
    for path in iter_dag_paths(shortest_path_dag(instance.graph, s, t), s, t):
        if len(paths) == path_cap:
            raise PathCapExceededError(pair_index, path_cap)
        paths.append(path)
    paths.sort(key=lambda path: (path.arcs, path.vertices))
    return paths


def brute_force_optimum(instance: Instance, path_cap=None) -> SolveReport:
    """
    Maximum solution by backtracking over per-pair shortest paths; among
    maximum solutions the one with the fewest arcs is returned.
    """
    if path_cap is None:
        path_cap = getattr(settings, "MVDSP_PATH_CAP", 10_000)
    candidates = []
    for index in range(instance.k):
        paths = enumerate_shortest_paths(instance, index, path_cap)
        if paths:
            candidates.append((index, [(path, frozenset(path.vertices)) for path in paths]))
    logger.debug(f"Brute force over {len(candidates)} connectable pairs")

    best = {"entries": [], "arcs": 0}
    chosen = []
    used = set()
    visited = 0

    def search(position: int, arcs: int):
        nonlocal visited
        visited += 1
        remaining = len(candidates) - position
        count = len(chosen)
        best_count = len(best["entries"])
        if count + remaining < best_count:
            return
        if count + remaining == best_count and best_count and arcs >= best["arcs"]:
            return
        if position == len(candidates):
            if count > best_count or (count == best_count and arcs < best["arcs"]):
                best["entries"] = list(chosen)
                best["arcs"] = arcs
            return
        index, paths = candidates[position]
        for path, vertices in paths:
            if used.isdisjoint(vertices):
                chosen.append((index, path))
                used.update(vertices)
                search(position + 1, arcs + path.arcs)
                used.difference_update(vertices)
                chosen.pop()
        search(position + 1, arcs)

    search(0, 0)
    solution = Solution(tuple(best["entries"])).canonical()
    answer = ANSWER_YES if solution.size >= instance.p else ANSWER_NO
    logger.info(f"Brute force optimum {solution.size} with {solution.total_arcs} arcs ({visited} search nodes)")
    return SolveReport(
        solution=solution,
        optimal=True,
        ell_used=solution.total_arcs if answer == ANSWER_YES else instance.n,
        iterations=visited,
        mode=MODE_BRUTE_FORCE,
        p=instance.p,
        answer=answer,
    )
