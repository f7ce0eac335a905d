# color_coding.py
"""
Exact MVDSP by color coding.

f[X, 1] is the fewest arcs of a shortest terminal path using only vertices
whose colors lie in X; f[X, r] = min over nonempty proper Y of
f[X \\ Y, r - 1] + f[Y, 1]. A coloring certifies a yes-answer for target p
at guess ell when f[full, p] <= ell.
"""
import logging
import math

import networkx as nx
import numpy as np
from django.conf import settings

from graphs.exceptions import ParameterTooLargeError
from graphs.services.graph_core import Instance, Path, distance, relevant_vertices, shortest_path_dag
from solvers.services.colorings import DeterministicFamily, randomized_family, randomized_iteration_count
from solvers.services.reports import (
    ANSWER_NO,
    ANSWER_NOT_FOUND,
    ANSWER_YES,
    EMPTY_SOLUTION,
    INFINITY,
    MODE_CC_DETERMINISTIC,
    MODE_CC_RANDOMIZED,
    Coloring,
    DpTable,
    SolveReport,
)

logger = logging.getLogger(__name__)

RANDOMIZED = "randomized"
DETERMINISTIC = "deterministic"
COLORING_MODES = {RANDOMIZED: MODE_CC_RANDOMIZED, DETERMINISTIC: MODE_CC_DETERMINISTIC}


class ColorCodingService:
    """
    Per-instance state: the shortest-path DAG of each connectable pair, the
    relevant vertices and a base-case cache keyed by the allowed vertex set.
    """

    def __init__(self, instance: Instance, max_iterations=None, exhaustive_bound=None, covering_bound=None):
        self.instance = instance
        self.max_iterations = (
            max_iterations if max_iterations is not None else getattr(settings, "MVDSP_MAX_ITERATIONS", 1_000_000)
        )
        self.exhaustive_bound = (
            exhaustive_bound
            if exhaustive_bound is not None
            else getattr(settings, "MVDSP_EXHAUSTIVE_COLORING_BOUND", 4096)
        )
        self.covering_bound = (
            covering_bound if covering_bound is not None else getattr(settings, "MVDSP_COVERING_SUBSET_BOUND", 500_000)
        )
        self.max_colors = getattr(settings, "MVDSP_MAX_COLORS", 62)

        self.relevant = sorted(relevant_vertices(instance))
        self._position = {v: i for i, v in enumerate(self.relevant)}
        self._pairs = []
        self._max_arcs = {}
        for index, (s, t) in enumerate(instance.pairs):
            if distance(instance.graph, s, t) is None:
                continue
            dag = shortest_path_dag(instance.graph, s, t)
            out = {}
            for arc in dag.arcs:
                out.setdefault(arc.tail, []).append(arc.head)
            self._pairs.append((index, s, t, out))
            self._max_arcs[index] = self._longest_route(dag)
        self._cache = {}

    @property
    def connectable(self) -> list:
        return [index for index, *_ in self._pairs]

    def _longest_route(self, dag) -> int:
        digraph = nx.DiGraph()
        digraph.add_edges_from((arc.tail, arc.head) for arc in dag.arcs)
        if nx.is_directed_acyclic_graph(digraph):
            return nx.dag_longest_path_length(digraph)
        return max(len(self.relevant) - 1, 1)

    def ell_ceiling(self, p: int) -> int:
        """No p-path solution needs more arcs than this."""
        longest = sorted(self._max_arcs.values(), reverse=True)[:p]
        return min(sum(longest), len(self.relevant) - p)

    def _vertex_bits(self, vertices) -> int:
        bits = 0
        for v in vertices:
            if v in self._position:
                bits |= 1 << self._position[v]
        return bits

    def _base_for_vertices(self, bits: int):
        """(arcs, pair index, Path) of the best min-arc shortest path inside `bits`, or None."""
        if bits in self._cache:
            return self._cache[bits]
        position = self._position
        best = None
        for index, s, t, out in self._pairs:
            if not (bits >> position[s]) & 1 or not (bits >> position[t]) & 1:
                continue
            parent = {s: None}
            frontier = [s]
            depth = 0
            found = False
            while frontier and not found:
                depth += 1
                if best is not None and depth > best[0]:
                    break
                following = []
                for u in frontier:
                    for v in out.get(u, ()):
                        if v in parent or not (bits >> position[v]) & 1:
                            continue
                        parent[v] = u
                        if v == t:
                            found = True
                            break
                        following.append(v)
                    if found:
                        break
                frontier = following
            if not found or (best is not None and (depth, index) >= (best[0], best[1])):
                continue
            vertices = [t]
            while parent[vertices[-1]] is not None:
                vertices.append(parent[vertices[-1]])
            best = (depth, index, Path(tuple(reversed(vertices))))
        self._cache[bits] = best
        return best

    def base_case(self, coloring: Coloring, mask: int):
        """f[mask, 1] as (arcs or math.inf, (pair index, Path) or None)."""
        allowed = [v for v in self.relevant if (mask >> coloring[v]) & 1]
        found = self._base_for_vertices(self._vertex_bits(allowed))
        if found is None:
            return math.inf, None
        arcs, index, path = found
        return arcs, (index, path)

    def fill(self, coloring: Coloring, p: int, ell: int) -> DpTable:
        num_colors = coloring.num_colors
        if num_colors != p + ell:
            raise ValueError(f"coloring has {num_colors} colors, expected p + ell = {p + ell}")
        if num_colors > self.max_colors:
            raise ParameterTooLargeError(f"p + ell = {num_colors} exceeds {self.max_colors} colors")
        size = 1 << num_colors

        color_bits = [0] * num_colors
        for v in self.relevant:
            color_bits[coloring[v]] |= 1 << self._position[v]
        vertex_bits = [0] * size
        base = np.full(size, INFINITY, dtype=np.int64)
        base_witness = {}
        for mask in range(1, size):
            low = mask & -mask
            vertex_bits[mask] = vertex_bits[mask ^ low] | color_bits[low.bit_length() - 1]
            found = self._base_for_vertices(vertex_bits[mask])
            if found is not None:
                base[mask] = found[0]
                base_witness[mask] = (found[1], found[2])

        values = np.full((p, size), INFINITY, dtype=np.int64)
        split = np.full((p, size), -1, dtype=np.int64)
        values[0] = base
        masks = np.arange(size, dtype=np.int64)
        finite = [mask for mask in range(1, size) if base[mask] < INFINITY]
        for r in range(2, p + 1):
            previous = values[r - 2]
            best = np.full(size, INFINITY, dtype=np.int64)
            choice = np.full(size, -1, dtype=np.int64)
            for y in finite:
                contains = ((masks & y) == y) & (masks != y)
                candidate = np.where(contains, previous[masks ^ y] + base[y], INFINITY)
                better = candidate < best
                best = np.where(better, candidate, best)
                choice = np.where(better, y, choice)
            unreachable = best >= INFINITY
            best[unreachable] = INFINITY
            choice[unreachable] = -1
            values[r - 1] = best
            split[r - 1] = choice
        return DpTable(num_colors=num_colors, p=p, values=values, split=split, base_witness=base_witness)

    def _family(self, mode: str, num_colors: int, seed: int, ell: int):
        if mode == DETERMINISTIC:
            family = DeterministicFamily(
                self.instance.n,
                self.relevant,
                num_colors,
                seed=seed,
                exhaustive_bound=self.exhaustive_bound,
                covering_bound=self.covering_bound,
            )
            return family, len(family), False
        count, capped = randomized_iteration_count(num_colors, self.max_iterations)
        return randomized_family(self.instance.n, self.relevant, num_colors, seed, ell, count), count, capped

    def solve(self, p: int, mode: str = DETERMINISTIC, seed: int = 0, max_ell=None, min_ell=None) -> SolveReport:
        """
        Sweep ell upward from max(p, min_ell) until a coloring certifies p paths.

        min_ell only skips guesses already known to be too small.
        """
        if mode not in COLORING_MODES:
            raise ValueError(f"unknown color-coding mode {mode!r}")
        report_mode = COLORING_MODES[mode]
        exact = mode == DETERMINISTIC
        if p == 0:
            return SolveReport(EMPTY_SOLUTION, exact, 0, 0, report_mode, p=0, answer=ANSWER_YES)
        if len(self._pairs) < p:
            logger.info(f"Only {len(self._pairs)} pairs are connectable, target p={p} is a no")
            return SolveReport(EMPTY_SOLUTION, exact, self.instance.n, 0, report_mode, p=p, answer=ANSWER_NO)

        ceiling = self.ell_ceiling(p)
        limit = ceiling if max_ell is None else min(ceiling, max_ell)
        iterations = 0
        capped_any = False
        start = p if min_ell is None else max(p, min_ell)
        for ell in range(start, limit + 1):
            num_colors = p + ell
            if num_colors > self.max_colors:
                raise ParameterTooLargeError(f"p + ell = {num_colors} exceeds {self.max_colors} colors")
            family, count, capped = self._family(mode, num_colors, seed, ell)
            capped_any = capped_any or capped
            logger.info(f"Trying ell={ell} with {count} colorings of {num_colors} colors")
            full = (1 << num_colors) - 1
            for coloring in family:
                iterations += 1
                table = self.fill(coloring, p, ell)
                value = table.value(full, p)
                if value is not None and value <= ell:
                    solution = table.extract(full, p)
                    logger.info(f"Found {p} disjoint shortest paths with {solution.total_arcs} arcs at ell={ell}")
                    return SolveReport(solution, exact, ell, iterations, report_mode, p=p, answer=ANSWER_YES)

        if exact and limit == ceiling:
            logger.info(f"No {p} disjoint shortest paths exist")
            return SolveReport(EMPTY_SOLUTION, True, self.instance.n, iterations, report_mode, p=p, answer=ANSWER_NO)
        exhausted = capped_any or limit < ceiling
        logger.info(f"No solution of size {p} found after {iterations} colorings")
        return SolveReport(
            EMPTY_SOLUTION,
            False,
            None,
            iterations,
            report_mode,
            p=p,
            answer=ANSWER_NOT_FOUND,
            budget_exhausted=exhausted,
        )


def colorful_base_case(instance: Instance, coloring: Coloring, mask: int):
    return ColorCodingService(instance).base_case(coloring, mask)


def dp_fill(instance: Instance, coloring: Coloring, p: int, ell: int) -> DpTable:
    return ColorCodingService(instance).fill(coloring, p, ell)


def color_coding_exact(instance: Instance, mode: str = DETERMINISTIC, seed: int = 0, max_ell=None, **options) -> SolveReport:
    """Decide whether instance.p disjoint shortest paths exist; see ColorCodingService.solve."""
    return ColorCodingService(instance, **options).solve(instance.p, mode=mode, seed=seed, max_ell=max_ell)
