# colorings.py
"""
Coloring families for color coding.

Only the relevant vertices (those on some shortest terminal path) are
colored; every other vertex gets color 0, which never changes a DP value.
"""
import itertools
import logging
import math
from typing import Iterator, Sequence

import numpy as np

from graphs.exceptions import ParameterTooLargeError
from solvers.services.reports import Coloring

logger = logging.getLogger(__name__)


def _expand(n: int, relevant: Sequence[int], colors, num_colors: int) -> Coloring:
    full = [0] * n
    for vertex, color in zip(relevant, colors):
        full[vertex] = int(color)
    return Coloring(tuple(full), num_colors)


def randomized_iteration_count(num_colors: int, max_iterations: int) -> tuple:
    """(N, capped) with N = min(ceil(e^num_colors), max_iterations)."""
    exponent = float(num_colors)
    if exponent > 700:
        return max_iterations, True
    wanted = math.ceil(math.exp(exponent))
    return min(wanted, max_iterations), wanted > max_iterations


def random_coloring(n: int, relevant: Sequence[int], num_colors: int, seed: int, ell: int, iteration: int) -> Coloring:
    """Uniform coloring whose generator is seeded from (seed, ell, iteration)."""
    rng = np.random.default_rng([seed, ell, iteration])
    return _expand(n, relevant, rng.integers(0, num_colors, size=len(relevant)), num_colors)


def randomized_family(n, relevant, num_colors, seed, ell, count) -> Iterator[Coloring]:
    for iteration in range(count):
        yield random_coloring(n, relevant, num_colors, seed, ell, iteration)


class DeterministicFamily:
    """
    A set of colorings such that every vertex subset of size at most
    num_colors among `relevant` is colored injectively by some member.

    Strategy, in order: the identity coloring when there are no more relevant
    vertices than colors; the full enumeration when num_colors**|relevant| is
    within `exhaustive_bound`; otherwise a seeded greedy cover of all
    num_colors-subsets (at most `covering_bound` of them).
    """

    IDENTITY = "identity"
    EXHAUSTIVE = "exhaustive"
    COVERING = "covering"

    def __init__(self, n, relevant, num_colors, seed=0, exhaustive_bound=4096, covering_bound=500_000):
        self.n = n
        self.relevant = list(relevant)
        self.num_colors = num_colors
        self.seed = seed
        size = len(self.relevant)
        if num_colors >= size:
            self.strategy = self.IDENTITY
            self.count = 1
        elif num_colors ** size <= exhaustive_bound:
            self.strategy = self.EXHAUSTIVE
            self.count = num_colors ** size
        else:
            subsets = math.comb(size, num_colors)
            if subsets > covering_bound:
                raise ParameterTooLargeError(
                    f"covering family needs {subsets} test subsets of size {num_colors} "
                    f"over {size} vertices (bound {covering_bound})"
                )
            self.strategy = self.COVERING
            self._members = self._greedy_cover()
            self.count = len(self._members)
        logger.debug(f"Deterministic family: {self.strategy} with {self.count} colorings over {size} vertices")

    def __len__(self):
        return self.count

    def __iter__(self) -> Iterator[Coloring]:
        if self.strategy == self.IDENTITY:
            yield _expand(self.n, self.relevant, range(len(self.relevant)), self.num_colors)
        elif self.strategy == self.EXHAUSTIVE:
            for colors in itertools.product(range(self.num_colors), repeat=len(self.relevant)):
                yield _expand(self.n, self.relevant, colors, self.num_colors)
        else:
            for colors in self._members:
                yield _expand(self.n, self.relevant, colors, self.num_colors)

    def _greedy_cover(self) -> list:
        """Seeded cover; each new member is injective on the first still-uncovered subset."""
        size = len(self.relevant)
        uncovered = np.array(list(itertools.combinations(range(size), self.num_colors)), dtype=np.int64)
        rng = np.random.default_rng([self.seed, self.num_colors, size])
        members = []
        while len(uncovered):
            colors = rng.integers(0, self.num_colors, size=size)
            colors[uncovered[0]] = rng.permutation(self.num_colors)
            picked = np.sort(colors[uncovered], axis=1)
            separated = np.all(np.diff(picked, axis=1) != 0, axis=1)
            members.append(colors)
            uncovered = uncovered[~separated]
        return members
