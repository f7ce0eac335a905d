import logging
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from graphs.services.graph_core import Path

logger = logging.getLogger(__name__)

MODE_GREEDY = "greedy"
MODE_CC_RANDOMIZED = "color_coding_randomized"
MODE_CC_DETERMINISTIC = "color_coding_deterministic"
MODE_BRUTE_FORCE = "brute_force"

MODE_CHOICES = [
    (MODE_GREEDY, "Greedy approximation"),
    (MODE_CC_RANDOMIZED, "Color coding (randomized)"),
    (MODE_CC_DETERMINISTIC, "Color coding (deterministic)"),
    (MODE_BRUTE_FORCE, "Brute force"),
]
EXACT_MODES = {MODE_CC_DETERMINISTIC, MODE_BRUTE_FORCE}

ANSWER_YES = "yes"
ANSWER_NO = "no"
ANSWER_NOT_FOUND = "not_found"
ANSWER_CHOICES = [
    (ANSWER_YES, "Solution of the target size found"),
    (ANSWER_NO, "Certified no"),
    (ANSWER_NOT_FOUND, "No solution found (one-sided error)"),
]

INFINITY = np.iinfo(np.int64).max // 4


@dataclass(frozen=True)
class Solution:
    """(pair index, path) entries; feasibility is the verifier's call."""

    entries: tuple = field(default_factory=tuple)

    def __post_init__(self):
        entries = tuple(
            (int(index), path if isinstance(path, Path) else Path(tuple(path)))
            for index, path in self.entries
        )
        object.__setattr__(self, "entries", entries)

    @property
    def size(self) -> int:
        return len(self.entries)

    @property
    def total_arcs(self) -> int:
        return sum(path.arcs for _, path in self.entries)

    @property
    def pair_indices(self) -> list:
        return [index for index, _ in self.entries]

    def canonical(self) -> "Solution":
        return Solution(tuple(sorted(self.entries, key=lambda entry: entry[0])))


EMPTY_SOLUTION = Solution(())


@dataclass(frozen=True)
class Coloring:
    """Vertex colors in 0..num_colors-1, one entry per vertex id."""

    colors: tuple
    num_colors: int

    def __post_init__(self):
        object.__setattr__(self, "colors", tuple(int(c) for c in self.colors))
        if any(not 0 <= c < self.num_colors for c in self.colors):
            raise ValueError(f"coloring uses a color outside 0..{self.num_colors - 1}")

    def __getitem__(self, vertex: int) -> int:
        return self.colors[vertex]

    def is_colorful(self, vertices) -> bool:
        vertices = list(vertices)
        return len({self.colors[v] for v in vertices}) == len(vertices)


@dataclass
class DpTable:
    """
    f[X, r] for every color mask X and 1 <= r <= p, with witnesses.

    `values[r - 1, X]` is INFINITY when no colorful collection exists.
    `split[r - 1, X]` is the mask Y of the last path's colors (-1 if none),
    the path for a base cell is `base_witness[Y]`.
    """

    num_colors: int
    p: int
    values: np.ndarray
    split: np.ndarray
    base_witness: dict

    @property
    def full_mask(self) -> int:
        return (1 << self.num_colors) - 1

    def value(self, mask: int, r: int) -> Optional[int]:
        value = int(self.values[r - 1, mask])
        return None if value >= INFINITY else value

    def extract(self, mask: int, r: int) -> Solution:
        entries = []
        while r >= 1:
            if self.value(mask, r) is None:
                raise ValueError(f"f[{mask:#b}, {r}] is infinite")
            if r == 1:
                entries.append(self.base_witness[mask])
                break
            y = int(self.split[r - 1, mask])
            entries.append(self.base_witness[y])
            mask ^= y
            r -= 1
        return Solution(tuple(entries)).canonical()


@dataclass(frozen=True)
class SolveReport:
    solution: Solution
    optimal: bool
    ell_used: Optional[int]
    iterations: int
    mode: str
    p: Optional[int] = None
    answer: str = ANSWER_YES
    budget_exhausted: bool = False

    def __post_init__(self):
        if self.optimal and self.mode not in EXACT_MODES:
            raise ValueError(f"mode {self.mode} cannot claim optimality")

    @property
    def size(self) -> int:
        return self.solution.size

    @property
    def found(self) -> bool:
        return self.answer == ANSWER_YES
