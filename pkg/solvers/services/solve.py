import logging

from graphs.services.graph_core import Instance
from solvers.services.brute_force import brute_force_optimum
from solvers.services.color_coding import DETERMINISTIC, RANDOMIZED, ColorCodingService
from solvers.services.greedy import greedy_approx
from solvers.services.reports import ANSWER_NO, ANSWER_YES, EMPTY_SOLUTION, SolveReport

logger = logging.getLogger(__name__)

ALGO_GREEDY = "greedy"
ALGO_CC = "cc"
ALGO_CC_DET = "cc-det"
ALGO_BRUTE = "brute"
ALGO_CHOICES = [
    (ALGO_GREEDY, "Greedy min{sqrt(n), ceil(sqrt(ell))}-approximation"),
    (ALGO_CC, "Randomized color coding"),
    (ALGO_CC_DET, "Deterministic color coding"),
    (ALGO_BRUTE, "Brute-force oracle"),
]
COLOR_CODING_ALGOS = {ALGO_CC: RANDOMIZED, ALGO_CC_DET: DETERMINISTIC}


def solve(instance: Instance, algo: str, seed: int = 0, max_ell=None, max_iterations=None, path_cap=None) -> SolveReport:
    """Decision form: is there a solution of size instance.p?"""
    if algo == ALGO_GREEDY:
        return greedy_approx(instance)
    if algo == ALGO_BRUTE:
        return brute_force_optimum(instance, path_cap=path_cap)
    if algo in COLOR_CODING_ALGOS:
        service = ColorCodingService(instance, max_iterations=max_iterations)
        return service.solve(instance.p, mode=COLOR_CODING_ALGOS[algo], seed=seed, max_ell=max_ell)
    raise ValueError(f"unknown algorithm {algo!r}")


def solve_max(instance: Instance, algo: str, seed: int = 0, max_ell=None, max_iterations=None, path_cap=None) -> SolveReport:
    """
    Largest number of pairs that can be routed.

    Color coding raises the target one pair at a time and stops at the first
    target it cannot meet; the base-case cache is shared across targets. In
    deterministic mode the ell found for p is the fewest arcs p paths need,
    so the sweep for p + 1 resumes there instead of starting over.
    """
    if algo == ALGO_GREEDY:
        return greedy_approx(instance.with_p(0))
    if algo == ALGO_BRUTE:
        return brute_force_optimum(instance.with_p(0), path_cap=path_cap)
    if algo not in COLOR_CODING_ALGOS:
        raise ValueError(f"unknown algorithm {algo!r}")

    mode = COLOR_CODING_ALGOS[algo]
    service = ColorCodingService(instance, max_iterations=max_iterations)
    best = service.solve(0, mode=mode, seed=seed, max_ell=max_ell)
    iterations = 0
    last = best
    for p in range(1, len(service.connectable) + 1):
        resume = best.ell_used if mode == DETERMINISTIC and best.size else None
        last = service.solve(p, mode=mode, seed=seed, max_ell=max_ell, min_ell=resume)
        iterations += last.iterations
        if last.answer != ANSWER_YES:
            break
        best = last

    settled = best.size == len(service.connectable) or last.answer == ANSWER_NO
    logger.info(f"Maximum via {algo}: {best.size} of {instance.k} pairs")
    return SolveReport(
        solution=best.solution if best.size else EMPTY_SOLUTION,
        optimal=mode == DETERMINISTIC and settled,
        ell_used=best.ell_used if best.size else instance.n,
        iterations=iterations,
        mode=best.mode,
        p=best.size,
        answer=ANSWER_YES,
        budget_exhausted=last.budget_exhausted,
    )
