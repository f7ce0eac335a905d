# sat3.py
"""
3-SAT -> layered vertex-disjoint shortest paths.

The selection pair (u_0, u_n) runs along the spine, choosing chain V_i
(x_i true) or W_i (x_i false) between u_{i-1} and u_i. Clause j gets one
private route per literal; the route for x_i passes through w_j^i when x_i
occurs positively and v_j^i otherwise, and is otherwise made of fresh
vertices. The output has lambda = n(m + 1) + 1 layers.
"""
import logging

from gadgets.services.base import CLAIMS, PROVENANCE_SAT3_LAYERED, GadgetBuilder, GadgetInstance
from graphs.exceptions import GadgetConstructionError, GadgetInputError
from graphs.services.formats import CNF
from graphs.services.verify import verify_layering

logger = logging.getLogger(__name__)


def check_formula(cnf: CNF) -> None:
    if cnf.num_vars < 1 or not cnf.clauses:
        raise GadgetInputError("formula must have at least one variable and one clause")
    for index, clause in enumerate(cnf.clauses, start=1):
        variables = [abs(lit) for lit in clause]
        if not 1 <= len(clause) <= 3:
            raise GadgetInputError(f"clause {index} has {len(clause)} literals, expected 1 to 3")
        if len(set(variables)) != len(variables):
            raise GadgetInputError(f"clause {index} mentions a variable twice")
        if max(variables) > cnf.num_vars:
            raise GadgetInputError(f"clause {index} uses a variable above {cnf.num_vars}")


def gen_sat3_layered(cnf: CNF) -> GadgetInstance:
    check_formula(cnf)
    n, m = cnf.num_vars, cnf.num_clauses
    width = m + 1
    lam = n * width + 1
    builder = GadgetBuilder()
    layers = {}

    def place(label, layer):
        builder.add(label)
        layers[label] = layer
        return label

    for i in range(n + 1):
        place(("u", i), i * width + 1)
    for i in range(1, n + 1):
        base = (i - 1) * width + 1
        for tag in ("v", "w"):
            chain = [("u", i - 1)] + [place((tag, i, j), base + j) for j in range(1, m + 1)] + [("u", i)]
            for left, right in zip(chain, chain[1:]):
                builder.edge(left, right)

    for j, clause in enumerate(cnf.clauses, start=1):
        source = place(("s", j), 1)
        sink = place(("t", j), lam)
        for literal in clause:
            i = abs(literal)
            meet = ("w", i, j) if literal > 0 else ("v", i, j)
            meet_layer = (i - 1) * width + j + 1
            route = [source]
            route += [place(("r", j, i, layer), layer) for layer in range(2, meet_layer)]
            route.append(meet)
            route += [place(("r", j, i, layer), layer) for layer in range(meet_layer + 1, lam)]
            route.append(sink)
            for left, right in zip(route, route[1:]):
                builder.edge(left, right)

    pairs = [(("s", j), ("t", j)) for j in range(1, m + 1)] + [(("u", 0), ("u", n))]
    instance, labels, id_of = builder.build(pairs, layers=layers)

    report = verify_layering(instance)
    if not report.feasible:
        raise GadgetConstructionError(f"layering check failed: {report.violations[0].detail}")

    logger.info(f"3-SAT gadget: n={n}, m={m}, {instance.n} vertices, {lam} layers")
    return GadgetInstance(
        instance=instance,
        provenance=PROVENANCE_SAT3_LAYERED,
        claim=CLAIMS[PROVENANCE_SAT3_LAYERED],
        vertex_labels=labels,
        metadata={
            "selection_pair": m,
            "true_markers": [id_of[("v", i, 1)] for i in range(1, n + 1)],
            "layers": lam,
        },
    )
