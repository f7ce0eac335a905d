# composition.py
"""
OR-composition of layered instances.

merge_layered embeds instances A and B between a header and a footer of k
layers each. Header route R_a leads s_a to A's a-th source and Q_a to B's;
Q_a shares its r-th inner vertex with R_{a+r}. The footer mirrors this with
A and B swapped, so routing pair 1 through either side forces every pair
through that side.
"""
import logging
import math

from gadgets.services.base import CLAIMS, PROVENANCE_MERGED, GadgetBuilder, GadgetInstance
from graphs.exceptions import GadgetConstructionError, GadgetInputError
from graphs.services.graph_core import Graph, Instance, distance
from graphs.services.verify import verify_layering

logger = logging.getLogger(__name__)


def _unwrap(item):
    """(Instance, labels) for a GadgetInstance or a plain layered Instance."""
    if isinstance(item, GadgetInstance):
        return item.instance, item.vertex_labels
    if isinstance(item, Instance):
        return item, tuple(("v", v) for v in range(item.n))
    raise GadgetInputError(f"cannot merge a {type(item).__name__}")


def _check_layered(instance: Instance, name: str) -> None:
    if instance.layering is None:
        raise GadgetInputError(f"instance {name} is not layered")
    if instance.graph.directed:
        raise GadgetInputError(f"instance {name} is directed; layered merges expect undirected graphs")
    if not instance.graph.is_unit_weight():
        raise GadgetInputError(f"instance {name} is weighted; layered merges expect unit weights")
    report = verify_layering(instance, require_connected=False)
    if not report.feasible:
        raise GadgetInputError(f"instance {name} violates its layering: {report.violations[0].detail}")


def trivial_no_instance(lam: int, k: int) -> Instance:
    """
    k disjoint monotone chains over lam layers, with the first chain cut
    between layers 1 and 2 so pair 0 can never be connected.
    """
    if lam < 2 or k < 1:
        raise GadgetInputError("a padding instance needs at least two layers and one pair")

    def vertex(a, layer):
        return a * lam + layer

    arcs = [
        (vertex(a, layer), vertex(a, layer + 1), 1)
        for a in range(k)
        for layer in range(lam - 1)
        if not (a == 0 and layer == 0)
    ]
    pairs = [(vertex(a, 0), vertex(a, lam - 1)) for a in range(k)]
    layering = [[vertex(a, layer) for a in range(k)] for layer in range(lam)]
    return Instance(Graph(k * lam, arcs, directed=False), pairs, k, layering)


def _header_q(a, r, k):
    return ("h", a, r) if a + r <= k else ("hq", a, r)


def _header_r(b, r, k):
    return ("h", b - r, r) if b - r >= 1 else ("hr", b, r)


def _footer_r(a, r, k):
    return ("f", a, r) if a + r <= k else ("fr", a, r)


def _footer_q(b, r, k):
    return ("f", b - r, r) if b - r >= 1 else ("fq", b, r)


def merge_layered(a, b) -> GadgetInstance:
    """
    OR of two layered instances with equal layer and pair counts. Every pair
    must be connected in at least one input, otherwise its header and footer
    routes leave a detour that breaks the layering.
    """
    first, first_labels = _unwrap(a)
    second, second_labels = _unwrap(b)
    _check_layered(first, "a")
    _check_layered(second, "b")
    lam = len(first.layering)
    k = first.k
    if len(second.layering) != lam:
        raise GadgetInputError(f"layer counts differ: {lam} and {len(second.layering)}")
    if second.k != k:
        raise GadgetInputError(f"pair counts differ: {k} and {second.k}")
    if k < 1:
        raise GadgetInputError("merged instances need at least one pair")
    for index, (s, t) in enumerate(first.pairs):
        if distance(first.graph, s, t) is None and distance(second.graph, *second.pairs[index]) is None:
            raise GadgetInputError(f"pair {index} is connected in neither input")

    builder = GadgetBuilder()
    layers = {}

    def embed(tag, instance, labels):
        for layer_index, layer in enumerate(instance.layering, start=1):
            for v in layer:
                label = builder.add((tag, labels[v]))
                layers[label] = k + layer_index
        for arc in instance.graph.arcs:
            if arc.tail < arc.head:
                builder.edge((tag, labels[arc.tail]), (tag, labels[arc.head]))
        return [((tag, labels[s]), (tag, labels[t])) for s, t in instance.pairs]

    side_a = embed("A", first, first_labels)
    side_b = embed("B", second, second_labels)

    for pair in range(1, k + 1):
        source = builder.add(("s", pair))
        sink = builder.add(("t", pair))
        layers[source] = 1
        layers[sink] = lam + 2 * k
        head_r = [source] + [_header_r(pair, r, k) for r in range(1, k)] + [side_a[pair - 1][0]]
        head_q = [source] + [_header_q(pair, r, k) for r in range(1, k)] + [side_b[pair - 1][0]]
        foot_r = [side_a[pair - 1][1]] + [_footer_r(pair, r, k) for r in range(k - 1, 0, -1)] + [sink]
        foot_q = [side_b[pair - 1][1]] + [_footer_q(pair, r, k) for r in range(k - 1, 0, -1)] + [sink]
        for r in range(1, k):
            for label in (head_r[r], head_q[r]):
                layers[builder.add(label)] = 1 + r
        for step in range(1, k):
            for label in (foot_r[step], foot_q[step]):
                layers[builder.add(label)] = lam + k + step
        for route in (head_r, head_q, foot_r, foot_q):
            for left, right in zip(route, route[1:]):
                builder.edge(left, right)

    pairs = [(("s", pair), ("t", pair)) for pair in range(1, k + 1)]
    instance, labels, _ = builder.build(pairs, p=k, layers=layers)
    if len(instance.layering) != lam + 2 * k:
        raise GadgetConstructionError(f"merged instance has {len(instance.layering)} layers, expected {lam + 2 * k}")
    report = verify_layering(instance, require_connected=False)
    if not report.feasible:
        raise GadgetConstructionError(f"merged layering check failed: {report.violations[0].detail}")

    logger.info(f"Merged two {lam}-layer instances with {k} pairs into {instance.n} vertices")
    return GadgetInstance(
        instance=instance,
        provenance=PROVENANCE_MERGED,
        claim=CLAIMS[PROVENANCE_MERGED],
        vertex_labels=labels,
        metadata={"layers": lam + 2 * k, "ell": k * (lam + 2 * k - 1)},
    )


def cross_compose(instances: list) -> GadgetInstance:
    """
    Pad to a power of two with trivial no-instances, then merge pairwise until
    one instance remains. Padding instances are matched with real inputs in
    the first round, so each real input must connect all of its pairs.
    """
    if not instances:
        raise GadgetInputError("nothing to compose")
    unwrapped = [_unwrap(item)[0] for item in instances]
    for index, instance in enumerate(unwrapped):
        if instance.layering is None:
            raise GadgetInputError(f"instance {index} is not layered")
    lam = len(unwrapped[0].layering)
    k = unwrapped[0].k
    for index, instance in enumerate(unwrapped):
        if len(instance.layering) != lam or instance.k != k:
            raise GadgetInputError(f"instance {index} has {len(instance.layering)} layers and {instance.k} pairs, expected {lam} and {k}")

    if len(instances) == 1:
        only = instances[0]
        if isinstance(only, GadgetInstance):
            return only
        return GadgetInstance(
            instance=only,
            provenance=PROVENANCE_MERGED,
            claim=CLAIMS[PROVENANCE_MERGED],
            vertex_labels=tuple(("v", v) for v in range(only.n)),
            metadata={"layers": lam, "ell": k * (lam - 1), "rounds": 0},
        )

    total = 1 << math.ceil(math.log2(len(instances)))
    pads = [trivial_no_instance(lam, k) for _ in range(total - len(instances))]
    real = list(instances)
    current = []
    for pad in pads:
        current += [real.pop(0), pad]
    current += real

    rounds = 0
    while len(current) > 1:
        rounds += 1
        current = [merge_layered(current[i], current[i + 1]) for i in range(0, len(current), 2)]
        logger.info(f"Composition round {rounds}: {len(current)} instance(s) left")

    result = current[0]
    final_layers = lam + 2 * k * rounds
    return GadgetInstance(
        instance=result.instance,
        provenance=PROVENANCE_MERGED,
        claim=CLAIMS[PROVENANCE_MERGED],
        vertex_labels=result.vertex_labels,
        metadata={"layers": final_layers, "ell": k * (final_layers - 1), "rounds": rounds, "inputs": len(instances)},
    )
