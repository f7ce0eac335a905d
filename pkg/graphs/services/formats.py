# formats.py
"""
Line-oriented text formats.

Instance document ('#' starts a comment)::

    p mvdsp <n> <m> <k> <p> <u|d>
    e <u> <v> <weight>          m lines, weight "<int>" or "<int>/<int>"
    t <s> <t>                   k lines, pair index = order of appearance
    l <layer-index> <v...>      optional, layer indices 1..lambda

Solution document::

    s <count>
    P <pair_index> <v0> ... <vL>

Plus DIMACS ``p edge`` graphs and DIMACS CNF formulas.
"""
import logging
from dataclasses import dataclass

import networkx as nx

from graphs.exceptions import InstanceFormatError, InvalidInstanceError
from graphs.services.graph_core import Graph, Instance, Path, format_weight, parse_weight
from solvers.services.reports import Solution

logger = logging.getLogger(__name__)


def _content_lines(text: str, comment: str = "#"):
    """Yield (line number, tokens) for every non-blank, non-comment line."""
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split(comment, 1)[0].strip()
        if line:
            yield number, line.split()


def _int_token(token: str, number: int, what: str) -> int:
    try:
        return int(token)
    except ValueError:
        raise InstanceFormatError(f"{what} {token!r} is not an integer", line=number) from None


def parse_instance(text: str) -> Instance:
    header = None
    arcs, pairs, layers = [], [], {}
    for number, tokens in _content_lines(text):
        kind = tokens[0]
        if header is None:
            if kind != "p" or len(tokens) != 7 or tokens[1] != "mvdsp":
                raise InstanceFormatError("expected header 'p mvdsp <n> <m> <k> <p> <u|d>'", line=number)
            n, m, k, p = (_int_token(tok, number, "header field") for tok in tokens[2:6])
            if tokens[6] not in ("u", "d"):
                raise InstanceFormatError(f"direction flag {tokens[6]!r} must be 'u' or 'd'", line=number)
            if min(n, m, k, p) < 0:
                raise InstanceFormatError("header counts must be non-negative", line=number)
            header = (n, m, k, p, tokens[6] == "d")
            continue
        n = header[0]
        if kind == "p":
            raise InstanceFormatError("duplicate header", line=number)
        if kind == "e":
            if len(tokens) != 4:
                raise InstanceFormatError("arc line must be 'e <u> <v> <weight>'", line=number)
            u, v = (_int_token(tok, number, "vertex id") for tok in tokens[1:3])
            _check_ids(number, n, u, v)
            try:
                weight = parse_weight(tokens[3])
            except ValueError as exc:
                raise InstanceFormatError(str(exc), line=number) from None
            if u == v:
                raise InstanceFormatError(f"self-loop at vertex {u}", line=number)
            arcs.append((u, v, weight))
        elif kind == "t":
            if len(tokens) != 3:
                raise InstanceFormatError("terminal line must be 't <s> <t>'", line=number)
            s, t = (_int_token(tok, number, "vertex id") for tok in tokens[1:3])
            _check_ids(number, n, s, t)
            if s == t:
                raise InstanceFormatError(f"terminal pair has s == t == {s}", line=number)
            pairs.append((s, t))
        elif kind == "l":
            if len(tokens) < 2:
                raise InstanceFormatError("layer line must be 'l <layer-index> <v...>'", line=number)
            index = _int_token(tokens[1], number, "layer index")
            if index in layers:
                raise InstanceFormatError(f"duplicate layer index {index}", line=number)
            members = [_int_token(tok, number, "vertex id") for tok in tokens[2:]]
            _check_ids(number, n, *members)
            layers[index] = members
        else:
            raise InstanceFormatError(f"unknown line type {kind!r}", line=number)

    if header is None:
        raise InstanceFormatError("missing header 'p mvdsp ...'")
    n, m, k, p, directed = header
    if len(arcs) != m:
        raise InstanceFormatError(f"header declares {m} arc lines, found {len(arcs)}")
    if len(pairs) != k:
        raise InstanceFormatError(f"header declares {k} terminal lines, found {len(pairs)}")
    if p > k:
        raise InstanceFormatError(f"target p={p} exceeds k={k}")

    layering = None
    if layers:
        if sorted(layers) != list(range(1, len(layers) + 1)):
            raise InstanceFormatError(f"layer indices {sorted(layers)} are not 1..{len(layers)}")
        layering = tuple(tuple(layers[i]) for i in range(1, len(layers) + 1))
    try:
        return Instance(Graph(n, arcs, directed=directed), tuple(pairs), p, layering)
    except InvalidInstanceError as exc:
        raise InstanceFormatError(exc.messages[0]) from None


def _check_ids(number: int, n: int, *ids: int):
    for v in ids:
        if not 0 <= v < n:
            raise InstanceFormatError(f"vertex id {v} outside 0..{n - 1}", line=number)


def serialize_instance(instance: Instance) -> str:
    graph = instance.graph
    if graph.directed:
        arcs = graph.arcs
    else:
        arcs = [arc for arc in graph.arcs if arc.tail < arc.head]
    flag = "d" if graph.directed else "u"
    lines = [f"p mvdsp {graph.n} {len(arcs)} {instance.k} {instance.p} {flag}"]
    lines.extend(f"e {arc.tail} {arc.head} {format_weight(arc.weight)}" for arc in arcs)
    lines.extend(f"t {s} {t}" for s, t in instance.pairs)
    if instance.layering is not None:
        for index, layer in enumerate(instance.layering, start=1):
            lines.append(" ".join(["l", str(index)] + [str(v) for v in sorted(layer)]))
    return "\n".join(lines) + "\n"


def parse_solution(text: str):
    count = None
    entries = []
    for number, tokens in _content_lines(text):
        if count is None:
            if tokens[0] != "s" or len(tokens) != 2:
                raise InstanceFormatError("expected header 's <count>'", line=number)
            count = _int_token(tokens[1], number, "path count")
            continue
        if tokens[0] != "P" or len(tokens) < 3:
            raise InstanceFormatError("path line must be 'P <pair_index> <v0> ... <vL>'", line=number)
        index = _int_token(tokens[1], number, "pair index")
        vertices = tuple(_int_token(tok, number, "vertex id") for tok in tokens[2:])
        entries.append((index, Path(vertices)))
    if count is None:
        raise InstanceFormatError("missing header 's <count>'")
    if count != len(entries):
        raise InstanceFormatError(f"header declares {count} paths, found {len(entries)}")
    return Solution(tuple(entries))


def serialize_solution(solution) -> str:
    entries = sorted(solution.entries, key=lambda entry: entry[0])
    lines = [f"s {len(entries)}"]
    for index, path in entries:
        lines.append(" ".join(["P", str(index)] + [str(v) for v in path.vertices]))
    return "\n".join(lines) + "\n"


def parse_edge_list(text: str) -> nx.Graph:
    """DIMACS 'p edge <n> <m>' graph with 1-based 'e <u> <v>' lines, relabelled to 0..n-1."""
    graph = None
    expected = 0
    for number, tokens in _content_lines(text, comment="%"):
        kind = tokens[0]
        if kind == "c":
            continue
        if kind == "p":
            if graph is not None or len(tokens) != 4 or tokens[1] not in ("edge", "col"):
                raise InstanceFormatError("expected header 'p edge <n> <m>'", line=number)
            n = _int_token(tokens[2], number, "vertex count")
            expected = _int_token(tokens[3], number, "edge count")
            graph = nx.Graph()
            graph.add_nodes_from(range(n))
            continue
        if graph is None:
            raise InstanceFormatError("edge line before the 'p edge' header", line=number)
        if kind != "e" or len(tokens) != 3:
            raise InstanceFormatError("edge line must be 'e <u> <v>'", line=number)
        u, v = (_int_token(tok, number, "vertex id") - 1 for tok in tokens[1:3])
        _check_ids(number, graph.number_of_nodes(), u, v)
        if u == v:
            raise InstanceFormatError(f"self-loop at vertex {u + 1}", line=number)
        graph.add_edge(u, v)
    if graph is None:
        raise InstanceFormatError("missing header 'p edge <n> <m>'")
    if graph.number_of_edges() != expected:
        logger.warning(f"Edge list declares {expected} edges, read {graph.number_of_edges()} distinct edges")
    return graph


def serialize_edge_list(graph: nx.Graph) -> str:
    nodes = sorted(graph.nodes)
    position = {v: i + 1 for i, v in enumerate(nodes)}
    edges = sorted(tuple(sorted((position[u], position[v]))) for u, v in graph.edges)
    lines = [f"p edge {len(nodes)} {len(edges)}"]
    lines.extend(f"e {u} {v}" for u, v in edges)
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class CNF:
    """Formula over variables 1..num_vars; literals are signed ints."""

    num_vars: int
    clauses: tuple

    def __post_init__(self):
        object.__setattr__(self, "clauses", tuple(tuple(int(lit) for lit in clause) for clause in self.clauses))

    @property
    def num_clauses(self) -> int:
        return len(self.clauses)

    def is_satisfied_by(self, assignment) -> bool:
        """`assignment[i - 1]` is the truth value of variable i."""
        return all(any((lit > 0) == bool(assignment[abs(lit) - 1]) for lit in clause) for clause in self.clauses)


def parse_dimacs_cnf(text: str) -> CNF:
    num_vars = num_clauses = None
    clauses, current = [], []
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("%"):
            break
        if line.startswith("p"):
            parts = line.split()
            if num_vars is not None or len(parts) != 4 or parts[1] != "cnf":
                raise InstanceFormatError(f"invalid problem line {line!r}", line=number)
            num_vars = _int_token(parts[2], number, "variable count")
            num_clauses = _int_token(parts[3], number, "clause count")
            continue
        if num_vars is None:
            raise InstanceFormatError("clause before the 'p cnf' header", line=number)
        for token in line.split():
            literal = _int_token(token, number, "literal")
            if literal == 0:
                clauses.append(tuple(current))
                current = []
            elif abs(literal) > num_vars:
                raise InstanceFormatError(f"literal {literal} exceeds {num_vars} variables", line=number)
            else:
                current.append(literal)
    if num_vars is None:
        raise InstanceFormatError("missing header 'p cnf <vars> <clauses>'")
    if current:
        clauses.append(tuple(current))
    if len(clauses) != num_clauses:
        raise InstanceFormatError(f"header declares {num_clauses} clauses, found {len(clauses)}")
    return CNF(num_vars, tuple(clauses))


def serialize_dimacs_cnf(cnf: CNF) -> str:
    lines = [f"p cnf {cnf.num_vars} {cnf.num_clauses}"]
    lines.extend(" ".join(str(lit) for lit in clause) + " 0" for clause in cnf.clauses)
    return "\n".join(lines) + "\n"
