"""
Reduction from two edge-disjoint paths to trail queries.

Given a hardness witness for L and an instance of the edge-disjoint paths
problem, build a labeled graph with endpoints s and t such that a trail from s
to t matches L iff the instance has edge-disjoint paths s1 -> t1 and s2 -> t2.
"""
import logging
from dataclasses import dataclass
from typing import Dict, List, Tuple

import networkx as nx

from .automata import MinimalDfa
from .classify import HardnessWitness, validate_witness
from .errors import GraphFormatError, ReducedNameClash, WitnessError
from .graphdb import LabeledGraph

logger = logging.getLogger(__name__)

RESERVED_PREFIX = "_"


@dataclass(frozen=True)
class EdpInstance:
    """Directed graph with two source/target pairs; edges are a set of node pairs."""

    nodes: Tuple[str, ...]
    edges: Tuple[Tuple[str, str], ...]
    s1: str
    t1: str
    s2: str
    t2: str


@dataclass(frozen=True)
class Gadget:
    graph: LabeledGraph
    source: str
    target: str


def load_edp(text: str) -> EdpInstance:
    """Parse an instance file: a `pairs s1 t1 s2 t2` header, then edge lines.

    Edge lines use the graph format `source label target`; labels are ignored
    and a bare `source target` line is accepted too.

    Raises:
        GraphFormatError: On a missing or repeated header or a malformed edge line.
        ReducedNameClash: If a node name uses the prefix reserved for gadget nodes.
    """
    pairs = None
    nodes: Dict[str, None] = {}
    edges: Dict[Tuple[str, str], int] = {}
    for number, line in enumerate(text.splitlines(), 1):
        fields = line.split()
        if not fields or fields[0].startswith("#"):
            continue
        if fields[0] == "pairs":
            if pairs is not None:
                raise GraphFormatError("repeated pairs header", number)
            if len(fields) != 5:
                raise GraphFormatError("expected `pairs s1 t1 s2 t2`", number)
            pairs = tuple(fields[1:])
            names = pairs
        elif len(fields) in (2, 3):
            names = (fields[0], fields[-1])
            key = (fields[0], fields[-1])
            if key in edges:
                logger.warning("line %d: parallel edge %s -> %s (first on line %d) ignored", number, *key, edges[key])
            else:
                edges[key] = number
        else:
            raise GraphFormatError(f"expected 2 or 3 fields, got {len(fields)}", number)
        for name in names:
            if name.startswith(RESERVED_PREFIX):
                raise ReducedNameClash(name)
            nodes.setdefault(name, None)
    if pairs is None:
        raise GraphFormatError("missing `pairs s1 t1 s2 t2` header", 0)
    s1, t1, s2, t2 = pairs
    return EdpInstance(nodes=tuple(nodes), edges=tuple(edges), s1=s1, t1=t1, s2=s2, t2=t2)


def _chain(triples: List[Tuple[str, str, str]], source: str, word: str, target: str, prefix: str) -> None:
    # source -word-> target through fresh nodes prefix_1 .. prefix_{len-1}
    current = source
    for i, symbol in enumerate(word):
        following = target if i == len(word) - 1 else f"{prefix}_{i + 1}"
        triples.append((current, symbol, following))
        current = following


def build_hardness_gadget(dfa: MinimalDfa, witness: HardnessWitness, edp: EdpInstance) -> Gadget:
    """Build the reduction graph.

    Every instance edge (v1, v2) becomes v1 -a-> v12 followed by chains spelling
    the rest of w_1 and of w_2 into v2 (an empty rest is spelled `a`). Chains for
    w_ell, w_m and w_r connect s -> s1, t1 -> s2 and t2 -> t; an empty w_ell or
    w_r makes s1 (resp. t2) the endpoint itself.

    Raises:
        WitnessError: If the witness does not validate against the DFA.
        ReducedNameClash: If the instance uses a reserved node name.
    """
    if not validate_witness(dfa, witness):
        raise WitnessError("witness does not validate against the language")
    if not witness.w_m:
        raise WitnessError("witness has an empty middle word")
    for name in edp.nodes:
        if name.startswith(RESERVED_PREFIX):
            raise ReducedNameClash(name)

    tails = list(dict.fromkeys(w[1:] or witness.a for w in (witness.w_1, witness.w_2)))
    triples: List[Tuple[str, str, str]] = []
    for idx, (v1, v2) in enumerate(edp.edges):
        middle = f"_e{idx}"
        triples.append((v1, witness.a, middle))
        for branch, tail in enumerate(tails, 1):
            _chain(triples, middle, tail, v2, f"{middle}_{branch}")

    source = edp.s1
    if witness.w_ell:
        source = "_s"
        _chain(triples, source, witness.w_ell, edp.s1, "_s")
    _chain(triples, edp.t1, witness.w_m, edp.s2, "_m")
    target = edp.t2
    if witness.w_r:
        target = "_t"
        _chain(triples, edp.t2, witness.w_r, target, "_r")

    graph = LabeledGraph(triples, nodes=edp.nodes)
    logger.debug("gadget for %d instance edges: %r", len(edp.edges), graph)
    return Gadget(graph=graph, source=source, target=target)


def edge_disjoint_paths_exist(edp: EdpInstance) -> bool:
    """Exact answer for the instance: try every simple s1 -> t1 path, then search s2 -> t2 without its edges."""
    g = nx.DiGraph()
    g.add_nodes_from(edp.nodes)
    g.add_edges_from(edp.edges)
    if edp.s1 == edp.t1:
        return nx.has_path(g, edp.s2, edp.t2)
    for path in nx.all_simple_edge_paths(g, edp.s1, edp.t1):
        if nx.has_path(nx.restricted_view(g, [], path), edp.s2, edp.t2):
            return True
    return False
