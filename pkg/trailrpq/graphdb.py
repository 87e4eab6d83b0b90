"""
Edge-labeled graphs, trails and searches in the product of a graph with a DFA.

Edges have dense integer ids in first-appearance order; sets of edges are int
bitmasks (bit i set = edge i in the set).
"""
import logging
from collections import deque
from dataclasses import dataclass
from typing import Callable, Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple, Union

from .automata import Dfa
from .errors import GraphFormatError, TrailError, UnknownNodeError
from .regex import SYMBOLS

logger = logging.getLogger(__name__)

Pair = Tuple[int, int]  # (node id, DFA state)
NodeRef = Union[int, str]


@dataclass(frozen=True)
class Edge:
    id: int
    source: int
    label: str
    target: int


class LabeledGraph:
    """Directed graph with single-symbol edge labels and set semantics on edges."""

    def __init__(self, triples: Iterable[Tuple[str, str, str]], nodes: Iterable[str] = ()):
        """Build a graph.

        Args:
            triples: (source, label, target) edges; repeated triples are kept once
            nodes: Extra node names (e.g. isolated nodes), placed first
        """
        self.names: List[str] = []
        self._index: Dict[str, int] = {}
        for name in nodes:
            self._add_node(name)
        self.edges: List[Edge] = []
        seen = set()
        for source, label, target in triples:
            if len(label) != 1 or label not in SYMBOLS:
                raise ValueError(f"invalid edge label {label!r}")
            key = (self._add_node(source), label, self._add_node(target))
            if key in seen:
                continue
            seen.add(key)
            self.edges.append(Edge(len(self.edges), *key))

        self.out_edges: List[List[Edge]] = [[] for _ in self.names]
        self.in_edges: List[List[Edge]] = [[] for _ in self.names]
        for edge in self.edges:
            self.out_edges[edge.source].append(edge)
            self.in_edges[edge.target].append(edge)

    def _add_node(self, name: str) -> int:
        if name not in self._index:
            self._index[name] = len(self.names)
            self.names.append(name)
        return self._index[name]

    @property
    def num_nodes(self) -> int:
        return len(self.names)

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    @property
    def all_edges(self) -> int:
        """Bitmask of every edge."""
        return (1 << len(self.edges)) - 1

    def out_by_label(self, node: int, label: str) -> List[Edge]:
        return [e for e in self.out_edges[node] if e.label == label]

    def node_id(self, node: NodeRef) -> int:
        """Resolve a node name (or pass through a valid id)."""
        if isinstance(node, int) and 0 <= node < len(self.names):
            return node
        if isinstance(node, str) and node in self._index:
            return self._index[node]
        raise UnknownNodeError(str(node))

    def name(self, node: int) -> str:
        return self.names[node]

    def triples(self) -> List[Tuple[str, str, str]]:
        return [(self.names[e.source], e.label, self.names[e.target]) for e in self.edges]

    def __repr__(self) -> str:
        return f"LabeledGraph(nodes={self.num_nodes}, edges={self.num_edges})"


def load_graph(text: str) -> LabeledGraph:
    """Parse a graph file: one `source label target` edge per line, `#` comment lines.

    Raises:
        GraphFormatError: On a wrong field count or a label that is not one [a-z0-9] character.
    """
    triples: List[Tuple[str, str, str]] = []
    first_line: Dict[Tuple[str, str, str], int] = {}
    for number, line in enumerate(text.splitlines(), 1):
        fields = line.split()
        if not fields or fields[0].startswith("#"):
            continue
        if len(fields) != 3:
            raise GraphFormatError(f"expected 3 fields (source label target), got {len(fields)}", number)
        source, label, target = fields
        if len(label) != 1:
            raise GraphFormatError(f"multi-character label {label!r}", number)
        if label not in SYMBOLS:
            raise GraphFormatError(f"invalid label {label!r} (labels are single characters from [a-z0-9])", number)
        key = (source, label, target)
        if key in first_line:
            logger.warning("line %d: duplicate edge %s %s %s (first on line %d) ignored", number, *key,
                           first_line[key])
            continue
        first_line[key] = number
        triples.append(key)
    return LabeledGraph(triples)


def edge_mask(edge_ids: Iterable[int]) -> int:
    mask = 0
    for e in edge_ids:
        mask |= 1 << e
    return mask


def mask_edges(mask: int) -> List[int]:
    """Edge ids of a bitmask in ascending order."""
    ids = []
    while mask:
        low = mask & -mask
        ids.append(low.bit_length() - 1)
        mask ^= low
    return ids


# =============================================================================
# Trails
# =============================================================================
@dataclass(frozen=True)
class Trail:
    """Edge sequence without repeated edges, with cached endpoints and label word."""

    edges: Tuple[int, ...]
    start: int
    end: int
    word: str

    def __len__(self) -> int:
        return len(self.edges)

    @property
    def key(self) -> Tuple[int, Tuple[int, ...]]:
        """Sort key: length first, then edge ids lexicographically."""
        return len(self.edges), self.edges


def trail_check(g: LabeledGraph, edge_ids: Sequence[int], anchor: Optional[NodeRef] = None) -> Trail:
    """Validate an edge sequence as a trail.

    Args:
        g: The graph
        edge_ids: Edge ids in traversal order
        anchor: Start node; required for the empty trail

    Raises:
        TrailError: On an unknown edge id, non-adjacent consecutive edges, a repeated
            edge (reported at its second occurrence), or a start differing from the anchor.
    """
    start = g.node_id(anchor) if anchor is not None else None
    if not edge_ids:
        if start is None:
            raise TrailError("the empty trail needs an anchor node", 0)
        return Trail(edges=(), start=start, end=start, word="")

    seen = set()
    for i, e in enumerate(edge_ids):
        if not 0 <= e < g.num_edges:
            raise TrailError(f"unknown edge id {e}", i)
        if e in seen:
            raise TrailError(f"repeated edge {e}", i)
        seen.add(e)
        if i and g.edges[edge_ids[i - 1]].target != g.edges[e].source:
            raise TrailError("consecutive edges are not adjacent", i)
    first = g.edges[edge_ids[0]]
    if start is not None and first.source != start:
        raise TrailError(f"trail starts at {g.name(first.source)}, not at {g.name(start)}", 0)
    return Trail(
        edges=tuple(edge_ids),
        start=first.source,
        end=g.edges[edge_ids[-1]].target,
        word="".join(g.edges[e].label for e in edge_ids),
    )


def is_trail(edge_ids: Sequence[int]) -> bool:
    return len(set(edge_ids)) == len(edge_ids)


# =============================================================================
# Product searches
# =============================================================================
@dataclass
class SolverStats:
    """Counters collected by the solvers."""

    expanded: int = 0
    summaries: int = 0
    completions: int = 0

    def as_dict(self) -> Dict[str, int]:
        return {"expanded": self.expanded, "summaries": self.summaries, "completions": self.completions}


@dataclass(frozen=True)
class ProductSearchSpec:
    """Constraints of one shortest-walk search in the product of a graph and a DFA.

    The walk is body + suffix: body edges come from `allowed` minus the suffix,
    the run of the DFA over the whole walk stays inside `component` (when set)
    and the pair reached after the suffix satisfies `goal`.
    """

    start: Pair
    goal: Callable[[int, int], bool]
    allowed: Optional[int] = None
    suffix: Tuple[int, ...] = ()
    forbidden_first: FrozenSet[int] = frozenset()
    component: Optional[int] = None
    max_length: Optional[int] = None


@dataclass(frozen=True)
class WalkResult:
    edges: Tuple[int, ...]
    end: Pair

    @property
    def length(self) -> int:
        return len(self.edges)


def _in_component(dfa: Dfa, state: int, component: Optional[int]) -> bool:
    return component is None or dfa.component_of[state] == component


def _run_suffix(g: LabeledGraph, dfa: Dfa, state: int, suffix: Tuple[int, ...],
                component: Optional[int]) -> Optional[int]:
    for e in suffix:
        state = dfa.next(state, g.edges[e].label)
        if state is None or not _in_component(dfa, state, component):
            return None
    return state


def product_shortest_walk(g: LabeledGraph, dfa: Dfa, spec: ProductSearchSpec,
                          stats: Optional[SolverStats] = None) -> Optional[WalkResult]:
    """Breadth-first search for a shortest walk meeting the spec.

    Edges leaving a pair are expanded in edge-id order, so ties are broken
    towards smaller edge ids. The returned walk may repeat edges; callers that
    need a trail check it.
    """
    allowed = g.all_edges if spec.allowed is None else spec.allowed
    allowed &= ~edge_mask(spec.suffix)
    _, state = spec.start
    if not _in_component(dfa, state, spec.component):
        return None
    suffix_source = g.edges[spec.suffix[0]].source if spec.suffix else None
    budget = None if spec.max_length is None else spec.max_length - len(spec.suffix)
    if budget is not None and budget < 0:
        return None

    def finish(pair: Pair, first_step: bool) -> Optional[Pair]:
        v, q = pair
        if not spec.suffix:
            return pair if spec.goal(v, q) else None
        if v != suffix_source or (first_step and spec.suffix[0] in spec.forbidden_first):
            return None
        end_state = _run_suffix(g, dfa, q, spec.suffix, spec.component)
        if end_state is None:
            return None
        end = (g.edges[spec.suffix[-1]].target, end_state)
        return end if spec.goal(*end) else None

    end = finish(spec.start, True)
    if end is not None:
        return WalkResult(edges=spec.suffix, end=end)

    # None stands for the start pair before any edge is taken; forbidden first
    # edges only apply to edges leaving it.
    parents: Dict[Pair, Tuple[Optional[Pair], int]] = {}
    frontier: List[Optional[Pair]] = [None]
    depth = 0
    while frontier and (budget is None or depth < budget):
        depth += 1
        next_frontier: List[Optional[Pair]] = []
        for source in frontier:
            v, q = spec.start if source is None else source
            if stats is not None:
                stats.expanded += 1
            for edge in g.out_edges[v]:
                if not allowed >> edge.id & 1:
                    continue
                if source is None and edge.id in spec.forbidden_first:
                    continue
                r = dfa.next(q, edge.label)
                if r is None or not _in_component(dfa, r, spec.component):
                    continue
                pair = (edge.target, r)
                if pair in parents:
                    continue
                parents[pair] = (source, edge.id)
                end = finish(pair, False)
                if end is not None:
                    return WalkResult(edges=_trace(parents, pair) + spec.suffix, end=end)
                next_frontier.append(pair)
        frontier = next_frontier
    return None


def _trace(parents: Dict[Pair, Tuple[Optional[Pair], int]], pair: Pair) -> Tuple[int, ...]:
    edges = []
    current: Optional[Pair] = pair
    while current is not None:
        previous, e = parents[current]
        edges.append(e)
        current = previous
    return tuple(reversed(edges))


def product_distances(g: LabeledGraph, dfa: Dfa, start: Pair, allowed: Optional[int] = None,
                      component: Optional[int] = None) -> Dict[Pair, int]:
    """Walk distances from start to every reachable pair, optionally inside one component."""
    allowed = g.all_edges if allowed is None else allowed
    if not _in_component(dfa, start[1], component):
        return {}
    distances = {start: 0}
    queue = deque([start])
    while queue:
        v, q = queue.popleft()
        for edge in g.out_edges[v]:
            if not allowed >> edge.id & 1:
                continue
            r = dfa.next(q, edge.label)
            if r is None or not _in_component(dfa, r, component):
                continue
            pair = (edge.target, r)
            if pair not in distances:
                distances[pair] = distances[(v, q)] + 1
                queue.append(pair)
    return distances


def goal_distances(g: LabeledGraph, dfa: Dfa, target: int, allowed: Optional[int] = None) -> Dict[Pair, int]:
    """Walk distances from every pair to (target, final state), by backward search."""
    allowed = g.all_edges if allowed is None else allowed
    predecessors: List[Dict[str, List[int]]] = [{} for _ in range(dfa.size)]
    for p, row in enumerate(dfa.delta):
        for a, r in zip(dfa.alphabet, row):
            predecessors[r].setdefault(a, []).append(p)
    distances = {(target, f): 0 for f in sorted(dfa.final)}
    queue = deque(distances)
    while queue:
        w, r = queue.popleft()
        for edge in g.in_edges[w]:
            if not allowed >> edge.id & 1:
                continue
            for p in predecessors[r].get(edge.label, ()):
                pair = (edge.source, p)
                if pair not in distances:
                    distances[pair] = distances[(w, r)] + 1
                    queue.append(pair)
    return distances
