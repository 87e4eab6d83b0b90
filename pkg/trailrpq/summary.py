"""
Summary engine: shortest matching trails for languages in the tractable class.

A trail is summarized by keeping its edges verbatim except where the run of
the minimal DFA stays inside one component for more than K = N^2 edges; such a
segment is replaced by an abbreviation recording the component, the node and
state where the segment starts and its last K edges. Inside a component the
state reached after K edges depends only on their labels, which is what makes
abbreviations sound.

The solver enumerates candidate summaries depth first, assigns each
abbreviation a disjoint local edge domain and completes it by a shortest
component-restricted walk. The minimum over all candidates is a shortest trail.
"""
import logging
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterator, List, Optional, Sequence, Set, Tuple, Union

from .automata import MinimalDfa
from .config import get_settings
from .errors import BudgetExceeded, TrailError
from .graphdb import (
    LabeledGraph,
    NodeRef,
    ProductSearchSpec,
    SolverStats,
    Trail,
    edge_mask,
    goal_distances,
    is_trail,
    product_distances,
    product_shortest_walk,
    trail_check,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Abbreviation:
    """Stand-in for a long stay in one component: start pair plus the last K edges."""

    component: int
    node: int
    state: int
    suffix: Tuple[int, ...]


Entry = Union[int, Abbreviation]


@dataclass(frozen=True)
class CandidateSummary:
    entries: Tuple[Entry, ...]

    @property
    def edge_mask(self) -> int:
        """Every edge named by the summary, explicit or inside a suffix."""
        mask = 0
        for entry in self.entries:
            mask |= edge_mask(entry.suffix) if isinstance(entry, Abbreviation) else 1 << entry
        return mask

    @property
    def abbreviations(self) -> List[Abbreviation]:
        return [entry for entry in self.entries if isinstance(entry, Abbreviation)]

    def __len__(self) -> int:
        return len(self.entries)


@dataclass(frozen=True)
class EdgeDomains:
    """Per entry: local edge domain, remaining edges before it, minimal completion length."""

    domains: Tuple[int, ...]
    remaining: Tuple[int, ...]
    min_lengths: Tuple[Optional[int], ...]


# =============================================================================
# Summaries
# =============================================================================
def split_by_summary(g: LabeledGraph, edges: Sequence[int], dfa: MinimalDfa,
                     start_state: Optional[int] = None) -> List[Tuple[Entry, Tuple[int, ...]]]:
    """Summary entries of a trail, each paired with the trail segment it stands for.

    Raises:
        TrailError: If the run over the trail reaches the rejecting sink.
    """
    states = [dfa.initial if start_state is None else start_state]
    for i, e in enumerate(edges):
        q = dfa.next(states[-1], g.edges[e].label)
        if q is None or q == dfa.dead:
            raise TrailError("the run reaches the rejecting sink", i)
        states.append(q)

    def in_component(i: int) -> bool:
        return dfa.component_of[states[i]] == dfa.component_of[states[i + 1]]

    parts: List[Tuple[Entry, Tuple[int, ...]]] = []
    i = 0
    while i < len(edges):
        if not in_component(i):
            parts.append((edges[i], (edges[i],)))
            i += 1
            continue
        # A component is entered once, so its in-component edges are contiguous
        j = i
        while j < len(edges) and in_component(j):
            j += 1
        segment = tuple(edges[i:j])
        if len(segment) > dfa.K:
            component = dfa.component_of[states[i]]
            abbreviation = Abbreviation(component, g.edges[edges[i]].source, states[i], segment[-dfa.K:])
            parts.append((abbreviation, segment))
        else:
            parts.extend((e, (e,)) for e in segment)
        i = j
    return parts


def summary_of(g: LabeledGraph, edges: Sequence[int], dfa: MinimalDfa,
               start_state: Optional[int] = None) -> CandidateSummary:
    """Summary of a trail: long component segments replaced by abbreviations."""
    return CandidateSummary(tuple(entry for entry, _ in split_by_summary(g, edges, dfa, start_state)))


def shortest_completion(g: LabeledGraph, dfa: MinimalDfa, abbreviation: Abbreviation,
                        allowed: Optional[int] = None, stats: Optional[SolverStats] = None) -> Optional[Trail]:
    """Shortest trail from the abbreviation's start pair that stays in its component and ends with its suffix.

    Body edges come from `allowed`; suffix edges are always usable, exactly once.
    """
    spec = ProductSearchSpec(
        start=(abbreviation.node, abbreviation.state),
        goal=lambda v, q: True,
        allowed=allowed,
        suffix=abbreviation.suffix,
        component=abbreviation.component,
    )
    result = product_shortest_walk(g, dfa, spec, stats)
    if result is None:
        return None
    if stats is not None:
        stats.completions += 1
    # Within one component of a tractable language a shortest such walk never repeats an edge
    assert is_trail(result.edges), f"completion {result.edges} repeats an edge"
    return trail_check(g, result.edges)


def compute_edge_domains(g: LabeledGraph, dfa: MinimalDfa, summary: CandidateSummary,
                         allowed: Optional[int] = None, stats: Optional[SolverStats] = None) -> EdgeDomains:
    """Local edge domains, assigned left to right from the edges the summary does not name."""
    remaining = (g.all_edges if allowed is None else allowed) & ~summary.edge_mask
    domains: List[int] = []
    remainders: List[int] = []
    lengths: List[Optional[int]] = []
    for entry in summary.entries:
        remainders.append(remaining)
        completion = shortest_completion(g, dfa, entry, remaining, stats) if isinstance(entry, Abbreviation) else None
        if completion is None:
            domains.append(0)
            lengths.append(None)
            continue
        lengths.append(len(completion))
        bound = len(completion) - dfa.K
        distances = product_distances(g, dfa, (entry.node, entry.state), remaining, entry.component)
        domain = 0
        for (u, p), d in distances.items():
            if d >= bound:
                continue
            for edge in g.out_edges[u]:
                r = dfa.next(p, edge.label)
                if remaining >> edge.id & 1 and r is not None and dfa.component_of[r] == entry.component:
                    domain |= 1 << edge.id
        domains.append(domain)
        remaining &= ~domain
    return EdgeDomains(tuple(domains), tuple(remainders), tuple(lengths))


# =============================================================================
# Solver
# =============================================================================
def _suffix_chains(g: LabeledGraph, dfa: MinimalDfa, node: int, state: int, available: int
                   ) -> Iterator[Tuple[Tuple[int, ...], int]]:
    """K-edge trails that can end a stay in the component of `state` entered at (node, state).

    Yields (suffix, state after the suffix). Chains start at pairs reachable
    inside the component; the set of possible states is tracked along the chain.
    """
    component = dfa.component_of[state]
    starts: Dict[int, Set[int]] = {}
    for u, p in product_distances(g, dfa, (node, state), available, component):
        starts.setdefault(u, set()).add(p)

    def extend(v: int, states: FrozenSet[int], chain: Tuple[int, ...], used: int):
        if len(chain) == dfa.K:
            for r in sorted(states):
                yield chain, r
            return
        for edge in g.out_edges[v]:
            if not available >> edge.id & 1 or used >> edge.id & 1:
                continue
            steps = (dfa.next(p, edge.label) for p in states)
            images = frozenset(r for r in steps if r is not None and dfa.component_of[r] == component)
            if images:
                yield from extend(edge.target, images, chain + (edge.id,), used | 1 << edge.id)

    for u in sorted(starts):
        yield from extend(u, frozenset(starts[u]), (), 0)


def _complete(g: LabeledGraph, dfa: MinimalDfa, summary: CandidateSummary, s: int, t: int, start_state: int,
              allowed: int, stats: Optional[SolverStats]) -> Optional[Trail]:
    """Complete a candidate summary inside its edge domains and run the acceptance tests."""
    domains = compute_edge_domains(g, dfa, summary, allowed, stats)
    edges: List[int] = []
    for entry, domain in zip(summary.entries, domains.domains):
        if isinstance(entry, Abbreviation):
            completion = shortest_completion(g, dfa, entry, domain, stats)
            if completion is None:
                return None
            edges.extend(completion.edges)
        else:
            edges.append(entry)
    try:
        trail = trail_check(g, edges, anchor=s)
    except TrailError:
        return None
    if trail.end != t or dfa.run(start_state, trail.word) not in dfa.final:
        return None
    if summary_of(g, trail.edges, dfa, start_state) != summary:
        return None
    return trail


def summary_solver(g: LabeledGraph, s: NodeRef, t: NodeRef, dfa: MinimalDfa, allowed: Optional[int] = None,
                   start_state: Optional[int] = None, stats: Optional[SolverStats] = None,
                   budget: Optional[int] = None) -> Optional[Trail]:
    """Shortest trail from s to t whose word the DFA accepts, for tractable languages.

    Args:
        g: The graph
        s: Source node
        t: Target node
        dfa: Minimal DFA of a language in the tractable class
        allowed: Bitmask of usable edges (default: all)
        start_state: State the run starts in (default: the initial state)
        stats: Counters to update
        budget: Maximum number of partial summaries explored (default from settings)

    Returns:
        A shortest matching trail, or None if there is none.

    Raises:
        BudgetExceeded: If the enumeration explores more than `budget` partial summaries.
    """
    s, t = g.node_id(s), g.node_id(t)
    allowed = g.all_edges if allowed is None else allowed
    q0 = dfa.initial if start_state is None else start_state
    stats = stats if stats is not None else SolverStats()
    limit = budget or get_settings().summary_budget
    if s == t and q0 in dfa.final:
        return trail_check(g, (), anchor=s)
    remaining_distance = goal_distances(g, dfa, t, allowed)
    if (s, q0) not in remaining_distance:
        return None

    best: Optional[Trail] = None
    explored = 0

    def search(entries: Tuple[Entry, ...], node: int, state: int, used: int, run: int,
               closed: FrozenSet[int], lower_bound: int) -> None:
        nonlocal best, explored
        explored += 1
        if explored > limit:
            raise BudgetExceeded(limit)
        distance = remaining_distance.get((node, state))
        if distance is None or (best is not None and lower_bound + distance > len(best)):
            return
        if node == t and state in dfa.final:
            stats.summaries += 1
            trail = _complete(g, dfa, CandidateSummary(entries), s, t, q0, allowed, stats)
            if trail is not None and (best is None or trail.key < best.key):
                best = trail
                logger.debug("summary solver: trail of length %d after %d summaries", len(trail), stats.summaries)

        component = dfa.component_of[state]
        for edge in g.out_edges[node]:
            bit = 1 << edge.id
            if not allowed & bit or used & bit:
                continue
            r = dfa.next(state, edge.label)
            if r is None:
                continue
            if dfa.component_of[r] == component:
                if component in closed or run >= dfa.K:
                    continue
                search(entries + (edge.id,), edge.target, r, used | bit, run + 1, closed, lower_bound + 1)
            else:
                search(entries + (edge.id,), edge.target, r, used | bit, 0, closed | {component}, lower_bound + 1)

        if run == 0 and component not in closed and not dfa.component_trivial[component]:
            for suffix, r in _suffix_chains(g, dfa, node, state, allowed & ~used):
                abbreviation = Abbreviation(component, node, state, suffix)
                search(entries + (abbreviation,), g.edges[suffix[-1]].target, r, used | edge_mask(suffix), 0,
                       closed | {component}, lower_bound + dfa.K + 1)

    search((), s, q0, 0, 0, frozenset(), 0)
    stats.expanded += explored
    return best
