"""
Trail query evaluation: does the graph contain a trail from s to t whose word
is in L, and which one is shortest.

Three engines are available:
  - dc: downward closed languages, where a shortest matching walk is a trail
  - summary: languages in the tractable class (see trailrpq.summary)
  - brute: exhaustive iterative deepening, exact for every regular language
"""
import logging
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from typing import Callable, FrozenSet, Iterable, Optional, Tuple, Union

from .automata import Dfa, MinimalDfa, Nfa, compile_language, left_quotient
from .classify import CheckMethod, is_downward_closed, is_ttract
from .config import get_settings
from .errors import EngineMismatch, OracleTooLarge
from .graphdb import (
    LabeledGraph,
    NodeRef,
    ProductSearchSpec,
    SolverStats,
    Trail,
    goal_distances,
    is_trail,
    product_shortest_walk,
    trail_check,
)
from .regex import Regex
from .summary import summary_solver

logger = logging.getLogger(__name__)

Language = Union[str, Regex, Nfa, Dfa]


class Engine(str, Enum):
    AUTO = "auto"
    DC_FAST = "dc"
    SUMMARY = "summary"
    BRUTE = "brute"


@dataclass(frozen=True)
class QueryResult:
    found: bool
    trail: Optional[Trail]
    engine: Engine
    stats: SolverStats = field(default_factory=SolverStats)


@lru_cache(maxsize=256)
def language_profile(dfa: MinimalDfa) -> Tuple[bool, bool]:
    """(downward closed, tractable) flags driving engine dispatch."""
    return is_downward_closed(dfa), is_ttract(dfa, CheckMethod.PRODUCT, jobs=1)


def select_engine(dfa: MinimalDfa, requested: Engine = Engine.AUTO) -> Engine:
    """Resolve auto dispatch, or check that an explicit engine applies.

    Raises:
        EngineMismatch: If dc is requested for a language that is not downward
            closed, or summary for a language outside the tractable class.
    """
    downward_closed, ttract = language_profile(dfa)
    if requested is Engine.AUTO:
        if downward_closed:
            return Engine.DC_FAST
        if ttract and dfa.K <= get_settings().summary_max_k:
            return Engine.SUMMARY
        return Engine.BRUTE
    if requested is Engine.DC_FAST and not downward_closed:
        raise EngineMismatch("the dc engine needs a downward closed language")
    if requested is Engine.SUMMARY and not ttract:
        raise EngineMismatch("the summary engine needs a language in the tractable class (use --engine brute)")
    return requested


# =============================================================================
# Engines
# =============================================================================
def _dc_trail(g: LabeledGraph, s: int, t: int, dfa: MinimalDfa, allowed: int, forbidden_first: FrozenSet[int],
              stats: SolverStats) -> Optional[Trail]:
    spec = ProductSearchSpec(
        start=(s, dfa.initial),
        goal=lambda v, q: v == t and q in dfa.final,
        allowed=allowed,
        forbidden_first=forbidden_first,
    )
    result = product_shortest_walk(g, dfa, spec, stats)
    if result is None:
        return None
    # Cutting a cycle between two uses of an edge keeps a subsequence, so a shortest walk never repeats one
    assert is_trail(result.edges), f"shortest walk {result.edges} repeats an edge"
    return trail_check(g, result.edges, anchor=s)


def _summary_trail(g: LabeledGraph, s: int, t: int, dfa: MinimalDfa, allowed: int,
                   forbidden_first: FrozenSet[int], stats: SolverStats) -> Optional[Trail]:
    if not forbidden_first:
        return summary_solver(g, s, t, dfa, allowed, stats=stats)
    # Branch over the permitted first edges and solve the quotient from each target
    best = trail_check(g, (), anchor=s) if s == t and dfa.initial in dfa.final else None
    quotients = {}
    for edge in g.out_edges[s]:
        bit = 1 << edge.id
        if not allowed & bit or edge.id in forbidden_first:
            continue
        if edge.label not in quotients:
            quotients[edge.label] = left_quotient(dfa, edge.label)
        rest = summary_solver(g, edge.target, t, quotients[edge.label], allowed & ~bit, stats=stats)
        if rest is None:
            continue
        candidate = trail_check(g, (edge.id,) + rest.edges, anchor=s)
        if best is None or candidate.key < best.key:
            best = candidate
    return best


def brute_force_trail(g: LabeledGraph, start: NodeRef, dfa: Dfa, target: Optional[NodeRef] = None, *,
                      start_state: Optional[int] = None, deleted: int = 0,
                      forbidden_first: Iterable[int] = (), accept: Optional[Callable[[int, int], bool]] = None,
                      stats: Optional[SolverStats] = None, max_edges: Optional[int] = None) -> Optional[Trail]:
    """Shortest trail by exhaustive iterative deepening.

    Args:
        g: The graph
        start: Start node
        dfa: Any complete DFA (need not be minimal)
        target: End node; with the default acceptance the trail must end here in a final state
        start_state: State the run starts in (default: the initial state)
        deleted: Bitmask of edges that may not be used
        forbidden_first: Edge ids the trail may not start with
        accept: Acceptance predicate on (node, state), replacing the target test
        stats: Counters to update
        max_edges: Edge guard (default from settings)

    Returns:
        The lexicographically smallest among the shortest accepted trails, or None.

    Raises:
        OracleTooLarge: If the graph has more edges than the guard allows.
    """
    limit = max_edges or get_settings().oracle_max_edges
    if g.num_edges > limit:
        raise OracleTooLarge(g.num_edges, limit)
    if accept is None and target is None:
        raise ValueError("brute_force_trail needs a target or an acceptance predicate")
    s = g.node_id(start)
    q0 = dfa.initial if start_state is None else start_state
    forbidden = frozenset(forbidden_first)
    allowed = g.all_edges & ~deleted
    distances = None
    if accept is None:
        t = g.node_id(target)
        distances = goal_distances(g, dfa, t, allowed)

        def accept(v: int, q: int) -> bool:
            return v == t and q in dfa.final

    stats = stats if stats is not None else SolverStats()

    def search(v: int, q: int, used: int, path: Tuple[int, ...], depth: int) -> Optional[Tuple[int, ...]]:
        stats.expanded += 1
        if len(path) == depth:
            return path if accept(v, q) else None
        if distances is not None and distances.get((v, q), depth + 1) > depth - len(path):
            return None
        for edge in g.out_edges[v]:
            bit = 1 << edge.id
            if not allowed & bit or used & bit or (not path and edge.id in forbidden):
                continue
            r = dfa.next(q, edge.label)
            if r is None:
                continue
            found = search(edge.target, r, used | bit, path + (edge.id,), depth)
            if found is not None:
                return found
        return None

    for depth in range(bin(allowed).count("1") + 1):
        found = search(s, q0, 0, (), depth)
        if found is not None:
            return trail_check(g, found, anchor=s)
    return None


# =============================================================================
# Dispatch
# =============================================================================
def solve(g: LabeledGraph, s: NodeRef, t: NodeRef, language: Language, engine: Union[Engine, str] = Engine.AUTO,
          *, deleted: int = 0, forbidden_first: Iterable[int] = (),
          stats: Optional[SolverStats] = None) -> QueryResult:
    """Find a shortest trail from s to t matching the language.

    Args:
        g: The graph
        s: Source node (name or id)
        t: Target node (name or id)
        language: Regex text, syntax tree or automaton
        engine: auto, dc, summary or brute
        deleted: Bitmask of edges the trail may not use
        forbidden_first: Edge ids the trail may not start with
        stats: Counters to update (a fresh set is created when omitted)

    Returns:
        QueryResult with the trail (when found) and the engine that ran.

    Raises:
        UnknownNodeError: If s or t is not a node of the graph.
        EngineMismatch: If the requested engine does not apply to the language.
        BudgetExceeded: If the summary engine runs out of budget.
        OracleTooLarge: If the brute force engine refuses the graph.
    """
    dfa = compile_language(language)
    source, target = g.node_id(s), g.node_id(t)
    chosen = select_engine(dfa, Engine(engine))
    stats = stats if stats is not None else SolverStats()
    forbidden = frozenset(forbidden_first)
    allowed = g.all_edges & ~deleted
    logger.info("query %s -> %s with the %s engine (N=%d)", g.name(source), g.name(target), chosen.value, dfa.N)

    if chosen is Engine.DC_FAST:
        trail = _dc_trail(g, source, target, dfa, allowed, forbidden, stats)
    elif chosen is Engine.SUMMARY:
        trail = _summary_trail(g, source, target, dfa, allowed, forbidden, stats)
    else:
        trail = brute_force_trail(g, source, dfa, target, deleted=deleted, forbidden_first=forbidden, stats=stats)
    return QueryResult(found=trail is not None, trail=trail, engine=chosen, stats=stats)
