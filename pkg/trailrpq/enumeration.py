"""
Enumeration of all matching trails in nondecreasing length, by Yen's k shortest
paths scheme adapted to trails and regular languages.
"""
import heapq
import logging
from typing import Dict, Iterator, List, Optional, Set, Tuple

from .algebra import is_empty, remove_word
from .automata import MinimalDfa, compile_language, minimize, residual_automaton
from .config import get_settings
from .errors import OracleTooLarge
from .graphdb import LabeledGraph, NodeRef, SolverStats, Trail, edge_mask, trail_check
from .trailquery import Engine, Language, solve

logger = logging.getLogger(__name__)


class TrailEnumerator:
    """Emitted trails (A) and the deduplicated candidate queue (B) of one enumeration."""

    def __init__(self, g: LabeledGraph, s: NodeRef, t: NodeRef, language: Language,
                 engine: Engine = Engine.AUTO, stats: Optional[SolverStats] = None):
        self.g = g
        self.s = g.node_id(s)
        self.t = g.node_id(t)
        self.dfa = compile_language(language)
        self.engine = Engine(engine)
        self.stats = stats if stats is not None else SolverStats()
        self.emitted: List[Trail] = []
        self._emitted_edges: Set[Tuple[int, ...]] = set()
        self._queue: List[Tuple[Tuple[int, Tuple[int, ...]], Trail]] = []
        self._queued: Set[Tuple[int, ...]] = set()
        self._spur_languages: Dict[int, Optional[MinimalDfa]] = {}

    def _push(self, trail: Trail) -> None:
        if trail.edges in self._emitted_edges or trail.edges in self._queued:
            return
        self._queued.add(trail.edges)
        heapq.heappush(self._queue, (trail.key, trail))

    def _spur_language(self, state: int) -> Optional[MinimalDfa]:
        """Minimal DFA of the residual at `state` minus the empty word; None if that is empty."""
        if state not in self._spur_languages:
            spur = minimize(remove_word(residual_automaton(self.dfa, state), ""))
            self._spur_languages[state] = None if is_empty(spur) else spur
        return self._spur_languages[state]

    def _spur_engine(self) -> Engine:
        # Removing the empty word breaks downward closure, so only brute force is passed through
        return Engine.BRUTE if self.engine is Engine.BRUTE else Engine.AUTO

    def _spurs(self, trail: Trail) -> Iterator[Trail]:
        """Shortest deviations of `trail` after each of its prefixes."""
        state = self.dfa.initial
        for i in range(len(trail) + 1):
            if i:
                state = self.dfa.next(state, trail.word[i - 1])
            prefix = trail.edges[:i]
            spur = self._spur_language(state)
            if spur is None:
                continue
            node = self.g.edges[prefix[-1]].target if prefix else self.s
            taken = frozenset(a.edges[i] for a in self.emitted if len(a) > i and a.edges[:i] == prefix)
            result = solve(self.g, node, self.t, spur, self._spur_engine(), deleted=edge_mask(prefix),
                           forbidden_first=taken, stats=self.stats)
            if result.found:
                yield trail_check(self.g, prefix + result.trail.edges, anchor=self.s)

    def __iter__(self) -> Iterator[Trail]:
        first = solve(self.g, self.s, self.t, self.dfa, self.engine, stats=self.stats)
        if not first.found:
            return
        self._push(first.trail)
        while self._queue:
            # Pop every candidate of the current minimum length, then emit them sorted
            length = self._queue[0][0][0]
            batch: List[Trail] = []
            while self._queue and self._queue[0][0][0] == length:
                _, trail = heapq.heappop(self._queue)
                self._queued.discard(trail.edges)
                self.emitted.append(trail)
                self._emitted_edges.add(trail.edges)
                batch.append(trail)
                for candidate in self._spurs(trail):
                    self._push(candidate)
            logger.debug("emitting %d trails of length %d", len(batch), length)
            yield from sorted(batch, key=lambda p: p.key)


def enumerate_trails(g: LabeledGraph, s: NodeRef, t: NodeRef, language: Language, limit: Optional[int] = None,
                     engine: Engine = Engine.AUTO, stats: Optional[SolverStats] = None) -> Iterator[Trail]:
    """Stream every trail from s to t matching the language, shortest first.

    Args:
        g: The graph
        s: Source node
        t: Target node
        language: Regex text, syntax tree or automaton
        limit: Maximum number of trails to emit (all when None)
        engine: Engine used for the first trail and the deviation searches
        stats: Counters to update

    Yields:
        Trails in nondecreasing length, equal lengths in edge-id order, without duplicates.
    """
    if limit is not None and limit <= 0:
        return
    for count, trail in enumerate(TrailEnumerator(g, s, t, language, engine, stats), 1):
        yield trail
        if limit is not None and count >= limit:
            return


def all_trails_oracle(g: LabeledGraph, s: NodeRef, t: NodeRef, language: Language,
                      max_edges: Optional[int] = None) -> Set[Trail]:
    """Every matching trail, by exhaustive search over used-edge sets.

    Raises:
        OracleTooLarge: If the graph has more edges than the guard allows.
    """
    limit = max_edges or get_settings().enumerate_oracle_max_edges
    if g.num_edges > limit:
        raise OracleTooLarge(g.num_edges, limit)
    dfa = compile_language(language)
    source, target = g.node_id(s), g.node_id(t)
    found: Set[Trail] = set()

    def search(v: int, q: int, used: int, path: Tuple[int, ...]) -> None:
        if v == target and q in dfa.final:
            found.add(trail_check(g, path, anchor=source))
        for edge in g.out_edges[v]:
            bit = 1 << edge.id
            if used & bit:
                continue
            r = dfa.next(q, edge.label)
            if r is None or r == dfa.dead:
                continue
            search(edge.target, r, used | bit, path + (edge.id,))

    search(source, dfa.initial, 0, ())
    return found
