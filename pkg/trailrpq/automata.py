"""
Finite automata: NFA construction, subset construction, minimization and the
component structure of minimal DFAs.

DFAs are complete over their alphabet. The rejecting sink, when a language has
one, is an ordinary state and counts towards N (and therefore towards K = N^2).
Symbols outside an automaton's alphabet have no transition at all; runs over
them are dead and `Dfa.next` returns None.
"""
import logging
from collections import defaultdict, deque
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, List, Optional, Set, Tuple, Union

import graphviz
import networkx as nx

from .config import get_settings
from .errors import AutomatonTooLarge, GraphFormatError
from .regex import SYMBOLS, Alt, Concat, EmptySet, Epsilon, Opt, Regex, Star, Sym, alphabet, parse_regex

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Nfa:
    """Nondeterministic automaton without epsilon moves."""

    alphabet: Tuple[str, ...]
    states: int
    transitions: FrozenSet[Tuple[int, str, int]]
    initial: FrozenSet[int]
    final: FrozenSet[int]

    def __post_init__(self):
        for p, a, q in self.transitions:
            if not (0 <= p < self.states and 0 <= q < self.states) or a not in self.alphabet:
                raise ValueError(f"transition {(p, a, q)} out of range")
        if any(not 0 <= q < self.states for q in self.initial | self.final):
            raise ValueError("initial and final states must be valid states")

    def accepts(self, word: str) -> bool:
        current = set(self.initial)
        for symbol in word:
            current = {q for p, a, q in self.transitions if p in current and a == symbol}
        return bool(current & self.final)


@dataclass(frozen=True)
class Dfa:
    """Complete deterministic automaton; delta[q][i] is the successor of q on alphabet[i]."""

    alphabet: Tuple[str, ...]
    delta: Tuple[Tuple[int, ...], ...]
    initial: int
    final: FrozenSet[int]

    @property
    def size(self) -> int:
        return len(self.delta)

    @cached_property
    def symbol_index(self) -> Dict[str, int]:
        return {a: i for i, a in enumerate(self.alphabet)}

    def next(self, state: int, symbol: str) -> Optional[int]:
        i = self.symbol_index.get(symbol)
        return None if i is None else self.delta[state][i]

    def run(self, state: int, word: str) -> Optional[int]:
        for symbol in word:
            i = self.symbol_index.get(symbol)
            if i is None:
                return None
            state = self.delta[state][i]
        return state

    def accepts(self, word: str) -> bool:
        end = self.run(self.initial, word)
        return end is not None and end in self.final


@dataclass(frozen=True)
class MinimalDfa(Dfa):
    """Canonical complete minimal DFA together with its component decomposition.

    States are numbered breadth-first from the initial state (which is 0),
    following symbols in codepoint order, so two minimal DFAs over the same
    alphabet are equal iff their languages are. Component ids follow a
    topological order of the component DAG: if component c reaches d then c <= d.
    """

    component_of: Tuple[int, ...]
    components: Tuple[Tuple[int, ...], ...]
    component_trivial: Tuple[bool, ...]
    loop_symbols: Tuple[FrozenSet[str], ...]
    loop_end_symbols: Tuple[FrozenSet[str], ...]
    component_memoryless: Tuple[bool, ...]
    dead: Optional[int]

    @property
    def N(self) -> int:
        return self.size

    @property
    def K(self) -> int:
        return self.size * self.size

    @property
    def component_order(self) -> Tuple[int, ...]:
        return tuple(range(len(self.components)))

    @property
    def memoryless(self) -> Tuple[bool, ...]:
        """Per-state flag: the state's component is memoryless."""
        return tuple(self.component_memoryless[c] for c in self.component_of)

    @cached_property
    def reach(self) -> Tuple[FrozenSet[int], ...]:
        """reach[q]: states reachable from q (reflexive)."""
        graph = _transition_graph(self.delta)
        return tuple(frozenset(nx.descendants(graph, q)) | {q} for q in range(self.size))

    def in_component(self, state: int, component: int) -> bool:
        return self.component_of[state] == component


# =============================================================================
# Construction
# =============================================================================
def _trim(alphabet_: Tuple[str, ...], states: int, transitions: Set[Tuple[int, str, int]],
          initial: Set[int], final: Set[int]) -> Nfa:
    # Keep only states reachable from the initial states
    successors = defaultdict(list)
    for p, a, q in transitions:
        successors[p].append(q)
    order: Dict[int, int] = {}
    stack = sorted(initial)
    while stack:
        p = stack.pop()
        if p in order:
            continue
        order[p] = len(order)
        stack.extend(q for q in successors[p] if q not in order)
    return Nfa(
        alphabet=alphabet_,
        states=len(order),
        transitions=frozenset((order[p], a, order[q]) for p, a, q in transitions if p in order),
        initial=frozenset(order[p] for p in initial),
        final=frozenset(order[p] for p in final if p in order),
    )


def nfa_from_moves(alphabet_: Iterable[str], states: int, moves: Iterable[Tuple[int, Optional[str], int]],
                   initial: Iterable[int], final: Iterable[int]) -> Nfa:
    """Build an NFA from moves where a None symbol is an epsilon move; epsilons are eliminated."""
    epsilon = defaultdict(list)
    labelled = defaultdict(list)
    for p, a, q in moves:
        if a is None:
            epsilon[p].append(q)
        else:
            labelled[p].append((a, q))

    def closure(p: int) -> Set[int]:
        seen = {p}
        stack = [p]
        while stack:
            for q in epsilon[stack.pop()]:
                if q not in seen:
                    seen.add(q)
                    stack.append(q)
        return seen

    final = set(final)
    transitions: Set[Tuple[int, str, int]] = set()
    accepting: Set[int] = set()
    for p in range(states):
        reached = closure(p)
        if reached & final:
            accepting.add(p)
        for q in reached:
            transitions.update((p, a, r) for a, r in labelled[q])
    return _trim(tuple(sorted(set(alphabet_))), states, transitions, set(initial), accepting)


def compile_nfa(ast: Regex) -> Nfa:
    """Inductive (Thompson) construction followed by epsilon elimination."""
    moves: List[Tuple[int, Optional[str], int]] = []
    count = 0

    def new() -> int:
        nonlocal count
        count += 1
        return count - 1

    def build(node: Regex) -> Tuple[int, int]:
        if isinstance(node, Concat):
            left, right = build(node.left), build(node.right)
            moves.append((left[1], None, right[0]))
            return left[0], right[1]
        start, end = new(), new()
        if isinstance(node, Epsilon):
            moves.append((start, None, end))
        elif isinstance(node, Sym):
            moves.append((start, node.symbol, end))
        elif isinstance(node, Alt):
            for branch in (build(node.left), build(node.right)):
                moves.append((start, None, branch[0]))
                moves.append((branch[1], None, end))
        elif isinstance(node, (Star, Opt)):
            inner = build(node.inner)
            moves.extend([(start, None, inner[0]), (start, None, end), (inner[1], None, end)])
            if isinstance(node, Star):
                moves.append((inner[1], None, inner[0]))
        elif not isinstance(node, EmptySet):
            raise TypeError(f"not a regex node: {node!r}")
        return start, end

    start, end = build(ast)
    return nfa_from_moves(alphabet(ast), count, moves, [start], [end])


def determinize(nfa: Nfa, state_cap: Optional[int] = None) -> Dfa:
    """Subset construction; the empty subset becomes the rejecting sink.

    Raises:
        AutomatonTooLarge: If more than state_cap subsets are reachable.
    """
    cap = state_cap or get_settings().state_cap
    successors = [[set() for _ in nfa.alphabet] for _ in range(nfa.states)]
    position = {a: i for i, a in enumerate(nfa.alphabet)}
    for p, a, q in nfa.transitions:
        successors[p][position[a]].add(q)

    start = frozenset(nfa.initial)
    index = {start: 0}
    subsets = [start]
    delta: List[Tuple[int, ...]] = []
    i = 0
    while i < len(subsets):
        row = []
        for a in range(len(nfa.alphabet)):
            target = frozenset().union(*(successors[p][a] for p in subsets[i]))
            if target not in index:
                if len(subsets) >= cap:
                    raise AutomatonTooLarge(cap)
                index[target] = len(subsets)
                subsets.append(target)
            row.append(index[target])
        delta.append(tuple(row))
        i += 1
    logger.debug("subset construction: %d NFA states -> %d DFA states", nfa.states, len(subsets))
    return Dfa(
        alphabet=nfa.alphabet,
        delta=tuple(delta),
        initial=0,
        final=frozenset(k for k, subset in enumerate(subsets) if subset & nfa.final),
    )


def _bfs_order(delta: Tuple[Tuple[int, ...], ...], initial: int) -> List[int]:
    order = [initial]
    seen = {initial}
    for q in order:
        for r in delta[q]:
            if r not in seen:
                seen.add(r)
                order.append(r)
    return order


def _transition_graph(delta: Tuple[Tuple[int, ...], ...]) -> nx.DiGraph:
    graph = nx.DiGraph()
    graph.add_nodes_from(range(len(delta)))
    graph.add_edges_from((q, r) for q, row in enumerate(delta) for r in row)
    return graph


def minimize(dfa: Dfa) -> MinimalDfa:
    """Minimize a complete DFA: trim, Moore refinement, canonical renumbering.

    The result is idempotent: minimize(minimize(x)) == minimize(x).
    """
    reachable = _bfs_order(dfa.delta, dfa.initial)
    block = {q: int(q in dfa.final) for q in reachable}
    count = len(set(block.values()))
    while True:
        signatures = {q: (block[q],) + tuple(block[r] for r in dfa.delta[q]) for q in reachable}
        numbering: Dict[tuple, int] = {}
        refined = {q: numbering.setdefault(signatures[q], len(numbering)) for q in reachable}
        if len(numbering) == count:
            break
        block, count = refined, len(numbering)

    representative: Dict[int, int] = {}
    for q in reachable:
        representative.setdefault(block[q], q)
    canonical = {block[dfa.initial]: 0}
    order = [block[dfa.initial]]
    for b in order:
        for r in dfa.delta[representative[b]]:
            if block[r] not in canonical:
                canonical[block[r]] = len(order)
                order.append(block[r])
    delta = tuple(tuple(canonical[block[r]] for r in dfa.delta[representative[b]]) for b in order)
    final = frozenset(canonical[block[q]] for q in reachable if q in dfa.final)
    return _with_structure(dfa.alphabet, delta, final)


def _with_structure(alphabet_: Tuple[str, ...], delta: Tuple[Tuple[int, ...], ...],
                    final: FrozenSet[int]) -> MinimalDfa:
    n = len(delta)
    graph = _transition_graph(delta)
    condensed = nx.condensation(graph)
    members = nx.get_node_attributes(condensed, "members")
    order = list(nx.lexicographical_topological_sort(condensed, key=lambda c: min(members[c])))
    rank = {c: i for i, c in enumerate(order)}
    component_of = tuple(rank[condensed.graph["mapping"][q]] for q in range(n))
    components = tuple(tuple(sorted(members[c])) for c in order)
    trivial = tuple(len(states) == 1 and states[0] not in delta[states[0]] for states in components)

    loop_symbols = tuple(
        frozenset(a for a, r in zip(alphabet_, delta[q]) if component_of[r] == component_of[q]) for q in range(n)
    )
    loop_end_symbols = tuple(
        frozenset(
            a
            for p in components[component_of[q]]
            for a, r in zip(alphabet_, delta[p])
            if r == q
        )
        for q in range(n)
    )
    memoryless = []
    for c, states in enumerate(components):
        targets = [{delta[p][i] for p in states if component_of[delta[p][i]] == c} for i in range(len(alphabet_))]
        memoryless.append(all(len(t) <= 1 for t in targets))
    dead = next((q for q in range(n) if q not in final and all(r == q for r in delta[q])), None)

    return MinimalDfa(
        alphabet=alphabet_,
        delta=delta,
        initial=0,
        final=final,
        component_of=component_of,
        components=components,
        component_trivial=trivial,
        loop_symbols=loop_symbols,
        loop_end_symbols=loop_end_symbols,
        component_memoryless=tuple(memoryless),
        dead=dead,
    )


def compile_language(source: Union[str, Regex, Nfa, Dfa], state_cap: Optional[int] = None) -> MinimalDfa:
    """Minimal DFA of a regex text, syntax tree or automaton."""
    if isinstance(source, MinimalDfa):
        return source
    if isinstance(source, str):
        source = parse_regex(source)
    if isinstance(source, Dfa):
        return minimize(source)
    if not isinstance(source, Nfa):
        source = compile_nfa(source)
    return minimize(determinize(source, state_cap))


def empty_dfa(alphabet_: Iterable[str] = ()) -> Dfa:
    """Automaton for the empty language (a single rejecting sink)."""
    symbols = tuple(sorted(set(alphabet_)))
    return Dfa(alphabet=symbols, delta=(tuple(0 for _ in symbols),), initial=0, final=frozenset())


# =============================================================================
# Residuals and words
# =============================================================================
def residual_automaton(dfa: Dfa, state: int) -> Dfa:
    """Automaton for L_q: same transitions, initial state q."""
    if not 0 <= state < dfa.size:
        raise ValueError(f"invalid state {state}")
    return Dfa(alphabet=dfa.alphabet, delta=dfa.delta, initial=state, final=dfa.final)


def left_quotient(dfa: Dfa, word: str) -> MinimalDfa:
    """Minimal DFA of the left quotient w^-1 L."""
    state = dfa.run(dfa.initial, word)
    if state is None:
        return minimize(empty_dfa(dfa.alphabet))
    return minimize(residual_automaton(dfa, state))


def accepts(dfa: Dfa, word: str) -> bool:
    return dfa.accepts(word)


def shortest_word(dfa: Dfa, source: Optional[int] = None, targets: Optional[Iterable[int]] = None) -> Optional[str]:
    """Length-lexicographically smallest word leading from source into targets.

    Defaults to the initial state and the final states; None if no target is reachable.
    """
    start = dfa.initial if source is None else source
    goal = dfa.final if targets is None else frozenset(targets)
    words = {start: ""}
    queue = deque([start])
    while queue:
        q = queue.popleft()
        if q in goal:
            return words[q]
        for a, r in zip(dfa.alphabet, dfa.delta[q]):
            if r not in words:
                words[r] = words[q] + a
                queue.append(r)
    return None


def is_finite_language(dfa: MinimalDfa) -> bool:
    """True iff no nontrivial component can reach a final state."""
    predecessors = defaultdict(set)
    for q, row in enumerate(dfa.delta):
        for r in row:
            predecessors[r].add(q)
    live = set(dfa.final)
    stack = list(dfa.final)
    while stack:
        for p in predecessors[stack.pop()]:
            if p not in live:
                live.add(p)
                stack.append(p)
    return all(dfa.component_trivial[dfa.component_of[q]] for q in live)


# =============================================================================
# Automaton files and DOT export
# =============================================================================
def load_automaton(text: str) -> Nfa:
    """Parse an automaton file.

    Lines are `initial q`, `final q1 q2 ...` or transitions `p a q`; `#` starts a
    comment line. State names are arbitrary tokens, symbols single characters
    from [a-z0-9]. The automaton may be nondeterministic or incomplete.
    """
    names: Dict[str, int] = {}
    transitions: Set[Tuple[int, str, int]] = set()
    initial: Set[int] = set()
    final: Set[int] = set()

    def state(name: str) -> int:
        return names.setdefault(name, len(names))

    for number, line in enumerate(text.splitlines(), 1):
        fields = line.split()
        if not fields or fields[0].startswith("#"):
            continue
        if fields[0] == "initial":
            if len(fields) != 2:
                raise GraphFormatError("expected 'initial <state>'", number)
            initial.add(state(fields[1]))
        elif fields[0] == "final":
            final.update(state(name) for name in fields[1:])
        elif len(fields) == 3:
            if len(fields[1]) != 1 or fields[1] not in SYMBOLS:
                raise GraphFormatError(f"invalid symbol {fields[1]!r}", number)
            transitions.add((state(fields[0]), fields[1], state(fields[2])))
        else:
            raise GraphFormatError(f"expected 3 fields, got {len(fields)}", number)
    if not initial:
        raise GraphFormatError("no initial state declared", 0)
    return Nfa(
        alphabet=tuple(sorted({a for _, a, _ in transitions})),
        states=len(names),
        transitions=frozenset(transitions),
        initial=frozenset(initial),
        final=frozenset(final),
    )


def to_dot(dfa: MinimalDfa, annotation: Optional[str] = None) -> str:
    """DOT source: states as circles, finals doubled, one labelled cluster per component."""
    dot = graphviz.Digraph(name="dfa")
    dot.attr(rankdir="LR")
    if annotation:
        dot.attr(label=annotation, labelloc="t")
    for c, states in enumerate(dfa.components):
        with dot.subgraph(name=f"cluster_{c}") as cluster:
            cluster.attr(label=f"C{c}", style="dashed")
            for q in states:
                cluster.node(str(q), shape="doublecircle" if q in dfa.final else "circle")
    dot.node("start", label="", shape="none", width="0")
    dot.edge("start", str(dfa.initial))

    labels: Dict[Tuple[int, int], List[str]] = defaultdict(list)
    for q, row in enumerate(dfa.delta):
        for a, r in zip(dfa.alphabet, row):
            labels[(q, r)].append(a)
    for (q, r), symbols in sorted(labels.items()):
        dot.edge(str(q), str(r), label=",".join(symbols))
    return dot.source
