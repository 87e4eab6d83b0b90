"""
Boolean and rational operations on complete DFAs.

Operands may have different alphabets; every binary operation first extends
both to the union of their alphabets, sending new symbols to a rejecting sink.
Results are complete DFAs but not necessarily minimal.
"""
from typing import Callable, Dict, Iterable, List, Optional, Tuple, Union

from .automata import Dfa, MinimalDfa, Nfa, determinize, minimize, nfa_from_moves, shortest_word
from .config import get_settings
from .errors import AutomatonTooLarge

Automaton = Union[Nfa, Dfa]


def _as_dfa(automaton: Automaton) -> Dfa:
    return determinize(automaton) if isinstance(automaton, Nfa) else automaton


def extend_alphabet(dfa: Dfa, symbols: Iterable[str]) -> Dfa:
    """Same language over a larger alphabet; new symbols lead to a fresh sink."""
    merged = tuple(sorted(set(dfa.alphabet) | set(symbols)))
    if merged == dfa.alphabet:
        return dfa
    sink = dfa.size
    rows = dfa.delta + (tuple(sink for _ in dfa.alphabet),)
    delta = tuple(
        tuple(row[dfa.symbol_index[a]] if a in dfa.symbol_index else sink for a in merged) for row in rows
    )
    return Dfa(alphabet=merged, delta=delta, initial=dfa.initial, final=dfa.final)


def _aligned(left: Automaton, right: Automaton) -> Tuple[Dfa, Dfa]:
    a, b = _as_dfa(left), _as_dfa(right)
    return extend_alphabet(a, b.alphabet), extend_alphabet(b, a.alphabet)


def _product(left: Automaton, right: Automaton, accept: Callable[[bool, bool], bool]) -> Dfa:
    a, b = _aligned(left, right)
    cap = get_settings().state_cap
    index: Dict[Tuple[int, int], int] = {(a.initial, b.initial): 0}
    pairs = [(a.initial, b.initial)]
    delta: List[Tuple[int, ...]] = []
    for p, q in pairs:
        row = []
        for r in zip(a.delta[p], b.delta[q]):
            if r not in index:
                if len(pairs) >= cap:
                    raise AutomatonTooLarge(cap)
                index[r] = len(pairs)
                pairs.append(r)
            row.append(index[r])
        delta.append(tuple(row))
    final = frozenset(i for i, (p, q) in enumerate(pairs) if accept(p in a.final, q in b.final))
    return Dfa(alphabet=a.alphabet, delta=tuple(delta), initial=0, final=final)


def union(left: Automaton, right: Automaton) -> Dfa:
    return _product(left, right, lambda x, y: x or y)


def intersection(left: Automaton, right: Automaton) -> Dfa:
    return _product(left, right, lambda x, y: x and y)


def complement(automaton: Automaton) -> Dfa:
    """Complement relative to the automaton's own alphabet."""
    dfa = _as_dfa(automaton)
    return Dfa(
        alphabet=dfa.alphabet,
        delta=dfa.delta,
        initial=dfa.initial,
        final=frozenset(q for q in range(dfa.size) if q not in dfa.final),
    )


def reverse(automaton: Automaton) -> Dfa:
    dfa = _as_dfa(automaton)
    moves = [(r, a, q) for q, row in enumerate(dfa.delta) for a, r in zip(dfa.alphabet, row)]
    return determinize(nfa_from_moves(dfa.alphabet, dfa.size, moves, dfa.final, [dfa.initial]))


def concat(left: Automaton, right: Automaton) -> Dfa:
    a, b = _aligned(left, right)
    offset = a.size
    moves: List[Tuple[int, Optional[str], int]] = []
    for q, row in enumerate(a.delta):
        moves.extend((q, s, r) for s, r in zip(a.alphabet, row))
    for q, row in enumerate(b.delta):
        moves.extend((q + offset, s, r + offset) for s, r in zip(b.alphabet, row))
    moves.extend((q, None, b.initial + offset) for q in a.final)
    nfa = nfa_from_moves(a.alphabet, a.size + b.size, moves, [a.initial], [q + offset for q in b.final])
    return determinize(nfa)


def word_automaton(word: str, alphabet: Iterable[str] = ()) -> Dfa:
    """DFA accepting exactly one word: a chain of len(word)+1 states plus a sink."""
    symbols = tuple(sorted(set(word) | set(alphabet)))
    sink = len(word) + 1
    delta = []
    for i in range(len(word) + 2):
        expected = word[i] if i < len(word) else None
        delta.append(tuple(i + 1 if a == expected else sink for a in symbols))
    return Dfa(alphabet=symbols, delta=tuple(delta), initial=0, final=frozenset({len(word)}))


def power(automaton: Automaton, k: int) -> MinimalDfa:
    """The k-fold concatenation L^k; L^0 = {epsilon}."""
    if k < 0:
        raise ValueError("power exponent must be non-negative")
    base = minimize(_as_dfa(automaton))
    result = minimize(word_automaton("", base.alphabet))
    for _ in range(k):
        result = minimize(concat(result, base))
    return result


def remove_word(automaton: Automaton, word: str) -> Dfa:
    """L minus {word}."""
    dfa = _as_dfa(automaton)
    return intersection(dfa, complement(word_automaton(word, dfa.alphabet)))


def is_empty(automaton: Automaton) -> bool:
    return shortest_word(_as_dfa(automaton)) is None


def contains(container: Automaton, contained: Automaton) -> bool:
    """True iff L(contained) is a subset of L(container)."""
    a, b = _aligned(container, contained)
    return is_empty(intersection(b, complement(a)))


def counterexample(container: Automaton, contained: Automaton) -> Optional[str]:
    """Shortest word of L(contained) outside L(container), or None if contained."""
    a, b = _aligned(container, contained)
    return shortest_word(intersection(b, complement(a)))


def equivalent(left: Automaton, right: Automaton) -> bool:
    return contains(left, right) and contains(right, left)


def loop_language(dfa: MinimalDfa, state: int, first: Optional[str] = None, last: Optional[str] = None) -> Dfa:
    """Nonempty words leading from state back to itself, optionally with a fixed first or last symbol.

    A run that leaves the state's component can never return, so the automaton
    tracks the component only: states are (component state, last symbol matched)
    pairs plus a start state and a sink.
    """
    component = dfa.component_of[state]
    members = dfa.components[component]
    index: Dict[Tuple[int, bool], int] = {}
    for q in members:
        for flag in (False, True):
            index[(q, flag)] = len(index) + 1
    start, sink = 0, len(index) + 1

    def step(q: int, a: str) -> int:
        r = dfa.next(q, a)
        if r is None or dfa.component_of[r] != component:
            return sink
        return index[(r, last is not None and a == last)]

    delta: List[Tuple[int, ...]] = [tuple(step(state, a) if first in (None, a) else sink for a in dfa.alphabet)]
    for q, _flag in index:
        delta.append(tuple(step(q, a) for a in dfa.alphabet))
    delta.append(tuple(sink for _ in dfa.alphabet))
    final = frozenset(i for (q, flag), i in index.items() if q == state and (last is None or flag))
    return Dfa(alphabet=dfa.alphabet, delta=tuple(delta), initial=start, final=final)
