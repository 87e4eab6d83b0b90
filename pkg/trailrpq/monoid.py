"""
Transition monoid of a minimal DFA and the aperiodicity test.
"""
from dataclasses import dataclass
from typing import Dict, Optional, Tuple

from .automata import Dfa
from .config import get_settings
from .errors import AutomatonTooLarge

Transformation = Tuple[int, ...]


@dataclass(frozen=True)
class TransitionMonoid:
    """All maps q -> delta(q, w), each with the shortlex-smallest word realizing it."""

    elements: Tuple[Transformation, ...]
    witnesses: Tuple[str, ...]

    @property
    def size(self) -> int:
        return len(self.elements)

    @property
    def identity(self) -> Transformation:
        return self.elements[0]

    def witness_of(self, element: Transformation) -> Optional[str]:
        try:
            return self.witnesses[self.elements.index(element)]
        except ValueError:
            return None


def compose(first: Transformation, then: Transformation) -> Transformation:
    """Map of reading the word of `first` followed by the word of `then`."""
    return tuple(then[r] for r in first)


def transition_monoid(dfa: Dfa, limit: Optional[int] = None) -> TransitionMonoid:
    """Close the symbol maps under composition by breadth-first search.

    Raises:
        AutomatonTooLarge: If the monoid has more than `limit` elements
            (default: the configured state cap).
    """
    cap = limit or get_settings().state_cap
    generators = [tuple(row[i] for row in dfa.delta) for i in range(len(dfa.alphabet))]
    identity = tuple(range(dfa.size))
    words: Dict[Transformation, str] = {identity: ""}
    order = [identity]
    for element in order:
        for symbol, generator in zip(dfa.alphabet, generators):
            image = compose(element, generator)
            if image not in words:
                if len(order) >= cap:
                    raise AutomatonTooLarge(cap)
                words[image] = words[element] + symbol
                order.append(image)
    return TransitionMonoid(elements=tuple(order), witnesses=tuple(words[m] for m in order))


def _is_idempotent_power(element: Transformation) -> bool:
    # m^(k+1) = m^k for some k iff every cycle of the map is a fixpoint
    for q in range(len(element)):
        r = q
        for _ in range(len(element)):
            r = element[r]
        if element[r] != r:
            return False
    return True


def is_aperiodic(dfa: Dfa, monoid: Optional[TransitionMonoid] = None) -> bool:
    """True iff the transition monoid contains no nontrivial group."""
    monoid = monoid or transition_monoid(dfa)
    return all(_is_idempotent_power(m) for m in monoid.elements)
