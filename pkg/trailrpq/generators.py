"""
Random instance generation shared by the test suites and `trailrpq oracle --random`.

Every generator takes an explicit random.Random so runs are reproducible from a seed.
"""
import itertools
import random
from typing import Iterator, List, Sequence

from .automata import Dfa, MinimalDfa, Nfa, minimize
from .gadget import EdpInstance
from .graphdb import LabeledGraph
from .regex import Alt, Concat, Opt, Regex, Star, Sym


def random_regex(rng: random.Random, depth: int = 3, alphabet: Sequence[str] = "ab") -> Regex:
    """Arbitrary expression tree of bounded depth."""
    if depth <= 0 or rng.random() < 0.25:
        return Sym(rng.choice(alphabet))
    kind = rng.randrange(5)
    if kind == 0:
        return Alt(random_regex(rng, depth - 1, alphabet), random_regex(rng, depth - 1, alphabet))
    if kind in (1, 2):
        return Concat(random_regex(rng, depth - 1, alphabet), random_regex(rng, depth - 1, alphabet))
    if kind == 3:
        return Star(random_regex(rng, depth - 1, alphabet))
    return Opt(random_regex(rng, depth - 1, alphabet))


def _over_symbols(rng: random.Random, symbols: List[str]) -> Regex:
    # Expression using each given symbol exactly once
    if len(symbols) == 1:
        node: Regex = Sym(symbols[0])
    else:
        cut = rng.randrange(1, len(symbols))
        left, right = _over_symbols(rng, symbols[:cut]), _over_symbols(rng, symbols[cut:])
        node = Alt(left, right) if rng.random() < 0.4 else Concat(left, right)
    roll = rng.random()
    if roll < 0.3:
        return Star(node)
    if roll < 0.4:
        return Opt(node)
    return node


def random_sore(rng: random.Random, alphabet: Sequence[str] = "abcd") -> Regex:
    """Single-occurrence expression over a random nonempty subset of the alphabet."""
    symbols = list(alphabet)
    rng.shuffle(symbols)
    return _over_symbols(rng, symbols[: rng.randint(1, len(symbols))])


def random_star_single(rng: random.Random, alphabet: Sequence[str] = "abcdef") -> Regex:
    """Concatenation of starred single-occurrence factors and plain symbols.

    Symbols below a star occur nowhere else in the expression; the remaining
    symbols may repeat freely outside stars.
    """
    symbols = list(alphabet)
    rng.shuffle(symbols)
    free = symbols[: max(1, len(symbols) // 3)]
    starred = symbols[len(free):]
    factors: List[Regex] = []
    while starred or not factors:
        if starred and rng.random() < 0.5:
            take = rng.randint(1, min(2, len(starred)))
            factors.append(Star(_over_symbols(rng, starred[:take])))
            starred = starred[take:]
        else:
            node: Regex = Sym(rng.choice(free))
            if rng.random() < 0.3:
                node = Alt(node, Sym(rng.choice(free)))
            factors.append(Opt(node) if rng.random() < 0.3 else node)
        if len(factors) > 6:
            break
    result = factors[0]
    for factor in factors[1:]:
        result = Concat(result, factor)
    return result


def random_nfa(rng: random.Random, states: int = 4, alphabet: Sequence[str] = "ab", density: float = 0.3) -> Nfa:
    transitions = frozenset(
        (p, a, q) for p in range(states) for a in alphabet for q in range(states) if rng.random() < density
    )
    final = frozenset(q for q in range(states) if rng.random() < 0.4) or frozenset({states - 1})
    return Nfa(alphabet=tuple(sorted(alphabet)), states=states, transitions=transitions,
               initial=frozenset({0}), final=final)


def random_minimal_dfa(rng: random.Random, states: int = 4, alphabet: Sequence[str] = "ab") -> MinimalDfa:
    """Minimized random complete DFA with at most `states` states."""
    symbols = tuple(sorted(alphabet))
    delta = tuple(tuple(rng.randrange(states) for _ in symbols) for _ in range(states))
    final = frozenset(q for q in range(states) if rng.random() < 0.4)
    return minimize(Dfa(alphabet=symbols, delta=delta, initial=0, final=final))


def random_graph(rng: random.Random, nodes: int = 6, edges: int = 10, alphabet: Sequence[str] = "ab") -> LabeledGraph:
    """Graph on nodes n0..n{nodes-1} with at most `edges` distinct labeled edges."""
    names = [f"n{i}" for i in range(nodes)]
    triples = [(rng.choice(names), rng.choice(alphabet), rng.choice(names)) for _ in range(edges)]
    return LabeledGraph(triples, nodes=names)


def random_path_graph(rng: random.Random, word: str, extra_edges: int = 0, extra_nodes: int = 0,
                      alphabet: Sequence[str] = "ab") -> LabeledGraph:
    """Path n0 -> n{len(word)} spelling `word`, plus random edges over the path and the extra nodes.

    The path is the only s-t trail until the random edges open shortcuts, so
    matching trails are usually as long as the word.
    """
    names = [f"n{i}" for i in range(len(word) + 1 + extra_nodes)]
    triples = [(names[i], symbol, names[i + 1]) for i, symbol in enumerate(word)]
    triples += [(rng.choice(names), rng.choice(alphabet), rng.choice(names)) for _ in range(extra_edges)]
    return LabeledGraph(triples, nodes=names)


def random_edp_instance(rng: random.Random, nodes: int = 6, edges: int = 8) -> EdpInstance:
    """Instance with pairwise distinct terminals and no self loops (requires nodes >= 4)."""
    if nodes < 4:
        raise ValueError("an instance needs at least 4 nodes")
    names = tuple(f"n{i}" for i in range(nodes))
    pairs = set()
    for _ in range(edges):
        u, v = rng.sample(names, 2)
        pairs.add((u, v))
    s1, t1, s2, t2 = rng.sample(names, 4)
    return EdpInstance(nodes=names, edges=tuple(sorted(pairs)), s1=s1, t1=t1, s2=s2, t2=t2)


def all_words(alphabet: Sequence[str], max_length: int) -> Iterator[str]:
    """Every word up to max_length, shortest first, then in codepoint order."""
    symbols = sorted(alphabet)
    for length in range(max_length + 1):
        for letters in itertools.product(symbols, repeat=length):
            yield "".join(letters)


def random_word(rng: random.Random, alphabet: Sequence[str], length: int) -> str:
    return "".join(rng.choice(alphabet) for _ in range(length))
