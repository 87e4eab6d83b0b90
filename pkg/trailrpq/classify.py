"""
Classification of regular languages by the complexity of trail query evaluation.

The tractable class is decided on the minimal DFA: for every pair of states
q1 reaching q2 and every symbol a starting a loop at q1, the language of
N-fold a-loops at q2 followed by a word accepted from q2 must be contained in
the language accepted from q1. Languages failing the check admit a hardness
witness, which drives the reduction in `trailrpq.gadget`.
"""
import asyncio
import logging
from collections import deque
from concurrent.futures import ProcessPoolExecutor
from enum import Enum
from functools import lru_cache
from typing import Iterator, List, Optional, Set, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from .algebra import concat, contains, counterexample, intersection, is_empty, loop_language, power
from .automata import (
    Dfa,
    MinimalDfa,
    Nfa,
    compile_language,
    is_finite_language,
    minimize,
    residual_automaton,
    shortest_word,
)
from .config import get_settings
from .errors import WitnessError
from .monoid import is_aperiodic
from .regex import SYMBOLS, Alt, Concat, Regex, Star, is_sore, is_star_single_occurrence, parse_regex, word_ast

logger = logging.getLogger(__name__)


class Trichotomy(str, Enum):
    """Complexity of evaluating trail queries for a fixed language."""

    AC0 = "AC0"
    NL_COMPLETE = "NL_COMPLETE"
    NP_COMPLETE = "NP_COMPLETE"


class CheckMethod(str, Enum):
    """How the containment conditions are decided."""

    ALGEBRA = "algebra"  # automata constructions and containment
    PRODUCT = "product"  # on-the-fly counter product


class Synchronization(str, Enum):
    LEFT = "left"
    RIGHT = "right"
    NONE = "none"


class HardnessWitness(BaseModel):
    """Words certifying that a language is outside the tractable class."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    q: int = Field(ge=0, description="State reached by w_ell")
    a: str = Field(description="Common first symbol of w_1 and w_2")
    w_ell: str = ""
    w_m: str
    w_r: str
    w_1: str = Field(min_length=1)
    w_2: str = Field(min_length=1)

    @field_validator("a")
    @classmethod
    def validate_symbol(cls, v: str) -> str:
        if len(v) != 1 or v not in SYMBOLS:
            raise ValueError(f"Invalid symbol: {v!r}")
        return v


class ClassificationReport(BaseModel):
    """All classification flags of one language."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    finite: bool
    downward_closed: bool
    aperiodic: bool
    sptract: bool
    ttract: bool
    trichotomy: Trichotomy
    witness: Optional[HardnessWitness] = None
    N: int = Field(ge=1)
    K: int = Field(ge=1)
    memoryless: bool
    sore: Optional[bool] = None
    star_single_occurrence: Optional[bool] = None

    @model_validator(mode="after")
    def check_implications(self) -> "ClassificationReport":
        chain = [
            (self.finite, self.ttract, "finite languages are tractable"),
            (self.downward_closed, self.sptract, "downward closed implies sptract"),
            (self.sptract, self.ttract, "sptract implies ttract"),
            (self.ttract, self.aperiodic, "ttract implies aperiodic"),
        ]
        for premise, conclusion, rule in chain:
            if premise and not conclusion:
                raise ValueError(f"inconsistent report: {rule}")
        expected = (
            Trichotomy.AC0 if self.finite else Trichotomy.NL_COMPLETE if self.ttract else Trichotomy.NP_COMPLETE
        )
        if self.trichotomy != expected:
            raise ValueError(f"inconsistent report: verdict {self.trichotomy.value} but expected {expected.value}")
        if (self.witness is None) != self.ttract:
            raise ValueError("inconsistent report: a witness is present iff the language is not ttract")
        if self.K != self.N * self.N:
            raise ValueError("inconsistent report: K must be N^2")
        return self


# =============================================================================
# Containment conditions
# =============================================================================
def _triples(dfa: MinimalDfa, sync: Synchronization) -> Iterator[Tuple[int, int, Optional[str]]]:
    # (q1, q2, a) in a fixed order: q1 ascending, q2 ascending, a in alphabet order
    for q1 in range(dfa.N):
        if sync is Synchronization.LEFT:
            symbols: List[Optional[str]] = sorted(dfa.loop_symbols[q1])
        elif sync is Synchronization.RIGHT:
            symbols = sorted(dfa.loop_end_symbols[q1])
        else:
            symbols = [] if dfa.component_trivial[dfa.component_of[q1]] else [None]
        if not symbols:
            continue
        for q2 in sorted(dfa.reach[q1]):
            if dfa.component_trivial[dfa.component_of[q2]]:
                continue
            for a in symbols:
                yield q1, q2, a


def _loops(dfa: MinimalDfa, q2: int, a: Optional[str], sync: Synchronization) -> Dfa:
    if sync is Synchronization.LEFT:
        return loop_language(dfa, q2, first=a)
    if sync is Synchronization.RIGHT:
        return loop_language(dfa, q2, last=a)
    return loop_language(dfa, q2)


def _pumped_language(dfa: MinimalDfa, q2: int, a: Optional[str], sync: Synchronization) -> Optional[Dfa]:
    # N-fold loops at q2 followed by the residual of q2; None if there are no such loops
    loops = _loops(dfa, q2, a, sync)
    if is_empty(loops):
        return None
    return concat(power(loops, dfa.N), minimize(residual_automaton(dfa, q2)))


@lru_cache(maxsize=64)
def _non_inclusions(dfa: MinimalDfa) -> frozenset:
    """Pairs (contained, container) of states whose residuals are NOT included."""
    predecessors = [[[] for _ in range(dfa.N)] for _ in dfa.alphabet]
    for p, row in enumerate(dfa.delta):
        for i, r in enumerate(row):
            predecessors[i][r].append(p)
    bad = {(x, y) for x in dfa.final for y in range(dfa.N) if y not in dfa.final}
    queue = deque(bad)
    while queue:
        x, y = queue.popleft()
        for i in range(len(dfa.alphabet)):
            for px in predecessors[i][x]:
                for py in predecessors[i][y]:
                    if (px, py) not in bad:
                        bad.add((px, py))
                        queue.append((px, py))
    return frozenset(bad)


def _product_check(dfa: MinimalDfa, q1: int, q2: int, a: Optional[str], sync: Synchronization) -> bool:
    # Search words u_1 ... u_N y (u_i loops at q2, y accepted from q2) not accepted from q1.
    # A state is (position in the loop at q2, state reached from q1, completed loops, at a loop start).
    component = dfa.component_of[q2]
    not_included = _non_inclusions(dfa)
    start = (q2, q1, 0, True)
    seen = {start}
    queue = deque([start])
    while queue:
        r, p, count, at_start = queue.popleft()
        if at_start and count == dfa.N:
            if (q2, p) in not_included:
                return False
            continue
        for symbol in dfa.alphabet:
            if at_start and sync is Synchronization.LEFT and symbol != a:
                continue
            r2 = dfa.next(r, symbol)
            if dfa.component_of[r2] != component:
                continue
            p2 = dfa.next(p, symbol)
            successors = [(r2, p2, count, False)]
            if r2 == q2 and (sync is not Synchronization.RIGHT or symbol == a):
                successors.append((q2, p2, count + 1, True))
            for state in successors:
                if state not in seen:
                    seen.add(state)
                    queue.append(state)
    return True


def _check_pair(dfa: MinimalDfa, q1: int, q2: int, a: Optional[str], sync: Synchronization,
                method: CheckMethod) -> bool:
    """Decide one containment condition; module level so worker processes can run it."""
    if method is CheckMethod.PRODUCT:
        return _product_check(dfa, q1, q2, a, sync)
    pumped = _pumped_language(dfa, q2, a, sync)
    return pumped is None or contains(minimize(residual_automaton(dfa, q1)), pumped)


def _failures(dfa: MinimalDfa, sync: Synchronization, method: CheckMethod,
              jobs: Optional[int] = None) -> Iterator[Tuple[int, int, Optional[str]]]:
    jobs = jobs or get_settings().jobs
    triples = list(_triples(dfa, sync))
    if jobs > 1 and len(triples) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_check_pair, *zip(*[(dfa, q1, q2, a, sync, method) for q1, q2, a in triples])))
        yield from (t for t, ok in zip(triples, results) if not ok)
        return
    for q1, q2, a in triples:
        if not _check_pair(dfa, q1, q2, a, sync, method):
            yield q1, q2, a


def _as_minimal(source: Union[str, Regex, Nfa, Dfa]) -> MinimalDfa:
    return compile_language(source)


def is_ttract(dfa: Union[str, Regex, Nfa, Dfa], method: CheckMethod = CheckMethod.ALGEBRA,
              jobs: Optional[int] = None) -> bool:
    """Left-synchronized containment property of the minimal DFA.

    Args:
        dfa: Minimal DFA (other inputs are compiled first)
        method: Containment decision procedure
        jobs: Worker processes for the independent pair checks (default from settings)

    Returns:
        True iff trail queries for the language are tractable.
    """
    return next(_failures(_as_minimal(dfa), Synchronization.LEFT, method, jobs), None) is None


def is_ttract_right(dfa: Union[str, Regex, Nfa, Dfa], method: CheckMethod = CheckMethod.ALGEBRA,
                    jobs: Optional[int] = None) -> bool:
    """Right-synchronized variant: loops ending with a common symbol."""
    return next(_failures(_as_minimal(dfa), Synchronization.RIGHT, method, jobs), None) is None


def is_sptract(dfa: Union[str, Regex, Nfa, Dfa], method: CheckMethod = CheckMethod.ALGEBRA,
               jobs: Optional[int] = None) -> bool:
    """Unsynchronized variant, the tractable class for simple paths."""
    return next(_failures(_as_minimal(dfa), Synchronization.NONE, method, jobs), None) is None


async def is_ttract_async(dfa: Union[str, Regex, Nfa, Dfa], jobs: Optional[int] = None,
                          method: CheckMethod = CheckMethod.ALGEBRA) -> bool:
    """Fan the pair checks out over an executor and join them with asyncio.gather."""
    minimal = _as_minimal(dfa)
    jobs = jobs or get_settings().jobs
    loop = asyncio.get_running_loop()
    triples = list(_triples(minimal, Synchronization.LEFT))
    pool = ProcessPoolExecutor(max_workers=jobs) if jobs > 1 else None
    try:
        tasks = [
            loop.run_in_executor(pool, _check_pair, minimal, q1, q2, a, Synchronization.LEFT, method)
            for q1, q2, a in triples
        ]
        results = await asyncio.gather(*tasks)
    finally:
        if pool is not None:
            pool.shutdown()
    return all(results)


def is_downward_closed(dfa: Union[str, Regex, Nfa, Dfa]) -> bool:
    """Suffix language containment: every transition q1 -> q2 has L_q2 included in L_q1."""
    minimal = _as_minimal(dfa)
    residuals = [minimize(residual_automaton(minimal, q)) for q in range(minimal.N)]
    return all(
        contains(residuals[q1], residuals[q2]) for q1, row in enumerate(minimal.delta) for q2 in set(row) if q1 != q2
    )


def satisfies_property_p(dfa: Union[str, Regex, Nfa, Dfa]) -> bool:
    """Reachable pairs sharing a loop word have included residuals (implies aperiodicity)."""
    minimal = _as_minimal(dfa)
    loops = [loop_language(minimal, q) for q in range(minimal.N)]
    for q1 in range(minimal.N):
        for q2 in minimal.reach[q1]:
            if q1 == q2 or is_empty(intersection(loops[q1], loops[q2])):
                continue
            if not contains(residual_automaton(minimal, q1), residual_automaton(minimal, q2)):
                return False
    return True


def classify(source: Union[str, Regex, Nfa, Dfa], method: CheckMethod = CheckMethod.ALGEBRA,
             jobs: Optional[int] = None) -> ClassificationReport:
    """Compute every flag, the verdict and (for intractable languages) a witness.

    Args:
        source: Regex text, syntax tree or automaton
        method: Containment decision procedure
        jobs: Worker processes for the tractability check

    Returns:
        The classification report.
    """
    ast = parse_regex(source) if isinstance(source, str) else source
    dfa = compile_language(ast)
    finite = is_finite_language(dfa)
    ttract = is_ttract(dfa, method, jobs)
    report = ClassificationReport(
        finite=finite,
        downward_closed=is_downward_closed(dfa),
        aperiodic=is_aperiodic(dfa),
        sptract=is_sptract(dfa, method, jobs),
        ttract=ttract,
        trichotomy=Trichotomy.AC0 if finite else Trichotomy.NL_COMPLETE if ttract else Trichotomy.NP_COMPLETE,
        witness=None if ttract else extract_witness(dfa, method),
        N=dfa.N,
        K=dfa.K,
        memoryless=all(dfa.component_memoryless),
        sore=None if isinstance(ast, (Nfa, Dfa)) else is_sore(ast),
        star_single_occurrence=None if isinstance(ast, (Nfa, Dfa)) else is_star_single_occurrence(ast),
    )
    logger.info("classified language with N=%d: %s", dfa.N, report.trichotomy.value)
    return report


# =============================================================================
# Hardness witnesses
# =============================================================================
def _closure(dfa: Dfa, starts: Set[int], words: List[str]) -> Set[int]:
    # States reachable from starts by any sequence of the given words
    reached = set(starts)
    stack = list(starts)
    while stack:
        q = stack.pop()
        for word in words:
            r = dfa.run(q, word)
            if r is not None and r not in reached:
                reached.add(r)
                stack.append(r)
    return reached


def _separating_tail(dfa: Dfa, accept_from: Set[int], reject_from: Set[int]) -> Optional[str]:
    """Shortest word accepted from every state of accept_from and rejected from every state of reject_from."""
    if accept_from & reject_from:
        return None
    accepting, rejecting = tuple(sorted(accept_from)), tuple(sorted(reject_from))
    start = accepting + rejecting
    split = len(accepting)
    words = {start: ""}
    queue = deque([start])
    limit = get_settings().state_cap
    while queue:
        states = queue.popleft()
        if all(q in dfa.final for q in states[:split]) and not any(q in dfa.final for q in states[split:]):
            return words[states]
        for symbol, i in dfa.symbol_index.items():
            image = tuple(dfa.delta[q][i] for q in states)
            if image not in words and len(words) < limit:
                words[image] = words[states] + symbol
                queue.append(image)
    return None


def _conditions_hold(dfa: Dfa, q: int, w_1: str, w_2: str, w_m: str, w_r: str) -> bool:
    # Exact check of both witness conditions through the finite orbits of q
    if not w_1 or not w_2 or w_1[0] != w_2[0] or dfa.run(q, w_1) != q:
        return False
    middle = dfa.run(q, w_m)
    if middle is None:
        return False
    pumped = _closure(dfa, {middle}, [w_2])
    if any(dfa.run(p, w_r) not in dfa.final for p in pumped):
        return False
    return all(dfa.run(p, w_r) not in dfa.final for p in _closure(dfa, {q}, [w_1, w_2]))


def _normalize(dfa: MinimalDfa, q: int, a: str, w_ell: str, loop: str, power_: int, w_2: str, w_m: str,
               w_r: str) -> HardnessWitness:
    w_1 = loop * power_
    for k in range(1, power_):
        if _conditions_hold(dfa, q, loop * k, w_2, w_m, w_r):
            w_1 = loop * k
            break
    while w_r.startswith(w_2) and _conditions_hold(dfa, q, w_1, w_2, w_m, w_r[len(w_2):]):
        w_r = w_r[len(w_2):]
    return HardnessWitness(q=q, a=a, w_ell=w_ell, w_m=w_m, w_r=w_r, w_1=w_1, w_2=w_2)


def _primary_witness(dfa: MinimalDfa, q1: int, q2: int, a: str) -> Optional[HardnessWitness]:
    pumped = _pumped_language(dfa, q2, a, Synchronization.LEFT)
    x = counterexample(minimize(residual_automaton(dfa, q1)), pumped) if pumped is not None else None
    if x is None:
        return None
    # w_2: the shortest prefix of x returning to q2; the rest stays accepted from q2
    state, cut = q2, len(x)
    for j, symbol in enumerate(x, 1):
        state = dfa.next(state, symbol)
        if state == q2:
            cut = j
            break
    w_2, w_r = x[:cut], x[cut:]
    loop = shortest_word(loop_language(dfa, q1, first=a))
    w_m = shortest_word(dfa, q1, [q2])
    w_ell = shortest_word(dfa, None, [q1])
    w_1 = loop * dfa.N
    if not _conditions_hold(dfa, q1, w_1, w_2, w_m, w_r):
        tail = _separating_tail(
            dfa, _closure(dfa, {dfa.run(q1, w_m)}, [w_2]), _closure(dfa, {q1}, [w_1, w_2])
        )
        if tail is None:
            return None
        w_r = tail
    return _normalize(dfa, q1, a, w_ell, loop, dfa.N, w_2, w_m, w_r)


def _loop_words(dfa: MinimalDfa, q: int, a: str, max_length: int, limit: int = 64) -> List[str]:
    """Loop words at q starting with a, shortest first, at most `limit` of them."""
    found: List[str] = []
    frontier = [("", q)]
    for _ in range(max_length):
        next_frontier = []
        for word, state in frontier:
            for symbol in dfa.alphabet if word else [a]:
                r = dfa.next(state, symbol)
                if r is None or dfa.component_of[r] != dfa.component_of[q]:
                    continue
                if r == q:
                    found.append(word + symbol)
                    if len(found) >= limit:
                        return found
                next_frontier.append((word + symbol, r))
        frontier = next_frontier
    return found


def _search_witness(dfa: MinimalDfa, failures: List[Tuple[int, int, str]]) -> Optional[HardnessWitness]:
    """Exhaustive fallback over loop words of length up to 2N."""
    for q1, q2, a in failures:
        w_m = shortest_word(dfa, q1, [q2])
        w_ell = shortest_word(dfa, None, [q1])
        middle = dfa.run(q1, w_m)
        for loop in _loop_words(dfa, q1, a, 2 * dfa.N):
            for k in range(1, dfa.N + 1):
                w_1 = loop * k
                for w_2 in _loop_words(dfa, q2, a, 2 * dfa.N):
                    tail = _separating_tail(
                        dfa, _closure(dfa, {middle}, [w_2]), _closure(dfa, {q1}, [w_1, w_2])
                    )
                    if tail is not None:
                        return _normalize(dfa, q1, a, w_ell, loop, k, w_2, w_m, tail)
    return None


def extract_witness(dfa: Union[str, Regex, Nfa, Dfa], method: CheckMethod = CheckMethod.ALGEBRA) -> HardnessWitness:
    """Hardness witness of a language outside the tractable class.

    Raises:
        WitnessError: If the language is tractable or no witness could be constructed.
    """
    minimal = _as_minimal(dfa)
    failures = _failures(minimal, Synchronization.LEFT, method, jobs=1)
    first = next(failures, None)
    if first is None:
        raise WitnessError("language is ttract: no hardness witness exists")
    witness = _primary_witness(minimal, *first)
    if witness is None or not validate_witness(minimal, witness):
        logger.warning("primary witness construction failed at %s; searching loop words exhaustively", first)
        witness = _search_witness(minimal, [first, *failures])
    if witness is None or not validate_witness(minimal, witness):
        raise WitnessError("could not construct a valid hardness witness")
    return witness


def validate_witness(dfa: Union[str, Regex, Nfa, Dfa], witness: HardnessWitness) -> bool:
    """Check every witness condition with automata containment and emptiness."""
    minimal = _as_minimal(dfa)
    w = witness
    if not 0 <= w.q < minimal.N or w.w_1[0] != w.a or w.w_2[0] != w.a:
        return False
    if minimal.run(minimal.initial, w.w_ell) != w.q or minimal.run(w.q, w.w_1) != w.q:
        return False
    residual = residual_automaton(minimal, w.q)
    pumped = compile_language(Concat(word_ast(w.w_m), Concat(Star(word_ast(w.w_2)), word_ast(w.w_r))))
    if not contains(residual, pumped):
        return False
    avoided = compile_language(Concat(Star(Alt(word_ast(w.w_1), word_ast(w.w_2))), word_ast(w.w_r)))
    return is_empty(intersection(avoided, residual))


def power_abbreviation_holds(dfa: Union[str, Regex, Nfa, Dfa], w_ell: str, w_1: str, w_m: str, w_2: str, w_r: str,
                             i: int) -> bool:
    """w_ell w_1^i w_m w_2^i w_r in L implies w_ell w_1^i w_2^i w_r in L."""
    minimal = _as_minimal(dfa)
    if not minimal.accepts(w_ell + w_1 * i + w_m + w_2 * i + w_r):
        return True
    return minimal.accepts(w_ell + w_1 * i + w_2 * i + w_r)
