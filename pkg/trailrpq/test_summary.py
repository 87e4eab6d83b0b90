"""
Tests for summaries, local edge domains and the summary solver.
"""
import random

import pytest

from .automata import compile_language
from .conftest import SAMPLE_GRAPHS, alternating_cycle
from .enumeration import all_trails_oracle
from .errors import BudgetExceeded, TrailError
from .generators import random_graph, random_path_graph, random_sore
from .graphdb import LabeledGraph, SolverStats, edge_mask, load_graph, trail_check
from .summary import (
    Abbreviation,
    CandidateSummary,
    compute_edge_domains,
    shortest_completion,
    split_by_summary,
    summary_of,
    summary_solver,
)
from .trailquery import brute_force_trail


def alternating_path(length: int) -> LabeledGraph:
    return LabeledGraph([(f"p{i}", "a" if i % 2 == 0 else "b", f"p{i + 1}") for i in range(length)])


@pytest.fixture
def ab_star():
    return compile_language("(ab)*")


# =============================================================================
# Summaries
# =============================================================================
def test_long_component_segment_is_abbreviated(ab_star):
    g = alternating_cycle(12)
    summary = summary_of(g, range(12), ab_star)
    assert summary == CandidateSummary((Abbreviation(component=0, node=0, state=0, suffix=tuple(range(3, 12))),))
    assert summary.edge_mask == edge_mask(range(3, 12))
    assert len(summary) == 1


def test_short_segments_stay_explicit(ab_star):
    g = alternating_cycle(12)
    assert summary_of(g, range(8), ab_star).entries == tuple(range(8))
    assert summary_of(g, range(8), ab_star).abbreviations == []


def test_split_pairs_entries_with_segments(ab_star):
    g = alternating_cycle(12)
    ((entry, segment),) = split_by_summary(g, range(12), ab_star)
    assert isinstance(entry, Abbreviation)
    assert segment == tuple(range(12))


def test_split_rejects_runs_into_the_sink(ab_star):
    g = LabeledGraph([("x", "a", "y"), ("y", "a", "z")])
    with pytest.raises(TrailError) as info:
        split_by_summary(g, [0, 1], ab_star)
    assert info.value.index == 1


def test_abbreviations_across_components():
    """Each component the run stays in for more than K edges gets its own abbreviation."""
    dfa = compile_language("a*bc*")
    assert dfa.K == 9
    triples = [(f"x{i}", "a", f"x{i + 1}") for i in range(10)]
    triples.append(("x10", "b", "y0"))
    triples += [(f"y{i}", "c", f"y{i + 1}") for i in range(11)]
    g = LabeledGraph(triples)
    summary = summary_of(g, range(len(triples)), dfa)
    first, middle, last = summary.entries
    assert first == Abbreviation(component=dfa.component_of[0], node=0, state=0, suffix=tuple(range(1, 10)))
    assert middle == 10
    assert last.suffix == tuple(range(13, 22))
    assert last.state == dfa.run(0, "ab")


# =============================================================================
# Completions and edge domains
# =============================================================================
def test_shortest_completion_uses_the_free_edges(ab_star):
    g = alternating_cycle(12)
    abbreviation = Abbreviation(component=0, node=0, state=0, suffix=tuple(range(3, 12)))
    completion = shortest_completion(g, ab_star, abbreviation)
    assert completion.edges == tuple(range(12))
    assert ab_star.accepts(completion.word)


def test_completion_of_a_suffix_starting_at_its_own_node(ab_star):
    g = alternating_cycle(12)
    abbreviation = Abbreviation(component=0, node=3, state=1, suffix=tuple(range(3, 12)))
    assert shortest_completion(g, ab_star, abbreviation).edges == tuple(range(3, 12))


def test_completion_fails_without_edges(ab_star):
    g = alternating_cycle(12)
    abbreviation = Abbreviation(component=0, node=0, state=0, suffix=tuple(range(3, 12)))
    assert shortest_completion(g, ab_star, abbreviation, allowed=0b011) is None


def test_edge_domains_of_the_cycle(ab_star):
    g = alternating_cycle(12)
    summary = CandidateSummary((Abbreviation(component=0, node=0, state=0, suffix=tuple(range(3, 12))),))
    domains = compute_edge_domains(g, ab_star, summary)
    assert domains.domains == (0b111,)
    assert domains.remaining == (0b111,)
    assert domains.min_lengths == (12,)


def test_explicit_entries_get_empty_domains(ab_star):
    g = alternating_cycle(12)
    domains = compute_edge_domains(g, ab_star, CandidateSummary((0, 1)))
    assert domains.domains == (0, 0)
    assert domains.min_lengths == (None, None)


@pytest.mark.parametrize("text, alphabet", [("(ab)*", "ab"), ("(a+b)*b", "ab"), ("b*", "b")])
def test_shortest_trails_are_admissible(text, alphabet, rng):
    """Every abbreviated segment of a shortest trail lies in its edge domain plus its suffix."""
    dfa = compile_language(text)
    checked = 0
    for _ in range(300):
        g = random_graph(rng, rng.randint(3, 7), 12, alphabet)
        s, t = rng.randrange(g.num_nodes), rng.randrange(g.num_nodes)
        trail = brute_force_trail(g, s, dfa, t)
        if trail is None:
            continue
        parts = split_by_summary(g, trail.edges, dfa)
        summary = CandidateSummary(tuple(entry for entry, _ in parts))
        domains = compute_edge_domains(g, dfa, summary)
        for i, (entry, segment) in enumerate(parts):
            if isinstance(entry, Abbreviation):
                checked += 1
                body = edge_mask(segment) & ~edge_mask(entry.suffix)
                assert body & ~domains.domains[i] == 0, (g.triples(), trail)
                assert domains.min_lengths[i] == len(segment)
    if text == "b*":
        assert checked > 0


@pytest.mark.parametrize("text, alphabet", [("(a+b)*b", "ab"), ("b*", "b"), ("(ab)*", "ab")])
def test_completions_preserve_membership(text, alphabet, rng):
    """Replacing abbreviated segments by shortest completions keeps the word in the language."""
    dfa = compile_language(text)
    samples = 0
    for _ in range(100):
        g = random_graph(rng, rng.randint(2, 5), 6, alphabet)
        s, t = rng.randrange(g.num_nodes), rng.randrange(g.num_nodes)
        for trail in sorted(all_trails_oracle(g, s, t, dfa), key=lambda p: p.key):
            word = ""
            for entry, _segment in split_by_summary(g, trail.edges, dfa):
                if isinstance(entry, Abbreviation):
                    word += shortest_completion(g, dfa, entry).word
                else:
                    word += g.edges[entry].label
            assert dfa.accepts(word), (g.triples(), trail)
            samples += 1
    assert samples > 0


# =============================================================================
# Solver
# =============================================================================
@pytest.mark.parametrize("name", sorted(SAMPLE_GRAPHS))
def test_solver_on_sample_graphs(name, sample_graphs, ab_star):
    _, length, _ = SAMPLE_GRAPHS[name]
    trail = summary_solver(sample_graphs[name], "s", "t", ab_star)
    assert len(trail) == length
    assert ab_star.accepts(trail.word)


def test_solver_returns_empty_trail_when_source_is_target(ab_star):
    trail = summary_solver(alternating_cycle(12), "c0", "c0", ab_star)
    assert len(trail) == 0


def test_solver_needs_an_abbreviation_for_long_trails(ab_star):
    g = alternating_path(12)
    stats = SolverStats()
    trail = summary_solver(g, "p0", "p12", ab_star, stats=stats)
    assert trail.edges == tuple(range(12))
    assert stats.completions > 0


def test_solver_respects_allowed_edges(ab_star):
    g = alternating_path(4)
    assert summary_solver(g, "p0", "p4", ab_star, allowed=0b0111) is None


def test_solver_from_a_later_state(ab_star):
    g = alternating_path(4)
    trail = summary_solver(g, "p1", "p4", ab_star, start_state=1)
    assert trail.word == "bab"


def test_solver_budget(ab_star):
    g = alternating_path(12)
    with pytest.raises(BudgetExceeded):
        summary_solver(g, "p0", "p12", ab_star, budget=3)


def test_solver_ignores_edges_outside_the_alphabet(ab_star):
    g = LabeledGraph([("s", "c", "t"), ("s", "a", "x"), ("x", "b", "t")])
    assert summary_solver(g, "s", "t", ab_star).word == "ab"


def test_solver_prefers_smaller_edge_ids_among_equal_lengths():
    """The abbreviation ending at y is completed first, but the trail through x has smaller edge ids."""
    g = load_graph("y b t\ns b x\nx b t\ns b y\n")
    dfa = compile_language("b*")
    trail = summary_solver(g, "s", "t", dfa)
    assert trail.edges == (1, 2)
    assert trail.edges == brute_force_trail(g, "s", dfa, "t").edges


@pytest.mark.slow
@pytest.mark.parametrize("language", ["(ab)*", "a*bc*", 1, 2, 3])
def test_solver_agrees_with_brute_force(language, rng):
    """Existence and shortest length match exhaustive search on random graphs.

    Integer parameters seed a random single-occurrence expression over abc.
    """
    if isinstance(language, int):
        language = random_sore(random.Random(language), "abc")
    dfa = compile_language(language)
    alphabet = dfa.alphabet
    for _ in range(500):
        g = random_graph(rng, rng.randint(2, 10), rng.randint(1, 14), alphabet)
        s, t = rng.randrange(g.num_nodes), rng.randrange(g.num_nodes)
        fast = summary_solver(g, s, t, dfa)
        exact = brute_force_trail(g, s, dfa, t)
        assert (fast is None) == (exact is None), g.triples()
        if fast is not None:
            assert len(fast) == len(exact), g.triples()
            assert trail_check(g, fast.edges, anchor=s).end == g.node_id(t)
            assert dfa.accepts(fast.word)


LONG_WORDS = {
    "(ab)*": lambda rng: "ab" * rng.randint(5, 7),
    "a*bc*": lambda rng: "a" * rng.randint(5, 8) + "b" + "c" * rng.randint(4, 8),
    "(a+b)*b": lambda rng: "".join(rng.choice("ab") for _ in range(rng.randint(5, 9))) + "b",
}


@pytest.mark.slow
@pytest.mark.parametrize("language", sorted(LONG_WORDS))
def test_solver_agrees_with_brute_force_beyond_k(language, rng):
    """Graphs built around a path longer than K, so the answer needs summaries of long runs."""
    dfa = compile_language(language)
    longer = 0
    for _ in range(200):
        word = LONG_WORDS[language](rng)
        g = random_path_graph(rng, word, rng.randint(0, 4), rng.randint(0, 2), dfa.alphabet)
        s, t = "n0", f"n{len(word)}"
        fast = summary_solver(g, s, t, dfa)
        exact = brute_force_trail(g, s, dfa, t)
        assert (fast is None) == (exact is None), g.triples()
        if fast is None:
            continue
        assert len(fast) == len(exact), g.triples()
        assert trail_check(g, fast.edges, anchor=s).end == g.node_id(t)
        assert dfa.accepts(fast.word)
        longer += len(exact) > dfa.K
    assert longer > 0
