"""
Tests for transition monoids and aperiodicity.
"""
import pytest
from hypothesis import given, settings

from .automata import compile_language
from .conftest import minimal_dfas
from .errors import AutomatonTooLarge
from .generators import all_words
from .monoid import compose, is_aperiodic, transition_monoid


def test_ab_star_monoid():
    """Identity, a, b, aa, ab and ba are the six distinct maps of (ab)*."""
    monoid = transition_monoid(compile_language("(ab)*"))
    assert monoid.size == 6
    assert monoid.witnesses == ("", "a", "b", "aa", "ab", "ba")
    assert monoid.identity == (0, 1, 2)
    assert monoid.witness_of((0, 2, 2)) == "ab"
    assert monoid.witness_of((1, 1, 1)) is None


def test_single_state_monoid_is_trivial():
    assert transition_monoid(compile_language("a*")).size == 1


def test_compose_reads_left_to_right():
    a, b = (1, 2, 2), (2, 0, 2)
    assert compose(a, b) == (0, 2, 2)
    assert compose(b, a) == (2, 1, 2)


@pytest.mark.parametrize(
    "text, aperiodic",
    [
        ("(ab)*", True),
        ("(aa)*", False),
        ("(aba)*", True),
        ("(ac*bc*)*", True),
        ("a*ba*", True),
        ("(a+b)*b", True),
        ("(aaa)*b", False),
    ],
)
def test_aperiodicity(text, aperiodic):
    assert is_aperiodic(compile_language(text)) == aperiodic


def test_monoid_limit():
    with pytest.raises(AutomatonTooLarge):
        transition_monoid(compile_language("(ab)*"), limit=4)


def _powers_stabilise(dfa, word):
    """delta(q, w^(n+1)) = delta(q, w^n) for every state q, with n the number of states."""
    n = dfa.size
    return all(dfa.run(q, word * (n + 1)) == dfa.run(q, word * n) for q in range(n))


@given(minimal_dfas)
@settings(max_examples=100, derandomize=True, deadline=None)
def test_aperiodicity_matches_the_power_condition(dfa):
    """Every word acts like one monoid witness, so the witnesses cover all words."""
    monoid = transition_monoid(dfa)
    assert is_aperiodic(dfa, monoid) == all(_powers_stabilise(dfa, word) for word in monoid.witnesses)
    if is_aperiodic(dfa, monoid):
        assert all(_powers_stabilise(dfa, word) for word in all_words(dfa.alphabet, 4))
