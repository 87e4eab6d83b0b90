"""
Tests for boolean and rational operations on automata.
"""
import itertools

import pytest
from hypothesis import given, settings

from .algebra import (
    complement,
    concat,
    contains,
    counterexample,
    equivalent,
    extend_alphabet,
    intersection,
    is_empty,
    loop_language,
    power,
    remove_word,
    reverse,
    union,
    word_automaton,
)
from .automata import compile_language, minimize
from .conftest import minimal_dfas
from .generators import all_words, random_regex


def _language(dfa, alphabet="abc", max_length=5):
    return {w for w in all_words(alphabet, max_length) if dfa.accepts(w)}


def test_extend_alphabet_keeps_language():
    dfa = extend_alphabet(compile_language("a*"), "b")
    assert dfa.alphabet == ("a", "b")
    assert dfa.accepts("aa")
    assert not dfa.accepts("ab")


def test_boolean_operations_over_different_alphabets():
    left, right = compile_language("a*"), compile_language("(a+b)*b")
    assert _language(union(left, right)) == _language(left) | _language(right)
    assert _language(intersection(left, right)) == set()
    assert _language(complement(left), "a") == set()


def test_operations_on_random_languages(rng):
    """Union, intersection, concatenation and reversal agree with set semantics on short words."""
    for _ in range(25):
        left = compile_language(random_regex(rng, 3, "ab"))
        right = compile_language(random_regex(rng, 3, "ab"))
        lang_l, lang_r = _language(left, "ab", 4), _language(right, "ab", 4)
        assert _language(union(left, right), "ab", 4) == lang_l | lang_r
        assert _language(intersection(left, right), "ab", 4) == lang_l & lang_r
        short = {u + v for u in lang_l for v in lang_r if len(u + v) <= 4}
        assert _language(concat(left, right), "ab", 4) >= short
        assert _language(reverse(left), "ab", 4) == {w[::-1] for w in lang_l}


def test_word_automaton():
    dfa = word_automaton("ab", "c")
    assert _language(dfa) == {"ab"}
    assert _language(word_automaton("", "a"), "a") == {""}


def test_power():
    assert equivalent(power(compile_language("ab"), 2), compile_language("abab"))
    assert equivalent(power(compile_language("a+b"), 0), word_automaton(""))
    with pytest.raises(ValueError):
        power(compile_language("a"), -1)


def test_remove_word():
    dfa = remove_word(compile_language("a*"), "")
    assert not dfa.accepts("")
    assert dfa.accepts("a")


def test_containment_and_counterexample():
    assert contains(compile_language("(a+b)*"), compile_language("(ab)*"))
    assert not contains(compile_language("(ab)*"), compile_language("(a+b)*"))
    assert counterexample(compile_language("(ab)*"), compile_language("(a+b)*")) == "a"
    assert counterexample(compile_language("(a+b)*"), compile_language("(ab)*")) is None


def test_emptiness():
    assert is_empty(intersection(compile_language("a*"), compile_language("b+bb")))
    assert not is_empty(compile_language("a*"))


def test_loop_language():
    dfa = compile_language("(ab)*")
    assert equivalent(minimize(loop_language(dfa, 0)), compile_language("(ab)(ab)*"))
    assert equivalent(minimize(loop_language(dfa, 1)), compile_language("(ba)(ba)*"))
    assert is_empty(loop_language(dfa, 0, first="b"))
    assert is_empty(loop_language(dfa, 0, last="a"))
    assert equivalent(minimize(loop_language(dfa, 0, last="b")), compile_language("(ab)(ab)*"))


def test_loop_language_of_trivial_component_is_empty():
    dfa = compile_language("ab")
    assert is_empty(loop_language(dfa, 0))


@given(minimal_dfas)
@settings(max_examples=100, derandomize=True, deadline=None)
def test_double_reverse_is_identity(dfa):
    assert equivalent(reverse(reverse(dfa)), dfa)


@given(minimal_dfas)
@settings(max_examples=50, derandomize=True, deadline=None)
def test_loop_language_matches_runs(dfa):
    """Loop words are exactly the nonempty words whose run from the state comes back to it."""
    words = list(all_words(dfa.alphabet, 4))
    for state in range(dfa.size):
        for first, last in itertools.product((None, *dfa.alphabet), repeat=2):
            loops = loop_language(dfa, state, first, last)
            for w in words:
                expected = (
                    w != ""
                    and dfa.run(state, w) == state
                    and first in (None, w[:1])
                    and last in (None, w[-1:])
                )
                assert loops.accepts(w) == expected, (state, first, last, w)
