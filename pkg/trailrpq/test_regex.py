"""
Tests for the regex parser, printer and syntactic classes.
"""
import pytest

from .errors import RegexSyntaxError
from .generators import all_words, random_regex
from .regex import (
    Alt,
    Concat,
    Opt,
    Star,
    Sym,
    alphabet,
    is_sore,
    is_star_single_occurrence,
    parse_regex,
    regex_matches,
    to_text,
    word_ast,
)


def test_parse_precedence():
    """Postfix binds tighter than concatenation, which binds tighter than union."""
    assert parse_regex("ab*+c") == Alt(Concat(Sym("a"), Star(Sym("b"))), Sym("c"))
    assert parse_regex("(ab)?") == Opt(Concat(Sym("a"), Sym("b")))


def test_parse_nests_to_the_right():
    assert parse_regex("abc") == Concat(Sym("a"), Concat(Sym("b"), Sym("c")))
    assert parse_regex("a+b+c") == Alt(Sym("a"), Alt(Sym("b"), Sym("c")))


def test_parse_ignores_whitespace():
    assert parse_regex(" ( a b ) * ") == parse_regex("(ab)*")


@pytest.mark.parametrize(
    "text, offset",
    [
        ("a*(b+", 5),
        ("", 0),
        ("a)", 1),
        ("+a", 0),
        ("aB", 1),
        ("(a", 2),
    ],
)
def test_parse_errors_report_offset(text, offset):
    with pytest.raises(RegexSyntaxError) as info:
        parse_regex(text)
    assert info.value.offset == offset


@pytest.mark.parametrize("text", ["(ab)*", "a*ba*", "(a+b)*a(a+b)*", "(ac*bc*)*", "a?b*", "((a+b)c)*d"])
def test_to_text_reparses_to_the_same_tree(text):
    ast = parse_regex(text)
    assert parse_regex(to_text(ast)) == ast


def test_to_text_minimal_parentheses():
    assert to_text(parse_regex("((a)(b))*")) == "(ab)*"
    assert to_text(parse_regex("(a+b)c")) == "(a+b)c"
    assert to_text(parse_regex("a+(bc)")) == "a+bc"


def test_word_ast():
    assert regex_matches(word_ast("abc"), "abc")
    assert not regex_matches(word_ast("abc"), "ab")
    assert regex_matches(word_ast(""), "")


def test_alphabet_sorted():
    assert alphabet(parse_regex("(c+a)*ba")) == ("a", "b", "c")


@pytest.mark.parametrize(
    "text, accepted, rejected",
    [
        ("(ab)*", ["", "ab", "abab"], ["a", "ba", "aba"]),
        ("a*ba*", ["b", "aab", "aba"], ["", "bb", "aa"]),
        ("a?b*", ["", "a", "abbb", "bb"], ["aa", "ba"]),
        ("(aa)*", ["", "aa", "aaaa"], ["a", "aaa"]),
    ],
)
def test_regex_matches(text, accepted, rejected):
    ast = parse_regex(text)
    assert all(regex_matches(ast, w) for w in accepted)
    assert not any(regex_matches(ast, w) for w in rejected)


def test_nested_stars_terminate():
    assert regex_matches(parse_regex("(a*)*"), "aaa")
    assert regex_matches(parse_regex("(a?)*b"), "b")


def test_sore():
    assert is_sore(parse_regex("(ab)*c?"))
    assert not is_sore(parse_regex("a*ba*"))


def test_star_single_occurrence_counts_starred_symbols_only():
    assert is_star_single_occurrence(parse_regex("(ab)*a"))
    assert is_star_single_occurrence(parse_regex("a*bc*"))
    assert not is_star_single_occurrence(parse_regex("a*ba*"))
    assert not is_star_single_occurrence(parse_regex("(aba)*"))


def test_random_regexes_print_and_reparse(rng):
    """Printing then parsing preserves the language on short words."""
    for _ in range(50):
        ast = random_regex(rng, 4, "ab")
        again = parse_regex(to_text(ast))
        for word in all_words("ab", 4):
            assert regex_matches(ast, word) == regex_matches(again, word)
