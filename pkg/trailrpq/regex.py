"""
Regular expressions: syntax tree, parser, direct interpreter and syntactic classes.

Grammar (whitespace between tokens is ignored):

    expr   := term ('+' term)*
    term   := factor+
    factor := atom ('*' | '?')*
    atom   := SYMBOL | '(' expr ')'

SYMBOL is a single character from [a-z0-9]. Concatenation binds tighter than
union, postfix operators bind tighter than concatenation. Binary nodes are
nested to the right.
"""
from collections import Counter
from dataclasses import dataclass
from functools import reduce
from typing import FrozenSet, Iterator, List, Tuple, Union

from .errors import RegexSyntaxError

SYMBOLS = frozenset("abcdefghijklmnopqrstuvwxyz0123456789")


@dataclass(frozen=True)
class EmptySet:
    pass


@dataclass(frozen=True)
class Epsilon:
    pass


@dataclass(frozen=True)
class Sym:
    symbol: str


@dataclass(frozen=True)
class Alt:
    left: "Regex"
    right: "Regex"


@dataclass(frozen=True)
class Concat:
    left: "Regex"
    right: "Regex"


@dataclass(frozen=True)
class Star:
    inner: "Regex"


@dataclass(frozen=True)
class Opt:
    inner: "Regex"


Regex = Union[EmptySet, Epsilon, Sym, Alt, Concat, Star, Opt]


# =============================================================================
# Parsing
# =============================================================================
class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def offset(self) -> int:
        # Byte offset of the current position in the UTF-8 encoding
        return len(self.text[: self.pos].encode("utf-8"))

    def fail(self, message: str) -> RegexSyntaxError:
        return RegexSyntaxError(message, self.offset())

    def peek(self) -> str:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def parse(self) -> Regex:
        ast = self.expr()
        if self.peek():
            raise self.fail(f"unexpected {self.peek()!r}")
        return ast

    def expr(self) -> Regex:
        terms = [self.term()]
        while self.peek() == "+":
            self.pos += 1
            terms.append(self.term())
        return reduce(lambda right, left: Alt(left, right), reversed(terms))

    def term(self) -> Regex:
        factors = [self.factor()]
        while self.peek() == "(" or self.peek() in SYMBOLS:
            factors.append(self.factor())
        return reduce(lambda right, left: Concat(left, right), reversed(factors))

    def factor(self) -> Regex:
        node = self.atom()
        while self.peek() in ("*", "?"):
            node = Star(node) if self.peek() == "*" else Opt(node)
            self.pos += 1
        return node

    def atom(self) -> Regex:
        c = self.peek()
        if not c:
            raise self.fail("unexpected end of input")
        if c == "(":
            self.pos += 1
            node = self.expr()
            if self.peek() != ")":
                raise self.fail("expected ')'" if self.peek() else "unexpected end of input")
            self.pos += 1
            return node
        if c in SYMBOLS:
            self.pos += 1
            return Sym(c)
        if c in "+*?)":
            raise self.fail(f"unexpected {c!r}")
        raise self.fail(f"invalid symbol {c!r} (symbols are single characters from [a-z0-9])")


def parse_regex(text: str) -> Regex:
    """Parse a regular expression.

    Args:
        text: Expression text, e.g. "(ab)*" or "a*ba*"

    Returns:
        The syntax tree.

    Raises:
        RegexSyntaxError: On malformed input; carries the byte offset of the error.
    """
    return _Parser(text).parse()


def to_text(ast: Regex) -> str:
    """Render a syntax tree back to parseable text with minimal parentheses."""

    def render(node: Regex, context: int) -> str:
        # context: 0 = union operand, 1 = concatenation operand, 2 = postfix operand
        if isinstance(node, Sym):
            return node.symbol
        if isinstance(node, Alt):
            text = f"{render(node.left, 0)}+{render(node.right, 0)}"
            return f"({text})" if context > 0 else text
        if isinstance(node, Concat):
            text = f"{render(node.left, 1)}{render(node.right, 1)}"
            return f"({text})" if context > 1 else text
        if isinstance(node, Star):
            return f"{render(node.inner, 2)}*"
        if isinstance(node, Opt):
            return f"{render(node.inner, 2)}?"
        raise ValueError(f"{type(node).__name__} has no textual form")

    return render(ast, 0)


def word_ast(word: str) -> Regex:
    """Syntax tree denoting exactly one word."""
    if not word:
        return Epsilon()
    return reduce(lambda right, left: Concat(left, right), [Sym(c) for c in reversed(word)][1:], Sym(word[-1]))


# =============================================================================
# Interpretation and syntactic properties
# =============================================================================
def alphabet(ast: Regex) -> Tuple[str, ...]:
    """Symbols occurring in the expression, in codepoint order."""
    return tuple(sorted(set(_symbols(ast))))


def _symbols(ast: Regex) -> Iterator[str]:
    if isinstance(ast, Sym):
        yield ast.symbol
    elif isinstance(ast, (Alt, Concat)):
        yield from _symbols(ast.left)
        yield from _symbols(ast.right)
    elif isinstance(ast, (Star, Opt)):
        yield from _symbols(ast.inner)


def _ends(ast: Regex, word: str, i: int) -> FrozenSet[int]:
    # Positions j such that word[i:j] matches ast
    if isinstance(ast, EmptySet):
        return frozenset()
    if isinstance(ast, Epsilon):
        return frozenset({i})
    if isinstance(ast, Sym):
        return frozenset({i + 1}) if word[i : i + 1] == ast.symbol else frozenset()
    if isinstance(ast, Alt):
        return _ends(ast.left, word, i) | _ends(ast.right, word, i)
    if isinstance(ast, Concat):
        return frozenset(k for j in _ends(ast.left, word, i) for k in _ends(ast.right, word, j))
    if isinstance(ast, Opt):
        return frozenset({i}) | _ends(ast.inner, word, i)
    # Star: closure of the positions reachable by repeated matches
    reached = {i}
    frontier = [i]
    while frontier:
        j = frontier.pop()
        for k in _ends(ast.inner, word, j):
            if k not in reached:
                reached.add(k)
                frontier.append(k)
    return frozenset(reached)


def regex_matches(ast: Regex, word: str) -> bool:
    """Decide membership directly on the syntax tree (no automaton involved)."""
    return len(word) in _ends(ast, word, 0)


def is_sore(ast: Regex) -> bool:
    """True if every symbol occurs at most once in the expression."""
    return all(n <= 1 for n in Counter(_symbols(ast)).values())


def is_star_single_occurrence(ast: Regex) -> bool:
    """True if no symbol occurs more than once below Kleene stars."""
    starred: List[str] = []

    def collect(node: Regex, under_star: bool) -> None:
        if isinstance(node, Sym):
            if under_star:
                starred.append(node.symbol)
        elif isinstance(node, (Alt, Concat)):
            collect(node.left, under_star)
            collect(node.right, under_star)
        elif isinstance(node, Star):
            collect(node.inner, True)
        elif isinstance(node, Opt):
            collect(node.inner, under_star)

    collect(ast, False)
    return all(n <= 1 for n in Counter(starred).values())
