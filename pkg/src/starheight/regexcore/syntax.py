"""Regular expression syntax: tree, parser, printer, star height, matching.

Concrete syntax: union is ``+``, concatenation is juxtaposition, Kleene star
is postfix ``*``.  The keywords ``eps`` and ``empty`` denote the empty word
and the empty language; they are recognized before single letters, so an
alphabet containing the letter ``e`` should be written with separating
whitespace where a keyword could otherwise be formed.
"""

from __future__ import annotations

from dataclasses import dataclass


class RegexParseError(ValueError):
    """Malformed expression text; ``position`` is the offending offset."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


@dataclass(frozen=True)
class Regex:
    """Base class for expression nodes."""


@dataclass(frozen=True)
class Empty(Regex):
    pass


@dataclass(frozen=True)
class Epsilon(Regex):
    pass


@dataclass(frozen=True)
class Letter(Regex):
    symbol: str


@dataclass(frozen=True)
class Union(Regex):
    left: Regex
    right: Regex


@dataclass(frozen=True)
class Concat(Regex):
    left: Regex
    right: Regex


@dataclass(frozen=True)
class Star(Regex):
    inner: Regex


_RESERVED_CHARS = set("+*() \t\r\n")


def check_alphabet(alphabet) -> tuple[str, ...]:
    """Validate alphabet symbols (single chars, no operator characters)."""
    symbols = tuple(alphabet)
    seen = set()
    for sym in symbols:
        if len(sym) != 1 or not sym.isalnum():
            raise ValueError(f"alphabet symbol must be a single alphanumeric: {sym!r}")
        if sym in _RESERVED_CHARS:
            raise ValueError(f"alphabet symbol clashes with an operator: {sym!r}")
        if sym in seen:
            raise ValueError(f"duplicate alphabet symbol: {sym!r}")
        seen.add(sym)
    return symbols


class _Parser:
    """Recursive descent over: expr := term ('+' term)*; term := factor+;
    factor := base '*'*; base := letter | 'eps' | 'empty' | '(' expr ')'."""

    def __init__(self, text: str, alphabet: tuple[str, ...]):
        self.text = text
        self.pos = 0
        self.alphabet = set(alphabet)

    def fail(self, message: str):
        raise RegexParseError(message, self.pos)

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str | None:
        self.skip_ws()
        if self.pos < len(self.text):
            return self.text[self.pos]
        return None

    def at_keyword(self, word: str) -> bool:
        self.skip_ws()
        return self.text.startswith(word, self.pos)

    def parse_expr(self) -> Regex:
        node = self.parse_term()
        while self.peek() == "+":
            self.pos += 1
            node = Union(node, self.parse_term())
        return node

    def parse_term(self) -> Regex:
        node = self.parse_factor()
        while True:
            ch = self.peek()
            if ch is None or ch in "+)":
                return node
            node = Concat(node, self.parse_factor())

    def parse_factor(self) -> Regex:
        node = self.parse_base()
        while self.peek() == "*":
            self.pos += 1
            node = Star(node)
        return node

    def parse_base(self) -> Regex:
        ch = self.peek()
        if ch is None:
            self.fail("unexpected end of expression")
        if ch == "(":
            self.pos += 1
            node = self.parse_expr()
            if self.peek() != ")":
                self.fail("expected ')'")
            self.pos += 1
            return node
        # Keywords take precedence over letters.
        if self.at_keyword("empty"):
            self.pos += 5
            return Empty()
        if self.at_keyword("eps"):
            self.pos += 3
            return Epsilon()
        if ch in self.alphabet:
            self.pos += 1
            return Letter(ch)
        self.fail(f"unexpected character {ch!r}")


def parse_regex(text: str, alphabet) -> Regex:
    """Parse expression text over the given alphabet.

    Raises RegexParseError on syntax errors (with position) and on letters
    outside the alphabet.  Empty input is an error; the empty word is "eps".
    """
    symbols = check_alphabet(alphabet)
    parser = _Parser(text, symbols)
    if parser.peek() is None:
        parser.fail("empty input; use 'eps' for the empty word")
    node = parser.parse_expr()
    if parser.peek() is not None:
        parser.fail(f"trailing input {parser.peek()!r}")
    return node


def _uses_letter_e(expr: Regex) -> bool:
    match expr:
        case Letter(symbol):
            return symbol == "e"
        case Union(left, right) | Concat(left, right):
            return _uses_letter_e(left) or _uses_letter_e(right)
        case Star(inner):
            return _uses_letter_e(inner)
    return False


def regex_to_string(expr: Regex) -> str:
    """Print with minimal parentheses; parse(regex_to_string(e)) == e.

    If the tree uses the letter 'e', concatenated factors are separated by
    spaces so printed output can never be re-tokenized as a keyword.
    """
    sep = " " if _uses_letter_e(expr) else ""

    def base(e: Regex) -> str:
        # Render e, parenthesizing unless it is atomic or starred.
        s = render(e)
        if isinstance(e, (Union, Concat)):
            return f"({s})"
        return s

    def render(e: Regex) -> str:
        match e:
            case Empty():
                return "empty"
            case Epsilon():
                return "eps"
            case Letter(symbol):
                return symbol
            case Star(inner):
                return base(inner) + "*"
            case Concat(left, right):
                lhs = render(left) if isinstance(left, Concat) else concat_piece(left)
                return lhs + sep + concat_piece(right)
            case Union(left, right):
                rhs = f"({render(right)})" if isinstance(right, Union) else render(right)
                return render(left) + "+" + rhs
        raise TypeError(f"not a regex node: {e!r}")

    def concat_piece(e: Regex) -> str:
        if isinstance(e, (Union, Concat)):
            return f"({render(e)})"
        return render(e)

    return render(expr)


def expression_star_height(expr: Regex) -> int:
    """Nesting depth of the Kleene star in the expression."""
    match expr:
        case Union(left, right) | Concat(left, right):
            return max(expression_star_height(left), expression_star_height(right))
        case Star(inner):
            return 1 + expression_star_height(inner)
    return 0


def regex_letters(expr: Regex) -> frozenset[str]:
    match expr:
        case Letter(symbol):
            return frozenset({symbol})
        case Union(left, right) | Concat(left, right):
            return regex_letters(left) | regex_letters(right)
        case Star(inner):
            return regex_letters(inner)
    return frozenset()


def _match_spans(expr: Regex, word: str, start: int, memo: dict) -> frozenset[int]:
    """End positions j such that expr matches word[start:j]."""
    key = (id(expr), start)
    hit = memo.get(key)
    if hit is not None:
        return hit
    match expr:
        case Empty():
            out = frozenset()
        case Epsilon():
            out = frozenset({start})
        case Letter(symbol):
            if start < len(word) and word[start] == symbol:
                out = frozenset({start + 1})
            else:
                out = frozenset()
        case Union(left, right):
            out = _match_spans(left, word, start, memo) | _match_spans(
                right, word, start, memo
            )
        case Concat(left, right):
            out = frozenset(
                k
                for j in _match_spans(left, word, start, memo)
                for k in _match_spans(right, word, j, memo)
            )
        case Star(inner):
            reached = {start}
            frontier = [start]
            while frontier:
                j = frontier.pop()
                for k in _match_spans(inner, word, j, memo):
                    if k not in reached:
                        reached.add(k)
                        frontier.append(k)
            out = frozenset(reached)
        case _:
            raise TypeError(f"not a regex node: {expr!r}")
    memo[key] = out
    return out


def regex_matches(expr: Regex, word: str) -> bool:
    """Direct tree-walking membership test, independent of any automaton."""
    return len(word) in _match_spans(expr, word, 0, {})
