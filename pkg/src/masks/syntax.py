"""Text syntax for formulas: a recursive-descent parser and a round-tripping printer.

Grammar (prefix operators bind tighter than ``&``, which binds tighter than
``|``; binary operators associate left; parentheses group)::

    formula := or
    or      := and ('|' and)*
    and     := prefix ('&' prefix)*
    prefix  := '~' prefix
             | 'K{' agent '}' prefix
             | '<K{' agent '}>' prefix
             | 'D{' agent (',' agent)* '}' prefix
             | 'E{' agent (',' agent)* '}' prefix
             | '[' formula ']' prefix
             | primary
    primary := 'T' | 'F' | atom | '(' formula ')'
    atom    := [digits ':'] identifier

``F`` is sugar for ``~T`` and is stored as Not(Top).
"""
from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import ParseError
from .logic import (And, Announce, Atom, Consistent, Dist, Every, Formula,
                    Know, Not, Or, Prop, Top)

__all__ = ["SourceSpan", "parse", "format_formula"]


@dataclass(frozen=True)
class SourceSpan:
    """Byte offsets into the parsed input."""

    start: int
    end: int


_TOKEN = re.compile(r"\s*([A-Za-z0-9_]+|[~&|(){}\[\]<>:,])")

_PUNCT = set("~&|(){}[]<>:,")


def _lex(text: str) -> list[tuple[str, int, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            rest = text[pos:].lstrip()
            if not rest:
                break
            at = len(text) - len(rest)
            raise ParseError(f"unexpected character {rest[0]!r}", at, at + 1)
        tokens.append((m.group(1), m.start(1), m.end(1)))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _lex(text)
        self.pos = 0

    def peek(self, offset: int = 0) -> str | None:
        i = self.pos + offset
        return self.tokens[i][0] if i < len(self.tokens) else None

    def span(self) -> SourceSpan:
        if self.pos < len(self.tokens):
            _, s, e = self.tokens[self.pos]
            return SourceSpan(s, e)
        n = len(self.text)
        return SourceSpan(n, n)

    def error(self, message: str) -> ParseError:
        sp = self.span()
        return ParseError(message, sp.start, sp.end)

    def take(self) -> str:
        tok = self.peek()
        if tok is None:
            raise self.error("unexpected end of input")
        self.pos += 1
        return tok

    def expect(self, token: str) -> None:
        if self.peek() != token:
            raise self.error(f"expected {token!r}")
        self.pos += 1

    def parse(self) -> Formula:
        if not self.tokens:
            n = len(self.text)
            raise ParseError("empty input", 0, n)
        f = self.formula()
        if self.pos < len(self.tokens):
            raise self.error("trailing input after formula")
        return f

    def formula(self) -> Formula:
        left = self.conjunct()
        while self.peek() == "|":
            self.pos += 1
            left = Or(left, self.conjunct())
        return left

    def conjunct(self) -> Formula:
        left = self.prefix()
        while self.peek() == "&":
            self.pos += 1
            left = And(left, self.prefix())
        return left

    def agent_list(self) -> list[str]:
        self.expect("{")
        if self.peek() == "}":
            raise self.error("empty agent list")
        agents = [self.ident("agent name")]
        while self.peek() == ",":
            self.pos += 1
            agents.append(self.ident("agent name"))
        self.expect("}")
        return agents

    def ident(self, what: str) -> str:
        tok = self.peek()
        if tok is None or tok in _PUNCT:
            raise self.error(f"expected {what}")
        self.pos += 1
        return tok

    def prefix(self) -> Formula:
        tok = self.peek()
        if tok == "~":
            self.pos += 1
            return Not(self.prefix())
        if tok == "K" and self.peek(1) == "{":
            self.pos += 1
            (agent,) = self.one_agent()
            return Know(agent, self.prefix())
        if tok == "<":
            self.pos += 1
            if self.peek() != "K":
                raise self.error("expected 'K' after '<'")
            self.pos += 1
            (agent,) = self.one_agent()
            self.expect(">")
            return Consistent(agent, self.prefix())
        if tok == "D" and self.peek(1) == "{":
            self.pos += 1
            return Dist(frozenset(self.agent_list()), self.prefix())
        if tok == "E" and self.peek(1) == "{":
            self.pos += 1
            return Every(frozenset(self.agent_list()), self.prefix())
        if tok == "[":
            self.pos += 1
            announced = self.formula()
            self.expect("]")
            return Announce(announced, self.prefix())
        return self.primary()

    def one_agent(self) -> list[str]:
        agents = self.agent_list()
        if len(agents) != 1:
            raise self.error("K takes exactly one agent")
        return agents

    def primary(self) -> Formula:
        tok = self.peek()
        if tok is None:
            raise self.error("expected a formula")
        if tok == "(":
            self.pos += 1
            f = self.formula()
            self.expect(")")
            return f
        if tok in _PUNCT:
            raise self.error("expected a formula")
        if tok == "T":
            self.pos += 1
            return Top()
        if tok == "F":
            self.pos += 1
            return Not(Top())
        name = self.take()
        if self.peek() == ":":
            if not name.isdigit():
                raise self.error("component index must be digits")
            self.pos += 1
            label = self.ident("class label")
            return Prop(Atom(label, int(name)))
        return Prop(Atom(name))


def parse(text: str) -> Formula:
    """Parse ``text`` into a Formula; raises ParseError with a source span."""
    return _Parser(text).parse()


_OR, _AND, _TIGHT = 1, 2, 3


def _prec(f: Formula) -> int:
    if isinstance(f, Or):
        return _OR
    if isinstance(f, And):
        return _AND
    return _TIGHT


def _operand(f: Formula) -> str:
    # operand of a prefix operator: & and | need grouping
    s = format_formula(f)
    return f"({s})" if _prec(f) < _TIGHT else s


def format_formula(f: Formula) -> str:
    """Canonical text that ``parse`` maps back to a structurally equal tree."""
    match f:
        case Top():
            return "T"
        case Not(Top()):
            return "F"
        case Prop(atom):
            return str(atom)
        case Not(sub):
            return "~" + _operand(sub)
        case Know(agent, sub):
            return f"K{{{agent}}} " + _operand(sub)
        case Consistent(agent, sub):
            return f"<K{{{agent}}}> " + _operand(sub)
        case Dist(agents, sub):
            return "D{" + ",".join(sorted(agents)) + "} " + _operand(sub)
        case Every(agents, sub):
            return "E{" + ",".join(sorted(agents)) + "} " + _operand(sub)
        case Announce(announced, sub):
            return f"[{format_formula(announced)}] " + _operand(sub)
        case And(left, right):
            ls = format_formula(left)
            if _prec(left) < _AND:
                ls = f"({ls})"
            rs = format_formula(right)
            if _prec(right) <= _AND:
                rs = f"({rs})"
            return f"{ls} & {rs}"
        case Or(left, right):
            ls = format_formula(left)
            rs = format_formula(right)
            if _prec(right) <= _OR:
                rs = f"({rs})"
            return f"{ls} | {rs}"
    raise TypeError(f"not a formula: {f!r}")
