"""Concrete syntax for set expressions.

::

    expr  := term { "|" term }
    term  := fact { "&" fact }
    fact  := atom { "\\" atom  |  "+" INT  |  "-" INT }
    atom  := "N" | "primes" | "ap" "(" INT "," INT ")" | "pow" "(" INT ")"
           | "kth" "(" INT ")" | "finite" "{" INT { "," INT } "}"
           | "file" "(" QUOTED ")" | "sumset" "(" expr "," expr ")"
           | "(" expr ")"

``N`` is the whole universe, the same set as ``ap(1,1)``.  ``+ k`` and
``- k`` translate right and left, ``\\`` removes a set.  Quoted paths
have no escape sequences.  An empty ``finite{}`` is a syntax error;
the printer can still emit one for the empty set, which therefore has
no parseable form.
"""

from __future__ import annotations

from .errors import ParseError
from .sets import (
    AP,
    Difference,
    Finite,
    FromFile,
    Intersection,
    KthPowers,
    LeftShift,
    NATURALS,
    Powers,
    Primes,
    SetExpr,
    Shifted,
    Sumset,
    Union,
)

_PUNCT = set("|&\\+-(){},")


class _Token:
    __slots__ = ("kind", "text", "pos")

    def __init__(self, kind: str, text: str, pos: int):
        self.kind = kind
        self.text = text
        self.pos = pos


def _tokenize(source: str) -> list[_Token]:
    tokens: list[_Token] = []
    i, n = 0, len(source)
    while i < n:
        ch = source[i]
        if ch.isspace():
            i += 1
            continue
        pos = i + 1
        if ch.isdigit():
            j = i
            while j < n and source[j].isdigit():
                j += 1
            tokens.append(_Token("int", source[i:j], pos))
            i = j
        elif ch.isalpha() or ch == "_":
            j = i
            while j < n and (source[j].isalnum() or source[j] == "_"):
                j += 1
            tokens.append(_Token("ident", source[i:j], pos))
            i = j
        elif ch == '"':
            j = source.find('"', i + 1)
            if j < 0:
                raise ParseError("unterminated string", pos)
            tokens.append(_Token("quoted", source[i + 1 : j], pos))
            i = j + 1
        elif ch in _PUNCT:
            tokens.append(_Token("op", ch, pos))
            i += 1
        else:
            raise ParseError(f"unexpected character {ch!r}", pos)
    tokens.append(_Token("end", "", n + 1))
    return tokens


class _Parser:
    def __init__(self, tokens: list[_Token]):
        self.tokens = tokens
        self.i = 0

    def peek(self) -> _Token:
        return self.tokens[self.i]

    def advance(self) -> _Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect_op(self, op: str) -> _Token:
        tok = self.peek()
        if tok.kind != "op" or tok.text != op:
            raise ParseError(f"expected {op!r}", tok.pos)
        return self.advance()

    def expect_int(self) -> tuple[int, int]:
        tok = self.peek()
        if tok.kind != "int":
            raise ParseError("expected an integer", tok.pos)
        self.advance()
        return int(tok.text), tok.pos

    def at_op(self, op: str) -> bool:
        tok = self.peek()
        return tok.kind == "op" and tok.text == op

    def _build(self, ctor, pos: int, *args) -> SetExpr:
        try:
            return ctor(*args)
        except ValueError as exc:
            raise ParseError(str(exc), pos) from None

    def parse_expr(self) -> SetExpr:
        parts = [self.parse_term()]
        while self.at_op("|"):
            self.advance()
            parts.append(self.parse_term())
        return parts[0] if len(parts) == 1 else Union(tuple(parts))

    def parse_term(self) -> SetExpr:
        parts = [self.parse_fact()]
        while self.at_op("&"):
            self.advance()
            parts.append(self.parse_fact())
        return parts[0] if len(parts) == 1 else Intersection(tuple(parts))

    def parse_fact(self) -> SetExpr:
        node = self.parse_atom()
        while True:
            if self.at_op("\\"):
                self.advance()
                node = Difference(node, self.parse_atom())
            elif self.at_op("+"):
                pos = self.advance().pos
                k, _ = self.expect_int()
                node = self._build(Shifted, pos, node, k)
            elif self.at_op("-"):
                pos = self.advance().pos
                k, _ = self.expect_int()
                node = self._build(LeftShift, pos, node, k)
            else:
                return node

    def parse_atom(self) -> SetExpr:
        tok = self.peek()
        if tok.kind == "op" and tok.text == "(":
            self.advance()
            node = self.parse_expr()
            self.expect_op(")")
            return node
        if tok.kind != "ident":
            raise ParseError("expected a set atom", tok.pos)
        self.advance()
        name = tok.text
        if name == "N":
            return NATURALS
        if name == "primes":
            return Primes()
        if name == "ap":
            self.expect_op("(")
            first, _ = self.expect_int()
            self.expect_op(",")
            diff, _ = self.expect_int()
            self.expect_op(")")
            return self._build(AP, tok.pos, first, diff)
        if name == "pow":
            self.expect_op("(")
            base, _ = self.expect_int()
            self.expect_op(")")
            return self._build(Powers, tok.pos, base)
        if name == "kth":
            self.expect_op("(")
            k, _ = self.expect_int()
            self.expect_op(")")
            return self._build(KthPowers, tok.pos, k)
        if name == "finite":
            self.expect_op("{")
            if self.at_op("}"):
                raise ParseError("empty finite set", self.peek().pos)
            values = [self.expect_int()[0]]
            while self.at_op(","):
                self.advance()
                values.append(self.expect_int()[0])
            self.expect_op("}")
            return self._build(Finite.of, tok.pos, values)
        if name == "file":
            self.expect_op("(")
            q = self.peek()
            if q.kind != "quoted":
                raise ParseError("expected a quoted path", q.pos)
            self.advance()
            self.expect_op(")")
            return FromFile.load(q.text)
        if name == "sumset":
            self.expect_op("(")
            left = self.parse_expr()
            self.expect_op(",")
            right = self.parse_expr()
            self.expect_op(")")
            return Sumset(left, right)
        raise ParseError(f"unknown set atom {name!r}", tok.pos)


def parse(source: str) -> SetExpr:
    """Parse concrete syntax into an expression tree (not simplified)."""
    parser = _Parser(_tokenize(source))
    node = parser.parse_expr()
    trailing = parser.peek()
    if trailing.kind != "end":
        raise ParseError("unexpected trailing input", trailing.pos)
    return node


_EXPR, _TERM, _FACT, _ATOM = 0, 1, 2, 3


def _render(e: SetExpr, level: int) -> str:
    if isinstance(e, Union):
        text, mine = " | ".join(_render(p, _TERM) for p in e.parts), _EXPR
    elif isinstance(e, Intersection):
        text, mine = " & ".join(_render(p, _FACT) for p in e.parts), _TERM
    elif isinstance(e, Difference):
        text = f"{_render(e.left, _FACT)} \\ {_render(e.right, _ATOM)}"
        mine = _FACT
    elif isinstance(e, Shifted):
        text, mine = f"{_render(e.inner, _FACT)} + {e.shift}", _FACT
    elif isinstance(e, LeftShift):
        text, mine = f"{_render(e.inner, _FACT)} - {e.shift}", _FACT
    elif isinstance(e, AP):
        text = "N" if e == NATURALS else f"ap({e.first},{e.diff})"
        mine = _ATOM
    elif isinstance(e, Primes):
        text, mine = "primes", _ATOM
    elif isinstance(e, Powers):
        text, mine = f"pow({e.base})", _ATOM
    elif isinstance(e, KthPowers):
        text, mine = f"kth({e.k})", _ATOM
    elif isinstance(e, Finite):
        text, mine = "finite{" + ",".join(map(str, e.values)) + "}", _ATOM
    elif isinstance(e, FromFile):
        text, mine = f'file("{e.path}")', _ATOM
    elif isinstance(e, Sumset):
        text = f"sumset({_render(e.left, _EXPR)},{_render(e.right, _EXPR)})"
        mine = _ATOM
    else:
        raise TypeError(f"cannot render {type(e).__name__}")
    if mine < level:
        return f"({text})"
    return text


def to_text(e: SetExpr) -> str:
    """Render an expression tree back to concrete syntax."""
    return _render(e, _EXPR)
