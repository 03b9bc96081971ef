"""Text syntax for manifold expressions.

    expr := term ("#" term)*
    term := [INT] atom
    atom := CP2 | CP2bar | S2xS2 | K3 | Z0 | Z1 | E(INT) | X(INT,INT)
          | W(INT,INT) | D(INT) | G(INT) | cover(expr)

Whitespace is insignificant.  ``4 CP2bar`` is a four-fold connected sum.
Error offsets are byte offsets into the UTF-8 encoded input.
"""

from __future__ import annotations

import re
from typing import NamedTuple

from .errors import DomainError, ParseError, SemanticError, UnsupportedError
from .mfdcalc import (
    ATOMS,
    Atom,
    ConnSum,
    Cover,
    D,
    Elliptic,
    Expr,
    G,
    Multiple,
    W,
    X,
)

_PARAMETRIC = {"E": (Elliptic, 1), "X": (X, 2), "W": (W, 2), "D": (D, 1), "G": (G, 1)}
ATOM_TOKENS = frozenset(ATOMS) | {f"{k}(" for k in _PARAMETRIC} | {"cover("}
TERM_START = ATOM_TOKENS | {"INT"}

_TOKEN = re.compile(r"(?P<INT>\d+)|(?P<IDENT>[A-Za-z][A-Za-z0-9]*)|(?P<punct>[#(),])")
_SPACE = re.compile(r"\s*")


class Token(NamedTuple):
    kind: str  # "INT", "IDENT", a punctuation character, or "EOF"
    text: str
    offset: int


def tokenize(text: str) -> list[Token]:
    # latin-1 maps each UTF-8 byte to one character, so positions are byte offsets
    src = text.encode("utf-8").decode("latin-1")
    tokens, pos = [], 0
    while True:
        pos = _SPACE.match(src, pos).end()
        if pos == len(src):
            break
        m = _TOKEN.match(src, pos)
        if m is None:
            raise ParseError(f"unexpected character {src[pos]!r}", pos, TERM_START | {"#", ")"})
        kind = m.group("punct") or m.lastgroup
        tokens.append(Token(kind, m.group(), pos))
        pos = m.end()
    tokens.append(Token("EOF", "", len(src)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def advance(self) -> Token:
        t = self.tokens[self.i]
        self.i += 1
        return t

    def expect(self, kind: str, expected: frozenset[str] | None = None) -> Token:
        if self.tok.kind != kind:
            self.fail(expected or frozenset({kind}))
        return self.advance()

    def fail(self, expected):
        what = "end of input" if self.tok.kind == "EOF" else repr(self.tok.text)
        raise ParseError(f"unexpected {what}", self.tok.offset, expected)

    def parse(self) -> Expr:
        expr = self.expr()
        if self.tok.kind != "EOF":
            self.fail(frozenset({"#", "EOF"}))
        return expr

    def expr(self) -> Expr:
        terms = [self.term()]
        while self.tok.kind == "#":
            self.advance()
            terms.append(self.term())
        return terms[0] if len(terms) == 1 else ConnSum(tuple(terms))

    def term(self) -> Expr:
        if self.tok.kind == "INT":
            count = int(self.advance().text)
            return Multiple(count, self.atom())
        return self.atom()

    def atom(self) -> Expr:
        tok = self.tok
        if tok.kind != "IDENT":
            self.fail(TERM_START if tok.kind != "INT" else ATOM_TOKENS)
        name = tok.text
        if name in ATOMS:
            self.advance()
            return Atom(name)
        if name == "cover" or name in _PARAMETRIC:
            self.advance()
            self.expect("(", frozenset({f"{name}("}))
            if name == "cover":
                inner = self.expr()
                self.expect(")", frozenset({")", "#"}))
                return Cover(inner)
            cls, arity = _PARAMETRIC[name]
            args = [int(self.expect("INT").text)]
            for _ in range(arity - 1):
                self.expect(",")
                args.append(int(self.expect("INT").text))
            self.expect(")", frozenset({")"} if arity == len(args) else {","}))
            try:
                return cls(*args)
            except DomainError as exc:
                raise SemanticError(f"{exc} at offset {tok.offset}") from exc
        self.fail(ATOM_TOKENS)


def parse_expr(text: str) -> Expr:
    return _Parser(text).parse()


def pretty_print(expr: Expr) -> str:
    """Canonical text form; ``parse_expr(pretty_print(e)) == e``."""
    match expr:
        case ConnSum(summands):
            return " # ".join(_term(s) for s in summands)
    return _term(expr)


def _term(expr: Expr) -> str:
    if isinstance(expr, Multiple):
        return f"{expr.count} {_atom(expr.expr)}"
    return _atom(expr)


def _atom(expr: Expr) -> str:
    match expr:
        case Atom(name):
            return name
        case Elliptic(n):
            return f"E({n})"
        case X(m, n) | W(m, n):
            return f"{type(expr).__name__}({m},{n})"
        case D(n) | G(n):
            return f"{type(expr).__name__}({n})"
        case Cover(inner):
            return f"cover({pretty_print(inner)})"
    raise UnsupportedError(f"{expr!r} has no text syntax")
