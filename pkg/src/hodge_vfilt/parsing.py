"""Parser for polynomial input.

Grammar (no implicit multiplication):
    expr   := ['+'|'-'] term (('+'|'-') term)*
    term   := factor ('*' factor)*
    factor := ('-' factor) | atom ('^' nat)*
    atom   := rational | name | '(' expr ')'

Rationals are written ``p`` or ``p/q``; floats are rejected.
"""

from __future__ import annotations

import re
from collections.abc import Sequence
from dataclasses import dataclass

from sympy.polys.domains import QQ
from sympy.polys.rings import PolyElement, PolyRing

from hodge_vfilt.errors import ParseError, ReservedVariable, UnknownVariable
from hodge_vfilt.graphmod import RESERVED
from hodge_vfilt.polyalg.ideal import polynomial_ring

NAME_RE = re.compile(r"^[a-zA-Z][a-zA-Z0-9_]*$")

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<number>\d+(?:\s*/\s*\d+)?)|(?P<name>[a-zA-Z][a-zA-Z0-9_]*)|(?P<op>[-+*^()]))"
)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    position: int


def tokenize(source: str) -> list[Token]:
    tokens = []
    position = 0
    while True:
        match = _TOKEN_RE.match(source, position)
        if match is None:
            rest = source[position:]
            if not rest.strip():
                return tokens
            offset = position + len(rest) - len(rest.lstrip())
            char = source[offset]
            hint = ", write rationals as p/q" if char == "." else ""
            raise ParseError(f"unexpected character {char!r}{hint}", offset, source)
        kind = match.lastgroup
        assert kind is not None
        tokens.append(Token(kind, match.group(kind), match.start(kind)))
        position = match.end()


class _Parser:
    def __init__(self, source: str, ring: PolyRing) -> None:
        self.source = source
        self.ring = ring
        self.names = {str(s): g for s, g in zip(ring.symbols, ring.gens, strict=True)}
        self.tokens = tokenize(source)
        self.index = 0

    def peek(self) -> Token | None:
        return self.tokens[self.index] if self.index < len(self.tokens) else None

    def take(self) -> Token:
        token = self.peek()
        if token is None:
            raise ParseError("unexpected end of input", len(self.source), self.source)
        self.index += 1
        return token

    def expect(self, text: str) -> None:
        token = self.take()
        if token.text != text:
            raise ParseError(f"expected {text!r}, got {token.text!r}", token.position, self.source)

    def at(self, *texts: str) -> bool:
        token = self.peek()
        return token is not None and token.kind == "op" and token.text in texts

    def parse(self) -> PolyElement:
        if not self.tokens:
            raise ParseError("empty expression", 0, self.source)
        value = self.expr()
        token = self.peek()
        if token is not None:
            raise ParseError(f"unexpected {token.text!r}", token.position, self.source)
        return value

    def expr(self) -> PolyElement:
        sign = 1
        if self.at("+", "-"):
            sign = -1 if self.take().text == "-" else 1
        value = self.term() * sign
        while self.at("+", "-"):
            op = self.take().text
            right = self.term()
            value = value + right if op == "+" else value - right
        return value

    def term(self) -> PolyElement:
        value = self.factor()
        while self.at("*"):
            self.take()
            value = value * self.factor()
        return value

    def factor(self) -> PolyElement:
        if self.at("-"):
            self.take()
            return -self.factor()
        value = self.atom()
        while self.at("^"):
            self.take()
            token = self.take()
            if token.kind != "number" or "/" in token.text:
                raise ParseError(
                    f"exponent must be a natural number, got {token.text!r}",
                    token.position,
                    self.source,
                )
            value = value ** int(token.text)
        return value

    def atom(self) -> PolyElement:
        token = self.take()
        if token.kind == "number":
            numerator, _, denominator = token.text.partition("/")
            if denominator and int(denominator) == 0:
                raise ParseError("zero denominator", token.position, self.source)
            value = QQ(int(numerator), int(denominator) if denominator else 1)
            return self.ring(value)
        if token.kind == "name":
            if token.text not in self.names:
                raise UnknownVariable(
                    f"unknown variable {token.text!r}", token.position, self.source
                )
            return self.names[token.text]
        if token.text == "(":
            value = self.expr()
            self.expect(")")
            return value
        raise ParseError(f"unexpected {token.text!r}", token.position, self.source)


def parse_poly(source: str, ring: PolyRing) -> PolyElement:
    """Parse ``source`` into an element of ``ring``.

    Raises:
        ParseError: the text does not match the grammar.
        UnknownVariable: a name is not a variable of ``ring``.
    """
    return _Parser(source, ring).parse()


def parse_variables(source: str | Sequence[str], *, allow: Sequence[str] = ()) -> tuple[str, ...]:
    """Validate a comma separated list of variable names.

    Raises:
        ValueError: a malformed or repeated name.
        ReservedVariable: a name used internally (s, t, dt, beta, u, h).
    """
    names = [n.strip() for n in source.split(",")] if isinstance(source, str) else list(source)
    if not names or not all(names):
        raise ValueError(f"empty variable name in {source!r}")
    for name in names:
        if not NAME_RE.match(name):
            raise ValueError(f"invalid variable name {name!r}")
        if name in RESERVED and name not in allow:
            raise ReservedVariable(f"{name!r} is reserved")
        if name.startswith("d") and name[1:] in names:
            raise ReservedVariable(f"{name!r} clashes with the derivation of {name[1:]!r}")
    if len(set(names)) != len(names):
        raise ValueError(f"repeated variable names in {source!r}")
    return tuple(names)


def ring_for(variables: Sequence[str]) -> PolyRing:
    return polynomial_ring(parse_variables(variables))


def _parse_pieces(source: str, ring: PolyRing, *, keep_empty: bool) -> list[PolyElement]:
    polys = []
    offset = 0
    for piece in source.split(";"):
        if piece.strip():
            try:
                polys.append(parse_poly(piece, ring))
            except ParseError as e:
                raise type(e)(e.message, offset + e.position, source) from e
        elif keep_empty:
            polys.append(ring.zero)
        offset += len(piece) + 1
    return polys


def parse_generators(source: str, ring: PolyRing) -> list[PolyElement]:
    """Parse ``"g1; g2; ..."``; positions in errors refer to the whole string."""
    return _parse_pieces(source, ring, keep_empty=False)


def parse_element(source: str, ring: PolyRing) -> tuple[PolyElement, ...]:
    """``"g0; g1; ..."``: the coefficients of dt^0, dt^1, ... (empty pieces are 0)."""
    return tuple(_parse_pieces(source, ring, keep_empty=True))


def infer_variables(source: str, *, exclude: Sequence[str] = ()) -> tuple[str, ...]:
    """Names used in ``"g1; g2; ..."`` other than ``exclude``, in order of first use.

    Raises:
        ParseError: a piece has a character outside the grammar, or no name is used.
    """
    names: list[str] = []
    offset = 0
    for piece in source.split(";"):
        try:
            tokens = tokenize(piece)
        except ParseError as e:
            raise ParseError(e.message, offset + e.position, source) from e
        for token in tokens:
            if token.kind == "name" and token.text not in exclude and token.text not in names:
                names.append(token.text)
        offset += len(piece) + 1
    if not names:
        raise ParseError("no variables in the generators", 0, source)
    return parse_variables(names, allow=exclude)
