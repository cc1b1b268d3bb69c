"""Recursive-descent parser for the Cypher subset.

Errors carry character offsets. Recognizable Cypher outside the subset
(MERGE, FOREACH, variable-length paths, >2-hop patterns, OR, whole-node
projections, ...) raises UnsupportedFeature instead of ParseError so
callers can distinguish "malformed" from "deliberately out of scope".
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .cypher_ast import (
    COMPARISON_OPS,
    MAX_HOPS,
    Condition,
    CountItem,
    CypherQuery,
    ExistsItem,
    NodePattern,
    PathPattern,
    PropertyItem,
    RelPattern,
    TypeItem,
)


class ParseError(ValueError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at offset {offset})")
        self.offset = offset


class UnsupportedFeature(ValueError):
    def __init__(self, message: str, offset: int = 0):
        super().__init__(f"{message} (at offset {offset})")
        self.offset = offset


_KEYWORDS = {
    "MATCH",
    "WHERE",
    "RETURN",
    "LIMIT",
    "AND",
    "CONTAINS",
    "COUNT",
    "EXISTS",
    "TYPE",
    "AS",
    "TRUE",
    "FALSE",
}

# Valid Cypher we refuse on purpose.
_UNSUPPORTED_KEYWORDS = {
    "MERGE",
    "CREATE",
    "DELETE",
    "DETACH",
    "SET",
    "REMOVE",
    "FOREACH",
    "WITH",
    "UNWIND",
    "CALL",
    "ORDER",
    "SKIP",
    "UNION",
    "OPTIONAL",
    "OR",
    "XOR",
    "NOT",
    "DISTINCT",
}

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<number>\d+)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<string>"(?:\\.|[^"\\])*"|'(?:\\.|[^'\\])*')
  | (?P<symbol><>|<=|>=|->|<-|[()\[\]{}:,.=<>*-])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class _Token:
    kind: str  # "ident", "keyword", "unsupported", "number", "string", "symbol", "eof"
    value: str
    offset: int


def _tokenize(text: str) -> list[_Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        kind = m.lastgroup
        value = m.group()
        if kind != "ws":
            if kind == "ident":
                upper = value.upper()
                if upper in _UNSUPPORTED_KEYWORDS:
                    # Stop lexing: the parser reports UnsupportedFeature for
                    # this token even if stranger syntax follows it.
                    tokens.append(_Token("unsupported", upper, pos))
                    tokens.append(_Token("eof", "", len(text)))
                    return tokens
                if upper in _KEYWORDS:
                    kind = "keyword"
                    value = upper
            tokens.append(_Token(kind, value, pos))
        pos = m.end()
    tokens.append(_Token("eof", "", len(text)))
    return tokens


def _unquote(raw: str) -> str:
    body = raw[1:-1]
    return re.sub(r"\\(.)", r"\1", body)


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.pos = 0

    # -- token helpers ------------------------------------------------------

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def advance(self) -> _Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def check_unsupported(self):
        tok = self.peek()
        if tok.kind == "unsupported":
            raise UnsupportedFeature(
                f"{tok.value} is outside the supported Cypher subset", tok.offset
            )

    def expect_symbol(self, symbol: str) -> _Token:
        self.check_unsupported()
        tok = self.peek()
        if tok.kind != "symbol" or tok.value != symbol:
            raise ParseError(f"expected {symbol!r}, found {tok.value or 'end'!r}", tok.offset)
        return self.advance()

    def expect_keyword(self, word: str) -> _Token:
        self.check_unsupported()
        tok = self.peek()
        if tok.kind != "keyword" or tok.value != word:
            raise ParseError(f"expected {word}, found {tok.value or 'end'!r}", tok.offset)
        return self.advance()

    def expect_ident(self, what: str) -> _Token:
        self.check_unsupported()
        tok = self.peek()
        if tok.kind != "ident":
            raise ParseError(f"expected {what}, found {tok.value or 'end'!r}", tok.offset)
        return self.advance()

    def at_symbol(self, symbol: str) -> bool:
        tok = self.peek()
        return tok.kind == "symbol" and tok.value == symbol

    def at_keyword(self, word: str) -> bool:
        tok = self.peek()
        return tok.kind == "keyword" and tok.value == word

    # -- grammar ------------------------------------------------------------

    def parse(self) -> CypherQuery:
        self.check_unsupported()
        self.expect_keyword("MATCH")
        patterns = [self.parse_pattern()]
        while self.at_symbol(","):
            self.advance()
            patterns.append(self.parse_pattern())
        where: list[Condition] = []
        if self.at_keyword("WHERE"):
            self.advance()
            where.append(self.parse_condition())
            while self.at_keyword("AND"):
                self.advance()
                where.append(self.parse_condition())
            self.check_unsupported()
        self.expect_keyword("RETURN")
        returns = [self.parse_return_item()]
        while self.at_symbol(","):
            self.advance()
            returns.append(self.parse_return_item())
        limit = None
        if self.at_keyword("LIMIT"):
            self.advance()
            tok = self.peek()
            if tok.kind != "number":
                raise ParseError("LIMIT expects a positive integer", tok.offset)
            limit = int(self.advance().value)
            if limit <= 0:
                raise ParseError("LIMIT must be positive", tok.offset)
        self.check_unsupported()
        tok = self.peek()
        if tok.kind != "eof":
            raise ParseError(f"unexpected trailing input {tok.value!r}", tok.offset)
        query = CypherQuery(
            patterns=tuple(patterns),
            returns=tuple(returns),
            where=tuple(where),
            limit=limit,
        )
        self._validate_bindings(query)
        return query

    def parse_pattern(self) -> PathPattern:
        nodes = [self.parse_node()]
        rels: list[RelPattern] = []
        while self.at_symbol("-") or self.at_symbol("<-"):
            if len(rels) == MAX_HOPS:
                raise UnsupportedFeature(
                    f"patterns longer than {MAX_HOPS} hops are not supported",
                    self.peek().offset,
                )
            rels.append(self.parse_rel())
            nodes.append(self.parse_node())
        return PathPattern(nodes=tuple(nodes), rels=tuple(rels))

    def parse_node(self) -> NodePattern:
        self.expect_symbol("(")
        var = None
        label = None
        props: list[tuple[str, object]] = []
        tok = self.peek()
        if tok.kind == "ident":
            var = self.advance().value
        if self.at_symbol(":"):
            self.advance()
            label = self.expect_ident("node label").value
        if self.at_symbol("{"):
            props = self.parse_props()
        self.expect_symbol(")")
        return NodePattern(var=var, label=label, props=tuple(props))

    def parse_props(self) -> list[tuple[str, object]]:
        self.expect_symbol("{")
        props = []
        while True:
            key = self.expect_ident("property name").value
            self.expect_symbol(":")
            props.append((key, self.parse_value()))
            if self.at_symbol(","):
                self.advance()
                continue
            break
        self.expect_symbol("}")
        return props

    def parse_rel(self) -> RelPattern:
        if self.at_symbol("<-"):
            direction = "in"
            self.advance()
        else:
            direction = "out"
            self.expect_symbol("-")
        self.expect_symbol("[")
        var = None
        rel_type = None
        tok = self.peek()
        if tok.kind == "ident":
            var = self.advance().value
        if self.at_symbol(":"):
            self.advance()
            rel_type = self.expect_ident("relationship type").value
        if self.at_symbol("*"):
            raise UnsupportedFeature(
                "variable-length relationships are not supported", self.peek().offset
            )
        self.expect_symbol("]")
        if direction == "out":
            self.expect_symbol("->")
        else:
            self.expect_symbol("-")
        return RelPattern(var=var, rel_type=rel_type, direction=direction)

    def parse_value(self):
        self.check_unsupported()
        tok = self.peek()
        if tok.kind == "string":
            return _unquote(self.advance().value)
        if tok.kind == "number":
            return int(self.advance().value)
        if tok.kind == "keyword" and tok.value in ("TRUE", "FALSE"):
            return self.advance().value == "TRUE"
        raise ParseError(f"expected a literal, found {tok.value or 'end'!r}", tok.offset)

    def parse_condition(self) -> Condition:
        var = self.expect_ident("variable").value
        self.expect_symbol(".")
        key = self.expect_ident("property name").value
        self.check_unsupported()
        tok = self.peek()
        if tok.kind == "keyword" and tok.value == "CONTAINS":
            self.advance()
            value = self.parse_value()
            if not isinstance(value, str):
                raise ParseError("CONTAINS expects a string literal", tok.offset)
            return Condition(var=var, key=key, op="CONTAINS", value=value)
        if tok.kind == "symbol" and tok.value in COMPARISON_OPS:
            op = self.advance().value
            return Condition(var=var, key=key, op=op, value=self.parse_value())
        raise ParseError(f"expected a comparison, found {tok.value or 'end'!r}", tok.offset)

    def parse_return_item(self):
        self.check_unsupported()
        tok = self.peek()
        if tok.kind == "keyword" and tok.value == "COUNT":
            self.advance()
            self.expect_symbol("(")
            self.check_unsupported()
            inner = self.peek()
            if inner.kind == "symbol" and inner.value == "*":
                self.advance()
                arg = "*"
            else:
                arg = self.expect_ident("variable").value
            self.expect_symbol(")")
            return CountItem(arg=arg, alias=self.parse_alias())
        if tok.kind == "keyword" and tok.value == "EXISTS":
            self.advance()
            self.expect_symbol("(")
            pattern = self.parse_pattern()
            self.expect_symbol(")")
            return ExistsItem(pattern=pattern, alias=self.parse_alias())
        if tok.kind == "keyword" and tok.value == "TYPE":
            self.advance()
            self.expect_symbol("(")
            var = self.expect_ident("relationship variable").value
            self.expect_symbol(")")
            return TypeItem(var=var, alias=self.parse_alias())
        if tok.kind == "ident":
            var = self.advance().value
            if self.at_symbol("."):
                self.advance()
                key = self.expect_ident("property name").value
                return PropertyItem(var=var, key=key, alias=self.parse_alias())
            raise UnsupportedFeature(
                "whole-node projections are not supported; project a property",
                tok.offset,
            )
        raise ParseError(
            f"expected a return item, found {tok.value or 'end'!r}", tok.offset
        )

    def parse_alias(self) -> str | None:
        if self.at_keyword("AS"):
            self.advance()
            return self.expect_ident("alias").value
        return None

    # -- binding validation ---------------------------------------------------

    def _validate_bindings(self, query: CypherQuery) -> None:
        node_vars: set[str] = set()
        rel_vars: set[str] = set()
        for pattern in query.patterns:
            node_vars.update(n.var for n in pattern.nodes if n.var)
            rel_vars.update(r.var for r in pattern.rels if r.var)
        for cond in query.where:
            if cond.var not in node_vars:
                raise ParseError(f"variable {cond.var!r} is not bound in MATCH", 0)
        for item in query.returns:
            if isinstance(item, PropertyItem) and item.var not in node_vars:
                raise ParseError(f"variable {item.var!r} is not bound in MATCH", 0)
            if isinstance(item, TypeItem) and item.var not in rel_vars:
                raise ParseError(
                    f"relationship variable {item.var!r} is not bound in MATCH", 0
                )
            if isinstance(item, ExistsItem):
                # Fresh vars inside EXISTS are fine; nothing to check here.
                pass


def parse_cypher(text: str) -> CypherQuery:
    """Parse subset-Cypher text into an AST; see module docstring for errors."""
    return _Parser(text).parse()
