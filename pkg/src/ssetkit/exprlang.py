"""The construction expression language.

    expr := "delta" INT | "boundary" INT | "horn" INT INT | "spine" INT
          | "nerve" PATH
          | "prod(" expr "," expr ")" | "join(" expr "," expr ")"
          | "wjoin(" expr "," expr ")" | "coprod(" expr "," expr ")"
          | "skel(" expr "," INT ")"
          | "pushout(" mapref "," mapref ")"
          | "let" IDENT "=" expr "in" expr
          | IDENT

Whitespace-insensitive; integers decimal; PATH and mapref are quoted
strings or bare path tokens (anything with a dot or slash).  Syntax
errors carry the offset at which parsing failed.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Optional, Union

from .core import SimplicialMap, SimplicialSet, same_structure
from . import build
from .cats import nerve


class ExprSyntaxError(ValueError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"syntax error at offset {offset}: {message}")
        self.offset = offset


class EvalError(ValueError):
    pass


@dataclass(frozen=True)
class Leaf:
    op: str                      # delta | boundary | horn | spine
    args: tuple[int, ...]


@dataclass(frozen=True)
class NerveRef:
    path: str


@dataclass(frozen=True)
class Node:
    op: str                      # prod | join | wjoin | coprod
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Skel:
    body: "Expr"
    dim: int


@dataclass(frozen=True)
class PushoutRef:
    left_path: str
    right_path: str


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Let:
    name: str
    value: "Expr"
    body: "Expr"


Expr = Union[Leaf, NerveRef, Node, Skel, PushoutRef, Var, Let]


_TOKEN = re.compile(r"""
    (?P<ws>\s+)
  | (?P<int>\d+)
  | (?P<string>"[^"]*")
  | (?P<path>[A-Za-z0-9_\-]*[./\\][A-Za-z0-9_./\\\-]*)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<punct>[(),=])
""", re.VERBOSE)

_KEYWORDS = {"delta", "boundary", "horn", "spine", "nerve", "prod", "join",
             "wjoin", "coprod", "skel", "pushout", "let", "in"}


@dataclass
class _Token:
    kind: str
    text: str
    offset: int


def _tokenize(text: str) -> list[_Token]:
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ExprSyntaxError(f"unexpected character {text[pos]!r}", pos)
        kind = m.lastgroup
        if kind != "ws":
            out.append(_Token(kind, m.group(), pos))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.pos = 0

    def _eof_offset(self) -> int:
        return len(self.text)

    def peek(self) -> Optional[_Token]:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self) -> _Token:
        tok = self.peek()
        if tok is None:
            raise ExprSyntaxError("unexpected end of input", self._eof_offset())
        self.pos += 1
        return tok

    def expect_punct(self, char: str):
        tok = self.take()
        if tok.kind != "punct" or tok.text != char:
            raise ExprSyntaxError(f"expected {char!r}", tok.offset)

    def expect_int(self) -> int:
        tok = self.take()
        if tok.kind != "int":
            raise ExprSyntaxError("expected an integer", tok.offset)
        return int(tok.text)

    def expect_path(self) -> str:
        tok = self.take()
        if tok.kind == "string":
            return tok.text[1:-1]
        if tok.kind in ("path", "ident"):
            return tok.text
        raise ExprSyntaxError("expected a file path", tok.offset)

    def parse(self) -> Expr:
        expr = self.expr()
        tok = self.peek()
        if tok is not None:
            raise ExprSyntaxError(f"trailing input {tok.text!r}", tok.offset)
        return expr

    def expr(self) -> Expr:
        tok = self.take()
        if tok.kind == "ident" and tok.text in _KEYWORDS:
            word = tok.text
            if word == "delta":
                return Leaf("delta", (self.expect_int(),))
            if word == "boundary":
                return Leaf("boundary", (self.expect_int(),))
            if word == "spine":
                return Leaf("spine", (self.expect_int(),))
            if word == "horn":
                n = self.expect_int()
                return Leaf("horn", (n, self.expect_int()))
            if word == "nerve":
                return NerveRef(self.expect_path())
            if word in ("prod", "join", "wjoin", "coprod"):
                self.expect_punct("(")
                left = self.expr()
                self.expect_punct(",")
                right = self.expr()
                self.expect_punct(")")
                return Node(word, left, right)
            if word == "skel":
                self.expect_punct("(")
                body = self.expr()
                self.expect_punct(",")
                dim = self.expect_int()
                self.expect_punct(")")
                return Skel(body, dim)
            if word == "pushout":
                self.expect_punct("(")
                left = self.expect_path()
                self.expect_punct(",")
                right = self.expect_path()
                self.expect_punct(")")
                return PushoutRef(left, right)
            if word == "let":
                name_tok = self.take()
                if name_tok.kind != "ident" or name_tok.text in _KEYWORDS:
                    raise ExprSyntaxError("expected a binding name",
                                          name_tok.offset)
                self.expect_punct("=")
                value = self.expr()
                in_tok = self.take()
                if in_tok.kind != "ident" or in_tok.text != "in":
                    raise ExprSyntaxError("expected 'in'", in_tok.offset)
                return Let(name_tok.text, value, self.expr())
            raise ExprSyntaxError(f"unexpected keyword {word!r}", tok.offset)
        if tok.kind == "ident":
            return Var(tok.text)
        raise ExprSyntaxError(f"unexpected token {tok.text!r}", tok.offset)


def parse(text: str) -> Expr:
    return _Parser(text).parse()


DEFAULT_NERVE_DIM = 8


def evaluate(expr: Expr, env: Optional[dict] = None,
             read_file=None) -> SimplicialSet:
    """Evaluate an expression to a simplicial set.

    read_file(path) -> text supplies file contents for nerve and pushout
    references (defaults to the filesystem)."""
    from .jsonio import category_from_json, map_from_json

    if read_file is None:
        def read_file(path):
            with open(path, "r", encoding="utf-8") as handle:
                return handle.read()

    scope = dict(env or {})

    def go(node: Expr) -> SimplicialSet:
        if isinstance(node, Leaf):
            maker = {"delta": build.standard_simplex,
                     "boundary": build.boundary,
                     "horn": build.horn,
                     "spine": build.spine}[node.op]
            return maker(*node.args)
        if isinstance(node, NerveRef):
            import json
            raw = read_file(node.path)
            cat = category_from_json(raw)
            bound = json.loads(raw).get("max_dim", DEFAULT_NERVE_DIM)
            return nerve(cat, bound)
        if isinstance(node, Node):
            left, right = go(node.left), go(node.right)
            if node.op == "prod":
                return build.product(left, right).space
            if node.op == "join":
                return build.join(left, right)
            if node.op == "wjoin":
                return build.wide_join(left, right)
            return build.coproduct(left, right).space
        if isinstance(node, Skel):
            from .core import skeleton
            return skeleton(go(node.body), node.dim).as_set()
        if isinstance(node, PushoutRef):
            f = map_from_json(read_file(node.left_path))
            g = map_from_json(read_file(node.right_path))
            if not same_structure(f.source, g.source):
                raise EvalError("pushout maps must share their source")
            g = SimplicialMap(f.source, g.target, g.assign)
            return build.pushout(f, g).space
        if isinstance(node, Var):
            if node.name not in scope:
                raise EvalError(f"unbound name {node.name!r}")
            return scope[node.name]
        if isinstance(node, Let):
            shadow = scope.get(node.name)
            had = node.name in scope
            scope[node.name] = go(node.value)
            try:
                return go(node.body)
            finally:
                if had:
                    scope[node.name] = shadow
                else:
                    del scope[node.name]
        raise EvalError(f"unknown node {node!r}")

    return go(expr)


def eval_text(text: str, read_file=None) -> SimplicialSet:
    return evaluate(parse(text), read_file=read_file)
