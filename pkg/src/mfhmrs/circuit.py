"""Tiny arithmetic-expression language for homomorphic evaluation.

Grammar (left-associative, '*' binds tighter than '+'/'-'):

    expr   := term (('+' | '-') term)*
    term   := factor ('*' factor)*
    factor := INT | c<k> | '(' expr ')' | '-' factor

Variables c1..ck refer to input ciphertexts in order.  Mixed
ciphertext/constant operations map to the constant-operand homomorphic
ops; constant-only subtrees fold to plain integers.  Subtraction of a
ciphertext is share-wise negation followed by homomorphic addition.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from . import scheme
from .errors import CircuitSyntaxError

_TOKEN = re.compile(r"\s*(?:(\d+)|(c\d+)|([+\-*()]))")


@dataclass(frozen=True)
class Token:
    kind: str  # "int" | "var" | an operator/paren literal
    text: str
    column: int  # 1-based


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            stripped = text[pos:].lstrip()
            col = len(text) - len(stripped) + 1
            raise CircuitSyntaxError(f"unexpected character {stripped[0]!r}", col)
        if m.group(1):
            tokens.append(Token("int", m.group(1), m.start(1) + 1))
        elif m.group(2):
            tokens.append(Token("var", m.group(2), m.start(2) + 1))
        elif m.group(3):
            tokens.append(Token(m.group(3), m.group(3), m.start(3) + 1))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = tokenize(text)
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self):
        tok = self.peek()
        if tok is not None:
            self.pos += 1
        return tok

    def fail(self, message):
        tok = self.peek()
        column = tok.column if tok else len(self.text) + 1
        raise CircuitSyntaxError(message, column)

    def parse(self):
        node = self.expr()
        if self.peek() is not None:
            self.fail(f"trailing input {self.peek().text!r}")
        return node

    def expr(self):
        node = self.term()
        while (tok := self.peek()) and tok.kind in "+-":
            self.take()
            rhs = self.term()
            node = ("add" if tok.kind == "+" else "sub", node, rhs)
        return node

    def term(self):
        node = self.factor()
        while (tok := self.peek()) and tok.kind == "*":
            self.take()
            node = ("mul", node, self.factor())
        return node

    def factor(self):
        tok = self.peek()
        if tok is None:
            self.fail("expected a value")
        if tok.kind == "int":
            self.take()
            return ("num", int(tok.text))
        if tok.kind == "var":
            self.take()
            index = int(tok.text[1:])
            if index < 1:
                raise CircuitSyntaxError("variables are numbered from c1", tok.column)
            return ("var", index - 1)
        if tok.kind == "(":
            self.take()
            node = self.expr()
            closing = self.peek()
            if closing is None or closing.kind != ")":
                self.fail("expected ')'")
            self.take()
            return node
        if tok.kind == "-":
            self.take()
            return ("neg", self.factor())
        self.fail(f"expected a value, got {tok.text!r}")


def parse(text: str):
    """Parse to an AST of nested tuples; raises CircuitSyntaxError with column."""
    return _Parser(text).parse()


def variables(node) -> set[int]:
    kind = node[0]
    if kind == "num":
        return set()
    if kind == "var":
        return {node[1]}
    if kind == "neg":
        return variables(node[1])
    return variables(node[1]) | variables(node[2])


def eval_plain(node, values: list[int]) -> int:
    """Integer evaluation with the same semantics, for oracle comparisons."""
    kind = node[0]
    if kind == "num":
        return node[1]
    if kind == "var":
        return values[node[1]]
    if kind == "neg":
        return -eval_plain(node[1], values)
    lhs, rhs = eval_plain(node[1], values), eval_plain(node[2], values)
    if kind == "add":
        return lhs + rhs
    if kind == "sub":
        return lhs - rhs
    return lhs * rhs


def eval_encrypted(node, shape: scheme.KeyShape, ciphertexts: list[scheme.Ciphertext]):
    """Evaluate to a Ciphertext, or a plain int for constant-only circuits."""
    kind = node[0]
    if kind == "num":
        return node[1]
    if kind == "var":
        if node[1] >= len(ciphertexts):
            raise ValueError(f"circuit references c{node[1] + 1} but only "
                             f"{len(ciphertexts)} ciphertexts were given")
        return ciphertexts[node[1]]
    if kind == "neg":
        value = eval_encrypted(node[1], shape, ciphertexts)
        return -value if isinstance(value, int) else scheme.hom_neg(value)
    lhs = eval_encrypted(node[1], shape, ciphertexts)
    rhs = eval_encrypted(node[2], shape, ciphertexts)
    lhs_ct = isinstance(lhs, scheme.Ciphertext)
    rhs_ct = isinstance(rhs, scheme.Ciphertext)
    if kind == "mul":
        if lhs_ct and rhs_ct:
            return scheme.hom_mul(shape, lhs, rhs)
        if lhs_ct:
            return scheme.hom_const_mul(shape, lhs, rhs)
        if rhs_ct:
            return scheme.hom_const_mul(shape, rhs, lhs)
        return lhs * rhs
    if kind == "sub":
        if rhs_ct:
            rhs = scheme.hom_neg(rhs)
        else:
            rhs = -rhs
        kind = "add"
        rhs_ct = isinstance(rhs, scheme.Ciphertext)
    # addition
    if lhs_ct and rhs_ct:
        return scheme.hom_add(shape, lhs, rhs)
    if lhs_ct:
        return scheme.hom_const_add(shape, lhs, rhs)
    if rhs_ct:
        return scheme.hom_const_add(shape, rhs, lhs)
    return lhs + rhs
