"""Shared fixtures: a hand-built toy key and a random circuit generator.

The circuit generator only emits circuits whose underlying integer value
provably stays inside [0, n) for every possible draw of the encryption
randomness, tracked by interval arithmetic per node.  Inside that range
CRT reconstruction is exact, so decrypt(eval(circuit)) must equal the
plaintext oracle modulo u with no probabilistic slack.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

import pytest

from mfhmrs import SchemeParams, SecretKey, encrypt
from mfhmrs.circuit import eval_plain

TOY_PARAMS = SchemeParams(lam=2, lm=3, N=1, A=1, S=2, lu=3, lg=2, lp=4)


@pytest.fixture
def toy_key() -> SecretKey:
    # p = (11, 13, 17), u = 7; deliberately below real-size constraints
    return SecretKey.from_primes((11, 13, 17), 7, TOY_PARAMS)


@dataclass
class _Node:
    ast: tuple
    mults: int
    adds: int
    lo: int
    hi: int


def random_circuit(rng: random.Random, key: SecretKey, messages: list[int], ops: int = 6):
    """Random in-budget AST over c1..ck; returns (ast, plain_value)."""
    p = key.params
    shape = key.shape
    g_lo, g_hi = 1 << (p.lg - 1), (1 << p.lg) - 1
    nodes = [
        _Node(("var", i), 0, 0, m + g_lo * key.u, m + g_hi * key.u)
        for i, m in enumerate(messages)
    ]

    def try_combine():
        kind = rng.choice(("add", "mul", "sub", "cadd", "cmul"))
        if kind in ("add", "mul", "sub"):
            if len(nodes) < 2:
                return False
            i, j = rng.sample(range(len(nodes)), 2)
            x, y = nodes[i], nodes[j]
            if kind == "add":
                mults, adds = max(x.mults, y.mults), x.adds + y.adds + 1
                lo, hi = x.lo + y.lo, x.hi + y.hi
            elif kind == "mul":
                mults, adds = x.mults + y.mults + 1, x.adds + y.adds
                lo, hi = x.lo * y.lo, x.hi * y.hi
            else:
                mults, adds = max(x.mults, y.mults), x.adds + y.adds + 1
                lo, hi = x.lo - y.hi, x.hi - y.lo
            if mults > shape.mult_budget or adds > shape.add_budget:
                return False
            if lo < 0 or hi >= key.n:
                return False
            node = _Node((kind, x.ast, y.ast), mults, adds, lo, hi)
            for idx in sorted((i, j), reverse=True):
                del nodes[idx]
            nodes.append(node)
            return True
        i = rng.randrange(len(nodes))
        x = nodes[i]
        if kind == "cadd":
            a = rng.randrange(-(1 << p.lm) + 1, 1 << p.lm)
            mults, adds = x.mults, x.adds + 1
            lo, hi = x.lo + a, x.hi + a
            ast = ("add", x.ast, ("num", a)) if a >= 0 else ("sub", x.ast, ("num", -a))
        else:
            a = rng.randrange(0, 1 << p.lm)
            mults, adds = x.mults + 1, x.adds
            lo, hi = x.lo * a, x.hi * a
            ast = ("mul", x.ast, ("num", a))
        if mults > shape.mult_budget or adds > shape.add_budget:
            return False
        if lo < 0 or hi >= key.n:
            return False
        nodes[i] = _Node(ast, mults, adds, lo, hi)
        return True

    for _ in range(ops * 4):
        try_combine()

    result = nodes[0]
    plain = eval_plain(result.ast, messages)
    return result.ast, plain


def ast_to_expr(node) -> str:
    kind = node[0]
    if kind == "num":
        return str(node[1]) if node[1] >= 0 else f"(-{-node[1]})"
    if kind == "var":
        return f"c{node[1] + 1}"
    if kind == "neg":
        return f"(-{ast_to_expr(node[1])})"
    op = {"add": "+", "sub": "-", "mul": "*"}[kind]
    return f"({ast_to_expr(node[1])}{op}{ast_to_expr(node[2])})"
