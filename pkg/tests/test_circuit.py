import random

import pytest

from mfhmrs import encrypt, decrypt
from mfhmrs.circuit import eval_encrypted, eval_plain, parse, variables
from mfhmrs.errors import BudgetExceeded, CircuitSyntaxError


class TestParse:
    def test_precedence_and_association(self):
        ast = parse("c1+c2*c3-4")
        assert ast == (
            "sub",
            ("add", ("var", 0), ("mul", ("var", 1), ("var", 2))),
            ("num", 4),
        )

    def test_parentheses(self):
        assert parse("(c1+c2)*c3") == (
            "mul",
            ("add", ("var", 0), ("var", 1)),
            ("var", 2),
        )

    def test_unary_minus(self):
        assert parse("-c1*2") == ("mul", ("neg", ("var", 0)), ("num", 2))

    def test_double_star_fails_at_second_star(self):
        with pytest.raises(CircuitSyntaxError) as exc:
            parse("c1**c2")
        assert exc.value.column == 4

    def test_unbalanced_paren(self):
        with pytest.raises(CircuitSyntaxError):
            parse("(c1+c2")

    def test_bad_character_column(self):
        with pytest.raises(CircuitSyntaxError) as exc:
            parse("c1 + x")
        assert exc.value.column == 6

    def test_variable_collection(self):
        assert variables(parse("c1*(c3+2)-c1")) == {0, 2}


class TestEvalPlain:
    def test_matches_python_eval(self):
        rng = random.Random(0)
        for _ in range(100):
            expr = "(c1+c2)*c3 - 2*c2 + (-c1)"
            values = [rng.randrange(-50, 50) for _ in range(3)]
            c1, c2, c3 = values
            assert eval_plain(parse(expr), values) == (c1 + c2) * c3 - 2 * c2 + (-c1)


class TestEvalEncrypted:
    def test_mixed_constant_routing(self, toy_key):
        rng = random.Random(1)
        c1 = encrypt(toy_key, 3, rng, g=2)
        c2 = encrypt(toy_key, 2, rng, g=1)
        out = eval_encrypted(parse("c1*c2"), toy_key.shape, [c1, c2])
        assert decrypt(toy_key, out) == 6

    def test_budget_respected(self, toy_key):
        rng = random.Random(2)
        cts = [encrypt(toy_key, 1, rng, g=1) for _ in range(3)]
        # N = 1: two multiplications exceed the depth budget
        with pytest.raises(BudgetExceeded):
            eval_encrypted(parse("c1*c2*c3"), toy_key.shape, cts)
        out = eval_encrypted(parse("(c1+c2)*c3"), toy_key.shape, cts)
        assert decrypt(toy_key, out) == 2

    def test_constant_only_circuit_returns_int(self, toy_key):
        assert eval_encrypted(parse("2*3+1"), toy_key.shape, []) == 7

    def test_constant_minus_ciphertext_is_sharewise(self, toy_key):
        # const - ct drives the underlying value negative, so it cannot
        # decrypt meaningfully; the operation itself is share-wise exact
        rng = random.Random(3)
        c1 = encrypt(toy_key, 2, rng, g=1)
        out = eval_encrypted(parse("5-c1"), toy_key.shape, [c1])
        assert out.shares == tuple(5 - s for s in c1.shares)

    def test_ciphertext_minus_constant(self, toy_key):
        rng = random.Random(3)
        c1 = encrypt(toy_key, 2, rng, g=1)
        out = eval_encrypted(parse("c1-1"), toy_key.shape, [c1])
        assert decrypt(toy_key, out) == 1

    def test_missing_ciphertext_reference(self, toy_key):
        with pytest.raises(ValueError):
            eval_encrypted(parse("c2"), toy_key.shape, [])
