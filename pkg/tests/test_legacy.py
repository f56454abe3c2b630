import random

import pytest

from mfhmrs import decrypt, encrypt
from mfhmrs.errors import InvalidParams
from mfhmrs.fhmrs import (
    LegacyParams,
    legacy_key_from_primes,
    legacy_keygen,
    legacy_share_exposes_value,
    validate_legacy,
)
from mfhmrs.numtheory import crt_reconstruct


def is_prime_trial_division(n):
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


class TestLegacyParams:
    def test_minimal_ln_worked_example(self):
        # l_n >= 2*(32+32+1) + 4 + 1 = 135, so p and q get 68 bits each
        p = LegacyParams.minimal(lm=8, N=1, A=4, lu=32)
        assert p.ln == 135
        assert p.lp == 68
        assert validate_legacy(p) == []

    def test_vulnerability_condition_implied(self):
        p = LegacyParams.minimal(lm=8, N=2, A=10, lu=24)
        assert p.lp > p.lu + p.lg + 1

    def test_u_not_below_p_ordering(self):
        bad = LegacyParams(lm=8, N=1, A=4, lu=200, ln=300)
        violations = validate_legacy(bad)
        assert any("u << n" in v for v in violations)
        with pytest.raises(InvalidParams):
            legacy_keygen(bad, random.Random(0))

    def test_n_zero_rejected(self):
        bad = LegacyParams.minimal(lm=8, N=1, A=0, lu=16)
        bad = LegacyParams(bad.lm, 0, bad.A, bad.lu, bad.ln)
        assert any("N >= 1" in v for v in validate_legacy(bad))


class TestLegacyKeygen:
    def test_generated_key_shape(self):
        p = LegacyParams.minimal(lm=8, N=1, A=4, lu=32)
        key = legacy_keygen(p, random.Random(1))
        assert key.legacy
        assert len(key.share_primes) == 2
        assert all(q.bit_length() == 68 for q in key.share_primes)
        assert key.u.bit_length() == 32

    def test_toy_key_primes_by_trial_division(self):
        assert is_prime_trial_division(10007)
        assert is_prime_trial_division(10009)
        assert is_prime_trial_division(101)
        key = legacy_key_from_primes(10007, 10009, 101, lm=4)
        assert key.legacy and key.n == 10007 * 10009

    def test_legacy_g_drawn_below_u(self):
        p = LegacyParams.minimal(lm=4, N=1, A=2, lu=16)
        key = legacy_keygen(p, random.Random(2))
        rng = random.Random(3)
        for _ in range(50):
            c = encrypt(key, 5, rng)
            # share is unreduced, so g is recoverable exactly
            g = (c.shares[0] - 5) // key.u
            assert 0 < g < key.u


class TestShareExposure:
    def test_toy_forced_example(self):
        key = legacy_key_from_primes(10007, 10009, 101, lm=4)
        c = encrypt(key, 4, random.Random(0), g=6)
        assert c.shares == (610, 610)
        assert legacy_share_exposes_value(key, c)

    def test_contrived_reduced_shares(self):
        from mfhmrs.scheme import Ciphertext

        key = legacy_key_from_primes(10007, 10009, 101, lm=4)
        assert not legacy_share_exposes_value(key, Ciphertext((3, 5)))

    def test_every_fresh_encryption_exposed_under_valid_params(self):
        p = LegacyParams.minimal(lm=8, N=1, A=4, lu=32)
        key = legacy_keygen(p, random.Random(4))
        rng = random.Random(5)
        for _ in range(100):
            c = encrypt(key, rng.randrange(256), rng)
            assert legacy_share_exposes_value(key, c)
            assert c.shares[0] < min(key.share_primes)

    def test_rejects_mfhmrs_key(self, toy_key):
        with pytest.raises(ValueError):
            legacy_share_exposes_value(toy_key, None)


class TestLegacyDecrypt:
    def test_agrees_with_crt_reconstruction(self):
        p = LegacyParams.minimal(lm=8, N=1, A=4, lu=24)
        key = legacy_keygen(p, random.Random(6))
        rng = random.Random(7)
        for _ in range(100):
            m = rng.randrange(256)
            c = encrypt(key, m, rng)
            # two-prime reconstruction oracle
            value = crt_reconstruct(
                [s % q for s, q in zip(c.shares, key.share_primes)],
                list(key.share_primes),
            )
            assert value % key.u == m
            assert decrypt(key, c) == m
