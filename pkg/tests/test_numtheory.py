import math
import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from mfhmrs import numtheory as nt
from mfhmrs.errors import ModuliNotCoprime, NotInvertible, OutOfRange, RandomnessFailure


def trial_division_factors(n):
    factors = []
    d = 2
    while d * d <= n:
        while n % d == 0:
            factors.append(d)
            n //= d
        d += 1
    if n > 1:
        factors.append(n)
    return factors


class TestGcd:
    def test_worked_example_against_factorization(self):
        # oracle: common prime factor by trial division
        assert trial_division_factors(606) == [2, 3, 101]
        assert trial_division_factors(3535) == [5, 7, 101]
        assert nt.gcd(606, 3535) == 101

    def test_zero_identity(self):
        assert nt.gcd(0, 17) == 17
        assert nt.gcd(0, 0) == 0

    def test_sign_invariance(self):
        assert nt.gcd(-12, 18) == 6

    @given(st.integers(-(2**80), 2**80), st.integers(-(2**80), 2**80))
    def test_divides_both_and_symmetric(self, a, b):
        d = nt.gcd(a, b)
        assert d >= 0
        if d:
            assert a % d == 0 and b % d == 0
        assert d == nt.gcd(b, a) == nt.gcd(abs(a), abs(b))


class TestModInverse:
    def test_exhaustive_oracle(self):
        expected = next(x for x in range(11) if 3 * x % 11 == 1)
        assert expected == 4
        assert nt.mod_inverse(3, 11) == 4

    def test_identity(self):
        assert nt.mod_inverse(1, 7) == 1

    def test_not_invertible(self):
        with pytest.raises(NotInvertible):
            nt.mod_inverse(6, 9)

    @given(st.integers(-(2**64), 2**64), st.integers(2, 2**64))
    def test_inverse_property(self, a, m):
        if math.gcd(a, m) == 1:
            x = nt.mod_inverse(a, m)
            assert 0 <= x < m
            assert a * x % m == 1
        else:
            with pytest.raises(NotInvertible):
                nt.mod_inverse(a, m)


class TestIsProbablePrime:
    def test_composite_with_known_factorization(self):
        assert trial_division_factors(2431) == [11, 13, 17]
        assert not nt.is_probable_prime(2431, 40)

    def test_two(self):
        assert nt.is_probable_prime(2, 1)

    def test_mersenne_127_against_sympy(self):
        m127 = (1 << 127) - 1
        assert sympy.isprime(m127)  # independent oracle
        assert nt.is_probable_prime(m127, 40)

    @given(st.integers(-10, 100_000))
    @settings(max_examples=300)
    def test_agrees_with_sympy_small(self, n):
        assert nt.is_probable_prime(n, 40) == sympy.isprime(n)

    @given(st.integers(2**64, 2**80))
    @settings(max_examples=60)
    def test_agrees_with_sympy_large(self, n):
        assert nt.is_probable_prime(n, 40) == sympy.isprime(n)


class TestGenPrime:
    def test_exact_bit_length(self):
        rng = random.Random(1)
        for bits in (2, 3, 8, 16, 48, 96):
            p = nt.gen_prime(bits, rng)
            assert p.bit_length() == bits
            assert nt.is_probable_prime(p, 40)

    def test_two_bit_output(self):
        rng = random.Random(2)
        assert all(nt.gen_prime(2, rng) in (2, 3) for _ in range(20))

    def test_statistical_all_prime_against_sieve(self):
        sieve = set(sympy.primerange(1 << 15, 1 << 16))
        rng = random.Random(3)
        draws = [nt.gen_prime(16, rng) for _ in range(1000)]
        assert all(p in sieve for p in draws)

    def test_broken_entropy_source(self):
        class Broken:
            def getrandbits(self, _):
                raise OSError("no entropy")

        with pytest.raises(RandomnessFailure):
            nt.gen_prime(16, Broken())


class TestCrt:
    def test_brute_scan_oracle(self):
        expected = next(
            x for x in range(11 * 13 * 17)
            if x % 11 == 6 and x % 13 == 4 and x % 17 == 0
        )
        assert expected == 17
        assert nt.crt_reconstruct([6, 4, 0], [11, 13, 17]) == 17

    def test_single_modulus(self):
        assert nt.crt_reconstruct([0], [5]) == 0

    def test_second_brute_scan(self):
        expected = next(
            x for x in range(11 * 13 * 17)
            if x % 11 == 10 and x % 13 == 10 and x % 17 == 0
        )
        assert expected == 153
        assert nt.crt_reconstruct([10, 10, 0], [11, 13, 17]) == 153

    def test_moduli_not_coprime(self):
        with pytest.raises(ModuliNotCoprime):
            nt.crt_reconstruct([1, 2], [6, 10])

    def test_roundtrip_random_trials(self):
        rng = random.Random(4)
        for _ in range(10_000):
            count = rng.randrange(3, 7)
            moduli = []
            while len(moduli) < count:
                m = nt.gen_prime(rng.randrange(8, 65), rng)
                if m not in moduli:
                    moduli.append(m)
            product = math.prod(moduli)
            x = rng.randrange(product)
            assert nt.crt_reconstruct([x % m for m in moduli], moduli) == x


class TestPrimeCounts:
    def test_exact_count_8_bits(self):
        # independent oracle: per-number primality over the range
        expected = sum(1 for n in range(128, 256) if sympy.isprime(n))
        assert expected == 23
        assert nt.prime_count_exact_bits(8) == 23

    def test_exact_count_trivial(self):
        assert nt.prime_count_exact_bits(2) == 2  # 2, 3
        assert nt.prime_count_exact_bits(4) == 2  # 11, 13

    def test_out_of_range(self):
        with pytest.raises(OutOfRange):
            nt.prime_count_exact_bits(25)

    def test_estimate_8_bits(self):
        est = nt.prime_count_estimate(8)
        # direct evaluation: 255/ln 255 - 127/ln 127
        oracle = 255 / math.log(255) - 127 / math.log(127)
        assert abs(float(est.estimate) - oracle) < 1e-9
        assert abs(float(est.estimate) - 19.8) < 0.01

    def test_estimate_l2_convention(self):
        # lower term has a zero denominator at l=2 and is dropped
        assert abs(float(nt.prime_count_estimate(2).estimate) - 3 / math.log(3)) < 1e-12

    def test_estimate_128_bits_bracket(self):
        est = nt.prime_count_estimate(128)
        assert 2**120 < est.estimate < 2**122
        # sanity anchor: l - log2(ln 2^l) ~ 121.5 for the below-count
        assert abs(est.log2 - 120.517) < 0.01

    def test_estimate_4096_bits_precision(self):
        est = nt.prime_count_estimate(4096)
        # cross-check against a 50-digit mpmath recomputation
        import mpmath

        with mpmath.workprec(256):
            x1 = mpmath.mpf(2) ** 4096 - 1
            x2 = mpmath.mpf(2) ** 4095 - 1
            oracle = x1 / mpmath.log(x1) - x2 / mpmath.log(x2)
            rel = abs(mpmath.mpf(est.estimate) - oracle) / oracle
            assert rel < 1e-9

    @pytest.mark.parametrize("l", range(6, 25))
    def test_estimate_within_factor_of_sieve(self, l):
        exact = nt.prime_count_exact_bits(l)
        est = float(nt.prime_count_estimate(l).estimate)
        assert est / exact < 1.3 and exact / est < 1.3
