"""Arbitrary-precision number-theoretic primitives.

Python ints serve as the big-integer type everywhere in this package, so
all arithmetic here is exact.  The only non-exact operations are the
prime-count estimators, which run under mpmath with enough working
precision that their relative error stays far below 1e-9 even at 4096-bit
arguments.

All functions are pure; ``gen_prime`` additionally reads the entropy
source passed by the caller (any ``random.Random``-compatible object,
e.g. ``random.SystemRandom()``).
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from functools import lru_cache

import mpmath

from .errors import ModuliNotCoprime, NotInvertible, OutOfRange, RandomnessFailure

Rng = random.Random

# Deterministic Miller-Rabin witness set, valid for n < 3.3e24 (> 2^64).
_DETERMINISTIC_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_DETERMINISTIC_LIMIT = 1 << 64

SIEVE_BIT_LIMIT = 24


def gcd(a: int, b: int) -> int:
    """Nonnegative greatest common divisor; gcd(0, 0) == 0."""
    return math.gcd(a, b)


def mod_inverse(a: int, m: int) -> int:
    """Return x in [0, m) with a*x == 1 (mod m).

    Raises NotInvertible when gcd(a, m) != 1.
    """
    if m < 2:
        raise ValueError("modulus must be >= 2")
    try:
        return pow(a, -1, m)
    except ValueError:
        raise NotInvertible(f"{a} is not invertible modulo {m}") from None


def _is_mr_witness(n: int, a: int, d: int, r: int) -> bool:
    # True if a proves n composite.
    x = pow(a, d, n)
    if x == 1 or x == n - 1:
        return False
    for _ in range(r - 1):
        x = (x * x) % n
        if x == n - 1:
            return False
    return True


def is_probable_prime(n: int, rounds: int = 40) -> bool:
    """Miller-Rabin primality test.

    Deterministic (fixed witness set) for n < 2^64; above that, ``rounds``
    pseudo-random witnesses derived deterministically from n, giving error
    probability at most 4^-rounds.
    """
    if rounds < 1:
        raise ValueError("rounds must be >= 1")
    if n < 2:
        return False
    for p in _DETERMINISTIC_WITNESSES:
        if n % p == 0:
            return n == p
    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    if n < _DETERMINISTIC_LIMIT:
        witnesses = _DETERMINISTIC_WITNESSES
    else:
        wrng = random.Random(n)
        witnesses = tuple(wrng.randrange(2, n - 1) for _ in range(rounds))
    return not any(_is_mr_witness(n, a, d, r) for a in witnesses)


def gen_prime(bit_length: int, rng: Rng) -> int:
    """Draw a probable prime with exactly ``bit_length`` bits (top bit set)."""
    if bit_length < 2:
        raise ValueError("bit_length must be >= 2")
    top = 1 << (bit_length - 1)
    low = 1 if bit_length > 2 else 0  # at 2 bits both 2 and 3 are prime
    max_tries = 30_000 + 300 * bit_length
    for _ in range(max_tries):
        try:
            candidate = top | rng.getrandbits(bit_length - 1) | low
        except Exception as exc:  # noqa: BLE001 - treat any rng fault as entropy failure
            raise RandomnessFailure(f"entropy source failed: {exc}") from exc
        if is_probable_prime(candidate, 40):
            return candidate
    raise RandomnessFailure(
        f"no prime of {bit_length} bits found in {max_tries} draws; entropy source suspect"
    )


def crt_reconstruct(residues: list[int], moduli: list[int]) -> int:
    """Unique x in [0, prod(moduli)) with x == residues[i] (mod moduli[i])."""
    if len(residues) != len(moduli) or not moduli:
        raise ValueError("residues and moduli must have equal nonzero length")
    for m in moduli:
        if m < 2:
            raise ValueError("moduli must be >= 2")
    for i in range(len(moduli)):
        for j in range(i + 1, len(moduli)):
            if math.gcd(moduli[i], moduli[j]) != 1:
                raise ModuliNotCoprime(
                    f"moduli {moduli[i]} and {moduli[j]} share a factor"
                )
    total = 0
    product = math.prod(moduli)
    for r, m in zip(residues, moduli):
        cofactor = product // m
        total += (r % m) * cofactor * mod_inverse(cofactor, m)
    return total % product


@lru_cache(maxsize=None)
def _prime_count_range(l: int) -> int:
    limit = 1 << l
    flags = bytearray([1]) * limit
    flags[0:2] = b"\x00\x00"
    for i in range(2, math.isqrt(limit - 1) + 1):
        if flags[i]:
            flags[i * i :: i] = b"\x00" * len(range(i * i, limit, i))
    return sum(flags[1 << (l - 1) : limit]) if l > 1 else sum(flags[1:2])


def prime_count_exact_bits(l: int) -> int:
    """Exact count of primes in [2^(l-1), 2^l), by sieve.  l <= 24."""
    if l < 1:
        raise ValueError("l must be >= 1")
    if l > SIEVE_BIT_LIMIT:
        raise OutOfRange(f"exact sieve supported only up to l = {SIEVE_BIT_LIMIT}")
    return _prime_count_range(l)


def prime_count_below(l: int) -> mpmath.mpf:
    """Approximate count of primes below 2^l: (2^l - 1) / ln(2^l - 1)."""
    if l < 1:
        raise ValueError("l must be >= 1")
    with mpmath.workprec(max(96, l + 16)):
        x = mpmath.mpf(2) ** l - 1
        return x / mpmath.log(x)


@dataclass(frozen=True)
class PrimeCountEstimate:
    """Approximate number of primes with exactly ``bit_length`` bits."""

    bit_length: int
    estimate: mpmath.mpf

    @property
    def log2(self) -> float:
        return float(mpmath.log(self.estimate, 2))


def prime_count_estimate(l: int) -> PrimeCountEstimate:
    """Difference of the below-2^l counts at l and l-1 bits.

    At l == 2 the lower term has a zero denominator (ln 1); by convention
    that term is treated as 0, so the estimate degenerates to 3/ln 3.
    """
    if l < 2:
        raise ValueError("l must be >= 2")
    with mpmath.workprec(max(96, l + 16)):
        upper = prime_count_below(l)
        lower = prime_count_below(l - 1) if l > 2 else mpmath.mpf(0)
        return PrimeCountEstimate(l, upper - lower)
