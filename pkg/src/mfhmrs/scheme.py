"""CRT-share symmetric homomorphic encryption.

A plaintext m encrypts as the tuple of residues of m + g*u modulo the
secret primes p_1..p_{N+S}, where u is a secret prime larger than the
message space and g is fresh per-encryption randomness.  Homomorphic
addition and multiplication act share-wise over the integers with no
modular reduction; decryption reduces each share, reconstructs the
underlying integer by CRT, and reduces modulo u.

Correctness holds exactly when the underlying integer stays inside
[0, n) with n the product of the share primes.  The upper end is
enforced by the budget ledger carried in every ciphertext: at most N
multiplications and A additions may be composed, matching the size
analysis behind the parameter constraints.  Subtraction (share-wise
negation plus addition) can push the underlying value below zero, in
which case decryption wraps modulo n; callers who subtract must keep
the plaintext result nonnegative or decode small negatives from a
value that stayed in range.

Plaintexts are plain ints.  Keys and ciphertexts are immutable values;
every operation returns a new ciphertext.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

from .errors import (
    BudgetExceeded,
    ConstantTooLarge,
    InvalidParams,
    MessageTooLarge,
    ShareCountMismatch,
)
from .numtheory import Rng, gen_prime, mod_inverse
from .params import SchemeParams, validate

Plaintext = int


@dataclass(frozen=True)
class KeyShape:
    """The non-secret facts homomorphic operations need: share count and budgets."""

    num_shares: int
    mult_budget: int
    add_budget: int
    lm: int
    lM: int


@dataclass(frozen=True)
class SecretKey:
    params: object  # SchemeParams or LegacyParams
    share_primes: tuple[int, ...]
    u: int
    n: int
    cofactors: tuple[tuple[int, int], ...]  # (n/p_i, (n/p_i)^-1 mod p_i)
    legacy: bool = False

    @classmethod
    def from_primes(cls, primes, u, params, legacy=False) -> "SecretKey":
        primes = tuple(primes)
        if len(set(primes)) != len(primes):
            raise ValueError("share primes must be pairwise distinct")
        if u in primes:
            raise ValueError("u must differ from every share prime")
        n = math.prod(primes)
        cofactors = tuple((n // p, mod_inverse(n // p, p)) for p in primes)
        return cls(params, primes, u, n, cofactors, legacy)

    @property
    def num_shares(self) -> int:
        return len(self.share_primes)

    @property
    def shape(self) -> KeyShape:
        p = self.params
        return KeyShape(self.num_shares, p.N, p.A, p.lm, p.lM)


@dataclass(frozen=True)
class Ciphertext:
    """Share tuple plus the homomorphic-operation ledger.

    mults_used/adds_used never decrease; operations that would push them
    past the key's budgets raise instead of producing a ciphertext that
    might decrypt incorrectly.  const_ops_bits tracks bit growth
    attributable to constant operands (informational, not serialized).
    """

    shares: tuple[int, ...]
    mults_used: int = 0
    adds_used: int = 0
    const_ops_bits: int = 0


def keygen(params: SchemeParams, rng: Rng) -> SecretKey:
    """Draw N+S distinct share primes and u; params must pass validation."""
    report = validate(params)
    if not report.passed:
        raise InvalidParams(
            [f"{c.expr}: {c.lhs} vs {c.rhs}" for c in report.failures()],
            report,
        )
    primes: list[int] = []
    while len(primes) < params.num_shares:
        p = gen_prime(params.lp, rng)
        if p not in primes:
            primes.append(p)
    lower_u = 1 << params.lM
    while True:
        u = gen_prime(params.lu, rng)
        if u > lower_u and u not in primes:
            break
    return SecretKey.from_primes(primes, u, params)


def encrypt(key: SecretKey, m: Plaintext, rng: Rng, g: int | None = None) -> Ciphertext:
    """Encrypt m < 2^l_m into one share per secret prime.

    g defaults to fresh randomness: exactly l_g bits with the top bit set,
    or uniform in (0, u) for legacy keys.  Passing g explicitly is a test
    hook only and is not reachable from the CLI.
    """
    lm = key.params.lm
    if not 0 <= m < (1 << lm):
        raise MessageTooLarge(f"message must lie in [0, 2^{lm})")
    if g is None:
        if key.legacy:
            g = rng.randrange(1, key.u)
        else:
            lg = key.params.lg
            g = (1 << (lg - 1)) | rng.getrandbits(lg - 1)
    value = m + g * key.u
    return Ciphertext(tuple(value % p for p in key.share_primes))


def decrypt(key: SecretKey, c: Ciphertext) -> Plaintext:
    """Reduce shares, CRT-reconstruct via the precomputed cofactors, reduce mod u."""
    if len(c.shares) != key.num_shares:
        raise ShareCountMismatch(
            f"ciphertext has {len(c.shares)} shares, key expects {key.num_shares}"
        )
    total = 0
    for share, p, (cofactor, inv) in zip(c.shares, key.share_primes, key.cofactors):
        total += (share % p) * cofactor * inv
    return (total % key.n) % key.u


def _check_shapes(shape: KeyShape, c1: Ciphertext, c2: Ciphertext) -> None:
    if len(c1.shares) != len(c2.shares) or len(c1.shares) != shape.num_shares:
        raise ShareCountMismatch(
            f"share counts {len(c1.shares)}/{len(c2.shares)} vs key {shape.num_shares}"
        )


def hom_add(shape: KeyShape, c1: Ciphertext, c2: Ciphertext) -> Ciphertext:
    _check_shapes(shape, c1, c2)
    adds = c1.adds_used + c2.adds_used + 1
    if adds > shape.add_budget:
        raise BudgetExceeded("additions")
    if max(c1.mults_used, c2.mults_used) > shape.mult_budget:
        raise BudgetExceeded("multiplications")
    return Ciphertext(
        tuple(a + b for a, b in zip(c1.shares, c2.shares)),
        max(c1.mults_used, c2.mults_used),
        adds,
        c1.const_ops_bits + c2.const_ops_bits,
    )


def hom_mul(shape: KeyShape, c1: Ciphertext, c2: Ciphertext) -> Ciphertext:
    _check_shapes(shape, c1, c2)
    mults = c1.mults_used + c2.mults_used + 1
    if mults > shape.mult_budget:
        raise BudgetExceeded("multiplications")
    adds = c1.adds_used + c2.adds_used
    if adds > shape.add_budget:
        raise BudgetExceeded("additions")
    return Ciphertext(
        tuple(a * b for a, b in zip(c1.shares, c2.shares)),
        mults,
        adds,
        c1.const_ops_bits + c2.const_ops_bits,
    )


def hom_const_add(shape: KeyShape, c: Ciphertext, a: int) -> Ciphertext:
    if abs(a) >= (1 << shape.lM):
        raise ConstantTooLarge(f"|constant| must be < 2^{shape.lM}")
    if c.adds_used + 1 > shape.add_budget:
        raise BudgetExceeded("additions")
    return Ciphertext(
        tuple(s + a for s in c.shares),
        c.mults_used,
        c.adds_used + 1,
        c.const_ops_bits + 1,
    )


def hom_const_mul(shape: KeyShape, c: Ciphertext, a: int) -> Ciphertext:
    # the constant counts as one multiplicand toward the depth budget,
    # so it must fit in a fresh-message slot
    if abs(a) >= (1 << shape.lm):
        raise ConstantTooLarge(f"|constant| must be < 2^{shape.lm}")
    if c.mults_used + 1 > shape.mult_budget:
        raise BudgetExceeded("multiplications")
    return Ciphertext(
        tuple(s * a for s in c.shares),
        c.mults_used + 1,
        c.adds_used,
        c.const_ops_bits + abs(a).bit_length(),
    )


def hom_neg(c: Ciphertext) -> Ciphertext:
    """Share-wise negation; free of budget cost (subtraction = add the negation)."""
    return replace(c, shares=tuple(-s for s in c.shares))


def hom_sub(shape: KeyShape, c1: Ciphertext, c2: Ciphertext) -> Ciphertext:
    return hom_add(shape, c1, hom_neg(c2))


def decode_centered(key: SecretKey, m: Plaintext) -> int:
    """Interpret a decrypted residue in the symmetric range around 0."""
    return m if 2 * m <= key.u else m - key.u
