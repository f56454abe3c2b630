"""The original two-share FHMRS construction, kept as the attack target.

FHMRS splits m + g*u across exactly two primes p, q of l_n/2 bits each,
with g drawn uniformly in (0, u).  Because l_n must absorb N consecutive
multiplications, each share prime ends up wider than m + g*u itself, so
"reduction" modulo p and q returns the value unchanged: both shares equal
m + g*u.  Two known plaintext/ciphertext pairs then expose u as
gcd(c1 - m1, c2 - m2).  The package keeps this preset deliberately
vulnerable so the attack and its mitigation can be demonstrated
side by side.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InvalidParams
from .numtheory import Rng, gen_prime
from .scheme import Ciphertext, SecretKey


@dataclass(frozen=True)
class LegacyParams:
    """FHMRS sizes: message/budget knobs plus the bit lengths of u and n = p*q.

    g is bounded by u, so its worst-case bit length equals lu.
    """

    lm: int
    N: int
    A: int
    lu: int
    ln: int

    @property
    def lM(self) -> int:
        return (self.N + 1) * self.lm + self.A

    @property
    def lg(self) -> int:
        return self.lu

    @property
    def lp(self) -> int:
        return -(-self.ln // 2)  # each of p, q gets half of n, rounded up

    @classmethod
    def minimal(cls, lm: int, N: int, A: int, lu: int) -> "LegacyParams":
        """Smallest l_n supporting the stated budgets: (N+1)*(2*lu+1) + A + 1."""
        return cls(lm, N, A, lu, (N + 1) * (2 * lu + 1) + A + 1)


def validate_legacy(params: LegacyParams) -> list[str]:
    """Return the list of violated constraints (empty when valid)."""
    violations = []
    if params.N < 1:
        violations.append("N >= 1 (the unreduced-share regime needs a multiplication budget)")
    budget_bits = (params.N + 1) * (params.lu + params.lg + 1) + params.A
    if not params.ln > budget_bits:
        violations.append(f"l_n > (N+1)*(l_u+l_g+1) + A: {params.ln} vs {budget_bits}")
    if not params.lu > params.lM:
        violations.append(f"l_u > l_M: {params.lu} vs {params.lM}")
    if not params.lu < params.lp:
        violations.append(f"l_u < l_p (u << n ordering): {params.lu} vs {params.lp}")
    if not params.lp > params.lu + params.lg + 1:
        violations.append(
            f"l_p > l_u+l_g+1 (unreduced-share condition): {params.lp} vs {params.lu + params.lg + 1}"
        )
    return violations


def legacy_keygen(params: LegacyParams, rng: Rng) -> SecretKey:
    """Generate the two share primes and u; encryption then draws g in (0, u)."""
    violations = validate_legacy(params)
    if violations:
        raise InvalidParams(violations)
    p = gen_prime(params.lp, rng)
    while True:
        q = gen_prime(params.lp, rng)
        if q != p:
            break
    while True:
        u = gen_prime(params.lu, rng)
        if u > (1 << params.lM) and u not in (p, q):
            break
    return SecretKey.from_primes((p, q), u, params, legacy=True)


def legacy_key_from_primes(p: int, q: int, u: int, lm: int = 4, N: int = 1, A: int = 0) -> SecretKey:
    """Hand-built legacy key for fixtures; sizes are taken from the values as given."""
    n = p * q
    params = LegacyParams(lm, N, A, u.bit_length(), n.bit_length())
    return SecretKey.from_primes((p, q), u, params, legacy=True)


def legacy_share_exposes_value(key: SecretKey, c: Ciphertext) -> bool:
    """True iff the shares are the unreduced m + g*u.

    Equal shares across the two distinct moduli pin the underlying value
    (which is below n by construction) to that common residue, so share
    equality is equivalent to no reduction having occurred.
    """
    if not key.legacy:
        raise ValueError("expects a legacy two-share key")
    return len(set(c.shares)) == 1
