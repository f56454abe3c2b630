"""Size parameters, constraint validation, and the parameter advisor.

The scheme splits each ciphertext into N+S residue shares modulo secret
primes of l_p bits.  Correct decryption after up to N multiplications and
A additions, plus resistance to the known attacks, pins l_p into a
rational interval determined by (N, A, S, l_u, l_g).  All inequalities
are evaluated in exact rational arithmetic so boundary cases like a
lower bound of 3405/19 are decided without float error.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import Infeasible


@dataclass(frozen=True)
class SchemeParams:
    """Public size parameters.

    lam: security parameter in bits (lambda)
    lm:  bit length of fresh input messages
    N:   multiplication budget (consecutive homomorphic multiplications)
    A:   addition budget
    S:   extra share count; ciphertexts carry N+S shares
    lu:  bit length of the secret prime u
    lg:  bit length of the per-encryption random g
    lp:  bit length of each secret share prime
    """

    lam: int
    lm: int
    N: int
    A: int
    S: int
    lu: int
    lg: int
    lp: int

    @property
    def lM(self) -> int:
        """Message-space bit length after a full circuit: (N+1)*lm + A."""
        return (self.N + 1) * self.lm + self.A

    @property
    def num_shares(self) -> int:
        return self.N + self.S


@dataclass(frozen=True)
class ParamCheck:
    name: str
    expr: str
    lhs: Fraction
    rhs: Fraction
    passed: bool


@dataclass(frozen=True)
class ParamReport:
    candidate: SchemeParams
    checks: tuple[ParamCheck, ...]
    feasible_lp_range: tuple[Fraction, Fraction]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def range_nonempty(self) -> bool:
        lo, hi = self.feasible_lp_range
        return lo <= hi

    def failures(self) -> list[ParamCheck]:
        return [c for c in self.checks if not c.passed]


def lp_lower_bound(N: int, A: int, S: int, lu: int, lg: int) -> Fraction:
    """Exact lower bound on l_p: (N+1)/(N+S)*(l_u+l_g+1) + A/(N+S)."""
    shares = N + S
    return Fraction(N + 1, shares) * (lu + lg + 1) + Fraction(A, shares)


def validate(params: SchemeParams) -> ParamReport:
    """Evaluate every size constraint; failures are reported, never raised."""
    p = params
    lower = lp_lower_bound(p.N, p.A, p.S, p.lu, p.lg)
    upper = Fraction(p.lu + p.lg + 1)
    checks = (
        ParamCheck(
            "decrypt_correctness",
            "(N+1)/(N+S)*(l_u+l_g+1) + A/(N+S) <= l_p",
            lower,
            Fraction(p.lp),
            lower <= p.lp,
        ),
        ParamCheck(
            "lattice_bound",
            "l_p <= l_u + l_g + 1",
            Fraction(p.lp),
            upper,
            p.lp <= upper,
        ),
        ParamCheck(
            "guess_bound",
            "lambda <= l_p",
            Fraction(p.lam),
            Fraction(p.lp),
            p.lam <= p.lp,
        ),
        ParamCheck(
            "linear_eq_u",
            "l_p < l_u",
            Fraction(p.lp),
            Fraction(p.lu),
            p.lp < p.lu,
        ),
        ParamCheck(
            "random_size",
            "l_g >= lambda/4",
            Fraction(p.lg),
            Fraction(p.lam, 4),
            p.lg >= Fraction(p.lam, 4),
        ),
        ParamCheck(
            "message_space",
            "l_u > l_M",
            Fraction(p.lu),
            Fraction(p.lM),
            p.lu > p.lM,
        ),
    )
    return ParamReport(params, checks, (lower, upper))


# Advisor search caps: S is bounded, and l_p is scanned over a span wide
# enough to contain the closed-form minimum for every S >= 2.
S_SEARCH_CAP = 64


def suggest(lam: int, lm: int, N: int, A: int) -> SchemeParams:
    """Pick a full parameter set from the four caller-facing knobs.

    Minimizes S first, then l_p, then l_u.  l_g is fixed at
    ceil(lambda/4) + 10 bits of slack.  l_u starts at l_M + 2 and is
    otherwise kept at the minimum the other constraints allow.

    The returned set leaves one spare bit per share prime below the
    correctness bound (lower <= l_p - 1), which makes decryption after a
    full-budget circuit correct for every possible draw of the secret
    primes, not just typical ones.
    """
    if lam < 8 or lm < 1 or N < 0 or A < 0:
        raise ValueError("require lam >= 8, lm >= 1, N >= 0, A >= 0")
    lg = -(-lam // 4) + 10
    lM = (N + 1) * lm + A
    lp_span = (N + 1) * (lg + 2) + A + 16
    for S in range(1, S_SEARCH_CAP + 1):
        for lp in range(lam, lam + lp_span + 1):
            lu = max(lM + 2, lp + 1)
            if lp_lower_bound(N, A, S, lu, lg) <= lp - 1:
                candidate = SchemeParams(lam, lm, N, A, S, lu, lg, lp)
                report = validate(candidate)
                assert report.passed, "advisor produced an invalid set"
                return candidate
    raise Infeasible(
        f"no S <= {S_SEARCH_CAP} admits l_p within {lp_span} bits of lambda; "
        "binding constraint: (N+1)/(N+S)*(l_u+l_g+1) + A/(N+S) <= l_p - 1"
    )


def ciphertext_bits(params: SchemeParams) -> int:
    """Serialized ciphertext size bound: (N+S) shares of l_p bits each."""
    return params.num_shares * params.lp
