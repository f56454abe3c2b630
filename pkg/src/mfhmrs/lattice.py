"""Exact lattice-basis reduction and the approximate-common-divisor attack.

The attacks view a collection of first-position ciphertext shares
c_i = g_i*u + r_i as an approximate-common-divisor instance: the ratios
c_i/c_0 approximate g_i/g_0, so a (t+1)-dimensional lattice spanned by

    [ 2^e  c_1  c_2 ... c_t ]
    [      -c_0             ]
    [           -c_0        ]
    [                ...    ]
    [                 -c_0  ]

contains the short vector (g_0*2^e, g_0*r_1 - g_1*r_0, ...).  When that
planted vector is shorter than what reduction can reach, LLL recovers
g_0 from the first reduced row and u follows as (c_0 - c_0 mod g_0)/g_0.
The scale 2^e is the expected noise magnitude: secure parameter sets push
the planted vector far above the reduction bound, which is exactly what
``feasibility`` quantifies.

LLL runs in all-integer arithmetic (the de Weger variant): the
Gram-Schmidt data is carried as integers d_k = det Gram(b_1..b_k) and
lambda_{i,j} = mu_{i,j} * d_j, so the reduction is exact without the
per-operation gcd cost of rationals.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import DegenerateBasis
from .numtheory import is_probable_prime

DEFAULT_DELTA = Fraction(99, 100)


@dataclass(frozen=True)
class LatticeBasis:
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if not self.rows or any(len(r) != len(self.rows) for r in self.rows):
            raise ValueError("basis must be a nonempty square matrix")

    @property
    def dim(self) -> int:
        return len(self.rows)

    def determinant(self) -> int:
        return _det_bareiss([list(r) for r in self.rows])


def _det_bareiss(m: list[list[int]]) -> int:
    n = len(m)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            pivot = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if pivot is None:
                return 0
            m[k], m[pivot] = m[pivot], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[-1][-1]


def _dot(u, v) -> int:
    return sum(a * b for a, b in zip(u, v))


def lll_reduce(basis: LatticeBasis, delta: Fraction = DEFAULT_DELTA) -> LatticeBasis:
    """Reduce to a size-reduced basis satisfying the Lovasz condition.

    Output spans the same lattice (unimodular row transform).  Raises
    DegenerateBasis when the rows are linearly dependent.
    """
    delta = Fraction(delta)
    if not Fraction(1, 4) < delta < 1:
        raise ValueError("delta must lie in (1/4, 1)")
    nd, dd = delta.numerator, delta.denominator

    b = [list(r) for r in basis.rows]
    n = len(b)
    # integral Gram-Schmidt bookkeeping: d[k] = det Gram(b_1..b_k), d[0] = 1,
    # lam[i][j] = mu_{i,j} * d[j+1-1] scaled to stay integer
    d = [1] * (n + 1)
    lam = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1):
            u = _dot(b[i], b[j])
            for k in range(j):
                u = (d[k + 1] * u - lam[i][k] * lam[j][k]) // d[k]
            if j < i:
                lam[i][j] = u
            else:
                if u == 0:
                    raise DegenerateBasis("rows are linearly dependent")
                d[i + 1] = u

    def reduce_row(k: int, l: int) -> None:
        if 2 * abs(lam[k][l]) > d[l + 1]:
            q = (2 * lam[k][l] + d[l + 1]) // (2 * d[l + 1])
            b[k] = [x - q * y for x, y in zip(b[k], b[l])]
            lam[k][l] -= q * d[l + 1]
            for i in range(l):
                lam[k][i] -= q * lam[l][i]

    k = 1
    while k < n:
        reduce_row(k, k - 1)
        lam_k = lam[k][k - 1]
        if dd * (d[k + 1] * d[k - 1] + lam_k * lam_k) < nd * d[k] * d[k]:
            b[k], b[k - 1] = b[k - 1], b[k]
            for j in range(k - 1):
                lam[k][j], lam[k - 1][j] = lam[k - 1][j], lam[k][j]
            new_dk = (d[k - 1] * d[k + 1] + lam_k * lam_k) // d[k]
            for i in range(k + 1, n):
                t = lam[i][k]
                lam[i][k] = (d[k + 1] * lam[i][k - 1] - lam_k * t) // d[k]
                lam[i][k - 1] = (new_dk * t + lam_k * lam[i][k]) // d[k + 1]
            d[k] = new_dk
            k = max(k - 1, 1)
        else:
            for l in range(k - 2, -1, -1):
                reduce_row(k, l)
            k += 1
    return LatticeBasis(tuple(tuple(row) for row in b))


@dataclass
class AcdInstance:
    """Samples for the common-divisor attack.

    samples: first-position shares c_0..c_t of t+1 ciphertexts.
    known_offsets: the matching plaintexts when the attacker has them
        (known-plaintext mode); they are subtracted before building the
        basis.
    scale_exponent: explicit bit exponent for the top-left basis entry;
        when None the builders derive it from the parameter guess.
    """

    samples: tuple[int, ...]
    known_offsets: tuple[int, ...] | None = None
    scale_exponent: int | None = None

    def __post_init__(self):
        self.samples = tuple(self.samples)
        if len(self.samples) < 2:
            raise ValueError("need at least 2 samples")
        if self.known_offsets is not None:
            self.known_offsets = tuple(self.known_offsets)
            if len(self.known_offsets) != len(self.samples):
                raise ValueError("one offset per sample")

    @property
    def kpa_mode(self) -> bool:
        return self.known_offsets is not None

    def effective_samples(self) -> tuple[int, ...]:
        if self.known_offsets is None:
            return self.samples
        return tuple(c - m for c, m in zip(self.samples, self.known_offsets))


def _guess_lk_lp(params_guess) -> tuple[int, int]:
    if isinstance(params_guess, tuple):
        return params_guess
    # SchemeParams-like: k = floor((m + g*u)/p) has about lg+lu-lp bits
    lk = max(0, params_guess.lg + params_guess.lu - params_guess.lp)
    return lk, params_guess.lp


def _guess_lu_lg(params_guess) -> tuple[int, int]:
    if isinstance(params_guess, tuple):
        return params_guess
    return params_guess.lu, params_guess.lg


def _build(samples: tuple[int, ...], scale_exponent: int) -> LatticeBasis:
    t = len(samples) - 1
    rows = [[1 << scale_exponent] + list(samples[1:])]
    for i in range(1, t + 1):
        row = [0] * (t + 1)
        row[i] = -samples[0]
        rows.append(row)
    return LatticeBasis(tuple(tuple(r) for r in rows))


def build_basis_u(inst: AcdInstance, params_guess=None) -> LatticeBasis:
    """Basis targeting g_0 (and through it u); scale defaults to 2^(l_k+l_p)."""
    if inst.scale_exponent is not None:
        exp = inst.scale_exponent
    else:
        lk, lp = _guess_lk_lp(params_guess)
        exp = lk + lp
    return _build(inst.effective_samples(), exp)


def build_basis_p(inst: AcdInstance, params_guess=None) -> LatticeBasis:
    """Basis targeting k_0 (and through it p_1); scale defaults to 2^(l_u+l_g)."""
    if inst.scale_exponent is not None:
        exp = inst.scale_exponent
    else:
        lu, lg = _guess_lu_lg(params_guess)
        exp = lu + lg
    return _build(inst.effective_samples(), exp)


@dataclass(frozen=True)
class FeasibilityReport:
    """Compares the planted vector's norm against the LLL short-vector reach."""

    target_norm_log2: float
    lll_bound_log2: float
    attack_feasible: bool


def feasibility(params, t: int) -> FeasibilityReport:
    """Norm budget of the u-recovery lattice at dimension t+1.

    target: |v| = sqrt(t+1) * 2^(l_g+l_k+l_p) with l_k = l_g+l_u-l_p.
    bound:  sqrt((t+1)/(2*pi*e)) * det^(1/(t+1)) with det ~ 2^((t+1)*l_p+l_k).
    The attack is feasible only when the target is below the bound.
    """
    if t < 1:
        raise ValueError("t must be >= 1")
    lk = params.lg + params.lu - params.lp
    target = 0.5 * math.log2(t + 1) + params.lg + lk + params.lp
    bound = 0.5 * math.log2((t + 1) / (2 * math.pi * math.e)) + params.lp + lk / (t + 1)
    return FeasibilityReport(target, bound, target < bound)


def _extract_candidates(lead: int, scale_exponent: int) -> list[int]:
    lead = abs(lead)
    scale = 1 << scale_exponent
    q = (2 * lead + scale) // (2 * scale)  # nearest integer quotient
    return [c for c in (q, q - 1, q + 1) if c >= 1]


def _default_residue_bound(params_guess) -> int:
    if params_guess is not None and hasattr(params_guess, "lM"):
        return 1 << params_guess.lM
    return 1  # exact-divisibility mode for hand-built instances


def _recover(
    inst: AcdInstance,
    basis: LatticeBasis,
    scale_exponent: int,
    delta: Fraction,
    residue_bound: int,
) -> int | None:
    samples = inst.effective_samples()
    try:
        reduced = lll_reduce(basis, delta)
    except DegenerateBasis:
        return None
    c0 = samples[0]
    for divisor in _extract_candidates(reduced.rows[0][0], scale_exponent):
        r0 = c0 % divisor
        candidate = (c0 - r0) // divisor
        if candidate <= max(2, residue_bound):
            continue
        if not is_probable_prime(candidate, 40):
            continue
        consistent = sum(1 for c in samples[1:] if c % candidate < residue_bound)
        if consistent >= 2:
            return candidate
    return None


def recover_u(
    inst: AcdInstance,
    params_guess=None,
    delta: Fraction = DEFAULT_DELTA,
    residue_bound: int | None = None,
) -> int | None:
    """Attempt to recover u from the samples; None signals attack failure.

    A candidate is accepted only if it is prime, exceeds the residue
    bound (the message-space size when a parameter guess is supplied),
    and divides at least two further samples up to a residue below that
    bound.
    """
    samples = inst.effective_samples()
    if len(set(samples)) < 2 or samples[0] <= 0:
        return None
    if residue_bound is None:
        residue_bound = _default_residue_bound(params_guess)
    basis = build_basis_u(inst, params_guess)
    exp = inst.scale_exponent
    if exp is None:
        lk, lp = _guess_lk_lp(params_guess)
        exp = lk + lp
    return _recover(inst, basis, exp, delta, residue_bound)


def recover_p(
    inst: AcdInstance,
    params_guess=None,
    delta: Fraction = DEFAULT_DELTA,
    residue_bound: int | None = None,
) -> int | None:
    """Symmetric driver aiming at a share prime via the k_0 coordinate."""
    samples = inst.effective_samples()
    if len(set(samples)) < 2 or samples[0] <= 0:
        return None
    if residue_bound is None:
        residue_bound = _default_residue_bound(params_guess)
    basis = build_basis_p(inst, params_guess)
    exp = inst.scale_exponent
    if exp is None:
        lu, lg = _guess_lu_lg(params_guess)
        exp = lu + lg
    return _recover(inst, basis, exp, delta, residue_bound)
