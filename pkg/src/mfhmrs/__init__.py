"""CRT-share symmetric homomorphic encryption (FHMRS/mFHMRS) with a
cryptanalysis toolkit and parameter advisor."""

from .attacks import (
    AttackReport,
    KnownPair,
    bruteforce_keyspace,
    close_g_gcd_leak,
    kpa_gcd,
    kpa_gcd_on_mfhmrs,
    linear_search_p_pair,
    linear_search_u_p,
    pairs_from_key,
)
from .fhmrs import (
    LegacyParams,
    legacy_key_from_primes,
    legacy_keygen,
    legacy_share_exposes_value,
)
from .lattice import (
    AcdInstance,
    FeasibilityReport,
    LatticeBasis,
    build_basis_p,
    build_basis_u,
    feasibility,
    lll_reduce,
    recover_p,
    recover_u,
)
from .params import ParamReport, SchemeParams, ciphertext_bits, suggest, validate
from .scheme import (
    Ciphertext,
    KeyShape,
    SecretKey,
    decode_centered,
    decrypt,
    encrypt,
    hom_add,
    hom_const_add,
    hom_const_mul,
    hom_mul,
    hom_neg,
    hom_sub,
    keygen,
)

__version__ = "0.1.0"
