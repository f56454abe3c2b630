"""Canonical text formats for key and ciphertext files.

Both formats are line-oriented: a versioned header, key=value parameter
lines in a fixed order, then the big integers as lowercase big-endian hex
with no leading zeros (ciphertext shares carry an explicit sign).  Files
emitted by the dump functions are canonical: parsing and re-serializing
reproduces them byte for byte.  The in-memory constant-growth ledger
(const_ops_bits) is not persisted.
"""

from __future__ import annotations

import math

from .errors import FileFormatError
from .fhmrs import LegacyParams
from .params import SchemeParams
from .scheme import Ciphertext, SecretKey

KEY_HEADER = "MFHMRS-KEY v1"
LEGACY_KEY_HEADER = "FHMRS-KEY v1"
CT_HEADER = "MFHMRS-CT v1"


def _hex(x: int) -> str:
    return format(x, "x")


def _signed_hex(x: int) -> str:
    return ("-" if x < 0 else "+") + format(abs(x), "x")


def dump_key(key: SecretKey) -> str:
    lines = []
    if key.legacy:
        p = key.params
        lines.append(LEGACY_KEY_HEADER)
        lines += [f"lm={p.lm}", f"N={p.N}", f"A={p.A}", f"ln={p.ln}"]
    else:
        p = key.params
        lines.append(KEY_HEADER)
        lines += [
            f"lambda={p.lam}",
            f"lm={p.lm}",
            f"N={p.N}",
            f"A={p.A}",
            f"S={p.S}",
            f"lg={p.lg}",
        ]
    lines.append(f"u={_hex(key.u)}")
    lines.append(f"n={_hex(key.n)}")
    for i, prime in enumerate(key.share_primes, start=1):
        lines.append(f"p[{i}]={_hex(prime)}")
    return "\n".join(lines) + "\n"


def _parse_fields(lines: list[str], context: str) -> dict[str, str]:
    fields: dict[str, str] = {}
    for line in lines:
        if "=" not in line:
            raise FileFormatError(f"{context}: malformed line {line!r}")
        name, _, value = line.partition("=")
        if name in fields:
            raise FileFormatError(f"{context}: duplicate field {name!r}")
        fields[name] = value
    return fields


def _int_field(fields: dict[str, str], name: str, base: int = 10) -> int:
    if name not in fields:
        raise FileFormatError(f"missing field {name!r}")
    try:
        return int(fields.pop(name), base)
    except ValueError:
        raise FileFormatError(f"field {name!r} is not a valid integer") from None


def load_key(text: str) -> SecretKey:
    lines = [line for line in text.splitlines() if line.strip()]
    if not lines:
        raise FileFormatError("empty key file")
    header, body = lines[0], lines[1:]
    if header not in (KEY_HEADER, LEGACY_KEY_HEADER):
        raise FileFormatError(f"unrecognized key header {header!r}")
    legacy = header == LEGACY_KEY_HEADER
    fields = _parse_fields(body, "key file")

    u = _int_field(fields, "u", 16)
    n = _int_field(fields, "n", 16)
    primes = []
    index = 1
    while f"p[{index}]" in fields:
        primes.append(_int_field(fields, f"p[{index}]", 16))
        index += 1

    if legacy:
        params = LegacyParams(
            lm=_int_field(fields, "lm"),
            N=_int_field(fields, "N"),
            A=_int_field(fields, "A"),
            lu=u.bit_length(),
            ln=_int_field(fields, "ln"),
        )
        if len(primes) != 2:
            raise FileFormatError("legacy keys carry exactly two share primes")
    else:
        if not primes:
            raise FileFormatError("key file lists no share primes")
        params = SchemeParams(
            lam=_int_field(fields, "lambda"),
            lm=_int_field(fields, "lm"),
            N=_int_field(fields, "N"),
            A=_int_field(fields, "A"),
            S=_int_field(fields, "S"),
            lu=u.bit_length(),
            lg=_int_field(fields, "lg"),
            lp=primes[0].bit_length(),
        )
        if len(primes) != params.num_shares:
            raise FileFormatError(
                f"expected N+S = {params.num_shares} share primes, found {len(primes)}"
            )
    if fields:
        raise FileFormatError(f"unexpected fields: {sorted(fields)}")
    if n != math.prod(primes):
        raise FileFormatError("n does not equal the product of the share primes")
    return SecretKey.from_primes(primes, u, params, legacy=legacy)


def dump_ciphertext(c: Ciphertext) -> str:
    lines = [
        CT_HEADER,
        f"shares={len(c.shares)}",
        f"mults={c.mults_used}",
        f"adds={c.adds_used}",
    ]
    for i, share in enumerate(c.shares, start=1):
        lines.append(f"c[{i}]={_signed_hex(share)}")
    return "\n".join(lines) + "\n"


def load_ciphertext(text: str) -> Ciphertext:
    lines = [line for line in text.splitlines() if line.strip()]
    if not lines:
        raise FileFormatError("empty ciphertext file")
    if lines[0] != CT_HEADER:
        raise FileFormatError(f"unrecognized ciphertext header {lines[0]!r}")
    fields = _parse_fields(lines[1:], "ciphertext file")
    count = _int_field(fields, "shares")
    mults = _int_field(fields, "mults")
    adds = _int_field(fields, "adds")
    shares = []
    for i in range(1, count + 1):
        name = f"c[{i}]"
        if name not in fields:
            raise FileFormatError(f"missing share {name!r}")
        raw = fields.pop(name)
        if not raw or raw[0] not in "+-":
            raise FileFormatError(f"share {name!r} must be sign-prefixed hex")
        try:
            magnitude = int(raw[1:], 16)
        except ValueError:
            raise FileFormatError(f"share {name!r} is not valid hex") from None
        shares.append(-magnitude if raw[0] == "-" else magnitude)
    if fields:
        raise FileFormatError(f"unexpected fields: {sorted(fields)}")
    return Ciphertext(tuple(shares), mults, adds)
