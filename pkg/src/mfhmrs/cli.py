"""Command-line interface.

Subcommands: keygen, params (suggest/validate), encrypt, decrypt, eval,
attack, estimate, bench.  Data goes to stdout, diagnostics to stderr.

Exit codes:
    0  success (for attacks: the attack ran; success is data, not status)
    2  invalid or infeasible parameters
    3  homomorphic budget exceeded
    4  malformed input (files, messages, circuit syntax; column reported)
    5  ciphertext/key share-count mismatch
"""

from __future__ import annotations

import argparse
import json
import random
import statistics
import sys
import time
from fractions import Fraction

import mpmath

from . import attacks, circuit, fhmrs, fileformat, lattice, params as params_mod, scheme
from .numtheory import prime_count_below, prime_count_estimate
from .errors import (
    BudgetExceeded,
    CircuitSyntaxError,
    ConstantTooLarge,
    FileFormatError,
    Infeasible,
    InvalidParams,
    MessageTooLarge,
    SearchSpaceTooLarge,
    ShareCountMismatch,
)

EXIT_OK = 0
EXIT_PARAMS = 2
EXIT_BUDGET = 3
EXIT_INPUT = 4
EXIT_SHAPE = 5


def _rng(args) -> random.Random:
    if getattr(args, "seed", None):
        print(
            "WARNING: --seed selects a deterministic generator; "
            "fixture use only, never for real keys",
            file=sys.stderr,
        )
        return random.Random(int(args.seed, 16))
    return random.SystemRandom()


def _fmt_fraction(x: Fraction) -> str:
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator} (~{float(x):.4f})"


def _print_report(report: params_mod.ParamReport, as_json: bool) -> None:
    lo, hi = report.feasible_lp_range
    if as_json:
        print(json.dumps({
            "checks": [
                {"name": c.name, "expr": c.expr, "lhs": str(c.lhs),
                 "rhs": str(c.rhs), "passed": c.passed}
                for c in report.checks
            ],
            "feasible_lp_range": [str(lo), str(hi)],
            "passed": report.passed,
        }))
        return
    for c in report.checks:
        status = "PASS" if c.passed else "FAIL"
        print(f"{status}  {c.expr}  [{_fmt_fraction(c.lhs)} vs {_fmt_fraction(c.rhs)}]")
    print(f"feasible l_p range: [{_fmt_fraction(lo)}, {_fmt_fraction(hi)}]")
    print(f"overall: {'PASS' if report.passed else 'FAIL'}")


def _print_attack(report: attacks.AttackReport, as_json: bool, extra=None) -> None:
    if as_json:
        payload = {
            "attack": report.attack_name,
            "success": report.success,
            "recovered": {k: str(v) for k, v in report.recovered.items()},
            "trials": report.trials,
            "work_estimate_log2": report.work_estimate_log2,
        }
        if extra:
            payload.update(extra)
        print(json.dumps(payload))
        return
    print(f"attack:   {report.attack_name}")
    print(f"success:  {str(report.success).lower()}")
    for name, value in report.recovered.items():
        print(f"recovered {name} = {value}")
    if extra:
        for name, value in extra.items():
            print(f"{name}: {value}")
    print(
        f"RESULT attack={report.attack_name} success={str(report.success).lower()} "
        f"trials={report.trials} work_log2={report.work_estimate_log2:.2f}"
    )


def _params_from_args(args) -> params_mod.SchemeParams:
    explicit = [args.S, args.lu, args.lg, args.lp]
    if any(v is not None for v in explicit):
        if any(v is None for v in explicit):
            raise InvalidParams(["--S, --lu, --lg, --lp must be given together"])
        return params_mod.SchemeParams(
            args.lam, args.lm, args.N, args.A, args.S, args.lu, args.lg, args.lp
        )
    return params_mod.suggest(args.lam, args.lm, args.N, args.A)


def _load_key(path: str) -> scheme.SecretKey:
    with open(path, "r", encoding="utf-8") as fh:
        return fileformat.load_key(fh.read())


def _load_ct(path: str) -> scheme.Ciphertext:
    with open(path, "r", encoding="utf-8") as fh:
        return fileformat.load_ciphertext(fh.read())


def cmd_keygen(args) -> int:
    rng = _rng(args)
    if args.legacy:
        if args.lu is None:
            print("--legacy requires --lu", file=sys.stderr)
            return EXIT_PARAMS
        lp = fhmrs.LegacyParams(args.lm, args.N, args.A, args.lu,
                                args.ln or fhmrs.LegacyParams.minimal(
                                    args.lm, args.N, args.A, args.lu).ln)
        key = fhmrs.legacy_keygen(lp, rng)
        print(f"legacy key: l_n={lp.ln}, share primes of {lp.lp} bits, u of {lp.lu} bits")
    else:
        p = _params_from_args(args)
        report = params_mod.validate(p)
        _print_report(report, args.format == "json")
        if not report.passed:
            for check in report.failures():
                print(f"invalid: {check.expr}", file=sys.stderr)
            return EXIT_PARAMS
        key = scheme.keygen(p, rng)
    with open(args.out, "w", encoding="utf-8") as fh:
        fh.write(fileformat.dump_key(key))
    print(f"wrote {args.out}", file=sys.stderr)
    return EXIT_OK


def cmd_params(args) -> int:
    if args.action == "suggest":
        p = params_mod.suggest(args.lam, args.lm, args.N, args.A)
        print(f"S={p.S} lu={p.lu} lg={p.lg} lp={p.lp} "
              f"(lambda={p.lam} lm={p.lm} N={p.N} A={p.A})")
        _print_report(params_mod.validate(p), args.format == "json")
        return EXIT_OK
    p = params_mod.SchemeParams(
        args.lam, args.lm, args.N, args.A, args.S, args.lu, args.lg, args.lp
    )
    report = params_mod.validate(p)
    _print_report(report, args.format == "json")
    return EXIT_OK if report.passed else EXIT_PARAMS


def cmd_encrypt(args) -> int:
    key = _load_key(args.key)
    ct = scheme.encrypt(key, args.message, _rng(args))
    with open(args.out, "w", encoding="utf-8") as fh:
        fh.write(fileformat.dump_ciphertext(ct))
    print(f"wrote {args.out}", file=sys.stderr)
    return EXIT_OK


def cmd_decrypt(args) -> int:
    key = _load_key(args.key)
    ct = _load_ct(args.ciphertext)
    value = scheme.decrypt(key, ct)
    print(value)
    if args.centered:
        print(f"centered={scheme.decode_centered(key, value)}")
    return EXIT_OK


def cmd_eval(args) -> int:
    key = _load_key(args.key)
    cts = [_load_ct(path) for path in args.ciphertexts]
    ast = circuit.parse(args.circuit)
    result = circuit.eval_encrypted(ast, key.shape, cts)
    if not isinstance(result, scheme.Ciphertext):
        print("circuit involves no ciphertext", file=sys.stderr)
        return EXIT_INPUT
    with open(args.out, "w", encoding="utf-8") as fh:
        fh.write(fileformat.dump_ciphertext(result))
    print(f"wrote {args.out}", file=sys.stderr)
    return EXIT_OK


def _read_sample_pairs(path: str) -> list[attacks.KnownPair]:
    pairs = []
    with open(path, "r", encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split()
            if len(parts) != 2:
                raise FileFormatError(
                    f"samples file: expected 'plaintext ciphertext_share', got {line!r}"
                )
            pairs.append(attacks.KnownPair(int(parts[0]), int(parts[1])))
    return pairs


def cmd_attack(args) -> int:
    as_json = args.format == "json"
    rng = _rng(args)

    if args.mode == "kpa-gcd":
        if args.samples:
            pairs = _read_sample_pairs(args.samples)
            report = attacks.kpa_gcd(pairs)
        else:
            key = _load_key(args.key)
            messages = [rng.randrange(0, 1 << key.params.lm) for _ in range(args.pairs)]
            pairs = attacks.pairs_from_key(key, messages, rng)
            if key.legacy:
                report = attacks.kpa_gcd(pairs, min_u=1 << key.params.lM)
            else:
                report = attacks.kpa_gcd_on_mfhmrs(pairs, key.shape)
        _print_attack(report, as_json)
        return EXIT_OK

    if args.mode in ("lattice-u", "lattice-p"):
        key = _load_key(args.key)
        p = key.params
        messages = [rng.randrange(0, 1 << p.lm) for _ in range(args.t + 1)]
        shares = [scheme.encrypt(key, m, rng).shares[0] for m in messages]
        inst = lattice.AcdInstance(
            tuple(shares),
            known_offsets=tuple(messages) if args.kpa else None,
        )
        extra = {}
        if args.mode == "lattice-u":
            feas = lattice.feasibility(p, args.t)
            extra = {
                "target_norm_log2": f"{feas.target_norm_log2:.2f}",
                "lll_bound_log2": f"{feas.lll_bound_log2:.2f}",
                "attack_feasible": str(feas.attack_feasible).lower(),
            }
            recovered = lattice.recover_u(inst, p)
            name = "lattice-u"
            secret = "u"
        else:
            recovered = lattice.recover_p(inst, p)
            name = "lattice-p"
            secret = "p1"
        report = attacks.AttackReport(
            name,
            recovered is not None,
            {secret: recovered} if recovered is not None else {},
            trials=1,
        )
        _print_attack(report, as_json, extra)
        return EXIT_OK

    if args.mode == "linear":
        key = _load_key(args.key)
        messages = [rng.randrange(0, 1 << key.params.lm) for _ in range(3)]
        pairs = attacks.pairs_from_key(key, messages, rng)
        report = attacks.linear_search_u_p(pairs, (args.lg, args.lk))
        _print_attack(report, as_json)
        return EXIT_OK

    if args.mode == "close-g":
        key = _load_key(args.key)
        shares = [scheme.encrypt(key, 0, rng).shares[0] for _ in range(4)]
        report = attacks.close_g_gcd_leak(shares, u_bound=1 << key.params.lM)
        _print_attack(report, as_json)
        return EXIT_OK

    print(f"unknown attack mode {args.mode!r}", file=sys.stderr)
    return EXIT_INPUT


def cmd_estimate(args) -> int:
    if args.key:
        p = _load_key(args.key).params
    else:
        p = _params_from_args(args)
    report = params_mod.validate(p)
    if not report.passed:
        for check in report.failures():
            print(f"invalid: {check.expr}", file=sys.stderr)
        return EXIT_PARAMS
    d_lp = prime_count_estimate(p.lp)
    d_lu = prime_count_estimate(p.lu)
    co = attacks.bruteforce_keyspace(p, "ciphertext_only")
    kpa = attacks.bruteforce_keyspace(p, "known_plaintext")
    bits = params_mod.ciphertext_bits(p)
    if args.format == "json":
        print(json.dumps({
            "d_lp_log2": d_lp.log2,
            "d_lu_log2": d_lu.log2,
            "ciphertext_only_log2": co,
            "known_plaintext_log2": kpa,
            "ciphertext_bits": bits,
        }))
        return EXIT_OK
    print(f"d_lp  ~2^{d_lp.log2:.2f}  (exact-{p.lp}-bit prime count)")
    print(f"d_lu  ~2^{d_lu.log2:.2f}  (exact-{p.lu}-bit prime count)")
    print(f"brute-force ciphertext-only: ~2^{co:.2f}  (log2 = {co:.4f})")
    print(f"brute-force known-plaintext: ~2^{kpa:.2f}  (log2 = {kpa:.4f})")
    if p.S != 2:
        # the published trial count appears once with an N+2 exponent and
        # once with N+S; they coincide at S=2, so surface both otherwise
        alt = float(
            (p.N + 2) * mpmath.log(prime_count_below(p.lp), 2)
            + mpmath.log(prime_count_below(p.lu), 2)
        )
        print(f"brute-force (N+2-exponent variant): ~2^{alt:.2f}")
    print(f"ciphertext size: {bits} bits")
    return EXIT_OK


def _bench_stats(samples: list[float]) -> tuple[float, float]:
    ordered = sorted(samples)
    median = statistics.median(ordered)
    p95 = ordered[min(len(ordered) - 1, int(0.95 * len(ordered)))]
    return median, p95


def cmd_bench(args) -> int:
    rng = _rng(args)
    if args.key:
        key = _load_key(args.key)
        p = key.params
    else:
        p = _params_from_args(args)
        report = params_mod.validate(p)
        if not report.passed:
            for check in report.failures():
                print(f"invalid: {check.expr}", file=sys.stderr)
            return EXIT_PARAMS
        key = scheme.keygen(p, rng)
    shape = key.shape
    mismatches = 0
    checks = 0
    times = []
    for i in range(args.iters):
        m1 = rng.randrange(0, 1 << p.lm)
        m2 = rng.randrange(0, 1 << p.lm)
        if args.ops == "encrypt":
            start = time.perf_counter()
            scheme.encrypt(key, m1, rng)
            times.append(time.perf_counter() - start)
        elif args.ops == "decrypt":
            ct = scheme.encrypt(key, m1, rng)
            start = time.perf_counter()
            value = scheme.decrypt(key, ct)
            times.append(time.perf_counter() - start)
            if value != m1:
                mismatches += 1
        elif args.ops in ("add", "mul"):
            c1 = scheme.encrypt(key, m1, rng)
            c2 = scheme.encrypt(key, m2, rng)
            op = scheme.hom_add if args.ops == "add" else scheme.hom_mul
            start = time.perf_counter()
            result = op(shape, c1, c2)
            times.append(time.perf_counter() - start)
            if i % 10 == 0:
                checks += 1
                expected = (m1 + m2 if args.ops == "add" else m1 * m2) % key.u
                if scheme.decrypt(key, result) != expected:
                    mismatches += 1
        elif args.ops == "lll":
            messages = [rng.randrange(0, 1 << p.lm) for _ in range(args.t + 1)]
            shares = [scheme.encrypt(key, m, rng).shares[0] for m in messages]
            inst = lattice.AcdInstance(tuple(shares))
            basis = lattice.build_basis_u(inst, p)
            start = time.perf_counter()
            lattice.lll_reduce(basis)
            times.append(time.perf_counter() - start)
        else:
            print(f"unknown op {args.ops!r}", file=sys.stderr)
            return EXIT_INPUT
    median, p95 = _bench_stats(times)
    line = f"op={args.ops} iters={args.iters} median_s={median:.6f} p95_s={p95:.6f}"
    if args.ops in ("add", "mul", "decrypt"):
        line += f" checks={checks or args.iters} mismatches={mismatches}"
    print(line)
    return EXIT_OK if mismatches == 0 else EXIT_INPUT


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mfhmrs",
        description="CRT-share symmetric homomorphic encryption and its cryptanalysis toolkit",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_param_flags(p, required=False):
        p.add_argument("--lambda", dest="lam", type=int, required=required)
        p.add_argument("--lm", type=int, required=required)
        p.add_argument("--N", type=int, required=required)
        p.add_argument("--A", type=int, required=required)
        p.add_argument("--S", type=int)
        p.add_argument("--lu", type=int)
        p.add_argument("--lg", type=int)
        p.add_argument("--lp", type=int)

    keygen = sub.add_parser("keygen", help="generate a key (advisor fills missing sizes)")
    add_param_flags(keygen, required=True)
    keygen.add_argument("--legacy", action="store_true",
                        help="two-share legacy preset (deliberately attackable)")
    keygen.add_argument("--ln", type=int, help="legacy only: bit length of n")
    keygen.add_argument("--out", required=True)
    keygen.add_argument("--seed", help="hex seed: deterministic fixtures only")
    keygen.add_argument("--format", choices=("table", "json"), default="table")
    keygen.set_defaults(func=cmd_keygen)

    par = sub.add_parser("params", help="parameter advisor and validator")
    par.add_argument("action", choices=("suggest", "validate"))
    add_param_flags(par, required=True)
    par.add_argument("--format", choices=("table", "json"), default="table")
    par.set_defaults(func=cmd_params)

    enc = sub.add_parser("encrypt")
    enc.add_argument("--key", required=True)
    enc.add_argument("--message", type=int, required=True)
    enc.add_argument("--out", required=True)
    enc.set_defaults(func=cmd_encrypt, seed=None)

    dec = sub.add_parser("decrypt")
    dec.add_argument("--key", required=True)
    dec.add_argument("ciphertext")
    dec.add_argument("--centered", action="store_true",
                     help="also print the symmetric-range decoding")
    dec.set_defaults(func=cmd_decrypt)

    ev = sub.add_parser("eval", help="homomorphic circuit evaluation over ciphertext files")
    ev.add_argument("--key", required=True)
    ev.add_argument("--circuit", required=True,
                    help="expression over c1..ck, integer constants, + - * ( )")
    ev.add_argument("ciphertexts", nargs="+")
    ev.add_argument("--out", required=True)
    ev.set_defaults(func=cmd_eval)

    att = sub.add_parser("attack", help="run an attack demonstration")
    att.add_argument("mode", choices=("kpa-gcd", "lattice-u", "lattice-p", "linear", "close-g"))
    att.add_argument("--key")
    att.add_argument("--samples", help="kpa-gcd: file of 'plaintext share' lines")
    att.add_argument("--pairs", type=int, default=8)
    att.add_argument("--t", type=int, default=10, help="lattice dimension minus one")
    att.add_argument("--kpa", action="store_true",
                     help="lattice modes: subtract known plaintexts first")
    att.add_argument("--lg", type=int, default=4, help="linear: g bit bound")
    att.add_argument("--lk", type=int, default=4, help="linear: k bit bound")
    att.add_argument("--seed", help="hex seed: deterministic fixtures only")
    att.add_argument("--format", choices=("table", "json"), default="table")
    att.set_defaults(func=cmd_attack)

    est = sub.add_parser("estimate", help="keyspace and size estimates")
    add_param_flags(est)
    est.add_argument("--key")
    est.add_argument("--format", choices=("table", "json"), default="table")
    est.set_defaults(func=cmd_estimate)

    ben = sub.add_parser("bench", help="micro-benchmarks")
    add_param_flags(ben)
    ben.add_argument("--key")
    ben.add_argument("--ops", required=True,
                     choices=("encrypt", "decrypt", "add", "mul", "lll"))
    ben.add_argument("--iters", type=int, default=100)
    ben.add_argument("--t", type=int, default=10)
    ben.add_argument("--seed", help="hex seed: deterministic fixtures only")
    ben.set_defaults(func=cmd_bench)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (InvalidParams, Infeasible) as exc:
        if isinstance(exc, InvalidParams):
            for violation in exc.violations:
                print(f"invalid: {violation}", file=sys.stderr)
        else:
            print(f"infeasible: {exc}", file=sys.stderr)
        return EXIT_PARAMS
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except CircuitSyntaxError as exc:
        print(f"circuit parse error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (FileFormatError, MessageTooLarge, ConstantTooLarge,
            SearchSpaceTooLarge, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ShareCountMismatch as exc:
        print(f"share count mismatch: {exc}", file=sys.stderr)
        return EXIT_SHAPE


if __name__ == "__main__":
    sys.exit(main())
