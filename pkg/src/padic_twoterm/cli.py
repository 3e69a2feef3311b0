"""Command-line front end.

    padic-twoterm verify -p 5 -N 100 --format json
    padic-twoterm table -p 5,7 -N 100
    padic-twoterm gauss -p 7 -a 6
    padic-twoterm gamma -p 5 --num 1 --den 4 -M 6
    padic-twoterm lfun -p 5 -k 1
    padic-twoterm constants -p 7

Exit codes: 0 ran cleanly, 1 usage or configuration error, 2 an
infrastructure oracle failed, 3 (--strict) a measured claim fell short.
"""

from __future__ import annotations

import argparse
import os
import sys
from fractions import Fraction

from . import report as rep
from .core import PadicError, PrecisionPolicy
from .engine import (
    DEFAULT_SEED,
    InfraFailure,
    MAX_DEFAULT_PRIME,
    ProtocolConfig,
    run_protocol,
)
from .lfun import DirichletCharacter, OutOfScopeError, check_odd_prime, kubota_leopoldt
from .special import CostBoundError, GaussConvention, gauss_sum, morita_gamma

ENV_DIGITS = "PADIC_TWOTERM_DIGITS"
ENV_THREADS = "PADIC_TWOTERM_THREADS"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if raw is None:
        return default
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"{name} must be an integer, got {raw!r}")


def _primes(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"bad prime list {text!r}")


def build_parser() -> argparse.ArgumentParser:
    digits = _env_int(ENV_DIGITS, 100)
    threads = _env_int(ENV_THREADS, 1)

    common = _Parser(add_help=False)
    common.add_argument("-p", "--prime", required=True, type=_primes,
                        help="odd prime, or a comma list for 'table'")
    common.add_argument("-N", "--digits", type=int, default=digits,
                        help=f"target p-adic digits (default {digits}, env {ENV_DIGITS})")
    common.add_argument("-G", "--guard", type=int, default=None, help="guard digits")
    common.add_argument("-M", "--gamma-digits", type=int, default=None,
                        help="digits for Gamma_p cross-checks")
    common.add_argument("--format", choices=("json", "csv", "text"), default=None)
    common.add_argument("-o", "--output", default=None, help="write here instead of stdout")
    common.add_argument("--strict", action="store_true",
                        help="exit 3 when a measured claim floor is below N - G")
    common.add_argument("--convention", default="standard",
                        help="Gauss sum convention: standard, conjugate, reembed:<c>")
    common.add_argument("--threads", type=int, default=threads,
                        help=f"worker threads (env {ENV_THREADS})")
    common.add_argument("--seed", type=int, default=DEFAULT_SEED)
    common.add_argument("--skip-gamma-check", action="store_true",
                        help=f"skip Gross–Koblitz checks; allows p > {MAX_DEFAULT_PRIME}")
    common.add_argument("--timings", action="store_true", help="record step timings")

    parser = _Parser(prog="padic-twoterm", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sub.add_parser("verify", parents=[common], help="run the full protocol")
    sub.add_parser("table", parents=[common], help="CSV summary rows")
    sub.add_parser("constants", parents=[common], help="the fitted constants")
    g = sub.add_parser("gauss", parents=[common], help="tau(omega^-a) and its valuation")
    g.add_argument("-a", type=int, required=True)
    g = sub.add_parser("gamma", parents=[common], help="Morita Gamma_p(num/den)")
    g.add_argument("--num", type=int, required=True)
    g.add_argument("--den", type=int, default=1)
    g = sub.add_parser("lfun", parents=[common], help="L_p(0, chi omega) and its derivative")
    g.add_argument("-k", type=int, required=True, help="chi = omega^k, k odd")
    return parser


def _config(args, p: int) -> ProtocolConfig:
    cfg = ProtocolConfig(p=p, digits=args.digits, guard=args.guard,
                         gamma_digits=args.gamma_digits, strict=args.strict,
                         convention=args.convention, seed=args.seed,
                         skip_gamma_check=args.skip_gamma_check,
                         record_timings=args.timings)
    cfg.validate()
    return cfg


def _single_prime(args) -> int:
    if len(args.prime) != 1:
        raise UsageError(f"'{args.command}' takes a single prime")
    return args.prime[0]


def _write(text: str, path: str | None) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def _run(args) -> int:
    if args.threads < 1:
        raise UsageError("--threads must be positive")
    cmd = args.command
    if cmd in ("verify", "table", "constants"):
        primes = args.prime if cmd == "table" else [_single_prime(args)]
        configs = [_config(args, p) for p in primes]
        reports = [run_protocol(c, threads=args.threads) for c in configs]
        fmt = args.format or ("csv" if cmd == "table" else "json" if cmd == "verify" else "text")
        if fmt == "csv":
            text = rep.to_csv(reports)
        elif fmt == "json":
            if cmd == "constants":
                docs = [rep.to_dict(r)["constants"] for r in reports]
                text = rep.json.dumps(docs[0] if len(docs) == 1 else docs, indent=2) + "\n"
            elif len(reports) == 1:
                text = rep.to_json(reports[0])
            else:
                text = rep.json.dumps([rep.to_dict(r) for r in reports], indent=2) + "\n"
        else:
            if cmd == "constants":
                text = "".join(_constants_text(r) for r in reports)
            else:
                text = "".join(rep.to_text(r) for r in reports)
        _write(text, args.output)
        return max(r.exit_code() for r in reports)

    p = _single_prime(args)
    check_odd_prime(p)
    policy = PrecisionPolicy.for_prime(p, args.digits, args.guard)
    N = policy.target
    if cmd == "gauss":
        if not 1 <= args.a <= p - 1:
            raise UsageError(f"-a must lie in 1..{p - 1}")
        tau = gauss_sum(args.a, policy, GaussConvention.parse(args.convention))
        text = f"tau = {tau.truncate(N)}\nvaluation = {tau.valuation()}\n"
        c0 = tau.scalar_part()
        if tau.is_scalar_at_precision() and not c0.is_zero and c0.valuation == 0:
            # small integers read better in signed form
            mod = p ** c0.trusted
            n = c0.unit if c0.unit <= mod // 2 else c0.unit - mod
            if abs(n) < 10 ** 6:
                text += f"integer = {n}\n"
        _write(text, args.output)
    elif cmd == "gamma":
        if args.den == 0:
            raise UsageError("--den must be nonzero")
        M = args.gamma_digits or 6
        x = Fraction(args.num, args.den)
        g = morita_gamma(x, M, policy)
        _write(f"Gamma_{p}({x}) = {g}\n", args.output)
    elif cmd == "lfun":
        if not 0 <= args.k <= p - 2 or args.k % 2 == 0:
            raise UsageError(f"-k must be odd and lie in 1..{p - 2}")
        jet = kubota_leopoldt(DirichletCharacter(p, args.k), 0, policy)
        _write(f"L_p(0) = {jet.value.truncate(N)}\nL_p'(0) = {jet.deriv.truncate(N)}\n",
               args.output)
    return 0


def _constants_text(r) -> str:
    d = rep.to_dict(r)["constants"]
    lines = [f"p = {r.config.p}"]
    for k, v in d.items():
        lines.append(f"  {k}: {v}")
    return "\n".join(lines) + "\n"


def main(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return _run(args)
    except UsageError as e:
        print(e, file=sys.stderr)
        return 1
    except OutOfScopeError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    except (CostBoundError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    except (InfraFailure, PadicError) as e:
        print(f"infrastructure failure: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
