"""Command-line front end: ``gen``, ``verify``, ``primes`` and ``bench``."""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from . import bench as benchmod
from .irgen import (
    IsaConfigError,
    RewriteError,
    get_isa,
    modmul_expr,
    rewrite_modmul_scalar,
    rewrite_modmul_vec,
    select_strategy,
    strategy_costs,
    unparse,
)
from .modarith import precompute_params
from .primes import find_fourier_primes
from .verify import exhaustive_pairs, format_report, random_pairs, run_campaign
from .vkernels import GatherStrategy, UnsupportedStrategyError

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE = 0, 1, 2

log = logging.getLogger("modvec")


class UsageError(Exception):
    pass


def _common(defaults: bool) -> argparse.ArgumentParser:
    # Global flags are accepted before or after the subcommand.
    p = argparse.ArgumentParser(add_help=False)
    kw = {} if defaults else {"default": argparse.SUPPRESS}
    p.add_argument("--seed", type=int, help="seed for the SplitMix64 generator (default 0)", **({"default": 0} if defaults else kw))
    p.add_argument("--csv", metavar="PATH", help="write machine-readable output to PATH ('-' for stdout)", **({"default": None} if defaults else kw))
    p.add_argument("--quiet", action="store_true", help="only report errors", **({"default": False} if defaults else kw))
    return p


def _strategy_arg(text: str):
    if text == "auto":
        return "auto"
    try:
        return GatherStrategy.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="modvec", description=__doc__, parents=[_common(True)])
    sub = parser.add_subparsers(dest="command", required=True)
    common = _common(False)

    g = sub.add_parser("gen", parents=[common], help="emit a C kernel for modular multiplication")
    g.add_argument("--isa", default="sse4x32m", help="built-in ISA name or path to a JSON ISA file")
    g.add_argument("--prime", type=int, required=True)
    g.add_argument("--l", type=int, default=None, help="R = 2**l (default: bit length of the prime)")
    g.add_argument("--strategy", type=_strategy_arg, default="auto", help="gather strategy, or 'auto' to pick by cost")
    g.add_argument("--scalar", action="store_true", help="emit the scalar kernel instead of the 4-lane one")
    g.add_argument("-o", "--out", required=True, help="output C file")

    v = sub.add_parser("verify", parents=[common], help="check all algorithms against the naive oracle")
    v.add_argument("--prime", type=int, required=True)
    v.add_argument("--l", type=int, default=None)
    v.add_argument("--mode", choices=("exhaustive", "random"), default="random")
    v.add_argument("--samples", type=int, default=100_000)
    v.add_argument("--no-emulated", action="store_true", help="skip the slow pure-Python lane reference")

    pr = sub.add_parser("primes", parents=[common], help="list Fourier primes c*2^n+1")
    pr.add_argument("--bits", type=int, nargs=2, metavar=("LOW", "HIGH"), required=True)
    pr.add_argument("--count", type=int, default=None)

    b = sub.add_parser("bench", parents=[common], help="time the algorithms on one batch")
    b.add_argument("--prime", type=int, required=True)
    b.add_argument("--l", type=int, default=None)
    b.add_argument("--algorithms", default=",".join(benchmod.ALGORITHMS))
    b.add_argument("--strategies", default="all", help="comma-separated gather strategies for vector4, or 'all'")
    b.add_argument("--batch", type=int, default=65536)
    b.add_argument("--reps", type=int, default=100)
    b.add_argument("--backend", choices=("auto", "native", "numpy"), default="auto")
    return parser


def _params(args):
    try:
        return precompute_params(args.prime, args.l)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _say(args, text: str = "") -> None:
    if not args.quiet:
        print(text)


def _write_csv(path: str, text: str) -> None:
    if path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def cmd_gen(args) -> int:
    params = _params(args)
    try:
        isa = get_isa(args.isa)
    except IsaConfigError as exc:
        raise UsageError(str(exc)) from None
    if args.scalar:
        prog = rewrite_modmul_scalar(modmul_expr(vector=False), params)
        chosen = "scalar"
    else:
        strategy = select_strategy(isa) if args.strategy == "auto" else args.strategy
        try:
            prog = rewrite_modmul_vec(modmul_expr(width=isa.v), isa, params, strategy)
        except (UnsupportedStrategyError, RewriteError) as exc:
            raise UsageError(f"strategy {strategy.value}: {exc}") from None
        chosen = strategy.value
        if args.strategy == "auto" and not args.quiet:
            for s, cost in strategy_costs(isa.cost_table, isa.has_blend).items():
                print(f"  gather cost {s.value:<20} {cost:.3f}")
    Path(args.out).write_text(unparse(prog))
    _say(args, f"strategy: {chosen}")
    _say(args, f"isa: {isa.name}  P = {params.P}  l = {params.l}  P' = {params.Pprime}  R^-1 = {params.Rinv}")
    _say(args, f"wrote {args.out}")
    return EXIT_OK


def cmd_verify(args) -> int:
    params = _params(args)
    try:
        if args.mode == "exhaustive":
            a, b = exhaustive_pairs(params.P)
        else:
            if args.samples < 1:
                raise ValueError("--samples must be positive")
            a, b = random_pairs(params.P, args.samples, args.seed)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    rep = run_campaign(params, a, b, emulated=not args.no_emulated)
    lines = format_report(rep)
    if args.quiet and not rep.ok:
        lines = [ln for ln in lines if "FAIL" in ln or "VIOLATION" in ln]
        args.quiet = False
    for ln in lines:
        _say(args, ln)
    if args.csv:
        rows = ["prime,l,algorithm,checked,mismatches,verdict"]
        rows += [f"{rep.P},{rep.l},{r.name},{r.checked},{r.mismatches},{'pass' if r.ok else 'fail'}" for r in rep.results]
        _write_csv(args.csv, "\n".join(rows) + "\n")
    return EXIT_OK if rep.ok else EXIT_MISMATCH


def cmd_primes(args) -> int:
    lo, hi = args.bits
    try:
        found = find_fourier_primes(lo, hi, args.count)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if args.csv:
        rows = ["P,c,n,l"] + [f"{f.P},{f.c},{f.n},{f.P.bit_length()}" for f in found]
        _write_csv(args.csv, "\n".join(rows) + "\n")
    if args.csv != "-":
        for f in found:
            _say(args, f"{f.P:>12}  c={f.c:<8} n={f.n:<3} l={f.P.bit_length()}")
    return EXIT_OK


def cmd_bench(args) -> int:
    params = _params(args)
    algorithms = [x.strip() for x in args.algorithms.split(",") if x.strip()]
    try:
        if args.strategies == "all":
            strategies = tuple(GatherStrategy)
        else:
            strategies = tuple(GatherStrategy.parse(s) for s in args.strategies.split(","))
        records = benchmod.run_bench(
            params, algorithms, args.batch, args.reps, args.seed, strategies, args.backend
        )
    except benchmod.CrossCheckError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MISMATCH
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    text = benchmod.to_csv(records)
    if args.csv:
        _write_csv(args.csv, text)
    if args.csv != "-":
        _say(args, text.rstrip("\n"))
    return EXIT_OK


COMMANDS = {"gen": cmd_gen, "verify": cmd_verify, "primes": cmd_primes, "bench": cmd_bench}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.WARNING if args.quiet else logging.INFO, format="%(message)s")
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
