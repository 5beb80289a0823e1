"""Command-line interface.

Subcommands: count, unrank, rank, gen, tune, critical, typecheck, encode,
decode, stats.  Families: lambda, closed, bounded:<m>, motzkin, binary
(counting/unranking); lambda, motzkin, binary (analytics and generation;
'closed' generates lambda terms and closes them).

Exit codes: 0 ok, 1 usage, 2 domain or range error, 3 attempts exhausted.
Diagnostics go to stderr; with no --seed a fresh one is drawn and echoed
to stderr so runs can be reproduced.
"""

from __future__ import annotations

import argparse
import secrets
import statistics
import sys

from .analytic import BUILTIN_SPECS, critical_value, mean_size, tune_for_mean
from .boltzmann import (AttemptsExhaustedError, RandomState, WindowSpec,
                        ceiled_sample_binary, ceiled_sample_lambda,
                        ceiled_sample_motzkin, sample_in_window,
                        select_kind_binary, select_kind_lambda,
                        select_kind_motzkin)
from .counting import count_binary, count_bounded, count_motzkin, count_plain
from .inference import format_type, infer_type, sample_typable
from .terms import (close_term, decode_term, encode_term, parse_term,
                    print_btree, print_mtree, print_term, term_size)
from .unrank import rank_plain, unrank_bounded, unrank_plain

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DOMAIN = 2
EXIT_ATTEMPTS = 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _real(v: float) -> str:
    return f"{v:.15g}"


def _bounded_m(family: str) -> int | None:
    """The free-index budget for a counting family, or None."""
    if family == "closed":
        return 0
    if family.startswith("bounded:"):
        suffix = family.split(":", 1)[1]
        if not suffix.isdigit():
            raise UsageError(f"bad bound in family {family!r}")
        return int(suffix)
    return None


def _spec_for(family: str):
    spec = BUILTIN_SPECS.get(family)
    if spec is None:
        raise UsageError(f"family {family!r} has no generating function "
                         "(choose lambda, motzkin or binary)")
    return spec


def _read_stdin_term():
    return parse_term(sys.stdin.read())


def build_parser() -> _Parser:
    top = _Parser(prog="randterm",
                  description="Count, rank, type and randomly generate "
                              "lambda terms and trees.")
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("count", help="number of structures of a given size")
    p.add_argument("family", help="lambda | closed | bounded:<m> | motzkin | binary")
    p.add_argument("n", type=int)

    p = sub.add_parser("unrank", help="the k-th term of size n")
    p.add_argument("family", help="lambda | closed | bounded:<m>")
    p.add_argument("n", type=int)
    p.add_argument("k", type=int)

    p = sub.add_parser("rank", help="rank of the term on stdin among size-n terms")
    p.add_argument("n", type=int)

    p = sub.add_parser("gen", help="generate random structures in a size window")
    p.add_argument("family", help="lambda | closed | motzkin | binary")
    p.add_argument("--min", type=int, required=True, dest="min_size")
    p.add_argument("--max", type=int, required=True, dest="max_size")
    p.add_argument("--count", type=int, default=1)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--typable", action="store_true",
                   help="keep only simply-typable terms (lambda only)")
    p.add_argument("--close", action="store_true",
                   help="wrap free indices in abstractions (lambda only)")
    p.add_argument("--max-attempts", type=int, default=1_000_000)
    p.add_argument("--format", choices=("text", "bits"), default="text")

    p = sub.add_parser("tune", help="the x whose Boltzmann mean size is n")
    p.add_argument("family", help="lambda | motzkin | binary")
    p.add_argument("--mean", type=float, required=True)

    p = sub.add_parser("critical", help="critical value of a family")
    p.add_argument("family", help="lambda | motzkin | binary")

    sub.add_parser("typecheck", help="principal type of the term on stdin")
    sub.add_parser("encode", help="bit encoding of the term on stdin")
    sub.add_parser("decode", help="term for the bit string on stdin")

    p = sub.add_parser("stats", help="empirical selector frequencies and sizes")
    p.add_argument("family", help="lambda | motzkin | binary")
    p.add_argument("--x", type=float, required=True)
    p.add_argument("--draws", type=int, required=True)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--size-draws", type=int, default=1000,
                   help="ceiled attempts for the size summary")
    p.add_argument("--ceiling", type=int, default=10_000)

    return top


def _obtain_seed(given: int | None) -> int:
    if given is not None:
        return given
    seed = secrets.randbits(63)
    print(f"seed {seed}", file=sys.stderr)
    return seed


def _cmd_count(args) -> int:
    if args.family in ("lambda", "motzkin", "binary"):
        fn = {"lambda": count_plain, "motzkin": count_motzkin,
              "binary": count_binary}[args.family]
        print(fn(args.n))
        return EXIT_OK
    m = _bounded_m(args.family)
    if m is None:
        raise UsageError(f"unknown family {args.family!r}")
    print(count_bounded(m, args.n))
    return EXIT_OK


def _cmd_unrank(args) -> int:
    if args.family == "lambda":
        term = unrank_plain(args.n, args.k)
    else:
        m = _bounded_m(args.family)
        if m is None:
            raise UsageError(f"cannot unrank family {args.family!r}")
        term = unrank_bounded(m, args.n, args.k)
    print(print_term(term))
    return EXIT_OK


def _cmd_rank(args) -> int:
    term = _read_stdin_term()
    size = term_size(term)
    if size != args.n:
        raise ValueError(f"term on stdin has size {size}, expected {args.n}")
    print(rank_plain(term))
    return EXIT_OK


def _cmd_gen(args) -> int:
    family = args.family
    if family not in ("lambda", "closed", "motzkin", "binary"):
        raise UsageError(f"unknown family {family!r}")
    is_lambda = family in ("lambda", "closed")
    if args.typable and not is_lambda:
        raise UsageError("--typable applies only to lambda terms")
    if args.close and not is_lambda:
        raise UsageError("--close applies only to lambda terms")
    if args.format == "bits" and not is_lambda:
        raise UsageError("--format bits applies only to lambda terms")
    if args.count < 1:
        raise UsageError("--count must be >= 1")
    if not 1 <= args.min_size <= args.max_size:
        raise UsageError("need 1 <= --min <= --max")
    if args.max_attempts < 1:
        raise UsageError("--max-attempts must be >= 1")

    close = args.close or family == "closed"
    window = WindowSpec(args.min_size, args.max_size, args.max_attempts)
    seed = _obtain_seed(args.seed)
    sampler = {"lambda": ceiled_sample_lambda, "closed": ceiled_sample_lambda,
               "motzkin": ceiled_sample_motzkin,
               "binary": ceiled_sample_binary}[family]
    printer = {"motzkin": print_mtree, "binary": print_btree}.get(family, print_term)
    for i in range(args.count):
        rng = RandomState(seed + i)  # per-line seeds; order independent
        if args.typable:
            value = sample_typable(window, rng)
        else:
            value = sample_in_window(sampler, window, rng)
        if close:
            value = close_term(value)
        print(encode_term(value) if args.format == "bits" else printer(value))
    return EXIT_OK


def _cmd_tune(args) -> int:
    print(_real(tune_for_mean(_spec_for(args.family), args.mean)))
    return EXIT_OK


def _cmd_critical(args) -> int:
    print(_real(critical_value(_spec_for(args.family))))
    return EXIT_OK


def _cmd_typecheck(args) -> int:
    ty = infer_type(_read_stdin_term())
    print("untypable" if ty is None else format_type(ty))
    return EXIT_OK


def _cmd_encode(args) -> int:
    print(encode_term(_read_stdin_term()))
    return EXIT_OK


def _cmd_decode(args) -> int:
    print(print_term(decode_term(sys.stdin.read().strip())))
    return EXIT_OK


def _cmd_stats(args) -> int:
    family = args.family
    spec = _spec_for(family)
    mean = mean_size(spec, args.x) if args.x < critical_value(spec) else float("inf")
    if args.draws < 1 or args.size_draws < 0 or args.ceiling < 1:
        raise UsageError("draws and ceiling must be positive")
    rng = RandomState(_obtain_seed(args.seed))
    selector = {"lambda": select_kind_lambda, "motzkin": select_kind_motzkin,
                "binary": select_kind_binary}[family]
    sampler = {"lambda": ceiled_sample_lambda, "motzkin": ceiled_sample_motzkin,
               "binary": ceiled_sample_binary}[family]

    counts: dict[str, int] = {}
    for _ in range(args.draws):
        kind = selector(args.x, rng)
        counts[kind] = counts.get(kind, 0) + 1
    order = {"lambda": ("var", "abs", "app"),
             "motzkin": ("leaf", "unary", "binary"),
             "binary": ("leaf", "node")}[family]
    print(f"x {_real(args.x)}")
    print(f"mean_size {_real(mean)}")
    for kind in order:
        print(f"kind {kind} {counts.get(kind, 0) / args.draws:.6f}")

    sizes = []
    rejected = 0
    ceiling = max(args.ceiling, 2) if family == "lambda" else args.ceiling
    for _ in range(args.size_draws):
        out = sampler(ceiling, rng, x=args.x)
        if out is None:
            rejected += 1
        else:
            sizes.append(out.size)
    print(f"size_attempts {args.size_draws}")
    print(f"size_rejected {rejected}")
    if sizes:
        print(f"size_min {min(sizes)}")
        print(f"size_median {_real(statistics.median(sizes))}")
        print(f"size_mean {_real(statistics.fmean(sizes))}")
        print(f"size_max {max(sizes)}")
    return EXIT_OK


_COMMANDS = {
    "count": _cmd_count,
    "unrank": _cmd_unrank,
    "rank": _cmd_rank,
    "gen": _cmd_gen,
    "tune": _cmd_tune,
    "critical": _cmd_critical,
    "typecheck": _cmd_typecheck,
    "encode": _cmd_encode,
    "decode": _cmd_decode,
    "stats": _cmd_stats,
}


def run(argv=None) -> int:
    """Parse argv and execute; returns the process exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return _COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"randterm: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except AttemptsExhaustedError as exc:
        print(f"randterm: {exc}", file=sys.stderr)
        return EXIT_ATTEMPTS
    except (ValueError, ArithmeticError) as exc:
        print(f"randterm: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


def main() -> None:
    sys.exit(run())
