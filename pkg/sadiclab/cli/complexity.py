"""complexity: factor complexity profile and the linear bound p(n) <= D (Card A)^2 n"""
import argparse
import sys
from fractions import Fraction

from sadiclab.cli.common import (
    add_directive_flags,
    add_output_flags,
    dump,
    mark,
    ratio,
    resolve_directive,
    verdict,
    window_default,
)
from sadiclab.schemas.directive import ComplexityRow
from sadiclab.schemas.run import RunConfig
from sadiclab.services.sadic import complexity_bound_check, limit_prefix
from sadiclab.services.words import complexity_profile
from sadiclab.utils.errors import EXIT_OK, NonConvergenceError, ParameterError
from sadiclab.utils.formats import read_sequence


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser("complexity", help="factor complexity and the linear complexity bound")
    add_directive_flags(parser, required=False)
    parser.add_argument("--input", help="sequence or window file instead of a directive")
    parser.add_argument("--max-n", type=int, required=True)
    parser.add_argument("--bound", dest="D", type=ratio, default=None,
                        help="D of the length hypothesis; checks p(n) <= D (Card A)^2 n")
    parser.add_argument("--window", type=int, default=None, help="prefix length to scan")
    parser.add_argument("--depths", type=int, default=8, help="telescoped depths checked against D")
    add_output_flags(parser)
    parser.set_defaults(handler=run, input_flags=("directive", "input"))


def run(args: argparse.Namespace, config: RunConfig) -> int:
    if args.input and (args.directive or args.builtin):
        raise ParameterError("input", "--input cannot be combined with a directive")
    if not args.input and not (args.directive or args.builtin):
        raise ParameterError("input", "one of --input, --directive or --builtin is required")
    if args.depths < 0:
        raise ParameterError("depths", "--depths must be non-negative")

    if args.input:
        return _profile(read_sequence(args.input), config)

    d = resolve_directive(args)
    window = max(window_default(config.window), config.max_n)
    if config.D is None:
        prefix = limit_prefix(d, window, config.depth_budget)
        if not prefix.converged:
            raise NonConvergenceError(0, window, prefix.stable_length, prefix.depth_used)
        return _profile(prefix.word, config)

    report = complexity_bound_check(d, config.D, config.max_n, window, args.depths, config.depth_budget)
    if config.output == "jsonl":
        sys.stdout.write(dump(report) + "\n")
    else:
        out = sys.stdout
        out.write(f"|S_(k+1)(b)| <= {report.D} |S_k(c)| for k <= {report.depths}: {mark(report.hypothesis_ok)}\n")
        for v in report.violations:
            out.write(f"  depth {v.depth}: |S(b={v.b})| = {v.lhs} > {v.rhs}\n")
        out.write(f"min |S_k(c)| strictly increasing: {mark(report.growth_ok)}\n")
        out.write(
            f"p(n) <= {report.D} * {report.alphabet_size}^2 * n for n <= {config.max_n} "
            f"on {report.window} symbols: {mark(report.complexity_ok)} (max p(n)/n = {report.max_ratio})\n"
        )
        for row in report.complexity_violations[:10]:
            out.write(f"  p({row.n}) = {row.p} > {row.bound}\n")
    return verdict(report.passed, "complexity bound")


def _profile(word, config: RunConfig) -> int:
    profile = complexity_profile(word, config.max_n)
    card = word.alphabet.size
    rows = [
        ComplexityRow(n=n, p=p, bound=Fraction(config.D * card * card * n) if config.D else Fraction(0))
        for n, p in enumerate(profile, start=1)
    ]
    for row in rows:
        if config.output == "jsonl":
            sys.stdout.write(dump(row) + "\n")
        else:
            sys.stdout.write(f"{row.n}\t{row.p}\n")
    if config.D is None:
        return EXIT_OK
    return verdict(all(row.p <= row.bound for row in rows), "complexity bound")
