"""gen: certified prefixes of x or of a tail x^(n)"""
import argparse
import sys

from sadiclab.cli.common import add_directive_flags, add_output_flags, dump, resolve_directive
from sadiclab.schemas.run import RunConfig
from sadiclab.services.sadic import limit_prefix, tail_prefix
from sadiclab.utils.errors import EXIT_OK, NonConvergenceError


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser("gen", help="generate a prefix of an S-adic sequence")
    add_directive_flags(parser)
    parser.add_argument("--len", dest="length", type=int, required=True, help="prefix length")
    parser.add_argument("--tail", type=int, default=0, help="generate the tail x^(n) instead of x")
    add_output_flags(parser)
    parser.set_defaults(handler=run, input_flags=("directive",))


def run(args: argparse.Namespace, config: RunConfig) -> int:
    d = resolve_directive(args)
    if args.tail:
        prefix = tail_prefix(d, args.tail, config.length, config.depth_budget)
    else:
        prefix = limit_prefix(d, config.length, config.depth_budget)
    if not prefix.converged:
        raise NonConvergenceError(prefix.level, prefix.target, prefix.stable_length, prefix.depth_used)

    if config.output == "jsonl":
        sys.stdout.write(dump(prefix) + "\n")
    else:
        sys.stdout.write(prefix.word.text + "\n")
    return EXIT_OK
