"""sturmian: directives from partial quotients, block identities, gap bounds and the LR verdict"""
import argparse
import sys

from sadiclab.cli.common import add_output_flags, dump, int_list, mark, sturmian_spec, verdict, window_default
from sadiclab.config import settings
from sadiclab.schemas.run import RunConfig
from sadiclab.services.examples import (
    all_triples,
    contrast_profiles,
    sturmian_directive,
    sturmian_lr_verdict,
    verify_block_identities,
    verify_sturmian_gaps,
)
from sadiclab.services.sadic import limit_prefix
from sadiclab.utils.errors import NonConvergenceError, ParameterError


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser("sturmian", help="Sturmian directives tau^i1 sigma^i2 tau^i3 ...")
    parser.add_argument("--cf", required=True, help="quotients i1,i2,i3,... (i1 may be 0)")
    parser.add_argument("--extend", choices=("cycle", "linear", "none"), default="cycle")
    parser.add_argument("--len", dest="length", type=int, default=None, help="print a prefix of this length")
    parser.add_argument("--depth-budget", type=int, default=None)
    parser.add_argument("--verdict", action="store_true", help="D_n per triple against 2 max + 3")
    parser.add_argument("--levels", type=int, default=None)
    parser.add_argument("--window", type=int, default=None)
    parser.add_argument("--max-u-len", type=int, default=None, help="return-ratio profile up to this length")
    parser.add_argument("--check-blocks", type=_triple, default=None, metavar="i,j,k",
                        help="closed forms of tau^i sigma^j tau^k and sigma^i tau^j sigma^k")
    parser.add_argument("--upto", action="store_true", help="with --check-blocks: every triple up to i,j,k")
    parser.add_argument("--gaps", type=_triple, default=None, metavar="i,j,k",
                        help="length-2 gaps of the block image of a generated prefix")
    parser.add_argument("--form", choices=("tau", "sigma"), default="tau")
    parser.add_argument("--contrast", default=None, help="second quotient list whose ratios must exceed these")
    parser.add_argument("--contrast-extend", choices=("cycle", "linear", "none"), default="linear")
    add_output_flags(parser)
    parser.set_defaults(handler=run, input_flags=())


def _triple(text: str):
    values = int_list(text)
    if len(values) != 3:
        raise argparse.ArgumentTypeError(f"expected i,j,k, got {text!r}")
    return tuple(values)


def run(args: argparse.Namespace, config: RunConfig) -> int:
    spec = sturmian_spec(args.cf, args.extend)
    window = window_default(config.window)
    out = sys.stdout
    passed = True
    acted = False

    if config.length:
        acted = True
        prefix = limit_prefix(sturmian_directive(spec), config.length, config.depth_budget)
        if not prefix.converged:
            raise NonConvergenceError(0, config.length, prefix.stable_length, prefix.depth_used)
        out.write((dump(prefix) if config.output == "jsonl" else prefix.word.text) + "\n")

    if args.check_blocks:
        acted = True
        i, j, k = args.check_blocks
        triples = all_triples(i, j, k) if args.upto else [(i, j, k)]
        report = verify_block_identities(triples)
        passed = passed and report.passed
        if config.output == "jsonl":
            for row in report.rows:
                out.write(dump(row) + "\n")
        else:
            bad = [r for r in report.rows if not r.equal]
            out.write(f"block identities: {len(report.rows) - len(bad)}/{len(report.rows)} equal\n")
            for r in bad:
                out.write(f"  ({r.i},{r.j},{r.k}) {r.form} {r.letter}: {r.computed} != {r.closed_form}\n")

    if args.gaps:
        acted = True
        i, j, k = args.gaps
        tail = limit_prefix(sturmian_directive(spec), window, config.depth_budget)
        if not tail.converged:
            raise NonConvergenceError(0, window, tail.stable_length, tail.depth_used)
        report = verify_sturmian_gaps(i, j, k, tail.word, args.form)
        passed = passed and report.passed
        if config.output == "jsonl":
            out.write(dump(report) + "\n")
        else:
            gaps = ", ".join(f"{f}: {g}" for f, g in report.per_factor.items())
            out.write(f"gaps of ({i},{j},{k}) {args.form}: {gaps}; bound {report.bound}: {mark(report.passed)}; "
                      f"per-factor bounds {report.sub_bounds}: {mark(report.sub_bounds_ok)}\n")

    if args.verdict:
        acted = True
        levels = config.levels if config.levels is not None else settings.DEFAULT_LR_LEVELS
        report = sturmian_lr_verdict(spec, levels, window, config.max_u_len, config.depth_budget)
        passed = passed and report.passed
        if config.output == "jsonl":
            out.write(dump(report) + "\n")
        else:
            for row in report.rows:
                out.write(f"level {row.level} {row.form} {row.exponents}: D >= {row.observed} "
                          f"<= {row.bound}: {mark(row.within)}\n")
            out.write(f"verdict: {report.verdict} ({report.note})\n")
            if report.profile is not None:
                out.write(f"max return ratio up to |u|={config.max_u_len}: {report.profile.max_ratio}\n")

    if args.contrast:
        acted = True
        if not config.max_u_len:
            raise ParameterError("max_u_len", "--contrast needs --max-u-len")
        other = sturmian_spec(args.contrast, args.contrast_extend)
        report = contrast_profiles(spec, other, window, config.max_u_len, config.depth_budget)
        passed = passed and report.passed
        if config.output == "jsonl":
            out.write(dump(report) + "\n")
        else:
            out.write(f"max ratio {report.base}: {report.base_max}; {report.other}: {report.other_max}: "
                      f"{mark(report.passed)}\n")

    if not acted:
        raise ParameterError("sturmian", "nothing to do: give --len, --verdict, --check-blocks, --gaps or --contrast")
    return verdict(passed, "sturmian")
