"""lr-check: primitivity window, D_n observations and the return-ratio profile of a directive"""
import argparse
import sys

from sadiclab.cli.common import (
    add_directive_flags,
    add_output_flags,
    dump,
    mark,
    resolve_directive,
    verdict,
    window_default,
)
from sadiclab.config import settings
from sadiclab.schemas.run import RunConfig
from sadiclab.schemas.word import TwoSidedWindow
from sadiclab.services.returns import lr_ratio_estimate
from sadiclab.services.sadic import check_primitive_window, limit_prefix, lr_sufficient_report
from sadiclab.utils.errors import NonConvergenceError, ParameterError


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser("lr-check", help="evidence for or against linear recurrence")
    add_directive_flags(parser)
    parser.add_argument("--levels", type=int, default=None, help="D_n for n = 0..levels")
    parser.add_argument("--window", type=int, default=None, help="symbols generated per tail")
    parser.add_argument("--s0", type=int, default=None, help="also check the primitivity window with this s0")
    parser.add_argument("--r-max", type=int, default=None, help="levels inspected by the primitivity check")
    parser.add_argument("--max-u-len", type=int, default=None, help="also emit the return-ratio profile")
    parser.add_argument("--expect", choices=("lr", "non-lr"), default=None,
                        help="exit 1 when the D_n verdict disagrees")
    add_output_flags(parser)
    parser.set_defaults(handler=run, input_flags=("directive",))


def run(args: argparse.Namespace, config: RunConfig) -> int:
    d = resolve_directive(args)
    levels = config.levels if config.levels is not None else settings.DEFAULT_LR_LEVELS
    window = window_default(config.window)
    out = sys.stdout
    passed = True

    s0 = args.s0 if args.s0 is not None else d.primitivity_constant
    if s0 is not None:
        if args.r_max is not None and args.r_max < 0:
            raise ParameterError("r_max", "--r-max must be non-negative")
        primitivity = check_primitive_window(d, args.r_max if args.r_max is not None else levels, s0)
        passed = passed and primitivity.passed
        if config.output == "jsonl":
            out.write(dump(primitivity) + "\n")
        else:
            out.write(f"primitivity window s0={s0}, levels 0..{primitivity.r_max}: {mark(primitivity.passed)}\n")
            for row in primitivity.rows:
                if not row.positive:
                    out.write(f"  level {row.level} ({row.block}): missing {row.missing}\n")

    report = lr_sufficient_report(d, levels, window, config.depth_budget)
    if config.output == "jsonl":
        out.write(dump(report) + "\n")
    else:
        for row in report.rows:
            flag = " (window may under-observe)" if row.truncated else ""
            out.write(f"D_{row.level} >= {row.observed}{flag}\n")
        out.write(f"verdict: {report.verdict} ({report.note})\n")
    if args.expect is not None:
        passed = passed and (report.growing == (args.expect == "non-lr"))

    if config.max_u_len:
        prefix = limit_prefix(d, window, config.depth_budget)
        if not prefix.converged:
            raise NonConvergenceError(0, window, prefix.stable_length, prefix.depth_used)
        profile = lr_ratio_estimate(TwoSidedWindow(word=prefix.word), config.max_u_len)
        if config.output == "jsonl":
            for row in profile.rows:
                out.write(dump(row) + "\n")
        else:
            for row in profile.rows:
                out.write(f"|u|={row.length}\tmax|w|={row.max_return_length}\tratio={row.ratio}\n")
            out.write(f"max ratio: {profile.max_ratio}\n")
    return verdict(passed, "lr-check")
