"""counterexample: checks on the primitive S-adic sequence that is not linearly recurrent"""
import argparse

from sadiclab.cli.common import add_output_flags, emit, int_list, mark, verdict, window_default
from sadiclab.schemas.run import RunConfig
from sadiclab.services.examples import verify_gap_lemma, verify_not_lr, verify_telescoping
from sadiclab.services.pool import ordered_map
from sadiclab.utils.errors import ParameterError


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser("counterexample", help="the {a, b, c} counterexample")
    actions = parser.add_subparsers(dest="action", required=True)

    verify = actions.add_parser("verify", help="long return words pulled back through rho_n")
    verify.add_argument("--n", type=int_list, required=True, help="one or more n, comma separated")
    verify.add_argument("--window", type=int, default=None, help="symbols of sigma^{n+1} tau (y) scanned")
    verify.add_argument("--x-window", type=int, default=1_000_000,
                        help="largest x-prefix generated for the cross-check")
    verify.add_argument("--depth-budget", type=int, default=None)
    add_output_flags(verify)
    verify.set_defaults(handler=run_verify, input_flags=())

    gap = actions.add_parser("gap-lemma", help="gaps of ca in sigma^n tau (z)")
    gap.add_argument("--n", type=int_list, required=True)
    gap.add_argument("--window", type=int, default=None)
    gap.add_argument("--depth-budget", type=int, default=None)
    add_output_flags(gap)
    gap.set_defaults(handler=run_gap_lemma, input_flags=())

    telescoping = actions.add_parser("telescoping", help="x = rho_n sigma^{n+1} tau (y) on a prefix")
    telescoping.add_argument("--n", type=int_list, required=True)
    telescoping.add_argument("--len", dest="length", type=int, required=True)
    telescoping.add_argument("--depth-budget", type=int, default=None)
    add_output_flags(telescoping)
    telescoping.set_defaults(handler=run_telescoping, input_flags=())


def run_verify(args: argparse.Namespace, config: RunConfig) -> int:
    window = window_default(config.window)
    if args.x_window < 1:
        raise ParameterError("x_window", "--x-window must be positive")
    reports = ordered_map(lambda n: verify_not_lr(n, window, args.x_window, config.depth_budget), config.n)
    emit(reports, config.output, lambda r: (
        f"n={r.n}: |w|={r.w_length} >= {r.w_bound}: {mark(r.w_length >= r.w_bound)}; "
        f"rho_n(ca) exactly twice: {mark(r.exactly_twice)}; x-prefix: {mark(r.x_prefix_ok)}; "
        f"ratio {r.ratio} >= {r.ratio_bound}"
    ))
    return verdict(all(r.passed for r in reports), "counterexample verify")


def run_gap_lemma(args: argparse.Namespace, config: RunConfig) -> int:
    window = window_default(config.window)
    reports = ordered_map(lambda n: verify_gap_lemma(n, window, depth_budget=config.depth_budget), config.n)
    emit(reports, config.output, lambda r: (
        f"n={r.n}: {r.occurrences} occurrences of ca, min gap {r.min_gap} >= {r.bound}: "
        f"{mark(r.passed) if r.conclusive else 'inconclusive'}"
        + ("" if r.strict is None else f" (strict: {'yes' if r.strict else 'no'})")
    ))
    return verdict(all(r.passed for r in reports), "gap-lemma")


def run_telescoping(args: argparse.Namespace, config: RunConfig) -> int:
    reports = ordered_map(lambda n: verify_telescoping(n, config.length, config.depth_budget), config.n)
    emit(reports, config.output, lambda r: (
        f"n={r.n}: {r.length} symbols: {mark(r.passed)}"
        + ("" if r.first_mismatch is None else f" (first mismatch at {r.first_mismatch})")
    ))
    return verdict(all(r.passed for r in reports), "telescoping")
