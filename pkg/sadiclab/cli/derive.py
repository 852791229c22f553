"""derive: the derived tower lambda_0, lambda_1, ... of a two-sided window"""
import argparse
import sys
from pathlib import Path

from sadiclab.cli.common import add_directive_flags, add_output_flags, dump, mark, resolve_directive, verdict
from sadiclab.schemas.returns import DerivedTower, TowerLevelSummary
from sadiclab.schemas.run import RunConfig
from sadiclab.services.returns import build_tower, build_tower_from_directive
from sadiclab.utils.errors import ParameterError
from sadiclab.utils.formats import format_morphism, read_window, write_morphism


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser("derive", help="derived morphisms of the return-word tower")
    add_directive_flags(parser, required=False)
    parser.add_argument("--input", help="window file with an origin: header")
    parser.add_argument("--K", type=int, required=True, help="linear recurrence constant, at least 2")
    parser.add_argument("--levels", type=int, required=True)
    parser.add_argument("--out-dir", help="write lambda<n>.morph files here instead of stdout")
    add_output_flags(parser)
    parser.set_defaults(handler=run, input_flags=("directive", "input"))


def run(args: argparse.Namespace, config: RunConfig) -> int:
    if bool(args.input) == bool(args.directive or args.builtin):
        raise ParameterError("input", "give exactly one of --input, --directive or --builtin")
    if args.input:
        tower = build_tower(read_window(args.input), config.K, config.levels)
    else:
        tower = build_tower_from_directive(resolve_directive(args), config.K, config.levels,
                                           depth_budget=config.depth_budget)

    _write_morphisms(tower, args.out_dir, config.output)
    out = sys.stdout
    for level in tower.levels:
        summary = TowerLevelSummary.of(tower, level)
        if config.output == "jsonl":
            out.write(dump(summary) + "\n")
        else:
            longest = "-" if summary.max_image_length is None else summary.max_image_length
            out.write(
                f"level {summary.level}: |u|=|v|={summary.window_length} "
                f"#R={summary.size}/{summary.size_bound} max|lambda(b)|={longest}/{summary.length_bound} "
                f"identity={mark(summary.identity_ok)} proper={mark(None if level.level == 0 else summary.proper is not None)} "
                f"positive={mark(summary.positive)}\n"
            )
    if config.output == "jsonl":
        out.write(dump(tower.model_copy(update={"levels": []})) + "\n")
    else:
        out.write(f"reconstruction: {mark(tower.reconstruction_ok)}\n")
        for line in tower.diagnoses:
            out.write(f"  {line}\n")
    return verdict(_passed(tower), "derived tower")


def _passed(tower: DerivedTower) -> bool:
    levels = tower.levels[1:]
    return (
        tower.bounds_ok
        and tower.reconstruction_ok
        and all(level.identity_ok for level in tower.levels)
        and all(level.proper is not None and level.positive for level in levels)
    )


def _write_morphisms(tower: DerivedTower, out_dir, output: str) -> None:
    """lambda<n>.morph per level; on stdout only in text mode without --out-dir"""
    for level in tower.levels:
        comment = f"lambda{level.level}: R{level.level} -> " + (f"R{level.level - 1}" if level.level else "A")
        if out_dir:
            directory = Path(out_dir)
            directory.mkdir(parents=True, exist_ok=True)
            write_morphism(level.morphism, directory / f"lambda{level.level}.morph", comment)
        elif output == "text":
            sys.stdout.write(format_morphism(level.morphism, comment) + "\n")
