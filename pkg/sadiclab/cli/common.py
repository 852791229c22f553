"""Shared flags, directive resolution and report output for the subcommands"""
import argparse
import json
import sys
from fractions import Fraction
from typing import Callable, Iterable, List, Optional, TextIO

from pydantic import BaseModel

from sadiclab.config import settings
from sadiclab.schemas.directive import DirectiveSequence, seed_prolongs
from sadiclab.schemas.examples import SturmianSpec
from sadiclab.schemas.run import DirectiveFile
from sadiclab.services.examples import counterexample_directive, sturmian_directive
from sadiclab.utils.errors import EXIT_OK, CheckFailedError, DirectiveError, ParameterError
from sadiclab.utils.formats import read_directive

BUILTINS = ("counterexample", "sturmian", "golden")


def add_output_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--format", dest="output", choices=("text", "jsonl"), default="text",
                        help="human-readable text or one JSON object per line")
    parser.add_argument("-v", "--verbose", dest="verbosity", action="count", default=0)
    parser.add_argument("-q", "--quiet", dest="verbosity", action="store_const", const=-1)


def add_directive_flags(parser: argparse.ArgumentParser, required: bool = True) -> None:
    source = parser.add_mutually_exclusive_group(required=required)
    source.add_argument("--directive", help="directive file")
    source.add_argument("--builtin", choices=BUILTINS, help="built-in directive")
    parser.add_argument("--cf", help="Sturmian quotients i1,i2,... for --builtin sturmian")
    parser.add_argument("--extend", choices=("cycle", "linear", "none"), default="cycle",
                        help="how Sturmian quotients continue past the list")
    parser.add_argument("--depth-budget", type=int, default=None)


def ratio(text: str) -> Fraction:
    """'3', '5/2' or '2.5' as an exact rational"""
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"expected a ratio such as 3 or 5/2, got {text!r}") from None


def int_list(text: str) -> List[int]:
    """'1,2,3' -> [1, 2, 3]"""
    try:
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def sturmian_spec(cf: Optional[str], extend: str) -> SturmianSpec:
    if not cf:
        raise ParameterError("cf", "--cf is required for Sturmian directives")
    try:
        return SturmianSpec(quotients=tuple(int_list(cf)), extend=extend)
    except (ValueError, argparse.ArgumentTypeError) as e:
        raise ParameterError("cf", str(e).splitlines()[0] if str(e) else "invalid quotients") from None


def builtin_directive(name: str, params: List[str]) -> DirectiveSequence:
    """
    counterexample [first_block] | sturmian <i1,i2,...> [cycle|linear|none] | golden
    """
    if name == "counterexample":
        try:
            first = int(params[0]) if params else 1
        except ValueError:
            raise DirectiveError(
                f"counterexample pattern takes a first block number, got {params[0]!r}"
            ) from None
        return counterexample_directive(first)
    if name == "golden":
        return sturmian_directive(SturmianSpec(quotients=(0, 1)))
    if name == "sturmian":
        if not params:
            raise DirectiveError("sturmian pattern needs a quotient list")
        return sturmian_directive(sturmian_spec(params[0], params[1] if len(params) > 1 else "cycle"))
    raise DirectiveError(f"unknown builtin pattern {name!r}")


def directive_from_file(spec: DirectiveFile) -> DirectiveSequence:
    """A finite head of morphisms, then the builtin pattern, or the head repeated"""
    tail = builtin_directive(spec.pattern, spec.params) if spec.pattern else None
    seed = spec.seed or (tail.seed if tail else None)
    if not spec.head:
        if spec.seed is None or spec.seed == tail.seed:
            return tail
        return tail.model_copy(update={"seed": seed, "seed_prolongable": False})
    if spec.periodic:
        return DirectiveSequence.periodic(spec.head, seed, description=spec.path)
    if tail is None:
        return DirectiveSequence.from_list(spec.head, seed, description=spec.path)

    head = list(spec.head)

    def rule(n: int):
        return head[n] if n < len(head) else tail.morphism(n - len(head))

    return DirectiveSequence(
        rule=rule,
        seed=seed,
        description=f"{spec.path} then {tail.description}",
        seed_prolongable=seed_prolongs(head, seed) and seed == tail.seed and tail.seed_prolongable
    )


def resolve_directive(args: argparse.Namespace) -> DirectiveSequence:
    if getattr(args, "directive", None):
        return directive_from_file(read_directive(args.directive))
    if args.builtin == "sturmian":
        return sturmian_directive(sturmian_spec(args.cf, args.extend))
    return builtin_directive(args.builtin, [])


def dump(model: BaseModel) -> str:
    """One JSON line, keys sorted"""
    return json.dumps(model.model_dump(mode="json"), sort_keys=True, ensure_ascii=False)


def emit(
    models: Iterable[BaseModel],
    output: str,
    text: Callable[[BaseModel], str],
    stream: Optional[TextIO] = None
) -> None:
    out = stream or sys.stdout
    for model in models:
        out.write((dump(model) if output == "jsonl" else text(model)) + "\n")


def window_default(value: Optional[int]) -> int:
    return value if value is not None else settings.DEFAULT_WINDOW


def verdict(passed: bool, check: str) -> int:
    """Exit 0, or raise so that main writes the failure line and exits 1"""
    if not passed:
        raise CheckFailedError(check)
    return EXIT_OK


def mark(passed: Optional[bool]) -> str:
    if passed is None:
        return "-"
    return "ok" if passed else "FAIL"
