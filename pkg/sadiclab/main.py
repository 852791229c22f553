"""Command-line entry point: argument parsing, logging setup and the exit-code contract"""
import argparse
import json
import logging
import sys
from typing import List, Optional

from sadiclab import __version__
from sadiclab.cli import complexity, counterexample, derive, gen, lr_check, returns, sturmian
from sadiclab.config import settings
from sadiclab.schemas.run import RunConfig
from sadiclab.utils.errors import ResourceLimitError, SadicError, UsageError

logger = logging.getLogger(__name__)

COMMANDS = (gen, complexity, returns, derive, lr_check, counterexample, sturmian)


class ArgumentParser(argparse.ArgumentParser):
    """argparse that raises instead of exiting, so usage errors share the JSON failure line"""

    def error(self, message: str):
        raise UsageError(message, self.format_usage().strip())


def build_parser() -> argparse.ArgumentParser:
    parser = ArgumentParser(
        prog="sadiclab",
        description="S-adic sequences, return words and linear recurrence checks"
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    subparsers = parser.add_subparsers(dest="command", required=True, parser_class=ArgumentParser)
    for command in COMMANDS:
        command.register(subparsers)
    return parser


def configure_logging(verbosity: int) -> None:
    """stderr only, no timestamps; -v info, -vv debug, -q errors only"""
    if verbosity < 0:
        level = logging.ERROR
    elif verbosity == 1:
        level = logging.INFO
    elif verbosity >= 2:
        level = logging.DEBUG
    else:
        level = getattr(logging, settings.LOG_LEVEL.upper(), logging.WARNING)
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter("%(levelname)s %(name)s: %(message)s"))
    root = logging.getLogger()
    root.handlers[:] = [handler]
    root.setLevel(level)


def fail(error: SadicError) -> int:
    sys.stderr.write(json.dumps(error.to_dict(), sort_keys=True) + "\n")
    return error.exit_code


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SadicError as e:
        return fail(e)
    configure_logging(args.verbosity)

    try:
        config = RunConfig.from_namespace(args, inputs=args.input_flags)
        logger.debug(f"running {config.command} with {config.model_dump(exclude_defaults=True)}")
        return args.handler(args, config)
    except SadicError as e:
        logger.debug(f"{args.command} failed: {e.error_code}")
        return fail(e)
    except MemoryError:
        return fail(ResourceLimitError("out of memory; lower --window or --len"))


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
