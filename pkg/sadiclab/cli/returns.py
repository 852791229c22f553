"""returns: the ordered return-word table to u.v in a window"""
import argparse
import sys

from sadiclab.cli.common import add_output_flags, dump, verdict
from sadiclab.schemas.returns import CodeRow, OracleRow, ReturnWordRow
from sadiclab.schemas.run import RunConfig
from sadiclab.schemas.word import Word
from sadiclab.services.returns import brute_force_return_words, encode, return_words
from sadiclab.utils.errors import EXIT_OK, ParameterError, SadicError
from sadiclab.utils.formats import read_window


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser("returns", help="return words to u.v in a window")
    parser.add_argument("--input", required=True, help="window file (origin: header sets position 0)")
    parser.add_argument("--u", default="", help="left context (may be empty)")
    parser.add_argument("--v", required=True, help="right context (non-empty)")
    parser.add_argument("--K", type=int, default=None, help="mark completeness against 2K(K+1)|uv|")
    parser.add_argument("--encode", dest="encode_from", type=int, default=None,
                        help="also code the window from this occurrence of uv")
    parser.add_argument("--count", type=int, default=10, help="return words to code with --encode")
    parser.add_argument("--check-oracle", action="store_true",
                        help="compare the table with a symbol-by-symbol scan")
    add_output_flags(parser)
    parser.set_defaults(handler=run, input_flags=("input",))


def _pattern(text: str, x, name: str) -> Word:
    try:
        return Word.parse(text, x.alphabet)
    except SadicError as e:
        raise ParameterError(name, f"--{name}: {e.message}") from None


def run(args: argparse.Namespace, config: RunConfig) -> int:
    x = read_window(args.input)
    u, v = _pattern(args.u, x, "u"), _pattern(args.v, x, "v")
    table = return_words(x, u, v, K=config.K)

    rows = [
        ReturnWordRow(k=k, word=w.text, length=len(w), count=count, first_position=position)
        for k, (w, count, position) in enumerate(zip(table.returns, table.counts, table.first_positions), start=1)
    ]
    out = sys.stdout
    if config.output == "jsonl":
        for row in rows:
            out.write(dump(row) + "\n")
    else:
        out.write("\n".join(table.lines()) + "\n")
        if not table.complete:
            sys.stderr.write(f"note: table not window-complete ({table.occurrences} occurrences scanned)\n")

    if args.encode_from is not None:
        if args.count < 1:
            raise ParameterError("count", "--count must be positive")
        code = encode(table, x, args.encode_from, args.count)
        out.write((dump(CodeRow(code=code.text, length=len(code))) if config.output == "jsonl" else f"code\t{code.text}") + "\n")

    if args.check_oracle:
        agree = set(table.returns) == brute_force_return_words(x, u, v)
        if config.output == "jsonl":
            out.write(dump(OracleRow(oracle_agrees=agree)) + "\n")
        else:
            out.write(f"oracle\t{'agrees' if agree else 'DIFFERS'}\n")
        return verdict(agree, "return-word oracle")
    return EXIT_OK
