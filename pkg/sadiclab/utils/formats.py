"""
Text file formats: sequences, windows, morphisms and directives.

Sequence files hold one line of symbols (characters, or whitespace-separated
tokens) with optional `alphabet:` and, for windows, `origin:` header lines.
Morphism files hold `letter -> image` lines with optional `domain:` and
`codomain:` headers. Directive files hold `seed:`, `use FILE` and
`pattern: <name> <params>` lines. `#` starts a comment line everywhere.
"""
from pathlib import Path
from typing import Dict, Iterator, List, Optional, Tuple, Union

from sadiclab.schemas.morphism import Morphism
from sadiclab.schemas.run import DirectiveFile
from sadiclab.schemas.word import Alphabet, TwoSidedWindow, Word
from sadiclab.utils.errors import InputFormatError, SadicError

PathLike = Union[str, Path]


def _lines(path: PathLike) -> Iterator[Tuple[int, str]]:
    """(line number, stripped text) of the meaningful lines"""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise InputFormatError(str(path), 0, f"cannot read file: {e.strerror}") from None
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line and not line.startswith("#"):
            yield number, line


def _header(line: str) -> Optional[Tuple[str, str]]:
    key, sep, value = line.partition(":")
    if sep and key.strip().isidentifier():
        return key.strip().lower(), value.strip()
    return None


def parse_symbols(text: str, alphabet: Optional[Alphabet] = None) -> Word:
    """Characters when no whitespace separates them, tokens otherwise; the alphabet defaults to the sorted symbols"""
    if alphabet is not None:
        return Word.parse(text, alphabet)
    tokens = text.split() if any(ch.isspace() for ch in text.strip()) else list(text.strip())
    return Word.from_tokens(tokens, Alphabet.of(sorted(set(tokens))))


def read_window(path: PathLike) -> TwoSidedWindow:
    """Window file; a plain sequence file reads as a window with origin 0"""
    origin = 0
    alphabet: Optional[Alphabet] = None
    body: List[Tuple[int, str]] = []
    for number, line in _lines(path):
        header = _header(line)
        if header and header[0] == "origin":
            try:
                origin = int(header[1])
            except ValueError:
                raise InputFormatError(str(path), number, f"origin must be an integer, got {header[1]!r}") from None
        elif header and header[0] == "alphabet":
            try:
                alphabet = Alphabet.of(header[1].split())
            except SadicError as e:
                raise InputFormatError(str(path), number, e.message) from None
        else:
            body.append((number, line))

    if len(body) != 1:
        line = body[1][0] if len(body) > 1 else 0
        raise InputFormatError(str(path), line, f"expected exactly one line of symbols, found {len(body)}")
    number, text = body[0]
    try:
        word = parse_symbols(text, alphabet)
    except (SadicError, ValueError) as e:
        raise InputFormatError(str(path), number, getattr(e, "message", str(e))) from None
    if not 0 <= origin <= len(word):
        raise InputFormatError(str(path), 0, f"origin {origin} outside [0, {len(word)}]")
    return TwoSidedWindow(word=word, origin=origin)


def read_sequence(path: PathLike) -> Word:
    return read_window(path).word


def format_window(x: TwoSidedWindow, alphabet_header: bool = True) -> str:
    lines = []
    if alphabet_header:
        lines.append(f"alphabet: {' '.join(x.alphabet.symbols)}")
    if x.origin:
        lines.append(f"origin: {x.origin}")
    lines.append(x.word.text)
    return "\n".join(lines) + "\n"


def write_window(x: TwoSidedWindow, path: PathLike) -> None:
    Path(path).write_text(format_window(x), encoding="utf-8")


def write_sequence(w: Word, path: PathLike) -> None:
    write_window(TwoSidedWindow(word=w), path)


def parse_morphism(text: str, source: str = "<string>", name: Optional[str] = None) -> Morphism:
    domain: Optional[Alphabet] = None
    codomain: Optional[Alphabet] = None
    mapping: Dict[str, str] = {}
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        header = _header(line)
        if header and header[0] in ("domain", "codomain"):
            try:
                alphabet = Alphabet.of(header[1].split())
            except SadicError as e:
                raise InputFormatError(source, number, e.message) from None
            if header[0] == "domain":
                domain = alphabet
            else:
                codomain = alphabet
            continue
        letter, arrow, image = line.partition("->")
        letter, image = letter.strip(), image.strip()
        if not arrow or not letter or " " in letter:
            raise InputFormatError(source, number, f"expected 'letter -> image', got {line!r}")
        if not image:
            raise InputFormatError(source, number, f"image of {letter!r} is empty")
        if letter in mapping:
            raise InputFormatError(source, number, f"letter {letter!r} is mapped twice")
        mapping[letter] = image

    if not mapping:
        raise InputFormatError(source, 0, "no 'letter -> image' lines")
    if domain is not None and set(domain.symbols) != set(mapping):
        raise InputFormatError(source, 0, "domain header does not match the mapped letters")
    if domain is not None:
        mapping = {letter: mapping[letter] for letter in domain.symbols}
    try:
        m = Morphism.from_mapping(mapping, domain=domain, codomain=codomain, name=name)
    except SadicError as e:
        raise InputFormatError(source, 0, e.message) from None
    except ValueError as e:
        raise InputFormatError(source, 0, str(e)) from None
    return m


def read_morphism(path: PathLike, name: Optional[str] = None) -> Morphism:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise InputFormatError(str(path), 0, f"cannot read file: {e.strerror}") from None
    return parse_morphism(text, source=str(path), name=name or Path(path).stem)


def format_morphism(m: Morphism, comment: Optional[str] = None) -> str:
    """Morphism file text; the alphabet headers make it unambiguous to read back"""
    lines = []
    if comment:
        lines.extend(f"# {part}" for part in comment.splitlines())
    lines.append(f"domain: {' '.join(m.domain.symbols)}")
    lines.append(f"codomain: {' '.join(m.codomain.symbols)}")
    for letter, image in zip(m.domain.symbols, m.images):
        lines.append(f"{letter} -> {image.text}")
    return "\n".join(lines) + "\n"


def write_morphism(m: Morphism, path: PathLike, comment: Optional[str] = None) -> None:
    Path(path).write_text(format_morphism(m, comment), encoding="utf-8")


def read_directive(path: PathLike) -> DirectiveFile:
    """`use` paths are relative to the directive file"""
    base = Path(path).parent
    seed: Optional[str] = None
    head: List[Morphism] = []
    pattern: Optional[str] = None
    params: List[str] = []
    periodic = False
    for number, line in _lines(path):
        if pattern is not None:
            raise InputFormatError(str(path), number, "nothing may follow a 'pattern:' line")
        if line.startswith("use "):
            target = base / line[4:].strip()
            head.append(read_morphism(target, name=target.stem))
            continue
        header = _header(line)
        if header is None:
            raise InputFormatError(str(path), number, f"unrecognised line {line!r}")
        key, value = header
        if key == "seed":
            if not value or " " in value:
                raise InputFormatError(str(path), number, "seed must be a single letter")
            seed = value
        elif key == "pattern":
            parts = value.split()
            if not parts:
                raise InputFormatError(str(path), number, "pattern needs a name")
            pattern, params = parts[0].lower(), parts[1:]
        elif key == "periodic":
            periodic = value.lower() in ("1", "true", "yes")
        else:
            raise InputFormatError(str(path), number, f"unknown header {key!r}")

    if not head and pattern is None:
        raise InputFormatError(str(path), 0, "directive has neither 'use' nor 'pattern:' lines")
    if head and seed is None:
        raise InputFormatError(str(path), 0, "'seed:' is required with 'use' lines")
    if periodic and pattern is not None:
        raise InputFormatError(str(path), 0, "'periodic:' cannot be combined with 'pattern:'")
    return DirectiveFile(
        path=str(path),
        seed=seed,
        head=head,
        pattern=pattern,
        params=params,
        periodic=periodic
    )
