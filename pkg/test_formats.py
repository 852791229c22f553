"""Sequence, window, morphism and directive files"""
import pytest

from sadiclab.schemas.word import Alphabet, TwoSidedWindow
from sadiclab.services.examples import SIGMA
from sadiclab.utils.errors import InputFormatError
from sadiclab.utils.formats import (
    format_morphism,
    parse_morphism,
    parse_symbols,
    read_directive,
    read_morphism,
    read_sequence,
    read_window,
    write_morphism,
    write_window,
)


def test_parse_symbols_infers_sorted_alphabet():
    w = parse_symbols("cab")
    assert w.alphabet.symbols == ("a", "b", "c")
    assert w.symbols == (2, 0, 1)


def test_parse_symbols_tokens():
    w = parse_symbols("10 2 10")
    assert w.alphabet.symbols == ("10", "2")
    assert w.tokens == ["10", "2", "10"]


def test_window_file(tmp_path):
    path = tmp_path / "x.txt"
    path.write_text("# golden\nalphabet: 0 1\norigin: 2\n01101\n", encoding="utf-8")
    x = read_window(path)
    assert x.origin == 2
    assert x.slice(0, 3).text == "101"
    assert read_sequence(path).text == "01101"


def test_window_round_trip(tmp_path):
    x = TwoSidedWindow(word=Alphabet.of("abc").word("acbbab"), origin=3)
    write_window(x, tmp_path / "w.txt")
    assert read_window(tmp_path / "w.txt") == x


@pytest.mark.parametrize("text, line", [
    ("origin: x\nab\n", 1),
    ("ab\nba\n", 2),
    ("alphabet: a b\nabc\n", 2),
    ("origin: 5\nab\n", 0),
])
def test_bad_window_files(tmp_path, text, line):
    path = tmp_path / "bad.txt"
    path.write_text(text, encoding="utf-8")
    with pytest.raises(InputFormatError) as e:
        read_window(path)
    assert e.value.details["line"] == line


def test_missing_file(tmp_path):
    with pytest.raises(InputFormatError):
        read_window(tmp_path / "absent.txt")


def test_parse_morphism():
    m = parse_morphism("# sigma\na -> acb\nb -> bab\nc -> cbc\n", name="sigma")
    assert m == SIGMA
    assert m.name == "sigma"


def test_morphism_headers_fix_the_codomain():
    m = parse_morphism("domain: 1 2\ncodomain: a b c\n1 -> ab\n2 -> a\n")
    assert m.codomain.symbols == ("a", "b", "c")
    assert m.image("2").text == "a"


@pytest.mark.parametrize("text", [
    "a -> ab\na -> b\n",
    "a ab\n",
    "a ->\n",
    "",
    "domain: a b\na -> ab\n",
])
def test_bad_morphisms(text):
    with pytest.raises(InputFormatError):
        parse_morphism(text)


def test_morphism_file_round_trip(tmp_path):
    path = tmp_path / "sigma.morph"
    write_morphism(SIGMA, path, comment="sigma")
    assert format_morphism(SIGMA, "sigma").startswith("# sigma\n")
    assert read_morphism(path) == SIGMA
    assert read_morphism(path).name == "sigma"


def test_directive_file(tmp_path):
    write_morphism(SIGMA, tmp_path / "sigma.morph")
    path = tmp_path / "d.txt"
    path.write_text("seed: a\nuse sigma.morph\nperiodic: yes\n", encoding="utf-8")
    spec = read_directive(path)
    assert spec.seed == "a"
    assert spec.head == [SIGMA]
    assert spec.periodic
    assert spec.pattern is None


def test_directive_pattern(tmp_path):
    path = tmp_path / "d.txt"
    path.write_text("pattern: sturmian 0,1 cycle\n", encoding="utf-8")
    spec = read_directive(path)
    assert spec.pattern == "sturmian"
    assert spec.params == ["0,1", "cycle"]


@pytest.mark.parametrize("text", [
    "use sigma.morph\n",
    "seed: a\n",
    "pattern: counterexample\nseed: a\n",
    "colour: red\n",
    "seed: a\nuse sigma.morph\npattern: golden\nperiodic: yes\n",
])
def test_bad_directives(tmp_path, text):
    write_morphism(SIGMA, tmp_path / "sigma.morph")
    path = tmp_path / "d.txt"
    path.write_text(text, encoding="utf-8")
    with pytest.raises(InputFormatError):
        read_directive(path)
