"""Alphabets, words, windows and the scanning primitives"""
import random

import pytest

from sadiclab.schemas.word import Alphabet, TwoSidedWindow, Word
from sadiclab.services.words import (
    common_prefix_length,
    complexity,
    complexity_profile,
    factors,
    max_gap,
    max_gap_over_length2,
    occurrences,
)
from sadiclab.utils.errors import (
    AlphabetError,
    AlphabetMismatchError,
    EmptyPatternError,
    LengthError,
    OutOfWindowError,
)


class TestAlphabet:
    def test_duplicate_tokens_rejected(self):
        with pytest.raises(AlphabetError):
            Alphabet.of("aba")

    def test_empty_rejected(self):
        with pytest.raises(AlphabetError):
            Alphabet.of([])

    def test_unknown_token(self, abc):
        with pytest.raises(AlphabetError):
            abc.index("d")

    def test_numbered(self):
        assert Alphabet.numbered(3).symbols == ("1", "2", "3")

    def test_multi_character_tokens(self):
        alphabet = Alphabet.of(["10", "11"])
        w = Word.parse("10 11 10", alphabet)
        assert w.symbols == (0, 1, 0)
        assert w.text == "10 11 10"


class TestWord:
    def test_codes_are_indices(self, abc):
        w = abc.word("cab")
        assert w.symbols == (2, 0, 1)
        assert w.tokens == ["c", "a", "b"]
        assert len(w) == 3

    def test_from_symbols_validates(self, abc):
        with pytest.raises(ValueError):
            Word.from_symbols(abc, [0, 3])

    def test_concatenation_needs_same_alphabet(self, abc):
        with pytest.raises(AlphabetMismatchError):
            abc.word("a") + Alphabet.of("ab").word("a")

    def test_slicing(self, abc):
        w = abc.word("abcabc")
        assert w[1:4] == abc.word("bca")
        with pytest.raises(TypeError):
            w[0]

    def test_equality_includes_alphabet(self):
        assert Alphabet.of("ab").word("ab") != Alphabet.of("abc").word("ab")

    def test_serializes_as_text(self, abc):
        assert abc.word("acb").model_dump() == "acb"


class TestTwoSidedWindow:
    def test_positions(self, abc):
        x = TwoSidedWindow(word=abc.word("abcabc"), origin=2)
        assert (x.start, x.end) == (-2, 4)
        assert x.slice(-2, 0) == abc.word("ab")
        assert x.slice(0, 2) == abc.word("ca")
        assert x.nonnegative() == abc.word("cabc")

    def test_read_outside_raises(self, abc):
        x = TwoSidedWindow(word=abc.word("abc"), origin=1)
        with pytest.raises(OutOfWindowError):
            x.slice(-2, 0)
        with pytest.raises(OutOfWindowError):
            x.slice(0, 3)

    def test_origin_out_of_range(self, abc):
        with pytest.raises(ValueError):
            TwoSidedWindow(word=abc.word("abc"), origin=4)


class TestScanning:
    def test_occurrences_overlap(self, abc):
        assert occurrences(abc.word("aaaa"), abc.word("aa")) == [0, 1, 2]

    def test_occurrences_empty_pattern(self, abc):
        with pytest.raises(EmptyPatternError):
            occurrences(abc.word("abc"), Word.empty(abc))

    def test_factors_and_complexity(self, abc):
        w = abc.word("abab")
        assert factors(w, 2) == {abc.word("ab"), abc.word("ba")}
        assert complexity(w, 0) == 1
        assert complexity(w, 4) == 1
        with pytest.raises(LengthError):
            complexity(w, 5)

    def test_complexity_profile(self, fibonacci_window):
        # Sturmian: p(n) = n + 1
        assert complexity_profile(fibonacci_window.word, 5) == [2, 3, 4, 5, 6]

    def test_max_gap(self, abc):
        w = abc.word("abcaab")
        assert max_gap(w, abc.word("a")) == 3
        assert max_gap(w, abc.word("c")) is None

    def test_length2_gaps(self, fibonacci_window):
        summary = max_gap_over_length2(fibonacci_window.word)
        assert summary.per_factor == {"aa": 5, "ab": 3, "ba": 3}
        assert summary.max_gap == 5
        assert not summary.truncated

    def test_length2_single_occurrence_truncates(self, abc):
        summary = max_gap_over_length2(abc.word("aabab"))
        assert summary.truncated
        assert summary.single_occurrence == ["aa", "ba"]
        assert summary.tail_distance == 5

    def test_length2_keys_use_word_text(self):
        tokens = Alphabet.of(["10", "11"])
        summary = max_gap_over_length2(tokens.word("10 11 10 11 10"))
        assert summary.per_factor == {"10 11": 2, "11 10": 2}
        assert summary.single_occurrence == []

    def test_common_prefix_length(self, abc):
        assert common_prefix_length(abc.word("abca"), abc.word("abcb")) == 3
        assert common_prefix_length(abc.word("ab"), abc.word("abc")) == 2


def _random_word(rng: random.Random, alphabet: Alphabet, length: int) -> Word:
    return Word.from_symbols(alphabet, [rng.randrange(alphabet.size) for _ in range(length)])


class TestScanningProperties:
    @pytest.mark.parametrize("seed", [1, 2, 3])
    def test_occurrences_match_a_direct_scan(self, seed):
        rng = random.Random(seed)
        for _ in range(300):
            alphabet = Alphabet.of("abc"[:rng.choice((2, 3))])
            w = _random_word(rng, alphabet, rng.randint(0, 60))
            u = _random_word(rng, alphabet, rng.randint(1, 4))
            expected = [
                i for i in range(len(w) - len(u) + 1)
                if w.text[i:i + len(u)] == u.text
            ]
            assert occurrences(w, u) == expected

    def test_factor_count_bounds(self):
        rng = random.Random(7)
        for _ in range(200):
            alphabet = Alphabet.of("abc"[:rng.choice((2, 3))])
            w = _random_word(rng, alphabet, rng.randint(1, 40))
            for n in range(1, len(w) + 1):
                assert len(factors(w, n)) <= min(len(w) - n + 1, alphabet.size ** n)

    def test_complexity_grows_with_the_prefix(self):
        rng = random.Random(11)
        for _ in range(50):
            alphabet = Alphabet.of("abc"[:rng.choice((2, 3))])
            w = _random_word(rng, alphabet, 40)
            for k in range(1, len(w)):
                for n in range(1, k + 1):
                    assert complexity(w[:k], n) <= complexity(w[:k + 1], n)
