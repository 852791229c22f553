"""Morphism construction, action, composition and predicates"""
import random

import numpy as np
import pytest

from sadiclab.schemas.morphism import Morphism
from sadiclab.schemas.word import Alphabet, Word
from sadiclab.services.morphisms import (
    apply,
    apply_prefix,
    compose,
    compose_all,
    constant_length,
    identity,
    is_positive,
    is_proper,
    letters_missing,
    occurrence_matrix,
    power,
)
from sadiclab.utils.errors import AlphabetMismatchError, LetterOutsideDomainError, MorphismError


def test_from_mapping_infers_alphabets():
    m = Morphism.from_mapping({"a": "ab", "b": "a"})
    assert m.domain.symbols == ("a", "b")
    assert m.codomain.symbols == ("a", "b")
    assert m.image("a").text == "ab"


def test_empty_image_rejected():
    with pytest.raises(MorphismError):
        Morphism.from_mapping({"a": "ab", "b": ""}, Alphabet.of("ab"), Alphabet.of("ab"))


def test_missing_letter_rejected():
    with pytest.raises(MorphismError):
        Morphism.from_mapping({"a": "ab"}, domain=Alphabet.of("ab"))


def test_apply(sigma, abc):
    assert apply(sigma, abc.word("ab")).text == "acbbab"


def test_apply_outside_domain(sigma):
    with pytest.raises(LetterOutsideDomainError):
        apply(sigma, Alphabet.of("abd").word("ad"))


def test_apply_prefix_truncates(sigma, abc):
    assert apply_prefix(sigma, abc.word("abcabc"), 4).text == "acbb"


def test_compose_follows_directive_order(sigma, tau, abc):
    st = compose(sigma, tau)
    assert st.image("a").text == "acbbabcbc"
    assert apply(st, abc.word("a")) == apply(sigma, apply(tau, abc.word("a")))


def test_compose_all_matches_nested(sigma, tau, abc):
    chain = compose_all([sigma, tau, sigma])
    assert chain.image("b") == apply(sigma, apply(tau, apply(sigma, abc.word("b"))))


def test_compose_alphabet_mismatch(sigma):
    binary = Morphism.from_mapping({"0": "01", "1": "0"})
    with pytest.raises(AlphabetMismatchError):
        compose(sigma, binary)


def test_power(sigma):
    squared = power(sigma, 2)
    assert squared.image("a").text == "acbcbcbab"
    assert squared.name == "sigma^2"
    assert power(sigma, 0) == identity(sigma.domain)


def test_proper():
    m = Morphism.from_mapping({"a": "ab", "b": "aab"})
    assert is_proper(m) == ("a", "b")
    assert is_proper(Morphism.from_mapping({"a": "ab", "b": "ba"})) is None


def test_constant_length(sigma):
    assert constant_length(sigma) == 3
    assert constant_length(Morphism.from_mapping({"a": "ab", "b": "a"})) is None


def test_occurrence_matrix(sigma):
    expected = np.array([[1, 1, 0], [1, 2, 1], [1, 0, 2]])
    assert np.array_equal(occurrence_matrix(sigma), expected)


def test_positivity(sigma, tau):
    assert not is_positive(sigma)
    assert letters_missing(sigma) == {"b": ["c"], "c": ["a"]}
    assert is_positive(compose(sigma, tau))


ABC = Alphabet.of("abc")


def _random_morphism(rng: random.Random, proper: bool = False, positive: bool = False) -> Morphism:
    images = {}
    for letter in ABC.symbols:
        body = [rng.choice("abc") for _ in range(rng.randint(1, 4))]
        if positive:
            body += rng.sample("abc", 3)
            rng.shuffle(body)
        if proper:
            body = ["a"] + body + ["c"]
        images[letter] = "".join(body)
    return Morphism.from_mapping(images, ABC, ABC)


def _random_word(rng: random.Random, length: int) -> Word:
    return Word.from_symbols(ABC, [rng.randrange(3) for _ in range(length)])


class TestMorphismProperties:
    @pytest.fixture
    def rng(self) -> random.Random:
        return random.Random(2024)

    def test_composition_acts_inner_first(self, rng):
        for _ in range(200):
            outer, inner = _random_morphism(rng), _random_morphism(rng)
            w = _random_word(rng, rng.randint(0, 12))
            assert apply(compose(outer, inner), w) == apply(outer, apply(inner, w))

    def test_image_length_from_the_matrix(self, rng):
        for _ in range(200):
            m = _random_morphism(rng)
            w = _random_word(rng, rng.randint(0, 20))
            counts = np.array([w.symbols.count(i) for i in range(3)])
            assert len(apply(m, w)) == int(occurrence_matrix(m).dot(counts).sum())

    def test_matrix_of_a_composition_is_the_product(self, rng):
        for _ in range(200):
            outer, inner = _random_morphism(rng), _random_morphism(rng)
            expected = occurrence_matrix(outer) @ occurrence_matrix(inner)
            assert np.array_equal(occurrence_matrix(compose(outer, inner)), expected)

    def test_proper_morphisms_compose_to_proper(self, rng):
        for _ in range(200):
            outer, inner = _random_morphism(rng, proper=True), _random_morphism(rng, proper=True)
            assert is_proper(outer) == ("a", "c")
            assert is_proper(compose(outer, inner)) == ("a", "c")

    def test_positive_morphisms_compose_to_positive(self, rng):
        for _ in range(200):
            outer, inner = _random_morphism(rng, positive=True), _random_morphism(rng, positive=True)
            assert is_positive(outer)
            assert is_positive(compose(outer, inner))
