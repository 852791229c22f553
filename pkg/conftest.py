"""Shared fixtures for the sadiclab test modules"""
import pytest

from sadiclab.schemas.directive import DirectiveSequence
from sadiclab.schemas.examples import SturmianSpec
from sadiclab.schemas.morphism import Morphism
from sadiclab.schemas.word import Alphabet, TwoSidedWindow, Word
from sadiclab.services.examples import SIGMA, TAU, counterexample_directive, sturmian_directive


@pytest.fixture
def abc() -> Alphabet:
    return Alphabet.of("abc")


@pytest.fixture
def sigma() -> Morphism:
    return SIGMA


@pytest.fixture
def tau() -> Morphism:
    return TAU


@pytest.fixture
def counterexample() -> DirectiveSequence:
    return counterexample_directive()


@pytest.fixture
def golden() -> DirectiveSequence:
    return sturmian_directive(SturmianSpec(quotients=(0, 1)))


@pytest.fixture
def fibonacci_window() -> TwoSidedWindow:
    """abaababaabaab with position 0 at the first letter"""
    return TwoSidedWindow(word=Alphabet.of("ab").word("abaababaabaab"))


@pytest.fixture
def word_of():
    """word_of("acb", abc) without the Alphabet.word detour"""
    def build(text: str, alphabet: Alphabet) -> Word:
        return Word.parse(text, alphabet)
    return build
