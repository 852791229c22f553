"""
Morphism action, composition and structural predicates.

Composition follows directive order: compose(outer, inner) is the morphism
letter -> outer(inner(letter)), so compose_all([s0, s1, ..., sn]) acts like
s0 s1 ... sn, applying sn first.
"""
import logging
from typing import Dict, Iterable, List, Optional, Tuple

import numpy as np

from sadiclab.schemas.morphism import Morphism
from sadiclab.schemas.word import Alphabet, Word
from sadiclab.utils.errors import AlphabetMismatchError, LetterOutsideDomainError

logger = logging.getLogger(__name__)


def apply(m: Morphism, w: Word) -> Word:
    """Concatenate the images of the letters of w"""
    if w.alphabet != m.domain:
        if not w.alphabet.issubset(m.domain):
            bad = next((t for t in w.tokens if t not in m.domain), None)
            if bad is not None:
                raise LetterOutsideDomainError(bad, m.domain.symbols)
        w = _reindex(w, m.domain)
    return Word.raw(m.codomain, w.codes.translate(m.table))


def apply_prefix(m: Morphism, w: Word, limit: int) -> Word:
    """
    First `limit` symbols of m(w).

    Images are non-empty, so only the first `limit` letters of w matter.
    """
    return Word.raw(m.codomain, apply(m, w[:limit]).codes[:limit])


def compose(outer: Morphism, inner: Morphism) -> Morphism:
    """letter -> outer(inner(letter)); needs inner.codomain within outer.domain"""
    if inner.codomain != outer.domain and not inner.codomain.issubset(outer.domain):
        raise AlphabetMismatchError(inner.codomain.symbols, outer.domain.symbols)
    images = [apply(outer, image) for image in inner.images]
    name = f"{outer.name}{inner.name}" if outer.name and inner.name else None
    return Morphism.build(inner.domain, outer.codomain, images, name=name)


def compose_all(morphisms: Iterable[Morphism]) -> Morphism:
    """s0 s1 ... sn for the list [s0, s1, ..., sn]"""
    chain = list(morphisms)
    if not chain:
        raise ValueError("compose_all needs at least one morphism")
    result = chain[-1]
    for m in reversed(chain[:-1]):
        result = compose(m, result)
    return result


def identity(alphabet: Alphabet) -> Morphism:
    images = [Word.raw(alphabet, chr(i)) for i in range(alphabet.size)]
    return Morphism.build(alphabet, alphabet, images, name="id")


def power(m: Morphism, k: int) -> Morphism:
    """m composed with itself k times (k = 0 gives the identity)"""
    if k < 0:
        raise ValueError("power must be non-negative")
    if k == 0:
        return identity(m.domain)
    result = m
    for _ in range(k - 1):
        result = compose(m, result)
    if m.name:
        result = result.model_copy(update={"name": m.name if k == 1 else f"{m.name}^{k}"})
    return result


def is_proper(m: Morphism) -> Optional[Tuple[str, str]]:
    """(l, r) when every image starts with l and ends with r"""
    firsts = {image.codes[0] for image in m.images}
    lasts = {image.codes[-1] for image in m.images}
    if len(firsts) == 1 and len(lasts) == 1:
        symbols = m.codomain.symbols
        return symbols[ord(firsts.pop())], symbols[ord(lasts.pop())]
    return None


def constant_length(m: Morphism) -> Optional[int]:
    lengths = {len(image) for image in m.images}
    return lengths.pop() if len(lengths) == 1 else None


def image_lengths(m: Morphism) -> List[int]:
    return [len(image) for image in m.images]


def image_length_bounds(m: Morphism) -> Tuple[int, int]:
    lengths = image_lengths(m)
    return min(lengths), max(lengths)


def occurrence_matrix(m: Morphism) -> np.ndarray:
    """Rows = codomain letters b, columns = domain letters c, entry = |m(c)|_b"""
    matrix = np.zeros((m.codomain.size, m.domain.size), dtype=np.int64)
    for col, image in enumerate(m.images):
        for row in range(m.codomain.size):
            matrix[row, col] = image.codes.count(chr(row))
    return matrix


def is_positive(m: Morphism) -> bool:
    """Every codomain letter occurs in every image"""
    return bool((occurrence_matrix(m) >= 1).all())


def letters_missing(m: Morphism) -> Dict[str, List[str]]:
    """For each domain letter, the codomain letters absent from its image"""
    symbols = m.codomain.symbols
    missing = {}
    for letter, image in zip(m.domain.symbols, m.images):
        absent = [symbols[i] for i in range(m.codomain.size) if chr(i) not in image.codes]
        if absent:
            missing[letter] = absent
    return missing


def _reindex(w: Word, target: Alphabet) -> Word:
    table = {i: chr(target.index(token)) for i, token in enumerate(w.alphabet.symbols) if token in target}
    return Word.raw(target, w.codes.translate(table))
