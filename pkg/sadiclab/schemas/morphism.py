"""Free-monoid morphism schema"""
from pydantic import BaseModel, ConfigDict, PrivateAttr, model_validator
from typing import Dict, List, Mapping, Optional, Sequence, Tuple, Union

from sadiclab.schemas.word import Alphabet, Word
from sadiclab.utils.errors import MorphismError


class Morphism(BaseModel):
    """
    Morphism domain* -> codomain*, given by one non-empty image per domain letter.

    images[i] is the image of domain.symbols[i]. The domain is always the
    whole alphabet; partial maps are expressed over a sub-alphabet.
    """
    model_config = ConfigDict(frozen=True)

    domain: Alphabet
    codomain: Alphabet
    images: Tuple[Word, ...]
    name: Optional[str] = None

    _table: Dict[int, str] = PrivateAttr(default_factory=dict)

    @model_validator(mode="after")
    def validate_images(self) -> "Morphism":
        if len(self.images) != self.domain.size:
            raise ValueError(
                f"{len(self.images)} images given for a domain of {self.domain.size} letters"
            )
        for token, image in zip(self.domain.symbols, self.images):
            if len(image) == 0:
                raise ValueError(f"image of {token!r} is empty")
            if image.alphabet != self.codomain:
                raise ValueError(f"image of {token!r} is not over the codomain")
        return self

    def model_post_init(self, __context) -> None:
        self._table = {i: image.codes for i, image in enumerate(self.images)}

    @classmethod
    def build(
        cls,
        domain: Alphabet,
        codomain: Alphabet,
        images: Sequence[Word],
        name: Optional[str] = None
    ) -> "Morphism":
        try:
            return cls(domain=domain, codomain=codomain, images=tuple(images), name=name)
        except ValueError as e:
            raise MorphismError(str(e)) from None

    @classmethod
    def from_mapping(
        cls,
        mapping: Mapping[str, Union[str, Sequence[str]]],
        domain: Optional[Alphabet] = None,
        codomain: Optional[Alphabet] = None,
        name: Optional[str] = None
    ) -> "Morphism":
        """
        Morphism.from_mapping({"a": "acb", "b": "bab", "c": "cbc"}).

        Images are strings (characters, or whitespace-separated tokens) or token
        lists. Missing alphabets are inferred: the domain in key order, the
        codomain as the domain letters followed by new image letters in order
        of first appearance.
        """
        images_tokens: Dict[str, List[str]] = {}
        for letter, image in mapping.items():
            if isinstance(image, str):
                multi = (
                    any(ch.isspace() for ch in image)
                    or any(len(k) > 1 for k in mapping)
                    or (codomain is not None and not codomain.single_char)
                )
                images_tokens[letter] = image.split() if multi else [ch for ch in image]
            else:
                images_tokens[letter] = list(image)

        if domain is None:
            domain = Alphabet.of(list(mapping))
        if codomain is None:
            seen = list(domain.symbols)
            for tokens in images_tokens.values():
                for t in tokens:
                    if t not in seen:
                        seen.append(t)
            used = {t for tokens in images_tokens.values() for t in tokens}
            codomain = Alphabet.of([t for t in seen if t in used])

        missing = [letter for letter in domain.symbols if letter not in images_tokens]
        if missing:
            raise MorphismError("every domain letter needs an image", letter=missing[0])
        images = [Word.from_tokens(images_tokens[letter], codomain) for letter in domain.symbols]
        return cls.build(domain, codomain, images, name=name)

    @property
    def table(self) -> Dict[int, str]:
        """str.translate table: domain index -> image code points"""
        return self._table

    def image(self, letter: str) -> Word:
        return self.images[self.domain.index(letter)]

    def as_mapping(self) -> Dict[str, str]:
        return {letter: image.text for letter, image in zip(self.domain.symbols, self.images)}

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Morphism)
            and self.domain == other.domain
            and self.codomain == other.codomain
            and self.images == other.images
        )

    def __hash__(self) -> int:
        return hash((self.domain, self.codomain, self.images))

    def __str__(self) -> str:
        label = self.name or "m"
        body = ", ".join(f"{k} -> {v}" for k, v in self.as_mapping().items())
        return f"{label}: {body}"
