"""Alphabet, word and two-sided window schemas"""
from pydantic import BaseModel, ConfigDict, PrivateAttr, field_validator, model_serializer, model_validator
from typing import Dict, Iterable, List, Sequence, Tuple, Union

from sadiclab.utils.errors import AlphabetError, AlphabetMismatchError, OutOfWindowError


class Alphabet(BaseModel):
    """Ordered finite set of distinct tokens; a word stores indices into it"""
    model_config = ConfigDict(frozen=True)

    symbols: Tuple[str, ...]

    _index: Dict[str, int] = PrivateAttr(default_factory=dict)

    @field_validator("symbols")
    @classmethod
    def validate_symbols(cls, v: Tuple[str, ...]) -> Tuple[str, ...]:
        if not v:
            raise ValueError("alphabet must be non-empty")
        if len(set(v)) != len(v):
            raise ValueError(f"alphabet has duplicate tokens: {list(v)}")
        for token in v:
            if not token or any(ch.isspace() for ch in token) or token.startswith("#"):
                raise ValueError(f"invalid token {token!r}")
        return v

    def model_post_init(self, __context) -> None:
        self._index = {token: i for i, token in enumerate(self.symbols)}

    @classmethod
    def of(cls, symbols: Union[str, Iterable[str]]) -> "Alphabet":
        """Alphabet.of("abc") or Alphabet.of(["10", "11"])"""
        try:
            return cls(symbols=tuple(symbols))
        except ValueError as e:
            raise AlphabetError(str(e), symbols=list(symbols)) from None

    @classmethod
    def numbered(cls, size: int) -> "Alphabet":
        """The return-word alphabet {1, ..., size}"""
        return cls.of([str(k) for k in range(1, size + 1)])

    @property
    def size(self) -> int:
        return len(self.symbols)

    @property
    def single_char(self) -> bool:
        return all(len(token) == 1 for token in self.symbols)

    def index(self, token: str) -> int:
        try:
            return self._index[token]
        except KeyError:
            raise AlphabetError(f"token {token!r} is not in the alphabet", symbols=list(self.symbols)) from None

    def __contains__(self, token: object) -> bool:
        return token in self._index

    def issubset(self, other: "Alphabet") -> bool:
        return all(token in other for token in self.symbols)

    def word(self, text: str) -> "Word":
        return Word.parse(text, self)

    def __len__(self) -> int:
        return len(self.symbols)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Alphabet) and self.symbols == other.symbols

    def __hash__(self) -> int:
        return hash(self.symbols)

    def __str__(self) -> str:
        return " ".join(self.symbols)

    @model_serializer
    def serialize(self) -> List[str]:
        return list(self.symbols)


class Word(BaseModel):
    """
    Finite word over an alphabet.

    Symbols are kept as a string of code points (code point i = alphabet
    index i), so slicing, hashing and substring search run at native speed.
    """
    model_config = ConfigDict(frozen=True)

    alphabet: Alphabet
    codes: str = ""

    @model_validator(mode="after")
    def validate_codes(self) -> "Word":
        if self.codes and ord(max(self.codes)) >= self.alphabet.size:
            raise ValueError("word uses an index outside its alphabet")
        return self

    @classmethod
    def raw(cls, alphabet: Alphabet, codes: str) -> "Word":
        """Build without validation; callers guarantee the indices are valid"""
        return cls.model_construct(alphabet=alphabet, codes=codes)

    @classmethod
    def empty(cls, alphabet: Alphabet) -> "Word":
        return cls.raw(alphabet, "")

    @classmethod
    def from_symbols(cls, alphabet: Alphabet, symbols: Sequence[int]) -> "Word":
        return cls(alphabet=alphabet, codes="".join(map(chr, symbols)))

    @classmethod
    def from_tokens(cls, tokens: Iterable[str], alphabet: Alphabet) -> "Word":
        return cls.raw(alphabet, "".join(chr(alphabet.index(t)) for t in tokens))

    @classmethod
    def parse(cls, text: str, alphabet: Alphabet) -> "Word":
        """Characters for single-character alphabets, whitespace-separated tokens otherwise"""
        if alphabet.single_char:
            tokens: List[str] = [ch for ch in text if not ch.isspace()]
        else:
            tokens = text.split()
        return cls.from_tokens(tokens, alphabet)

    @property
    def symbols(self) -> Tuple[int, ...]:
        return tuple(map(ord, self.codes))

    @property
    def tokens(self) -> List[str]:
        symbols = self.alphabet.symbols
        return [symbols[ord(c)] for c in self.codes]

    @property
    def length(self) -> int:
        return len(self.codes)

    @property
    def text(self) -> str:
        separator = "" if self.alphabet.single_char else " "
        return separator.join(self.tokens)

    def first(self) -> str:
        return self.alphabet.symbols[ord(self.codes[0])]

    def last(self) -> str:
        return self.alphabet.symbols[ord(self.codes[-1])]

    def same_alphabet(self, other: "Word") -> None:
        if self.alphabet != other.alphabet:
            raise AlphabetMismatchError(self.alphabet.symbols, other.alphabet.symbols)

    def __len__(self) -> int:
        return len(self.codes)

    def __getitem__(self, item: slice) -> "Word":
        if not isinstance(item, slice):
            raise TypeError("words are sliced, not indexed; use .tokens for single letters")
        return Word.raw(self.alphabet, self.codes[item])

    def __add__(self, other: "Word") -> "Word":
        self.same_alphabet(other)
        return Word.raw(self.alphabet, self.codes + other.codes)

    def __mul__(self, times: int) -> "Word":
        return Word.raw(self.alphabet, self.codes * times)

    def startswith(self, other: "Word") -> bool:
        return self.alphabet == other.alphabet and self.codes.startswith(other.codes)

    def endswith(self, other: "Word") -> bool:
        return self.alphabet == other.alphabet and self.codes.endswith(other.codes)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Word)
            and self.codes == other.codes
            and self.alphabet == other.alphabet
        )

    def __hash__(self) -> int:
        return hash((self.alphabet.symbols, self.codes))

    def __str__(self) -> str:
        return self.text

    def __repr__(self) -> str:
        return f"Word({self.text!r})"

    @model_serializer
    def serialize(self) -> str:
        return self.text


class TwoSidedWindow(BaseModel):
    """
    Finite window on a two-sided sequence.

    Position 0 sits at index `origin` of `word`; valid positions run from
    -origin to length - origin - 1. Reads outside that range raise.
    """
    model_config = ConfigDict(frozen=True)

    word: Word
    origin: int = 0

    @model_validator(mode="after")
    def validate_origin(self) -> "TwoSidedWindow":
        if not 0 <= self.origin <= len(self.word):
            raise ValueError(f"origin {self.origin} outside [0, {len(self.word)}]")
        return self

    @classmethod
    def from_prefix(cls, word: Word, origin: int) -> "TwoSidedWindow":
        """Re-centre a one-sided prefix so that its index `origin` becomes position 0"""
        return cls(word=word, origin=origin)

    @property
    def alphabet(self) -> Alphabet:
        return self.word.alphabet

    @property
    def start(self) -> int:
        return -self.origin

    @property
    def end(self) -> int:
        return len(self.word) - self.origin

    def check_range(self, start: int, end: int) -> None:
        if not (self.start <= start <= end <= self.end):
            raise OutOfWindowError(start, end, self.start, self.end)

    def slice(self, start: int, end: int) -> Word:
        self.check_range(start, end)
        return self.word[start + self.origin:end + self.origin]

    def nonnegative(self) -> Word:
        return self.word[self.origin:]
