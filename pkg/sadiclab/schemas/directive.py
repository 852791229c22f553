"""Directive sequence and S-adic report schemas"""
from pydantic import BaseModel, ConfigDict, Field, PrivateAttr, model_validator
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from sadiclab.schemas.morphism import Morphism
from sadiclab.schemas.reports import Ratio, Report
from sadiclab.schemas.word import Word
from sadiclab.utils.errors import DirectiveError


def seed_prolongs(morphisms: Sequence[Morphism], seed: str) -> bool:
    """Each image of the seed starts with the seed"""
    return all(seed in m.domain and m.image(seed).first() == seed for m in morphisms)


class DirectiveSequence(BaseModel):
    """
    Rule n -> sigma_n : A_{n+1} -> A_n*, plus the seed letter.

    The rule must be pure. Morphisms are fetched through `morphism(n)`, which
    caches them and checks that sigma_n's codomain fits sigma_{n-1}'s domain.
    """
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    rule: Callable[[int], Morphism]
    seed: str
    description: str
    primitivity_constant: Optional[int] = Field(None, ge=0)
    length: Optional[int] = Field(None, ge=1, description="Number of morphisms of a finite directive")
    seed_prolongable: bool = Field(
        False, description="Every sigma_n(seed) starts with the seed; set only when every sigma_n is known"
    )

    _cache: Dict[int, Morphism] = PrivateAttr(default_factory=dict)

    @classmethod
    def from_list(
        cls,
        morphisms: Sequence[Morphism],
        seed: str,
        description: Optional[str] = None,
        primitivity_constant: Optional[int] = None
    ) -> "DirectiveSequence":
        """Finite directive; asking past the end raises"""
        chain = tuple(morphisms)
        if not chain:
            raise DirectiveError("a directive needs at least one morphism")
        label = description or " ".join(m.name or f"m{i}" for i, m in enumerate(chain))
        return cls(
            rule=lambda n: chain[n],
            seed=seed,
            description=label,
            primitivity_constant=primitivity_constant,
            length=len(chain),
            seed_prolongable=seed_prolongs(chain, seed)
        )

    @classmethod
    def periodic(
        cls,
        pattern: Sequence[Morphism],
        seed: str,
        description: Optional[str] = None,
        primitivity_constant: Optional[int] = None
    ) -> "DirectiveSequence":
        """sigma_n = pattern[n mod len(pattern)]"""
        cycle = tuple(pattern)
        if not cycle:
            raise DirectiveError("a periodic directive needs a non-empty pattern")
        label = description or "(" + " ".join(m.name or f"m{i}" for i, m in enumerate(cycle)) + ")^inf"
        return cls(
            rule=lambda n: cycle[n % len(cycle)],
            seed=seed,
            description=label,
            primitivity_constant=primitivity_constant,
            seed_prolongable=seed_prolongs(cycle, seed)
        )

    def _fetch(self, n: int) -> Morphism:
        if n < 0:
            raise DirectiveError("levels are non-negative", level=n)
        if self.length is not None and n >= self.length:
            raise DirectiveError(
                f"finite directive has {self.length} morphism(s); level {n} requested", level=n
            )
        m = self._cache.get(n)
        if m is None:
            m = self.rule(n)
            self._cache[n] = m
        return m

    def morphism(self, n: int) -> Morphism:
        m = self._fetch(n)
        if n > 0:
            previous = self._fetch(n - 1)
            if m.codomain != previous.domain and not m.codomain.issubset(previous.domain):
                raise DirectiveError(
                    f"alphabet chain breaks between levels {n - 1} and {n}", level=n
                )
        return m

    def has_level(self, n: int) -> bool:
        return n >= 0 and (self.length is None or n < self.length)

    def shifted(self, n: int) -> "DirectiveSequence":
        """The tail directive sigma_n, sigma_{n+1}, ..."""
        if not self.has_level(n):
            raise DirectiveError(f"directive has no level {n}", level=n)
        if n == 0:
            return self
        return DirectiveSequence(
            rule=lambda k: self.morphism(n + k),
            seed=self.seed,
            description=f"{self.description} from level {n}",
            primitivity_constant=self.primitivity_constant,
            length=None if self.length is None else self.length - n,
            seed_prolongable=self.seed_prolongable
        )


class GeneratedPrefix(Report):
    """Finite approximation of x (level 0) or of the tail x^(n)"""
    word: Word
    stable_length: int = Field(..., ge=0)
    depth_used: int = Field(..., ge=0)
    converged: bool
    target: int = Field(..., ge=1)
    level: int = Field(0, ge=0)
    certificate: str = Field(..., description="'prolongable', 'agreement' or 'finite'")

    @model_validator(mode="after")
    def validate_stability(self) -> "GeneratedPrefix":
        if self.stable_length > len(self.word):
            raise ValueError("stable_length exceeds the word length")
        if self.converged and self.stable_length < self.target:
            raise ValueError("a converged prefix must be stable up to the target")
        return self

    @property
    def certified(self) -> Word:
        return self.word[:self.stable_length]


class PrimitivityRow(Report):
    level: int
    block: str
    positive: bool
    missing: Dict[str, List[str]] = Field(default_factory=dict, description="letter c -> letters absent from the block image of c")


class PrimitivityReport(Report):
    s0: int
    r_max: int
    rows: List[PrimitivityRow]
    passed: bool
    note: str = "certifies primitivity on the inspected levels only"


class DnObservation(Report):
    """Observed D_n: a lower bound for the gap statistic of the infinite tail"""
    level: int
    observed: Optional[int]
    truncated: bool
    window: int
    per_factor: Dict[str, int] = Field(default_factory=dict)


class LRSufficientReport(Report):
    rows: List[DnObservation]
    max_observed: Optional[int]
    growing: bool
    verdict: str
    note: str = "heuristic evidence from finite windows, not a proof"


class BoundWitness(Report):
    """|s0...s_{k+1}(b)| > D |s0...s_k(c)|"""
    depth: int
    b: str
    c: str
    lhs: int
    rhs: Ratio


class ComplexityRow(Report):
    n: int
    p: int
    bound: Ratio


class ComplexityBoundReport(Report):
    D: Ratio
    alphabet_size: int
    depths: int
    min_lengths: List[int]
    max_lengths: List[int]
    hypothesis_ok: bool
    violations: List[BoundWitness] = Field(default_factory=list)
    growth_ok: bool
    window: int
    complexity_ok: bool
    complexity_violations: List[ComplexityRow] = Field(default_factory=list)
    max_ratio: Ratio = Field(..., description="max over n of p(n)/n")
    passed: bool


class TelescopeLengths(Report):
    """|s0...sk(c)| for every letter c of A_{k+1}"""
    depth: int
    letters: Tuple[str, ...]
    lengths: Tuple[int, ...]
