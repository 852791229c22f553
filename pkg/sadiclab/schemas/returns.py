"""Return-word table, derived tower and recurrence-ratio schemas"""
from pydantic import Field, PrivateAttr
from typing import Dict, List, Optional, Tuple

from sadiclab.schemas.morphism import Morphism
from sadiclab.schemas.reports import Ratio, Report
from sadiclab.schemas.word import Alphabet, Word


class ReturnWordTable(Report):
    """
    Return words to u.v found in a window, in order of first appearance.

    returns[k-1] is Theta(k). counts[k-1] is how many consecutive occurrence
    pairs produced it, first_positions[k-1] where u Theta(k) v first starts.
    """
    u: Word
    v: Word
    returns: Tuple[Word, ...]
    counts: Tuple[int, ...]
    first_positions: Tuple[int, ...]
    source_span: Tuple[int, int] = Field(..., description="Two-sided positions [start, end) scanned")
    occurrences: int
    complete: bool

    _lookup: Dict[str, int] = PrivateAttr(default_factory=dict)

    def model_post_init(self, __context) -> None:
        self._lookup = {w.codes: k for k, w in enumerate(self.returns, start=1)}

    @property
    def size(self) -> int:
        return len(self.returns)

    @property
    def code_alphabet(self) -> Alphabet:
        """R = {1, ..., #R}"""
        return Alphabet.numbered(self.size)

    @property
    def theta(self) -> Morphism:
        """Theta as a morphism R -> A*"""
        return Morphism.build(self.code_alphabet, self.u.alphabet, self.returns, name="theta")

    def index_of(self, w: Word) -> Optional[int]:
        """k with Theta(k) = w"""
        return self._lookup.get(w.codes)

    def lines(self) -> List[str]:
        return [f"{k}\t{w.text}" for k, w in enumerate(self.returns, start=1)]


class TowerLevel(Report):
    """One level of the derived tower"""
    level: int
    window_length: int = Field(..., description="|u_n| = |v_n| = alpha^n")
    table: ReturnWordTable
    morphism: Morphism = Field(..., description="lambda_n (Theta_0 at level 0)")
    size: int
    max_image_length: int
    identity_ok: bool = Field(..., description="Theta_{n-1} lambda_n = Theta_n letterwise")
    proper: Optional[Tuple[str, str]] = None
    positive: Optional[bool] = Field(None, description="every letter of R_{n-1} occurs in every lambda_n(b)")


class DerivedTower(Report):
    K: int
    alpha: int
    size_bound: int = Field(..., description="K(K+1)^2")
    length_bound: int = Field(..., description="alpha K^2")
    levels: List[TowerLevel]
    reconstruction_ok: bool = Field(..., description="lambda_0 ... lambda_n(1) = Theta_n(1), a prefix of x[0, inf)")
    bounds_ok: bool
    diagnoses: List[str] = Field(default_factory=list)

    @property
    def lambda0(self) -> Morphism:
        return self.levels[0].morphism


class TowerLevelSummary(Report):
    """Bounds row of a tower, as written to the JSON-lines report"""
    level: int
    window_length: int
    size: int
    size_bound: int
    max_image_length: Optional[int]
    length_bound: int
    proper: Optional[Tuple[str, str]]
    positive: Optional[bool]
    identity_ok: bool

    @classmethod
    def of(cls, tower: DerivedTower, level: TowerLevel) -> "TowerLevelSummary":
        return cls(
            level=level.level,
            window_length=level.window_length,
            size=level.size,
            size_bound=tower.size_bound,
            max_image_length=level.max_image_length if level.level > 0 else None,
            length_bound=tower.length_bound,
            proper=level.proper,
            positive=level.positive,
            identity_ok=level.identity_ok
        )


class LRRatioRow(Report):
    """max over length-l factors u and return words w to u of |w| / |u|"""
    length: int
    max_return_length: int
    ratio: Ratio
    factors: int = Field(..., description="distinct length-l factors seen at least twice")


class LRRatioProfile(Report):
    rows: List[LRRatioRow]
    omitted: List[int] = Field(default_factory=list, description="lengths with no factor seen twice")
    max_ratio: Optional[Ratio] = None
    note: str = "ratios are exact lower bounds for the window; a growing profile certifies non-LR on the scanned prefix"


class ReturnWordRow(Report):
    """One table row as written by the returns command"""
    k: int
    word: str
    length: int
    count: int
    first_position: int


class CodeRow(Report):
    code: str
    length: int


class OracleRow(Report):
    oracle_agrees: bool
