"""Parameters and reports of the built-in constructions"""
from pydantic import BaseModel, ConfigDict, Field, field_validator
from typing import Dict, List, Literal, Optional, Tuple

from sadiclab.schemas.reports import Ratio, Report
from sadiclab.schemas.returns import LRRatioProfile


class CounterexampleSpec(BaseModel):
    """Block parameter of the {a, b, c} counterexample; the morphisms themselves are pinned constants"""
    model_config = ConfigDict(frozen=True)

    n: int = Field(..., ge=1, description="rho_n = sigma tau sigma^2 tau ... sigma^n tau")

    @property
    def tail_first_block(self) -> int:
        """y = lim sigma^{n+2} tau sigma^{n+3} tau ..."""
        return self.n + 2


class SturmianSpec(BaseModel):
    """
    Partial-quotient data i1, i2, i3, ... of a Sturmian directive.

    The stream is tau^{i1} sigma^{i2} tau^{i3} ...; i1 may be 0. Past the
    listed values the quotients repeat i2, i3, ... ("cycle"), follow
    i_k = k ("linear"), or stop ("none", finite directive).
    """
    model_config = ConfigDict(frozen=True)

    quotients: Tuple[int, ...]
    extend: Literal["cycle", "linear", "none"] = "cycle"

    @field_validator("quotients")
    @classmethod
    def validate_quotients(cls, v: Tuple[int, ...]) -> Tuple[int, ...]:
        if not v:
            raise ValueError("at least one partial quotient is required")
        if v[0] < 0:
            raise ValueError("i1 must be non-negative")
        if any(q < 1 for q in v[1:]):
            raise ValueError("i2, i3, ... must be positive")
        return v

    def quotient(self, k: int) -> Optional[int]:
        """i_k (1-based); None past the end of a finite list"""
        if k <= len(self.quotients):
            return self.quotients[k - 1]
        if self.extend == "linear":
            return k
        if self.extend == "cycle" and len(self.quotients) > 1:
            rest = self.quotients[1:]
            return rest[(k - 2) % len(rest)]
        return None

    @property
    def finite(self) -> bool:
        return self.extend == "none" or (self.extend == "cycle" and len(self.quotients) == 1)

    def __str__(self) -> str:
        listed = ",".join(map(str, self.quotients))
        return listed if self.finite else f"{listed},... ({self.extend})"


class GapLemmaReport(Report):
    """Gaps between successive occurrences of ca in sigma^n tau(z)"""
    n: int
    bound: int = Field(..., description="3^{n+1}")
    window: int
    occurrences: int
    min_gap: Optional[int]
    max_gap: Optional[int]
    conclusive: bool = Field(..., description="at least three occurrences of ca in the window")
    strict: Optional[bool] = Field(None, description="every gap strictly above the bound")
    passed: bool


class NotLRReport(Report):
    """A long return word to ca pulled back through rho_n"""
    n: int
    window: int
    position: int = Field(..., description="start of the first ca in sigma^{n+1} tau(y)")
    w_length: int
    w_bound: int = Field(..., description="3^{n+2}")
    min_return_length: int
    returns_seen: int
    rho_length: int = Field(..., description="|rho_n| = 3^{n(n+3)/2}")
    rho_w_length: int
    exactly_twice: bool = Field(..., description="rho_n(ca) occurs exactly twice in rho_n(w ca)")
    x_prefix_ok: Optional[bool] = Field(None, description="rho_n(w ca) read off the generated x-prefix; None when out of reach")
    ratio: Ratio = Field(..., description="|rho_n(w)| / |rho_n(ca)| = |w| / 2")
    ratio_bound: Ratio = Field(..., description="3^{n+2} / 2")
    passed: bool


class TelescopingReport(Report):
    """x = rho_n sigma^{n+1} tau (y), symbol by symbol on prefixes"""
    n: int
    length: int
    first_mismatch: Optional[int]
    passed: bool


class BlockIdentityRow(Report):
    i: int
    j: int
    k: int
    form: str
    letter: str
    computed: str
    closed_form: str
    equal: bool


class BlockIdentityReport(Report):
    rows: List[BlockIdentityRow]
    passed: bool


class SturmianGapReport(Report):
    """Length-2 gaps of tau^i sigma^j tau^k (z) (or the sigma form) against the combined bound"""
    i: int
    j: int
    k: int
    form: str
    length: int
    bound: int = Field(..., description="2 max{i, j, k} + 3")
    per_factor: Dict[str, int]
    max_gap: Optional[int]
    factors: List[str] = Field(..., description="length-2 factors that occur")
    sub_bounds: Dict[str, int] = Field(default_factory=dict, description="informational per-factor bounds")
    sub_bounds_ok: bool
    passed: bool


class SturmianVerdictRow(Report):
    """One triple of the grouped Sturmian directive and its observed D"""
    level: int
    form: str
    exponents: Tuple[int, int, int]
    observed: Optional[int]
    truncated: bool
    bound: int
    within: bool


class SturmianVerdictReport(Report):
    quotients: str
    rows: List[SturmianVerdictRow]
    dropped_blocks: int = Field(0, description="trailing blocks of a finite directive outside any triple")
    max_quotient: int
    growing: bool
    verdict: str
    profile: Optional[LRRatioProfile] = None
    passed: bool
    note: str = "observed D_n are lower bounds on finite windows"


class ProfileContrastReport(Report):
    """Return-ratio profiles of two Sturmian directives on equal windows"""
    base: str
    other: str
    window: int
    max_u_len: int
    base_max: Optional[Ratio]
    other_max: Optional[Ratio]
    passed: bool = Field(..., description="the other profile's maximum strictly exceeds the base maximum")
