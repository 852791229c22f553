"""Shared report building blocks"""
from fractions import Fraction
from pydantic import BaseModel, ConfigDict, Field, PlainSerializer
from typing import Annotated, Dict, List, Optional


# Exact rational, written as "p/q" in JSON
Ratio = Annotated[
    Fraction,
    PlainSerializer(lambda f: f"{f.numerator}/{f.denominator}", return_type=str)
]


class Report(BaseModel):
    """Base for every immutable report row"""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)


class GapSummary(Report):
    """Largest gap between consecutive occurrences of length-2 factors"""
    max_gap: Optional[int] = Field(None, description="Absent when no factor occurs twice")
    truncated: bool = Field(..., description="Some factor occurs only once in the window")
    per_factor: Dict[str, int] = Field(default_factory=dict)
    single_occurrence: List[str] = Field(default_factory=list)
    tail_distance: Optional[int] = Field(
        None, description="Largest distance from a single occurrence to the window end"
    )
