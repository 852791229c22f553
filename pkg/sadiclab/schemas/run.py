"""Command-line run configuration and parsed input files"""
from argparse import Namespace
from fractions import Fraction
from pathlib import Path
from pydantic import BaseModel, ConfigDict, Field, PositiveInt, ValidationError, field_validator
from typing import Dict, List, Literal, Optional, Tuple

from sadiclab.schemas.morphism import Morphism
from sadiclab.utils.errors import ParameterError


class RunConfig(BaseModel):
    """Validated flags of one CLI invocation"""
    model_config = ConfigDict(extra="forbid", frozen=True, arbitrary_types_allowed=True)

    command: str
    inputs: Dict[str, Path] = Field(default_factory=dict)
    length: Optional[int] = Field(None, ge=1)
    depth_budget: Optional[int] = Field(None, ge=1)
    n: Optional[List[PositiveInt]] = None
    levels: Optional[int] = Field(None, ge=0)
    K: Optional[int] = Field(None, ge=2)
    D: Optional[Fraction] = None
    max_n: Optional[int] = Field(None, ge=1)
    max_u_len: Optional[int] = Field(None, ge=1)
    window: Optional[int] = Field(None, ge=2)
    output: Literal["text", "jsonl"] = "text"
    verbosity: int = 0

    @field_validator("D")
    @classmethod
    def validate_D(cls, v: Optional[Fraction]) -> Optional[Fraction]:
        if v is not None and v < 1:
            raise ValueError("must be at least 1")
        return v

    @classmethod
    def from_namespace(cls, ns: Namespace, inputs: Tuple[str, ...] = ()) -> "RunConfig":
        values = {
            key: value for key, value in vars(ns).items()
            if key in cls.model_fields and key != "inputs" and value is not None
        }
        values["inputs"] = {
            name: Path(getattr(ns, name)) for name in inputs if getattr(ns, name, None)
        }
        try:
            return cls(**values)
        except ValidationError as e:
            first = e.errors()[0]
            field = ".".join(str(p) for p in first["loc"]) or "argv"
            raise ParameterError(field, f"--{field.replace('_', '-')}: {first['msg']}") from None


class DirectiveFile(BaseModel):
    """
    Parsed directive file: a finite head of morphisms (`use FILE` lines),
    optionally continued by a builtin pattern or repeated.
    """
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    path: str
    seed: Optional[str] = None
    head: List[Morphism] = Field(default_factory=list)
    pattern: Optional[str] = None
    params: List[str] = Field(default_factory=list)
    periodic: bool = False
