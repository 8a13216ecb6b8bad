"""
Pydantic schemas for reports and results.

These models carry the outcomes of validation, walk statistics, enumeration
and search runs, and are what the CLI serializes.
"""

from enum import Enum
from typing import Any, List, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator


# Validation schemas
class Violation(BaseModel):
    rank: int = Field(..., ge=0)
    elements: List[int]
    axiom: str  # "i" or "ii"
    message: str


class ValidationReport(BaseModel):
    ok: bool
    r: int = Field(..., ge=1)
    top_rank: int = Field(..., ge=0)
    violations: List[Violation] = []

    @model_validator(mode="after")
    def _ok_iff_clean(self):
        if self.ok != (not self.violations):
            raise ValueError("ok must be true exactly when there are no violations")
        return self


class RankFunction(BaseModel):
    values: List[int]

    @model_validator(mode="after")
    def _nonnegative(self):
        if any(v < 0 for v in self.values):
            raise ValueError("rank function values must be nonnegative")
        return self

    def __len__(self) -> int:
        return len(self.values)

    def as_tuple(self) -> tuple:
        return tuple(self.values)


# Walk schemas
class WalkStats(BaseModel):
    """Hasse walk counts at rank n. Up-walk fields are None at the top rank."""

    n: int = Field(..., ge=0)
    alpha_up: Optional[int] = None
    alpha_up_down: Optional[int] = None
    kappa4: Optional[int] = None
    sum_c_sq: Optional[int] = None
    alpha_0n1: Optional[int] = None
    sum_e_sq: int
    alpha_0n: int


class IdentityCheck(BaseModel):
    name: str
    n: int
    passed: bool
    lhs: int
    rhs: int
    relation: str = "=="


# Hypergraph schemas
class ExtremalP2(BaseModel):
    r: int = Field(..., ge=1)
    min: int
    second_max: Optional[int] = None
    max: int

    def as_tuple(self) -> tuple:
        return (self.min, self.second_max, self.max)


# Enumeration schemas
class EnumerationResult(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True)

    r: int = Field(..., ge=1)
    ranks: int = Field(..., ge=0)
    counts: List[int]
    complete: bool = True
    certs: Optional[List[bytes]] = None
    posets: Optional[List[Any]] = None
    elapsed_secs: float = 0.0


class SearchStatus(str, Enum):
    FOUND = "found"
    DEFINITIVE_NONE = "definitive-none"
    BUDGET_EXCEEDED = "budget-exceeded"


class SearchResult(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True)

    r: int = Field(..., ge=1)
    target: List[int]
    status: SearchStatus
    witness: Optional[Any] = None
    nodes_explored: int = 0
    elapsed_secs: float = 0.0


# Numerics schemas
class IntegerSequence(BaseModel):
    values: List[int]
    offset: int = 0

    def __getitem__(self, n: int) -> int:
        return self.values[n - self.offset]

    def __len__(self) -> int:
        return len(self.values)


class AsymptoticPoint(BaseModel):
    n: int
    value: float
    target: Optional[float] = None


class IntervalVerdict(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True)

    label: str
    sequence: List[int]
    verdict: str  # "realized", "impossible", "budget-exceeded" or "mismatch"
    detail: str
    witness: Optional[Any] = None


class IntervalDemoReport(BaseModel):
    verdicts: List[IntervalVerdict]

    @property
    def complete(self) -> bool:
        return all(v.verdict != "budget-exceeded" for v in self.verdicts)


class ProbeReport(BaseModel):
    """Observations about a rank function; none of these are theorems being asserted."""

    r: int
    values: List[int]
    weakly_increasing: bool
    strictly_increasing_from_1: bool
    below_fibonacci: bool
    fibonacci_recurrence_bound: bool
    above_young_power: bool
    delta_positive_from_2: List[bool]
