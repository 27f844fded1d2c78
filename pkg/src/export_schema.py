"""Canonical output schema: JSON reports and the columns of tabular output."""
from enum import Enum
from typing import List, Optional, Tuple

from pydantic import BaseModel, Field


class Verdict(str, Enum):
    FOUND = "found"
    EXHAUSTED_NONE = "exhausted-none"
    BUDGET_EXCEEDED = "budget-exceeded"
    NONE_FOR_BASIS = "none-for-this-basis"


class SearchCounters(BaseModel):
    circuits: int = 0
    tested: int = 0
    pruned_sign: int = 0
    pruned_rank: int = 0
    pruned_covered: int = 0
    ci_bases: int = 0


class WitnessModel(BaseModel):
    # 1-based, as printed
    rows: List[int]
    cols: List[int]


class SearchReport(BaseModel):
    verdict: Verdict
    mode: Optional[str] = None
    basis: Optional[List[List[int]]] = None
    binomials: List[str] = Field(default_factory=list)
    complete_intersection: Optional[bool] = None
    witness: Optional[WitnessModel] = None
    consecutive_rows: Optional[Tuple[int, int]] = None
    associated_prime: Optional[str] = None
    g: Optional[int] = None
    laurent_equal: Optional[bool] = None
    counters: SearchCounters = Field(default_factory=SearchCounters)
    total_combinations: Optional[int] = None
    seed: Optional[int] = None
    elapsed_ms: float = 0.0
    notes: List[str] = Field(default_factory=list)


class CheckResult(BaseModel):
    group: str
    name: str
    passed: bool
    blocking: bool = True
    detail: str = ""
    elapsed_ms: float = 0.0


PROBE_COLUMNS = [
    "family", "n", "m", "d", "r", "circuits", "verdict",
    "tested", "pruned_covered", "total_combinations", "elapsed_ms",
]

CHECK_COLUMNS = ["group", "name", "passed", "blocking", "detail", "elapsed_ms"]
