"""
Report schemas
Pydantic models for every machine-readable report the engine emits
"""

from typing import Any, Dict, List, Literal, Optional

from pydantic import BaseModel, Field

SCHEMA_VERSION = "1"

Status = Literal["verified", "failed", "not-checked"]
Verdict = Literal["verified", "hypothesis-not-met", "VIOLATION"]


class HilbertTableModel(BaseModel):
    """
    Schema for a Hilbert-Samuel table
    Space Complexity: O(d * N)
    """
    N: int
    values: List[int]  # H(0..N)
    differences: List[List[int]]  # Δ^k H(1..N), k = 0..d
    stabilization: Optional[int] = None


class CoefficientsModel(BaseModel):
    d: int
    e: List[int]
    postulation_index: int


class TermRow(BaseModel):
    """
    One n of a per-n term table: named columns and the term they combine into
    """
    n: int
    columns: Dict[str, int] = Field(default_factory=dict)
    term: int


class CheckRow(BaseModel):
    """
    A machine-checked statement; `range` says how far a finite-range check reached
    """
    name: str
    status: Status
    range: Optional[str] = None
    witness: Optional[str] = None


class RouteResult(BaseModel):
    route: str
    value: Optional[int] = None
    applicable: bool = True
    terms: List[TermRow] = Field(default_factory=list)
    hypotheses: List[CheckRow] = Field(default_factory=list)
    checks: List[CheckRow] = Field(default_factory=list)
    notes: List[str] = Field(default_factory=list)


class ChernReport(BaseModel):
    """
    e_1 by every applicable route; consistent iff every applicable value equals the fitted e_1
    """
    e_fit: CoefficientsModel
    e1_routes: List[RouteResult]
    consistent: bool
    ranges: Dict[str, int] = Field(default_factory=dict)


class TheoremReport(BaseModel):
    theorem: str
    hypotheses: List[CheckRow] = Field(default_factory=list)
    conclusions: List[CheckRow] = Field(default_factory=list)
    verdict: Verdict
    values: Dict[str, int] = Field(default_factory=dict)


class ReductionModel(BaseModel):
    generators: List[str]
    verified_at: int
    window: int


class ClosureTerm(BaseModel):
    n: int
    generators: List[str]
    colength: int


class ClosureModel(BaseModel):
    seed: List[str]
    edges: List[List[int]]  # [p, q, c] for p*a + q*b >= n*c
    terms: List[ClosureTerm]
    admissibility_k: Optional[int] = None


class Report(BaseModel):
    """
    Top-level report: deterministic given (job, seed, version) apart from `timings`
    """
    schema_version: str = SCHEMA_VERSION
    engine_version: str
    command: str
    job: Optional[Dict[str, Any]] = None
    seed: Optional[int] = None
    hilbert: Optional[HilbertTableModel] = None
    coefficients: Optional[CoefficientsModel] = None
    reduction: Optional[ReductionModel] = None
    chern: Optional[ChernReport] = None
    theorem: Optional[TheoremReport] = None
    closure: Optional[ClosureModel] = None
    timings: Dict[str, float] = Field(default_factory=dict)


class FuzzCase(BaseModel):
    index: int
    seed: int
    job: Dict[str, Any]
    e: List[int] = Field(default_factory=list)
    consistent: bool
    violations: List[str] = Field(default_factory=list)


class FuzzCampaignReport(BaseModel):
    schema_version: str = SCHEMA_VERSION
    engine_version: str
    dim: int
    count: int
    seed: int
    max_deg: int
    cases: List[FuzzCase] = Field(default_factory=list)
    consistent_count: int = 0
    violation_count: int = 0
    timings: Dict[str, float] = Field(default_factory=dict)
