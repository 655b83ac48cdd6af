"""
Pydantic schemas for jobs and reports
"""

from .job import JobSpec

from .report import (
    SCHEMA_VERSION,
    CheckRow,
    ChernReport,
    ClosureModel,
    ClosureTerm,
    CoefficientsModel,
    FuzzCampaignReport,
    FuzzCase,
    HilbertTableModel,
    ReductionModel,
    Report,
    RouteResult,
    TermRow,
    TheoremReport,
)

__all__ = [
    # Job schema
    "JobSpec",
    # Report schemas
    "SCHEMA_VERSION",
    "CheckRow",
    "ChernReport",
    "ClosureModel",
    "ClosureTerm",
    "CoefficientsModel",
    "FuzzCampaignReport",
    "FuzzCase",
    "HilbertTableModel",
    "ReductionModel",
    "Report",
    "RouteResult",
    "TermRow",
    "TheoremReport",
]
