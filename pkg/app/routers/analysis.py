"""
Hilbert table, closure and reduction routes
"""

import logging
from typing import Any, Dict, Optional

from fastapi import APIRouter, Body, Query

from app.services.expr_parser import parse_job
from app.services.report_builder import build_closure_report, build_hilbert_report, build_reduction_report
from app.utils.json_utils import exact_payload

logger = logging.getLogger(__name__)

router = APIRouter(prefix="/api", tags=["analysis"])


@router.post("/hilbert")
def hilbert(
    document: Dict[str, Any] = Body(..., description="Job document (same keys as a job file)"),
    max_n: Optional[int] = Query(None, ge=2, description="Hilbert table bound"),
):
    """
    H(n) for n <= max_n, its differences and the fitted coefficients
    """
    job = parse_job(document)
    logger.info(f"[API] hilbert over vars {job.vars}")
    return exact_payload(build_hilbert_report(job, max_n))


@router.post("/closure")
def closure(
    document: Dict[str, Any] = Body(...),
    max_n: Optional[int] = Query(None, ge=1),
):
    job = parse_job(document)
    return exact_payload(build_closure_report(job, max_n))


@router.post("/reduction")
def reduction(
    document: Dict[str, Any] = Body(...),
    max_n: Optional[int] = Query(None, ge=2),
    seed: Optional[int] = Query(None),
):
    job = parse_job(document)
    return exact_payload(build_reduction_report(job, max_n, seed))
