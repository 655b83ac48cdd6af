"""
Chern number and theorem verifier routes
"""

import logging
from typing import Any, Dict, Optional

from fastapi import APIRouter, Body, Query

from app.services.expr_parser import parse_job
from app.services.report_builder import build_chern_report, build_verify_report
from app.utils.json_utils import exact_payload

logger = logging.getLogger(__name__)

router = APIRouter(prefix="/api", tags=["chern"])


@router.post("/chern")
def chern(
    document: Dict[str, Any] = Body(..., description="Job document (same keys as a job file)"),
    max_n: Optional[int] = Query(None, ge=2),
    seed: Optional[int] = Query(None, description="Seed for the random reduction search"),
):
    """
    e_1 by every applicable route; `chern.consistent` is false only on an engine bug
    """
    job = parse_job(document)
    report = build_chern_report(job, max_n, seed)
    if not report.chern.consistent:
        logger.warning(f"[API] inconsistent chern report for ideal {job.ideal}")
    return exact_payload(report)


@router.post("/verify/{theorem_id}")
def verify(
    theorem_id: str,
    document: Dict[str, Any] = Body(...),
    max_n: Optional[int] = Query(None, ge=2),
    seed: Optional[int] = Query(None),
):
    job = parse_job(document)
    return exact_payload(build_verify_report(theorem_id, job, max_n, seed))
