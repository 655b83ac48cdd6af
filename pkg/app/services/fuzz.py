"""
Fuzz campaigns over random m-primary monomial ideals
Every case carries its own seed so a single failure can be replayed
"""

from __future__ import annotations

import logging
import math
import random
import time
from concurrent.futures import ThreadPoolExecutor
from typing import List, Optional, Tuple

from app import __version__
from app.config.settings import settings
from app.schemas.job import JobSpec
from app.schemas.report import FuzzCampaignReport, FuzzCase
from app.services.chern import build_context, chern_report_for
from app.services.theorems import verify_lipman, verify_modified_koszul
from app.utils.exceptions import AppException, InvalidField

logger = logging.getLogger(__name__)

FUZZ_MAX_N = 12


def _monomial(names: Tuple[str, str], i: int, j: int) -> str:
    parts = []
    for name, e in zip(names, (i, j)):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts) or "1"


def _random_staircase(rng: random.Random, max_deg: int) -> List[Tuple[int, int]]:
    """Pure powers x^a, y^b plus a few monomials strictly inside the box"""
    a = rng.randint(1, max_deg)
    b = rng.randint(1, max_deg)
    exps = {(a, 0), (0, b)}
    inside = [(i, j) for i in range(1, a) for j in range(1, b) if i + j <= max_deg]
    for _ in range(rng.randint(0, 3)):
        if inside:
            exps.add(rng.choice(inside))
    return sorted(exps, reverse=True)


def random_dim2_job(rng: random.Random, max_deg: int, case_seed: int) -> JobSpec:
    names = ("x", "y")
    ideal = [_monomial(names, i, j) for i, j in _random_staircase(rng, max_deg)]
    return JobSpec.model_validate({"vars": list(names), "ideal": ideal, "seed": case_seed, "max_n": FUZZ_MAX_N})


def random_dim1_job(rng: random.Random, max_deg: int, case_seed: int) -> JobSpec:
    """
    Plane monomial curve k[x, y]/(x^b - y^a) with gcd(a, b) = 1, so x = t^a and y = t^b;
    the generator of least valuation spans a reduction of any monomial ideal
    """
    top = max(3, max_deg)
    while True:
        a, b = rng.randint(2, top), rng.randint(2, top)
        if a != b and math.gcd(a, b) == 1:
            break
    names = ("x", "y")
    exps = _random_staircase(rng, max_deg)
    ideal = [_monomial(names, i, j) for i, j in exps]
    i, j = min(exps, key=lambda e: (a * e[0] + b * e[1], e))
    return JobSpec.model_validate({
        "vars": list(names),
        "quotient": [f"x^{b} - y^{a}"],
        "ideal": ideal,
        "reduction": [_monomial(names, i, j)],
        "seed": case_seed,
        "max_n": FUZZ_MAX_N,
    })


def run_case(dim: int, index: int, case_seed: int, max_deg: int) -> FuzzCase:
    rng = random.Random(case_seed)
    job = random_dim2_job(rng, max_deg, case_seed) if dim == 2 else random_dim1_job(rng, max_deg, case_seed)
    violations: List[str] = []
    e: List[int] = []
    consistent = False
    try:
        ctx = build_context(job, seed=case_seed)
        e = list(ctx.coefficients.e)
        report = chern_report_for(ctx)
        consistent = report.consistent
        for route in report.e1_routes:
            for check in route.checks:
                if check.status == "failed":
                    violations.append(f"{route.route}: {check.name}")
        if dim == 2:
            koszul = verify_modified_koszul(ctx)
            if koszul.verdict == "VIOLATION":
                violations.append("modified-koszul: VIOLATION")
        else:
            if ctx.coefficients.e1 < 0:
                violations.append(f"e1 = {ctx.coefficients.e1} < 0 on a Cohen-Macaulay ring")
            if verify_lipman(ctx).verdict == "VIOLATION":
                violations.append("lipman: VIOLATION")
    except AppException as err:
        violations.append(f"{type(err).__name__}: {err.message}")
        consistent = False

    if violations or not consistent:
        logger.warning(f"[FUZZ] case {index} (seed {case_seed}) failed: {violations or ['inconsistent']}")
    return FuzzCase(index=index, seed=case_seed, job=job.to_document(), e=e,
                    consistent=consistent, violations=violations)


def run_campaign(dim: int, count: int, seed: int = 0, max_deg: int = 6,
                 workers: Optional[int] = None) -> FuzzCampaignReport:
    """
    `count` random cases in dimension 1 or 2; output ordered by case index
    """
    if dim not in (1, 2):
        raise InvalidField("dim", "fuzz campaigns run in dimension 1 or 2")
    if count < 0:
        raise InvalidField("count", "must be nonnegative")
    if max_deg < 1:
        raise InvalidField("max_deg", "must be at least 1")

    rng = random.Random(seed)
    seeds = [rng.randrange(2 ** 31) for _ in range(count)]
    workers = workers or settings.workers
    start = time.perf_counter()
    logger.info(f"[FUZZ] dim {dim}: {count} cases, seed {seed}, max degree {max_deg}, {workers} workers")

    if workers > 1 and count > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            cases = list(pool.map(lambda item: run_case(dim, item[0], item[1], max_deg), enumerate(seeds)))
    else:
        cases = [run_case(dim, index, case_seed, max_deg) for index, case_seed in enumerate(seeds)]

    report = FuzzCampaignReport(
        engine_version=__version__,
        dim=dim,
        count=count,
        seed=seed,
        max_deg=max_deg,
        cases=cases,
        consistent_count=sum(1 for c in cases if c.consistent),
        violation_count=sum(1 for c in cases if c.violations),
        timings={"campaign": round(time.perf_counter() - start, 6)},
    )
    logger.info(f"[FUZZ] {report.consistent_count}/{count} consistent, {report.violation_count} with violations")
    return report


__all__ = ["random_dim1_job", "random_dim2_job", "run_campaign", "run_case"]
