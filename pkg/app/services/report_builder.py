"""
Report builders shared by the CLI and the HTTP routers
Each builder runs one command end to end and returns a `Report`
"""

from __future__ import annotations

import logging
import time
from contextlib import contextmanager
from typing import Dict, Iterator, List, Optional

from app import __version__
from app.schemas.job import JobSpec
from app.schemas.report import ClosureModel, ClosureTerm, ReductionModel, Report
from app.services.chern import build_context, chern_report_for
from app.services.filtration import Filtration, admissibility_check, newton_edges
from app.services.hilbert import hilbert_data
from app.services.local_ring import local_colength, make_ring
from app.services.reduction_search import Reduction
from app.services.theorems import run_verifier
from app.utils.exceptions import ClosureUnsupported

logger = logging.getLogger(__name__)


@contextmanager
def _timed(timings: Dict[str, float], step: str) -> Iterator[None]:
    start = time.perf_counter()
    try:
        yield
    finally:
        timings[step] = round(time.perf_counter() - start, 6)


def _reduction_model(reduction: Reduction) -> ReductionModel:
    return ReductionModel(generators=reduction.labels(), verified_at=reduction.verified_at, window=reduction.window)


def _new_report(command: str, job: JobSpec, seed: Optional[int]) -> Report:
    return Report(engine_version=__version__, command=command, job=job.to_document(),
                  seed=seed if seed is not None else job.seed)


def build_hilbert_report(job: JobSpec, max_n: Optional[int] = None) -> Report:
    """
    H, its differences up to order d, the fitted e_0..e_d and the postulation index
    """
    report = _new_report("hilbert", job, None)
    with _timed(report.timings, "hilbert"):
        ring = make_ring(job.vars, job.quotient, job.field_char)
        F = Filtration(ring, ring.ideal_from_strings(job.ideal), job.filtration)
        table, coefficients = hilbert_data(F, max_n or job.max_n)
    report.hilbert = table.to_model()
    report.coefficients = coefficients.to_model()
    logger.info(f"[REPORT] hilbert: e = {list(coefficients.e)}")
    return report


def build_chern_report(job: JobSpec, max_n: Optional[int] = None, seed: Optional[int] = None) -> Report:
    report = _new_report("chern", job, seed)
    with _timed(report.timings, "context"):
        ctx = build_context(job, max_n, seed)
    with _timed(report.timings, "routes"):
        report.chern = chern_report_for(ctx)
    report.hilbert = ctx.table.to_model()
    report.coefficients = ctx.coefficients.to_model()
    report.reduction = _reduction_model(ctx.reduction)
    return report


def build_verify_report(theorem_id: str, job: JobSpec, max_n: Optional[int] = None,
                        seed: Optional[int] = None) -> Report:
    report = _new_report(f"verify {theorem_id}", job, seed)
    with _timed(report.timings, "verify"):
        report.theorem = run_verifier(theorem_id, job, max_n, seed)
    return report


def build_reduction_report(job: JobSpec, max_n: Optional[int] = None, seed: Optional[int] = None) -> Report:
    """A verified minimal reduction (the job's own candidate when it names one)"""
    report = _new_report("reduction", job, seed)
    with _timed(report.timings, "reduction"):
        ctx = build_context(job, max_n, seed)
    report.coefficients = ctx.coefficients.to_model()
    report.reduction = _reduction_model(ctx.reduction)
    return report


def build_closure_report(job: JobSpec, max_n: Optional[int] = None) -> Report:
    """
    Generators and colengths of the integral closures of I^n for n <= max_n,
    the Newton polygon edges and the admissibility constant on that range
    """
    if job.quotient or len(job.vars) != 2:
        raise ClosureUnsupported("closure needs k[x, y] with an empty quotient")
    report = _new_report("closure", job, None)
    N = max_n or job.max_n
    with _timed(report.timings, "closure"):
        ring = make_ring(job.vars, [], job.field_char)
        seed = ring.ideal_from_strings(job.ideal)
        F = Filtration.closure(seed)
        terms: List[ClosureTerm] = []
        for n in range(1, N + 1):
            term = F.term(n)
            terms.append(ClosureTerm(
                n=n,
                generators=[str(g) for g in term.generators()],
                colength=int(local_colength(term)),
            ))
        edges = newton_edges([tuple(e) for e in seed.lift.monomial_generators()])
        k = admissibility_check(F, N) if N >= 2 else None
    report.closure = ClosureModel(
        seed=list(job.ideal),
        edges=[list(edge) for edge in edges],
        terms=terms,
        admissibility_k=k,
    )
    return report


# ---------------------------------------------------------------------------
# Plain-text rendering
# ---------------------------------------------------------------------------

def _render_table(lines: List[str], report: Report) -> None:
    table = report.hilbert
    if table is None:
        return
    width = max(len(str(v)) for row in table.differences for v in row)
    width = max(width, len(str(table.N)), 3)
    lines.append("n      " + " ".join(f"{n:>{width}}" for n in range(1, table.N + 1)))
    for k, row in enumerate(table.differences):
        label = "H" if k == 0 else ("ΔH" if k == 1 else f"Δ^{k}H")
        lines.append(f"{label:<7}" + " ".join(f"{v:>{width}}" for v in row))


def render_text(report: Report) -> str:
    """Human-readable rendering of a report; the JSON form is authoritative"""
    lines = [f"{report.command} (engine {report.engine_version})"]
    if report.job:
        lines.append(f"ring: k[{', '.join(report.job['vars'])}]"
                     + (f"/({', '.join(report.job['quotient'])})" if report.job.get("quotient") else "")
                     + f", char {report.job['field.char']}")
        lines.append(f"ideal: ({', '.join(report.job['ideal'])}), filtration {report.job['filtration']}")
    _render_table(lines, report)
    if report.coefficients is not None:
        c = report.coefficients
        lines.append("e = (" + ", ".join(str(v) for v in c.e) + f"), postulation index {c.postulation_index}")
    if report.reduction is not None:
        r = report.reduction
        lines.append(f"reduction: ({', '.join(r.generators)}) verified for "
                     f"{r.verified_at} <= n <= {r.verified_at + r.window}")
    if report.chern is not None:
        for route in report.chern.e1_routes:
            if not route.applicable:
                lines.append(f"  {route.route}: not applicable ({'; '.join(route.notes)})")
                continue
            terms = ", ".join(str(row.term) for row in route.terms)
            lines.append(f"  {route.route}: e1 = {route.value}  terms [{terms}]")
            failed = [c.name for c in route.checks if c.status == "failed"]
            if failed:
                lines.append(f"    failed: {'; '.join(failed)}")
            for note in route.notes:
                lines.append(f"    note: {note}")
        lines.append("consistent" if report.chern.consistent else "INCONSISTENT")
    if report.theorem is not None:
        t = report.theorem
        lines.append(f"theorem {t.theorem}: {t.verdict}")
        for label, rows in (("hypothesis", t.hypotheses), ("conclusion", t.conclusions)):
            for row in rows:
                reach = f" [{row.range}]" if row.range else ""
                witness = f" ({row.witness})" if row.witness else ""
                lines.append(f"  {label} {row.status}: {row.name}{reach}{witness}")
        if t.values:
            lines.append("  " + ", ".join(f"{k} = {v}" for k, v in t.values.items()))
    if report.closure is not None:
        cl = report.closure
        lines.append("edges: " + ", ".join(f"{p}a + {q}b >= {c}n" for p, q, c in cl.edges))
        for term in cl.terms:
            lines.append(f"  n = {term.n}: colength {term.colength}  ({', '.join(term.generators)})")
        if cl.admissibility_k is not None:
            lines.append(f"admissible with k = {cl.admissibility_k} on the computed range")
    return "\n".join(lines)


__all__ = [
    "build_chern_report",
    "build_closure_report",
    "build_hilbert_report",
    "build_reduction_report",
    "build_verify_report",
    "render_text",
]
