"""
Golden corpus: job files shipped with expected-value sidecars
A sidecar lists only the values it pins; `bless` rewrites sidecars from a fresh run
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional

from app.config.settings import settings
from app.schemas.job import JobSpec
from app.services.chern import build_context, chern_report_for
from app.services.expr_parser import parse_job
from app.services.filtration import Filtration
from app.services.hilbert import hilbert_data
from app.services.local_ring import make_ring
from app.services.theorems import run_verifier
from app.utils.exceptions import MalformedDocument
from app.utils.json_utils import stringify_integers, to_exact_json

logger = logging.getLogger(__name__)

SIDECAR_SUFFIX = ".expected.json"
HILBERT_PREFIX = 8
DEFAULT_KEYS = ("hilbert", "e", "routes", "consistent")


@dataclass
class CorpusCase:
    name: str
    job_path: Path
    sidecar_path: Path
    job: JobSpec

    def expected(self) -> Optional[Dict[str, Any]]:
        if not self.sidecar_path.exists():
            return None
        try:
            return json.loads(self.sidecar_path.read_text(encoding="utf-8"))
        except json.JSONDecodeError as e:
            raise MalformedDocument(f"{self.sidecar_path.name}: {e}")


@dataclass
class CorpusResult:
    name: str
    observed: Dict[str, Any]
    mismatches: List[str] = field(default_factory=list)
    blessed: bool = False

    @property
    def passed(self) -> bool:
        return not self.mismatches


def load_corpus(directory: Optional[Path] = None) -> List[CorpusCase]:
    """Every `*.json` job under the corpus directory that is not a sidecar, sorted by name"""
    directory = Path(directory or settings.corpus_dir)
    cases = []
    for path in sorted(directory.glob("*.json")):
        if path.name.endswith(SIDECAR_SUFFIX):
            continue
        stem = path.name[: -len(".json")]
        job = parse_job(path.read_bytes())
        cases.append(CorpusCase(stem, path, path.with_name(stem + SIDECAR_SUFFIX), job))
    logger.info(f"[CORPUS] loaded {len(cases)} jobs from {directory}")
    return cases


def observe(case: CorpusCase, keys: List[str], verifiers: List[str]) -> Dict[str, Any]:
    """Compute only what the requested keys need"""
    job = case.job
    observed: Dict[str, Any] = {}
    if "routes" in keys or "consistent" in keys:
        ctx = build_context(job)
        chern = chern_report_for(ctx)
        table, coefficients = ctx.table, ctx.coefficients
        if "routes" in keys:
            observed["routes"] = {r.route: r.value for r in chern.e1_routes}
        if "consistent" in keys:
            observed["consistent"] = chern.consistent
    else:
        ring = make_ring(job.vars, job.quotient, job.field_char)
        F = Filtration(ring, ring.ideal_from_strings(job.ideal), job.filtration)
        table, coefficients = hilbert_data(F, job.max_n)
    if "hilbert" in keys:
        observed["hilbert"] = table.values[1:HILBERT_PREFIX + 1]
    if "e" in keys:
        observed["e"] = list(coefficients.e)
    if verifiers:
        observed["verify"] = {tid: run_verifier(tid, job).verdict for tid in verifiers}
    return stringify_integers(observed)


def _compare(expected: Dict[str, Any], observed: Dict[str, Any]) -> List[str]:
    mismatches = []
    for key, want in expected.items():
        got = observed.get(key)
        if key in ("routes", "verify"):
            for name, value in want.items():
                if got.get(name) != value:
                    mismatches.append(f"{key}.{name}: expected {value}, got {got.get(name)}")
        elif got != want:
            mismatches.append(f"{key}: expected {want}, got {got}")
    return mismatches


def check_case(case: CorpusCase, bless: bool = False) -> CorpusResult:
    expected = case.expected()
    keys = list(expected) if expected else list(DEFAULT_KEYS)
    verifiers = list((expected or {}).get("verify", {}))
    observed = observe(case, [k for k in keys if k != "verify"], verifiers)

    if bless:
        case.sidecar_path.write_text(to_exact_json(observed) + "\n", encoding="utf-8")
        logger.info(f"[CORPUS] blessed {case.sidecar_path.name}")
        return CorpusResult(case.name, observed, blessed=True)
    if expected is None:
        return CorpusResult(case.name, observed, [f"missing sidecar {case.sidecar_path.name}"])

    result = CorpusResult(case.name, observed, _compare(expected, observed))
    if not result.passed:
        logger.warning(f"[CORPUS] {case.name}: {result.mismatches}")
    return result


def run_corpus(directory: Optional[Path] = None, bless: bool = False) -> List[CorpusResult]:
    return [check_case(case, bless) for case in load_corpus(directory)]


__all__ = ["CorpusCase", "CorpusResult", "check_case", "load_corpus", "observe", "run_corpus"]
