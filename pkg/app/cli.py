"""
Command-line surface
Run as: python -m app.cli <command> [options]

Exit codes: 0 success (including hypothesis-not-met), 1 mathematical inconsistency,
2 usage or input error
"""

import argparse
import logging
import sys
from pathlib import Path
from typing import List, Optional

from app.config.settings import settings
from app.schemas.job import JobSpec
from app.services.corpus import run_corpus
from app.services.expr_parser import parse_job
from app.services.fuzz import run_campaign
from app.services.report_builder import (
    build_chern_report,
    build_closure_report,
    build_hilbert_report,
    build_reduction_report,
    build_verify_report,
    render_text,
)
from app.services.theorems import THEOREM_IDS
from app.utils.exceptions import AppException, InconsistentReport, InputError, MalformedDocument
from app.utils.json_utils import to_exact_json

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_MATH = 1
EXIT_INPUT = 2


def _configure_logging() -> None:
    logging.basicConfig(
        level=getattr(logging, settings.log_level, logging.INFO),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )


def load_job(path: str, field_char: Optional[int] = None) -> JobSpec:
    try:
        document = Path(path).read_bytes()
    except OSError as e:
        raise MalformedDocument(f"cannot read job file {path}: {e.strerror}")
    job = parse_job(document)
    if field_char is not None:
        job = parse_job({**job.to_document(), "field.char": field_char})
    return job


def _global_flags(parser: argparse.ArgumentParser, suppress: bool) -> None:
    # subcommands share the flags without clobbering values given before the subcommand
    default = argparse.SUPPRESS if suppress else None
    parser.add_argument("--json", action="store_true", default=argparse.SUPPRESS if suppress else False,
                        help="Print the JSON report instead of the text rendering.")
    parser.add_argument("--seed", type=int, default=default, help="Seed for random reduction search.")
    parser.add_argument("--max-n", type=int, default=default, dest="max_n",
                        help=f"Hilbert table bound (default: job value or {settings.max_n}).")
    parser.add_argument("--char", type=int, default=default, dest="field_char",
                        help="Override the job's field characteristic.")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="python -m app.cli",
        description="Exact Hilbert coefficients and Chern numbers of filtrations in presented local rings.",
    )
    _global_flags(parser, suppress=False)
    common = argparse.ArgumentParser(add_help=False)
    _global_flags(common, suppress=True)
    sub = parser.add_subparsers(dest="command", required=True)

    for name, help_text in (
        ("hilbert", "Hilbert table, differences and fitted coefficients."),
        ("chern", "e_1 by every applicable route."),
        ("closure", "Integral closures of powers of a monomial ideal of k[x, y]."),
        ("reduction", "A verified minimal reduction."),
    ):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.add_argument("job", help="Path to a job file (JSON).")

    p = sub.add_parser("verify", parents=[common], help="Run a theorem verifier.")
    p.add_argument("theorem", choices=THEOREM_IDS)
    p.add_argument("job", help="Path to a job file (JSON).")

    p = sub.add_parser("fuzz", parents=[common], help="Random campaign checked by route agreement.")
    p.add_argument("--dim", type=int, choices=(1, 2), default=2)
    p.add_argument("--count", type=int, default=50)
    p.add_argument("--max-deg", type=int, default=6, dest="max_deg")

    p = sub.add_parser("corpus", parents=[common], help="Check the shipped corpus against its sidecars.")
    p.add_argument("--bless", action="store_true", help="Rewrite every sidecar from a fresh run.")
    p.add_argument("--dir", type=Path, default=None, dest="corpus_dir")
    return parser


def _emit(payload, as_json: bool, text: str) -> None:
    print(to_exact_json(payload) if as_json else text)


def run(args: argparse.Namespace) -> int:
    command = args.command

    if command == "fuzz":
        campaign = run_campaign(args.dim, args.count, args.seed or 0, args.max_deg)
        failed = [c for c in campaign.cases if c.violations or not c.consistent]
        text = (f"fuzz dim {campaign.dim}: {campaign.consistent_count}/{campaign.count} consistent, "
                f"{campaign.violation_count} with violations")
        for case in failed:
            text += f"\n  case {case.index} (seed {case.seed}): {case.violations}\n    job {case.job}"
        _emit(campaign, args.json, text)
        return EXIT_MATH if failed else EXIT_OK

    if command == "corpus":
        results = run_corpus(args.corpus_dir, bless=args.bless)
        lines = []
        for r in results:
            status = "blessed" if r.blessed else ("ok" if r.passed else "MISMATCH")
            lines.append(f"{r.name}: {status}")
            lines.extend(f"  {m}" for m in r.mismatches)
        payload = {r.name: {"passed": r.passed, "mismatches": r.mismatches} for r in results}
        _emit(payload, args.json, "\n".join(lines))
        return EXIT_OK if all(r.passed for r in results) else EXIT_MATH

    job = load_job(args.job, args.field_char)
    if command == "hilbert":
        report = build_hilbert_report(job, args.max_n)
    elif command == "chern":
        report = build_chern_report(job, args.max_n, args.seed)
    elif command == "verify":
        report = build_verify_report(args.theorem, job, args.max_n, args.seed)
    elif command == "closure":
        report = build_closure_report(job, args.max_n)
    else:
        report = build_reduction_report(job, args.max_n, args.seed)
    _emit(report, args.json, render_text(report))

    if report.chern is not None and not report.chern.consistent:
        routes = {r.route: r.value for r in report.chern.e1_routes if r.applicable}
        raise InconsistentReport(
            f"e_1 routes disagree with the fitted e_1 = {report.chern.e_fit.e[1]}",
            details={"routes": routes},
        )
    if report.theorem is not None and report.theorem.verdict == "VIOLATION":
        return EXIT_MATH
    return EXIT_OK


def main(argv: Optional[List[str]] = None) -> int:
    _configure_logging()
    args = build_parser().parse_args(argv)
    try:
        return run(args)
    except InputError as e:
        logger.error(f"[CLI] {type(e).__name__}: {e.message}")
        print(to_exact_json({"error": e.message, "details": e.details}) if args.json else f"error: {e.message}",
              file=sys.stderr)
        return EXIT_INPUT
    except AppException as e:
        logger.error(f"[CLI] {type(e).__name__}: {e.message}")
        print(to_exact_json({"error": e.message, "details": e.details}) if args.json else f"error: {e.message}",
              file=sys.stderr)
        return EXIT_MATH


if __name__ == "__main__":
    sys.exit(main())
