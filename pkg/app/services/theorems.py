"""
Theorem verifiers
Every hypothesis is machine-checked (on a finite range where it cannot be decided)
before any conclusion is tested; a failed conclusion under verified hypotheses is a VIOLATION
"""

from __future__ import annotations

import logging
from typing import Callable, Dict, List, Optional

from app.schemas.job import JobSpec
from app.schemas.report import CheckRow, TheoremReport
from app.services.chern import (
    CLOSURE_ROUTE,
    ChernContext,
    build_context,
    e1_dim2,
    e1_via_euler_characteristics,
    fundamental_lemma,
)
from app.services.filtration import ADIC, Filtration
from app.services.hilbert import e0_via_colength, hilbert_data, hilbert_poly_eval
from app.services.ideal_ops import INFINITE
from app.services.local_ring import (
    is_regular_element,
    is_regular_sequence,
    local_colength,
    locally_equal,
    make_ring,
    subquotient_length,
)
from app.services.reduction_search import is_reduction
from app.utils.exceptions import ClosureUnsupported, InvalidField, NotRegularSequence

logger = logging.getLogger(__name__)


def _row(name: str, ok: bool, range_: Optional[str] = None, witness: Optional[str] = None) -> CheckRow:
    return CheckRow(name=name, status="verified" if ok else "failed", range=range_, witness=witness)


def _range_row(name: str, failures: List[int], lo: int, hi: int) -> CheckRow:
    return _row(name, not failures, f"{lo} <= n <= {hi}", f"n = {failures[0]}" if failures else None)


def _verdict(theorem: str, hypotheses: List[CheckRow], conclusions: List[CheckRow],
             values: Optional[Dict[str, int]] = None) -> TheoremReport:
    if any(h.status != "verified" for h in hypotheses):
        verdict = "hypothesis-not-met"
    elif any(c.status == "failed" for c in conclusions):
        verdict = "VIOLATION"
        logger.warning(f"[VERIFY] VIOLATION in {theorem}: {[c.name for c in conclusions if c.status == 'failed']}")
    else:
        verdict = "verified"
    logger.info(f"[VERIFY] {theorem}: {verdict}")
    return TheoremReport(theorem=theorem, hypotheses=hypotheses, conclusions=conclusions,
                         verdict=verdict, values=values or {})


def _dimension_row(ctx: ChernContext, d: int) -> CheckRow:
    return _row(f"dim R = {d}", ctx.d == d, witness=None if ctx.d == d else f"dim R = {ctx.d}")


def _dim1_hypotheses(ctx: ChernContext) -> List[CheckRow]:
    rows = [_dimension_row(ctx, 1)]
    if ctx.d != 1:
        return rows
    x = ctx.reduction.gens[0]
    rows.append(ctx.reduction_row())
    rows.append(_row(f"{x} is a nonzerodivisor (Cohen-Macaulay evidence)", is_regular_element(ctx.ring, x)))
    return rows


# ---------------------------------------------------------------------------
# Dimension one
# ---------------------------------------------------------------------------

def verify_rees(ctx: ChernContext, generators: List[str]) -> TheoremReport:
    """
    A parameter ideal J ⊆ I_1 with e_0(J) = e_0(F) is a reduction of F
    """
    theorem = "rees"
    hypotheses = [_dimension_row(ctx, 1)]
    if ctx.d != 1:
        return _verdict(theorem, hypotheses, [])
    R, F = ctx.ring, ctx.filtration
    gens = [R.element(g) for g in generators]
    J = R.ideal(gens)
    inside = F.term(1).contains_ideal(J)
    hypotheses.append(_row(f"J = ({', '.join(generators)}) ⊆ I_1", inside))
    parameter = len(gens) == 1 and local_colength(J) != INFINITE
    hypotheses.append(_row("J is generated by one parameter", parameter))
    if not (inside and parameter):
        return _verdict(theorem, hypotheses, [])

    _, coefficients_j = hilbert_data(Filtration.adic(J), ctx.table.N)
    e0_j, e0_f = coefficients_j.e0, ctx.coefficients.e0
    values = {"e0_J": e0_j, "e0_F": e0_f}
    hypotheses.append(_row("e_0(J) = e_0(F)", e0_j == e0_f, witness=f"{e0_j} vs {e0_f}"))

    n0 = is_reduction(F, J, ctx.table.N)
    conclusions: List[CheckRow] = []
    if e0_j == e0_f:
        conclusions.append(_row("J is a reduction of F", n0 is not None,
                                range_=f"from n0 = {n0}" if n0 is not None else f"n <= {ctx.table.N}"))
    # converse direction: a reduction has the same multiplicity
    converse = _row("J a reduction implies e_0(J) = e_0(F)", n0 is None or e0_j == e0_f)
    conclusions.append(converse)
    if n0 is not None:
        values["n0"] = n0

    expected = e0_via_colength(R, gens)
    if expected is not None:
        values["colength_J"] = expected
        conclusions.append(_row("e_0(J) = λ(R/J) for a regular parameter", expected == e0_j))

    report = _verdict(theorem, hypotheses, conclusions, values)
    if converse.status == "failed":
        logger.warning("[VERIFY] VIOLATION in rees: reduction with a different multiplicity")
        report.verdict = "VIOLATION"
    return report


def verify_lipman(ctx: ChernContext) -> TheoremReport:
    """
    λ(I_(n-1)/I_n) <= e_0 with equality exactly when I_n = x I_(n-1)
    """
    theorem = "lipman"
    hypotheses = _dim1_hypotheses(ctx)
    if any(h.status != "verified" for h in hypotheses):
        return _verdict(theorem, hypotheses, [])
    F, T = ctx.filtration, ctx.table
    x = ctx.reduction.gens[0]
    e0 = ctx.coefficients.e0
    top = ctx.check_range

    inequality, biconditional, identity = [], [], []
    equality_from: Optional[int] = None
    for n in range(1, top + 1):
        drop = T.H(n) - T.H(n - 1)
        equal_ideals = locally_equal(F.term(n), F.term(n - 1) * x)
        if drop > e0:
            inequality.append(n)
        if equal_ideals != (drop == e0):
            biconditional.append(n)
        if drop + subquotient_length(F.term(n), F.term(n - 1) * x) != e0:
            identity.append(n)
        if equal_ideals and equality_from is None:
            equality_from = n

    conclusions = [
        _range_row("λ(I_(n-1)/I_n) <= e_0", inequality, 1, top),
        _range_row("I_n = x I_(n-1) iff λ(I_(n-1)/I_n) = e_0", biconditional, 1, top),
        _range_row("λ(I_(n-1)/I_n) + λ(I_n / x I_(n-1)) = e_0", identity, 1, top),
    ]
    values = {"e0": e0}
    if equality_from is not None:
        values["first_equality"] = equality_from
    return _verdict(theorem, hypotheses, conclusions, values)


def verify_huneke_dim1(ctx: ChernContext) -> TheoremReport:
    """
    e_1 = e_0 - λ(R/I_1) forces H = P from n = 1 and I_n = x I_(n-1) from n = 2
    """
    theorem = "huneke-dim1"
    hypotheses = _dim1_hypotheses(ctx)
    C, T = ctx.coefficients, ctx.table
    values = {"e0": C.e0, "e1": C.e1, "H1": T.H(1)} if ctx.d == 1 else {}
    if ctx.d == 1:
        hypotheses.append(_row("e_1 = e_0 - λ(R/I_1)", C.e1 == C.e0 - T.H(1),
                               witness=f"{C.e1} vs {C.e0 - T.H(1)}"))
    if any(h.status != "verified" for h in hypotheses):
        return _verdict(theorem, hypotheses, [], values)

    F = ctx.filtration
    x = ctx.reduction.gens[0]
    top = ctx.check_range
    polynomial = [n for n in range(1, T.N + 1) if T.H(n) != hilbert_poly_eval(C, n)]
    principal = [n for n in range(2, top + 1) if not locally_equal(F.term(n), F.term(n - 1) * x)]
    conclusions = [
        _range_row("H(n) = P(n)", polynomial, 1, T.N),
        _range_row("I_n = x I_(n-1)", principal, 2, top),
        _row("P(1) - H(1) = e_0 - e_1 - λ(R/I_1)",
             hilbert_poly_eval(C, 1) - T.H(1) == C.e0 - C.e1 - T.H(1)),
    ]
    return _verdict(theorem, hypotheses, conclusions, values)


def verify_sally(ctx: ChernContext) -> TheoremReport:
    """
    For the I-adic filtration, e_1 = e_0 - λ(R/I) + 1 forces H = P from n = 2,
    λ(I^2 / xI) = 1 and I^3 = x I^2
    """
    theorem = "sally"
    hypotheses = [_row("filtration is I-adic", ctx.filtration.kind == ADIC)]
    hypotheses += _dim1_hypotheses(ctx)
    C, T = ctx.coefficients, ctx.table
    values = {"e0": C.e0, "e1": C.e1, "H1": T.H(1), "P1": hilbert_poly_eval(C, 1)}
    if ctx.d == 1:
        hypotheses.append(_row("e_1 = e_0 - λ(R/I) + 1", C.e1 == C.e0 - T.H(1) + 1,
                               witness=f"{C.e1} vs {C.e0 - T.H(1) + 1}"))
    if any(h.status != "verified" for h in hypotheses):
        return _verdict(theorem, hypotheses, [], values)

    F = ctx.filtration
    x = ctx.reduction.gens[0]
    polynomial = [n for n in range(2, T.N + 1) if T.H(n) != hilbert_poly_eval(C, n)]
    colength_i2 = subquotient_length(F.term(2), F.term(1) * x)
    values["length_I2_over_xI"] = colength_i2
    conclusions = [
        _range_row("H(n) = P(n)", polynomial, 2, T.N),
        _row("λ(I^2 / xI) = 1", colength_i2 == 1, witness=str(colength_i2)),
        _row("I^3 = x I^2", locally_equal(F.term(3), F.term(2) * x)),
        _row("P(2) - H(2) = P(1) - H(1) + 1",
             hilbert_poly_eval(C, 2) - T.H(2) == hilbert_poly_eval(C, 1) - T.H(1) + 1),
    ]
    return _verdict(theorem, hypotheses, conclusions, values)


# ---------------------------------------------------------------------------
# Dimension two
# ---------------------------------------------------------------------------

def _dim2_hypotheses(ctx: ChernContext) -> List[CheckRow]:
    rows = [_dimension_row(ctx, 2)]
    if ctx.d != 2:
        return rows
    rows.append(ctx.reduction_row())
    rows.append(_row("reduction generators form a regular sequence",
                     is_regular_sequence(ctx.ring, ctx.reduction.gens)))
    return rows


def verify_modified_koszul(ctx: ChernContext, n: Optional[int] = None) -> TheoremReport:
    """
    Δ²H(n) = λ(R/(I_n + J)) - λ((J ∩ I_n) / J I_(n-1)) + λ((I_(n-1) : J) / I_(n-2))
    """
    theorem = "modified-koszul"
    hypotheses = _dim2_hypotheses(ctx)
    if any(h.status != "verified" for h in hypotheses):
        return _verdict(theorem, hypotheses, [])
    R, F, T = ctx.ring, ctx.filtration, ctx.table
    J = R.ideal(ctx.reduction.gens)
    rows = [n] if n is not None else list(range(1, ctx.term_bound + 1))

    conclusions = []
    for m in rows:
        h0 = local_colength(F.term(m) + J)
        h1 = subquotient_length(J.intersect(F.term(m)), J * F.term(m - 1))
        h2 = subquotient_length(F.term(m - 1).colon(J), F.term(m - 2))
        lhs = T.difference(2, m)
        conclusions.append(_row(
            f"n = {m}: Δ²H = λH_0 - λH_1 + λH_2",
            lhs == h0 - h1 + h2,
            witness=f"{lhs} vs {h0} - {h1} + {h2}",
        ))
    return _verdict(theorem, hypotheses, conclusions)


def verify_fundamental_lemma(ctx: ChernContext) -> TheoremReport:
    theorem = "fundamental-lemma"
    hypotheses = _dim2_hypotheses(ctx)
    if any(h.status != "verified" for h in hypotheses):
        return _verdict(theorem, hypotheses, [])
    try:
        route = fundamental_lemma(ctx)
    except NotRegularSequence:
        return _verdict(theorem, hypotheses + [_row("regular sequence", False)], [])
    e1 = ctx.coefficients.e1
    conclusions = list(route.checks)
    conclusions.append(_row("assembled e_1 equals the fitted e_1", route.value == e1,
                            witness=f"{route.value} vs {e1}"))
    tail = sum(row.term for row in route.terms if row.n >= 2)
    return _verdict(theorem, hypotheses, conclusions, {"e1": e1, "tail": tail})


def verify_closure_dim2(job: JobSpec, max_n: Optional[int] = None) -> TheoremReport:
    """
    For J = (x^a, y^b) in k[x, y], e_1 of the integral-closure filtration equals
    the dimension-two term sum over the closures of J^n
    """
    theorem = "closure-dim2"
    if job.quotient or len(job.vars) != 2:
        raise ClosureUnsupported("closure-dim2 needs k[x, y] with an empty quotient")
    ring = make_ring(job.vars, [], job.field_char)
    gens = [ring.element(g) for g in job.ideal]
    pure = len(gens) == 2 and all(g.is_monomial() and sum(1 for e in g.leading_monomial if e) == 1 for g in gens)
    if not pure or gens[0].leading_monomial[0] == 0:
        raise ClosureUnsupported("closure-dim2 needs J = (x^a, y^b)")

    closure_job = JobSpec.model_validate({
        **job.to_document(), "filtration": "newton-closure", "reduction": list(job.ideal),
    })
    ctx = build_context(closure_job, max_n)
    hypotheses = [ctx.reduction_row()]
    route = e1_dim2(ctx, gens[0], gens[1], route_name=CLOSURE_ROUTE)
    hypotheses += route.hypotheses[1:]
    euler = e1_via_euler_characteristics(ctx)
    C = ctx.coefficients
    colength_j = local_colength(ring.ideal(gens))
    conclusions = [
        _row("ē_0 = λ(R/J)", C.e0 == colength_j, witness=f"{C.e0} vs {colength_j}"),
        _row("euler-characteristic route equals fitted ē_1", euler.value == C.e1,
             witness=f"{euler.value} vs {C.e1}"),
    ]
    values = {"e0": C.e0, "e1": C.e1}
    if route.applicable:
        conclusions.append(_row("closure term sum equals fitted ē_1", route.value == C.e1,
                                witness=f"{route.value} vs {C.e1}"))
        conclusions += route.checks
        values["term_sum"] = route.value
    return _verdict(theorem, hypotheses, conclusions, values)


# ---------------------------------------------------------------------------
# Dispatch
# ---------------------------------------------------------------------------

THEOREM_IDS = ("rees", "lipman", "huneke-dim1", "sally", "fundamental-lemma", "modified-koszul", "closure-dim2")


def run_verifier(theorem_id: str, job: JobSpec, max_n: Optional[int] = None,
                 seed: Optional[int] = None) -> TheoremReport:
    """Build the context a verifier needs and run it"""
    if theorem_id not in THEOREM_IDS:
        raise InvalidField("theorem", f"unknown theorem id '{theorem_id}'; expected one of {list(THEOREM_IDS)}")
    if theorem_id == "closure-dim2":
        return verify_closure_dim2(job, max_n)
    if theorem_id == "rees":
        if not job.reduction:
            raise InvalidField("reduction", "rees needs the candidate J in 'reduction'")
        ctx = build_context(job, max_n, seed, with_reduction=False)
        return verify_rees(ctx, list(job.reduction))

    ctx = build_context(job, max_n, seed)
    verifiers: Dict[str, Callable[[ChernContext], TheoremReport]] = {
        "lipman": verify_lipman,
        "huneke-dim1": verify_huneke_dim1,
        "sally": verify_sally,
        "fundamental-lemma": verify_fundamental_lemma,
        "modified-koszul": verify_modified_koszul,
    }
    return verifiers[theorem_id](ctx)


__all__ = [
    "THEOREM_IDS",
    "run_verifier",
    "verify_closure_dim2",
    "verify_fundamental_lemma",
    "verify_huneke_dim1",
    "verify_lipman",
    "verify_modified_koszul",
    "verify_rees",
    "verify_sally",
]
