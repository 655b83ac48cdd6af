"""
The Chern number e_1 by every available route
Each route produces a per-n term table and is cross-checked against the fitted coefficients
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from app.config.settings import settings
from app.schemas.job import JobSpec
from app.schemas.report import CheckRow, ChernReport, RouteResult, TermRow
from app.services.filtration import NEWTON_CLOSURE, Filtration, RegularityCheck, graded_regularity_check
from app.services.hilbert import HilbertCoefficients, HilbertTable, delta_pd_minus_h, hilbert_data
from app.services.local_ring import (
    PresentedRing,
    is_regular_element,
    is_regular_sequence,
    make_ring,
    subquotient_length,
)
from app.services.polynomial import Polynomial
from app.services.reduction_search import Reduction, find_minimal_reduction, verify_reduction
from app.utils.exceptions import (
    HomologyRouteUnavailable,
    InvalidField,
    NotRegularSequence,
    RegularityFails,
    WrongDimension,
)

logger = logging.getLogger(__name__)

EULER_ROUTE = "euler-characteristic"
DIM1_ROUTE = "dim1"
DIM2_ROUTE = "dim2"
CLOSURE_ROUTE = "closure-dim2"
FUNDAMENTAL_ROUTE = "fundamental-lemma"


def _status(ok: bool) -> str:
    return "verified" if ok else "failed"


@dataclass
class ChernContext:
    """Everything the routes share: ring, filtration, fitted table and a verified reduction"""

    ring: PresentedRing
    filtration: Filtration
    table: HilbertTable
    coefficients: HilbertCoefficients
    reduction: Optional[Reduction]
    job: Optional[JobSpec] = None
    _regularity: Dict[str, RegularityCheck] = field(default_factory=dict, repr=False)

    @property
    def d(self) -> int:
        return self.ring.dim

    @property
    def term_bound(self) -> int:
        """Per-n terms vanish from n* + d on"""
        return min(self.table.N, self.coefficients.postulation + self.d)

    @property
    def check_range(self) -> int:
        return min(self.table.N, self.term_bound + settings.stabilization_window)

    def chi(self, n: int) -> int:
        return delta_pd_minus_h(self.table, self.coefficients, n)

    def regularity(self, x: Polynomial) -> RegularityCheck:
        key = str(x)
        if key not in self._regularity:
            self._regularity[key] = graded_regularity_check(self.filtration, x, self.check_range)
        return self._regularity[key]

    def ordered_pair(self) -> Tuple[Polynomial, Polynomial, RegularityCheck]:
        """(x, y) with x carrying the regularity hypothesis; tries both orders"""
        x, y = self.reduction.gens[:2]
        first = self.regularity(x)
        if first.passed:
            return x, y, first
        second = self.regularity(y)
        if second.passed:
            logger.info(f"[CHERN] regularity fails for {x}; using the swapped pair ({y}, {x})")
            return y, x, second
        return x, y, first

    def reduction_row(self) -> CheckRow:
        r = self.reduction
        return CheckRow(
            name=f"({', '.join(r.labels())}) is a reduction",
            status="verified",
            range=f"{r.verified_at} <= n <= {r.verified_at + r.window}",
        )


def resolve_reduction(F: Filtration, generators: Optional[Sequence[str]], seed: Optional[int], N: int) -> Reduction:
    if generators is None:
        return find_minimal_reduction(F, seed, N)
    if len(generators) != F.dim:
        raise InvalidField("reduction", f"needs exactly d = {F.dim} elements, got {len(generators)}")
    return verify_reduction(F, [F.ring.element(g) for g in generators], N)


def build_context(job: JobSpec, max_n: Optional[int] = None, seed: Optional[int] = None,
                  with_reduction: bool = True) -> ChernContext:
    ring = make_ring(job.vars, job.quotient, job.field_char)
    ideal = ring.ideal_from_strings(job.ideal)
    F = Filtration(ring, ideal, job.filtration)
    table, coefficients = hilbert_data(F, max_n or job.max_n)
    reduction = None
    if with_reduction:
        reduction = resolve_reduction(F, job.reduction, seed if seed is not None else job.seed, table.N)
    logger.info(f"[CHERN] {F} over {ring}: e = {list(coefficients.e)}, n* = {coefficients.postulation}")
    return ChernContext(ring, F, table, coefficients, reduction, job)


# ---------------------------------------------------------------------------
# Euler characteristic of the Koszul subcomplex
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class EulerCharacteristic:
    n: int
    value: int
    homology: Optional[int] = None
    lengths: Dict[str, int] = field(default_factory=dict)
    reason: Optional[str] = None

    @property
    def agrees(self) -> Optional[bool]:
        return None if self.homology is None else self.homology == self.value


def _homology_lengths(ctx: ChernContext, n: int) -> Dict[str, int]:
    R, F = ctx.ring, ctx.filtration
    d = ctx.d
    if d > 2:
        raise HomologyRouteUnavailable(f"no homology route for d = {d}")
    if ctx.reduction is None:
        raise HomologyRouteUnavailable("no verified reduction")
    J = R.ideal(ctx.reduction.gens)
    h0 = subquotient_length(F.term(n), J * F.term(n - 1))
    if d == 1:
        x = ctx.reduction.gens[0]
        if is_regular_element(R, x):
            return {"h0": h0, "h1": 0}
        kernel = R.zero().colon(x).intersect(F.term(n - 1))
        return {"h0": h0, "h1": subquotient_length(kernel, R.zero())}

    x, y, check = ctx.ordered_pair()
    if not check.passed:
        raise HomologyRouteUnavailable(
            f"neither generator is regular on the associated graded ring up to n = {check.checked_up_to}",
            details={"failed_at": check.failed_at, "witness": check.witness},
        )
    numerator = R.ideal([x]).colon(y).intersect(F.term(n - 1))
    h1 = subquotient_length(numerator, F.term(n - 2) * x)
    # x regular forces (0 : J) = 0
    return {"h0": h0, "h1": h1, "h2": 0}


def euler_char_K(ctx: ChernContext, n: int) -> EulerCharacteristic:
    """
    χ(K^(n)) = Δ^d[P - H](n), recomputed from homology lengths when d <= 2
    and the route's hypotheses hold
    """
    value = ctx.chi(n)
    try:
        lengths = _homology_lengths(ctx, n)
    except HomologyRouteUnavailable as e:
        return EulerCharacteristic(n, value, reason=e.message)
    homology = sum((-1) ** int(k[1:]) * v for k, v in lengths.items())
    return EulerCharacteristic(n, value, homology, lengths)


def e1_via_euler_characteristics(ctx: ChernContext) -> RouteResult:
    """
    e_1 = Σ_{n >= 1} χ(K^(n)), summed to n* + d
    """
    route = RouteResult(route=EULER_ROUTE)
    total = 0
    unavailable: Optional[str] = None
    for n in range(1, ctx.term_bound + 1):
        chi = euler_char_K(ctx, n)
        columns = {"chi": chi.value}
        if chi.homology is not None:
            columns.update(chi.lengths)
            columns["homology"] = chi.homology
            route.checks.append(CheckRow(
                name=f"n = {n}: Δ^d[P - H] equals the alternating sum of homology lengths",
                status=_status(chi.agrees),
            ))
        elif unavailable is None:
            unavailable = chi.reason
        route.terms.append(TermRow(n=n, columns=columns, term=chi.value))
        total += chi.value

    tail = [n for n in range(ctx.term_bound + 1, ctx.table.N + 1) if ctx.chi(n) != 0]
    route.checks.append(CheckRow(
        name="terms vanish beyond n* + d",
        status=_status(not tail),
        range=f"{ctx.term_bound + 1} <= n <= {ctx.table.N}",
        witness=str(tail[0]) if tail else None,
    ))
    if unavailable:
        logger.warning(f"[CHERN] homology cross-check unavailable: {unavailable}")
        route.notes.append(f"homology cross-check unavailable: {unavailable}")
    route.value = total
    return route


# ---------------------------------------------------------------------------
# Dimension one and two formulas
# ---------------------------------------------------------------------------

def e1_dim1(ctx: ChernContext, x: Optional[Polynomial] = None) -> RouteResult:
    """
    e_1 = Σ [λ(I_n / x I_(n-1)) - λ((0:x) ∩ I_(n-1))] in dimension one
    """
    if ctx.d != 1:
        raise WrongDimension(1, ctx.d, "e1_dim1")
    R, F = ctx.ring, ctx.filtration
    if x is None or x == ctx.reduction.gens[0]:
        x = ctx.reduction.gens[0]
        reduction_row = ctx.reduction_row()
    else:
        reduction = verify_reduction(F, [x], ctx.table.N)
        reduction_row = CheckRow(name=f"({x}) is a reduction", status="verified",
                                 range=f"{reduction.verified_at} <= n <= {reduction.verified_at + reduction.window}")

    regular = is_regular_element(R, x)
    annihilator = None if regular else R.zero().colon(x)
    route = RouteResult(route=DIM1_ROUTE, hypotheses=[reduction_row])
    total = 0
    for n in range(1, ctx.term_bound + 1):
        h0 = subquotient_length(F.term(n), F.term(n - 1) * x)
        correction = 0
        if annihilator is not None:
            correction = subquotient_length(annihilator.intersect(F.term(n - 1)), R.zero())
        term = h0 - correction
        route.terms.append(TermRow(n=n, columns={"h0": h0, "correction": correction}, term=term))
        route.checks.append(CheckRow(
            name=f"n = {n}: term equals Δ[P - H]",
            status=_status(term == ctx.chi(n)),
        ))
        total += term

    if regular:
        route.notes.append(f"{x} is a nonzerodivisor: the correction column vanishes (Cohen-Macaulay case)")
        route.checks.append(CheckRow(
            name="all terms nonnegative",
            status=_status(all(row.term >= 0 for row in route.terms)),
        ))
    elif any(row.columns["correction"] for row in route.terms):
        route.notes.append(f"{x} is a zero divisor: the correction column λ((0:x) ∩ I_(n-1)) is nonzero")
    route.value = total
    return route


def e1_dim2(ctx: ChernContext, x: Optional[Polynomial] = None, y: Optional[Polynomial] = None,
            route_name: str = DIM2_ROUTE) -> RouteResult:
    """
    e_1 = Σ [λ(J_n / J J_(n-1)) - λ(((x):y) ∩ J_(n-1) / x J_(n-2))] in dimension two,
    valid when x is regular on the associated graded ring
    """
    if ctx.d != 2:
        raise WrongDimension(2, ctx.d, "e1_dim2")
    R, F = ctx.ring, ctx.filtration
    if x is None or y is None:
        x, y, check = ctx.ordered_pair()
        reduction_row = ctx.reduction_row()
    else:
        reduction = verify_reduction(F, [x, y], ctx.table.N)
        check = ctx.regularity(x)
        reduction_row = CheckRow(name=f"({x}, {y}) is a reduction", status="verified",
                                 range=f"{reduction.verified_at} <= n <= {reduction.verified_at + reduction.window}")

    regularity_row = CheckRow(
        name=f"(I_n : {x}) = I_(n-1) and {x} regular on R",
        status=_status(check.passed),
        range=f"verified for 2 <= n <= {check.checked_up_to}",
        witness=check.witness,
    )
    route = RouteResult(route=route_name, hypotheses=[reduction_row, regularity_row])
    try:
        check.raise_for_failure()
    except RegularityFails as e:
        route.applicable = False
        route.notes.append(f"regularity hypothesis not met: {e.message}; compare against the euler-characteristic route")
        logger.warning(f"[CHERN] {route_name}: hypothesis unverified for x = {x}")
        return route

    J = R.ideal([x, y])
    colon = R.ideal([x]).colon(y)
    total = 0
    for n in range(1, ctx.term_bound + 1):
        h0 = subquotient_length(F.term(n), J * F.term(n - 1))
        h1 = subquotient_length(colon.intersect(F.term(n - 1)), F.term(n - 2) * x)
        term = h0 - h1
        route.terms.append(TermRow(n=n, columns={"h0": h0, "h1": h1}, term=term))
        route.checks.append(CheckRow(
            name=f"n = {n}: term equals Δ²[P - H]",
            status=_status(term == ctx.chi(n)),
        ))
        total += term
    route.value = total
    return route


def fundamental_lemma(ctx: ChernContext) -> RouteResult:
    """
    Δ²[P - H](n) = λ(I_n / J I_(n-1)) - λ((I_(n-1) : J) / I_(n-2)) for n >= 2, and
    e_1 = e_0 - λ(R/I_1) + Σ_{n >= 2} of the right-hand side
    """
    if ctx.d != 2:
        raise WrongDimension(2, ctx.d, "fundamental_lemma")
    R, F = ctx.ring, ctx.filtration
    gens = ctx.reduction.gens
    if not is_regular_sequence(R, gens):
        raise NotRegularSequence(f"({', '.join(str(g) for g in gens)}) is not a regular sequence")

    J = R.ideal(gens)
    e0 = ctx.coefficients.e0
    boundary = e0 - ctx.table.H(1)
    route = RouteResult(route=FUNDAMENTAL_ROUTE, hypotheses=[
        ctx.reduction_row(),
        CheckRow(name="reduction generators form a regular sequence", status="verified"),
    ])
    route.terms.append(TermRow(n=1, columns={"delta": ctx.chi(1), "boundary": boundary}, term=boundary))
    route.checks.append(CheckRow(
        name="n = 1: Δ²[P - H] equals e_0 - λ(R/I_1)",
        status=_status(ctx.chi(1) == boundary),
    ))
    total = boundary
    for n in range(2, ctx.term_bound + 1):
        h0 = subquotient_length(F.term(n), J * F.term(n - 1))
        colon = subquotient_length(F.term(n - 1).colon(J), F.term(n - 2))
        term = h0 - colon
        delta = ctx.chi(n)
        route.terms.append(TermRow(n=n, columns={"delta": delta, "h0": h0, "colon": colon}, term=term))
        route.checks.append(CheckRow(name=f"n = {n}: identity holds", status=_status(delta == term)))
        total += term
    route.value = total
    return route


# ---------------------------------------------------------------------------
# Report
# ---------------------------------------------------------------------------

def _route_consistent(route: RouteResult, e1: int) -> bool:
    if not route.applicable:
        return True
    return route.value == e1 and all(c.status != "failed" for c in route.checks)


def chern_report_for(ctx: ChernContext) -> ChernReport:
    routes: List[RouteResult] = [e1_via_euler_characteristics(ctx)]
    if ctx.d == 1:
        routes.append(e1_dim1(ctx))
    elif ctx.d == 2:
        name = CLOSURE_ROUTE if ctx.filtration.kind == NEWTON_CLOSURE else DIM2_ROUTE
        routes.append(e1_dim2(ctx, route_name=name))
        try:
            routes.append(fundamental_lemma(ctx))
        except NotRegularSequence as e:
            routes.append(RouteResult(route=FUNDAMENTAL_ROUTE, applicable=False, notes=[e.message]))

    e1 = ctx.coefficients.e1
    consistent = all(_route_consistent(r, e1) for r in routes)
    if not consistent:
        logger.warning(
            f"[CHERN] INCONSISTENT: fit e1 = {e1}, routes "
            f"{ {r.route: r.value for r in routes if r.applicable} }"
        )
    ranges = {
        "N": ctx.table.N,
        "postulation_index": ctx.coefficients.postulation,
        "term_bound": ctx.term_bound,
        "reduction_verified_at": ctx.reduction.verified_at,
        "reduction_window": ctx.reduction.window,
    }
    if ctx.d == 2:
        ranges["regularity_checked_to"] = ctx.check_range
    return ChernReport(e_fit=ctx.coefficients.to_model(), e1_routes=routes, consistent=consistent, ranges=ranges)


def chern_report(job: JobSpec, max_n: Optional[int] = None, seed: Optional[int] = None) -> ChernReport:
    return chern_report_for(build_context(job, max_n, seed))


__all__ = [
    "CLOSURE_ROUTE",
    "DIM1_ROUTE",
    "DIM2_ROUTE",
    "EULER_ROUTE",
    "FUNDAMENTAL_ROUTE",
    "ChernContext",
    "EulerCharacteristic",
    "build_context",
    "chern_report",
    "chern_report_for",
    "e1_dim1",
    "e1_dim2",
    "e1_via_euler_characteristics",
    "euler_char_K",
    "fundamental_lemma",
    "resolve_reduction",
]
