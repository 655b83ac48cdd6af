"""
End-to-end acceptance cases; expected values come from the independent oracles
in tests/oracles.py or from closed forms
"""

import random

import pytest

from app.services.chern import (
    CLOSURE_ROUTE,
    DIM1_ROUTE,
    DIM2_ROUTE,
    EULER_ROUTE,
    FUNDAMENTAL_ROUTE,
    build_context,
    chern_report_for,
    e1_dim1,
    fundamental_lemma,
)
from app.services.fuzz import random_dim1_job, run_campaign
from app.services.hilbert import hilbert_poly_eval
from app.services.local_ring import local_colength
from app.services.reduction_search import is_reduction
from app.services.theorems import run_verifier, verify_lipman

from tests.conftest import job
from tests.oracles import newton_polygon_count, semigroup_hilbert, staircase_count


def route_values(ctx):
    return {r.route: r.value for r in chern_report_for(ctx).e1_routes if r.applicable}


def test_regular_plane_square():
    ctx = build_context(job(vars=["x", "y"], ideal=["x^2", "x*y", "y^2"], reduction=["x^2", "y^2"], max_n=10))
    assert ctx.coefficients.e == (4, 1, 0)
    assert route_values(ctx) == {EULER_ROUTE: 1, DIM2_ROUTE: 1, FUNDAMENTAL_ROUTE: 1}


def test_quartic_staircase():
    generators = [(4, 0), (3, 1), (1, 3), (0, 4)]
    ctx = build_context(job(vars=["x", "y"], ideal=["x^4", "x^3*y", "x*y^3", "y^4"],
                            reduction=["x^4", "y^4"], max_n=10))
    assert ctx.table.H(1) == 11 == staircase_count(generators)
    assert ctx.coefficients.e == (16, 6, 0)
    route = fundamental_lemma(ctx)
    assert sum(row.term for row in route.terms if row.n >= 2) == 1
    assert all(check.status == "verified" for check in route.checks)
    assert chern_report_for(ctx).consistent


def test_embedded_point_needs_the_correction_column():
    ctx = build_context(job(vars=["x", "y"], quotient=["y^2", "x*y"], ideal=["x", "y"], reduction=["x"], max_n=10))
    assert ctx.coefficients.e == (1, -1)
    route = e1_dim1(ctx)
    pairs = [(row.columns["h0"], row.columns["correction"]) for row in route.terms]
    assert pairs == [(1, 1), (0, 1), (0, 0)]
    assert route.value == -1
    # the Cohen-Macaulay formula alone would report 1
    assert sum(h0 for h0, _ in pairs) == 1


def test_cusp_huneke_equality():
    ctx = build_context(job(vars=["a", "b"], quotient=["b^2 - a^3"], ideal=["a", "b"], reduction=["a"], max_n=10))
    C = ctx.coefficients
    assert C.e == (2, 1)
    assert C.e1 == C.e0 - ctx.table.H(1)
    assert all(ctx.table.H(n) == hilbert_poly_eval(C, n) == 2 * n - 1 for n in range(1, 11))
    assert run_verifier("huneke-dim1", ctx.job).verdict == "verified"
    assert route_values(ctx) == {EULER_ROUTE: 1, DIM1_ROUTE: 1}


def test_semigroup_sally_equality():
    ctx = build_context(job(vars=["a", "b", "c"], quotient=["b^2 - a*c", "a^3 - c^2"], ideal=["a", "b", "c"],
                            reduction=["a"], max_n=10))
    T, C = ctx.table, ctx.coefficients
    assert T.values[1:] == [semigroup_hilbert([4, 5, 6], n) for n in range(1, 11)]
    assert C.e == (4, 4)
    assert C.e1 == C.e0 - T.H(1) + 1
    assert T.H(1) == 1 and hilbert_poly_eval(C, 1) == 0
    report = run_verifier("sally", ctx.job)
    assert report.verdict == "verified"
    assert report.values["length_I2_over_xI"] == 1


def test_closure_of_x3_y2():
    ctx = build_context(job(vars=["x", "y"], ideal=["x^3", "y^2"], filtration="newton-closure",
                            reduction=["x^3", "y^2"], max_n=10))
    T = ctx.table
    assert sorted(str(g) for g in ctx.filtration.term(1).generators()) == ["x^2*y", "x^3", "y^2"]
    assert T.values[1:] == [3 * n * n + 2 * n for n in range(1, 11)]
    assert T.values[1:5] == [newton_polygon_count([(3, 0), (0, 2)], n) for n in range(1, 5)]
    assert ctx.coefficients.e == (6, 1, 0)
    routes = {r.route: r for r in chern_report_for(ctx).e1_routes}
    assert [row.term for row in routes[CLOSURE_ROUTE].terms][:3] == [1, 0, 0]
    assert routes[CLOSURE_ROUTE].value == 1


def test_rees_positive_and_negative():
    cusp = job(vars=["a", "b"], quotient=["b^2 - a^3"], ideal=["a", "b"], reduction=["a"], max_n=10)
    ctx = build_context(cusp)
    J = ctx.ring.ideal_from_strings(["a"])
    assert is_reduction(ctx.filtration, J, 10) == 1
    report = run_verifier("rees", cusp)
    assert report.verdict == "verified"
    assert report.values["e0_J"] == report.values["e0_F"] == 2

    negative = job(vars=["x"], ideal=["x^2"], reduction=["x^3"], max_n=10)
    assert run_verifier("rees", negative).verdict == "hypothesis-not-met"


def test_lipman_sweep():
    for document in (
        dict(vars=["a", "b"], quotient=["b^2 - a^3"], ideal=["a", "b"], reduction=["a"], max_n=10),
        dict(vars=["a", "b", "c"], quotient=["b^2 - a*c", "a^3 - c^2"], ideal=["a", "b", "c"],
             reduction=["a"], max_n=10),
    ):
        assert run_verifier("lipman", job(**document)).verdict == "verified"

    rng = random.Random(2024)
    for case in range(20):
        case_seed = rng.randrange(2 ** 31)
        instance = random_dim1_job(random.Random(case_seed), 4, case_seed)
        report = verify_lipman(build_context(instance))
        assert report.verdict == "verified", (case, instance.to_document(), report.conclusions)


@pytest.mark.slow
@pytest.mark.parametrize("dim", [1, 2])
def test_fuzz_campaign(dim):
    report = run_campaign(dim, 50, seed=7, max_deg=6)
    assert report.count == 50
    assert report.violation_count == 0, [c.violations for c in report.cases if c.violations]
    assert report.consistent_count == report.count


def test_boundary_term_uses_the_untruncated_polynomial():
    ctx = build_context(job(vars=["x", "y"], ideal=["x^2", "x*y", "y^2"], reduction=["x^2", "y^2"], max_n=10))
    C = ctx.coefficients
    assert hilbert_poly_eval(C, -1) == 1
    assert ctx.table.H(-1) == 0
    assert ctx.chi(1) == 1
    assert local_colength(ctx.filtration.term(1)) == 3
