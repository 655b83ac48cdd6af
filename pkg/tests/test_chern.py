import pytest

from app.services.chern import (
    CLOSURE_ROUTE,
    DIM1_ROUTE,
    DIM2_ROUTE,
    EULER_ROUTE,
    FUNDAMENTAL_ROUTE,
    build_context,
    chern_report,
    e1_dim1,
    e1_dim2,
    euler_char_K,
    fundamental_lemma,
)
from app.utils.exceptions import InvalidField, NotAReduction, WrongDimension

from tests.conftest import job


def routes_of(report):
    return {r.route: r for r in report.e1_routes}


@pytest.fixture
def plane_square():
    return job(vars=["x", "y"], ideal=["x^2", "x*y", "y^2"], reduction=["x^2", "y^2"], max_n=10)


@pytest.fixture
def quartic_staircase():
    return job(vars=["x", "y"], ideal=["x^4", "x^3*y", "x*y^3", "y^4"], reduction=["x^4", "y^4"], max_n=10)


@pytest.fixture
def embedded_point():
    return job(vars=["x", "y"], quotient=["y^2", "x*y"], ideal=["x", "y"], reduction=["x"], max_n=10)


def test_regular_plane_square(plane_square):
    report = chern_report(plane_square)
    routes = routes_of(report)
    assert report.consistent
    assert report.e_fit.e == [4, 1, 0]
    assert routes[EULER_ROUTE].value == 1
    assert routes[DIM2_ROUTE].value == 1
    assert routes[FUNDAMENTAL_ROUTE].value == 1
    assert all(c.status == "verified" for r in report.e1_routes for c in r.checks)


def test_quartic_staircase_dim2_route_not_applicable(quartic_staircase):
    report = chern_report(quartic_staircase)
    routes = routes_of(report)
    assert report.consistent
    assert report.e_fit.e == [16, 6, 0]
    assert routes[EULER_ROUTE].value == 6
    assert routes[FUNDAMENTAL_ROUTE].value == 6
    dim2 = routes[DIM2_ROUTE]
    assert not dim2.applicable
    assert dim2.value is None
    assert dim2.hypotheses[-1].status == "failed"
    assert any(note.startswith("regularity hypothesis not met") for note in dim2.notes)


def test_embedded_point_carries_a_correction(embedded_point):
    ctx = build_context(embedded_point)
    route = e1_dim1(ctx)
    assert route.value == -1 == ctx.coefficients.e1
    assert [row.columns["correction"] for row in route.terms] == [1, 1, 0]
    assert [row.term for row in route.terms] == [0, -1, 0]
    assert any("zero divisor" in note for note in route.notes)
    report = chern_report(embedded_point)
    assert report.consistent
    assert routes_of(report)[EULER_ROUTE].value == -1


def test_cusp_terms_are_nonnegative():
    cusp_job = job(vars=["a", "b"], quotient=["b^2 - a^3"], ideal=["a", "b"], reduction=["a"], max_n=10)
    report = chern_report(cusp_job)
    routes = routes_of(report)
    assert report.consistent
    assert routes[DIM1_ROUTE].value == 1
    assert routes[DIM1_ROUTE].checks[-1].name == "all terms nonnegative"
    assert routes[DIM1_ROUTE].checks[-1].status == "verified"


def test_closure_filtration_routes():
    closure_job = job(vars=["x", "y"], ideal=["x^3", "y^2"], filtration="newton-closure",
                      reduction=["x^3", "y^2"], max_n=10)
    report = chern_report(closure_job)
    routes = routes_of(report)
    assert report.consistent
    assert report.e_fit.e == [6, 1, 0]
    assert routes[CLOSURE_ROUTE].value == 1
    assert routes[EULER_ROUTE].value == 1
    assert routes[FUNDAMENTAL_ROUTE].value == 1
    assert DIM2_ROUTE not in routes


def test_euler_characteristic_agrees_with_homology(plane_square):
    ctx = build_context(plane_square)
    chi = euler_char_K(ctx, 1)
    assert chi.value == 1
    assert chi.lengths == {"h0": 1, "h1": 0, "h2": 0}
    assert chi.agrees
    assert all(euler_char_K(ctx, n).value == 0 for n in range(2, 6))


def test_homology_unavailable_without_regularity(quartic_staircase):
    ctx = build_context(quartic_staircase)
    chi = euler_char_K(ctx, 2)
    assert chi.homology is None
    assert chi.agrees is None
    assert chi.reason


def test_explicit_pair_for_dim2(plane_square):
    ctx = build_context(plane_square)
    x, y = ctx.ring.element("x^2"), ctx.ring.element("y^2")
    route = e1_dim2(ctx, x, y)
    assert route.value == 1
    assert [row.term for row in route.terms][:2] == [1, 0]


def test_fundamental_lemma_boundary(plane_square):
    ctx = build_context(plane_square)
    route = fundamental_lemma(ctx)
    assert route.terms[0].term == ctx.coefficients.e0 - ctx.table.H(1) == 1
    assert all(c.status == "verified" for c in route.checks)


def test_wrong_dimension(plane_square, embedded_point):
    with pytest.raises(WrongDimension):
        e1_dim1(build_context(plane_square))
    with pytest.raises(WrongDimension):
        e1_dim2(build_context(embedded_point))


def test_reduction_errors():
    with pytest.raises(InvalidField):
        build_context(job(vars=["x", "y"], ideal=["x^2", "x*y", "y^2"], reduction=["x^2"], max_n=10))
    with pytest.raises(NotAReduction):
        build_context(job(vars=["x"], ideal=["x^2"], reduction=["x^3"], max_n=10))


def test_random_reduction_is_reproducible():
    document = dict(vars=["x", "y"], ideal=["x^3", "x*y", "y^3"], seed=11, max_n=10)
    first = chern_report(job(**document))
    second = chern_report(job(**document))
    assert first.consistent
    assert routes_of(first)[EULER_ROUTE].value == routes_of(second)[EULER_ROUTE].value == first.e_fit.e[1]


def test_context_without_reduction(plane_square):
    ctx = build_context(plane_square, with_reduction=False)
    assert ctx.reduction is None
    assert ctx.coefficients.e == (4, 1, 0)
