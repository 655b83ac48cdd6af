import pytest

from app.config.settings import settings
from app.services.ideal_ops import INFINITE
from app.services.local_ring import (
    is_m_primary,
    is_regular_element,
    is_regular_sequence,
    length_of_quotient,
    local_colength,
    locally_equal,
    make_ring,
    subquotient_length,
)
from app.utils.exceptions import NotNested, ZeroDimensionalRing

from tests.oracles import semigroup_hilbert


def test_dimensions(plane, line_with_point, cusp):
    assert plane.dim == 2
    assert line_with_point.dim == 1
    assert cusp.dim == 1


def test_zero_dimensional_rings_are_rejected():
    with pytest.raises(ZeroDimensionalRing):
        make_ring(["x", "y"], ["x^2", "y^3"])
    with pytest.raises(ZeroDimensionalRing):
        make_ring(["x"], ["x + 1", "x"])


def test_lengths_of_quotients(plane, line_with_point):
    m2 = plane.ideal_from_strings(["x^2", "x*y", "y^2"])
    assert length_of_quotient(plane, m2) == 3
    assert length_of_quotient(line_with_point, line_with_point.maximal_ideal().power(2)) == 3


def test_cusp_powers_follow_the_semigroup(cusp):
    m = cusp.maximal_ideal()
    for n in range(1, 6):
        assert local_colength(m.power(n)) == 2 * n - 1 == semigroup_hilbert([2, 3], n)


def test_m_primary(plane):
    assert is_m_primary(plane.ideal_from_strings(["x^2", "x*y", "y^2"]))
    assert not is_m_primary(plane.ideal_from_strings(["x"]))
    # finite colength, but a second point (1, 0) in the support
    assert not is_m_primary(plane.ideal_from_strings(["x*(x - 1)", "y"]))
    assert not is_m_primary(plane.unit())


def test_local_colength_ignores_components_away_from_the_origin(plane):
    assert local_colength(plane.ideal_from_strings(["x*(x - 1)", "y"])) == 1
    assert local_colength(plane.ideal_from_strings(["x"])) == INFINITE


def test_regular_elements(plane, line_with_point, cusp):
    assert is_regular_element(plane, plane.element("x"))
    assert not is_regular_element(line_with_point, line_with_point.element("x"))
    assert is_regular_element(cusp, cusp.element("a"))
    assert is_regular_sequence(plane, [plane.element("x^2"), plane.element("y^2")])
    assert not is_regular_sequence(plane, [plane.element("x*y"), plane.element("x^2")])


def test_subquotient_lengths(plane, line_with_point):
    A = plane.ideal_from_strings(["x"])
    B = plane.ideal_from_strings(["x^2", "x*y"])
    assert subquotient_length(A, B) == 1
    assert subquotient_length(A, A) == 0
    socle = line_with_point.ideal_from_strings(["y"])
    assert subquotient_length(socle, line_with_point.zero()) == 1


@pytest.mark.parametrize("degree", [4, 41])
def test_subquotient_of_high_degree_ideals_with_a_far_component(plane, degree):
    # x^d(1 - x) has a component at x = 1; locally the two ideals agree
    A = plane.ideal_from_strings([f"x^{degree}", "y"])
    B = plane.ideal_from_strings([f"x^{degree} - x^{degree + 1}", "y"])
    assert subquotient_length(A, B) == 0
    assert locally_equal(A, B)


def test_truncation_window_counts_from_the_generator_degree(plane, monkeypatch):
    monkeypatch.setattr(settings, "truncation_cap", 5)
    A = plane.ideal_from_strings(["x^10", "y"])
    B = plane.ideal_from_strings(["x^11 - x^12", "y"])
    assert subquotient_length(A, B) == 1


def test_subquotient_needs_nesting(plane):
    with pytest.raises(NotNested):
        subquotient_length(plane.ideal_from_strings(["x^2"]), plane.ideal_from_strings(["y"]))


def test_length_additivity_and_monotonicity(plane):
    A = plane.ideal_from_strings(["x", "y^2"])
    B = plane.ideal_from_strings(["x^2", "x*y", "y^2"])
    C = plane.ideal_from_strings(["x^3", "x^2*y", "x*y^2", "y^3"])
    assert subquotient_length(A, C) == subquotient_length(A, B) + subquotient_length(B, C)
    assert subquotient_length(A, C) == local_colength(C) - local_colength(A)
    assert subquotient_length(A, B) <= subquotient_length(A, C)


def test_locally_equal(plane, cusp):
    m = cusp.maximal_ideal()
    a = cusp.element("a")
    assert locally_equal(m.power(2), m * a)
    assert not locally_equal(m, cusp.ideal([a]))
    assert locally_equal(plane.ideal_from_strings(["x", "y"]), plane.ideal_from_strings(["y", "x"]))
