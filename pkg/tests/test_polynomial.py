import random

import pytest

from app.services.polynomial import GREVLEX, LEX, PolynomialRing, leading_term, poly_arith
from app.services.expr_parser import parse_to_polynomial
from app.utils.exceptions import ArityMismatch, InvalidField, ZeroPolynomial

R = PolynomialRing(("x", "y"), 32003)
S = PolynomialRing(("a", "b", "c"), 32003)


def p(text, ring=R):
    return parse_to_polynomial(text, ring)


def test_arithmetic():
    assert poly_arith("add", p("x + y"), p("x - y")) == p("2*x")
    assert poly_arith("mul", p("x + y"), p("x - y")) == p("x^2 - y^2")
    assert poly_arith("add", p("x^2 + 3*y"), -p("x^2 + 3*y")).is_zero()
    assert poly_arith("scalar-mul", p("x + 1"), 5) == p("5*x + 5")


def test_coefficients_reduce_mod_p():
    small = PolynomialRing(("x",), 7)
    assert p("8*x + 14", small) == p("x", small)


def test_grevlex_leading_terms():
    monomial, coeff = leading_term(p("b^2 - a*c", S), GREVLEX)
    assert monomial.exponents == (0, 2, 0)
    assert int(coeff) == 1
    monomial, _ = leading_term(p("a^3 - c^2", S))
    assert monomial.exponents == (3, 0, 0)


def test_lex_ignores_degree():
    monomial, _ = leading_term(p("x + y^2"), LEX)
    assert monomial.exponents == (1, 0)


def test_zero_polynomial_has_no_leading_term():
    with pytest.raises(ZeroPolynomial):
        leading_term(R.zero())


def test_mixed_arity_is_rejected():
    with pytest.raises(ArityMismatch):
        _ = p("x") + p("a", S)


def test_non_prime_modulus():
    with pytest.raises(InvalidField):
        PolynomialRing(("x",), 12)


def test_ring_axioms_on_random_triples():
    rng = random.Random(3)

    def random_poly():
        return R.zero() + sum(
            (R.monomial((rng.randint(0, 3), rng.randint(0, 3)), rng.randint(1, 50)) for _ in range(4)),
            R.zero(),
        )

    for _ in range(20):
        f, g, h = random_poly(), random_poly(), random_poly()
        assert (f * g) * h == f * (g * h)
        assert f * (g + h) == f * g + f * h


def test_orders_are_multiplicative():
    rng = random.Random(5)
    for order in (GREVLEX, LEX):
        for _ in range(50):
            m1 = tuple(rng.randint(0, 4) for _ in range(3))
            m2 = tuple(rng.randint(0, 4) for _ in range(3))
            u = tuple(rng.randint(0, 4) for _ in range(3))
            if order.key(m1) < order.key(m2):
                shifted1 = tuple(a + b for a, b in zip(m1, u))
                shifted2 = tuple(a + b for a, b in zip(m2, u))
                assert order.key(shifted1) < order.key(shifted2)
