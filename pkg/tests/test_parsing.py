"""Polynomial grammar, rendering, and the JSON scalar encoding."""

from fractions import Fraction

import pytest

from realforms.exact import Cyclo, Mat2, Poly2
from realforms.parsing import (ParseError, matrix_json, parse_poly,
                               render_poly, render_scalar, scalar_json)


def test_basic_polynomials():
    g = parse_poly("u0^2 + u1^2")
    assert g.degree == 2
    assert g.coeff(2, 0) == 1 and g.coeff(0, 2) == 1
    assert parse_poly("u0*u1").coeff(1, 1) == 1


def test_coefficients_and_signs():
    g = parse_poly("-3*u0^4 + 1/2*u0^2*u1^2 - u1^4")
    assert g.coeff(4, 0) == -3
    assert g.coeff(2, 2) == Cyclo.rational(Fraction(1, 2))
    assert g.coeff(0, 4) == -1


def test_constants_i_and_zeta():
    g = parse_poly("i*u0^2 + zeta(8)*u1^2")
    assert g.coeff(2, 0) == Cyclo.i()
    assert g.coeff(0, 2) == Cyclo.zeta(8)
    powered = parse_poly("zeta(8)^2*u0*u1")
    assert powered.coeff(1, 1) == Cyclo.i()


def test_parentheses_and_products():
    g = parse_poly("(u0 + u1)^2 - 2*u0*u1")
    assert g == parse_poly("u0^2 + u1^2")
    h = parse_poly("(1 + i)*(1 - i)*u0^2")
    assert h.coeff(2, 0) == 2


def test_whitespace_is_free():
    assert parse_poly(" u0 ^ 2+ u1^2 ") == parse_poly("u0^2+u1^2")


def test_rejects_garbage():
    for bad in ("u0^2 + v^2", "u0^2 +", "u0^(2)", "u0^-2", "3/0*u0",
                "u0^2 ++ u1^2", "zeta(0)*u0", "@", ""):
        with pytest.raises((ParseError, ValueError)):
            parse_poly(bad)


def test_rejects_inhomogeneous_and_zero():
    with pytest.raises(ValueError):
        parse_poly("u0^2 + u1^3")
    with pytest.raises(ValueError):
        parse_poly("u0 - u0")


def test_round_trip_simple():
    for text in ("u0^2 + u1^2", "u0^8 + 14*u0^4*u1^4 + u1^8",
                 "u0^5*u1 - u0*u1^5", "-u0^3*u1 + i*u0*u1^3"):
        g = parse_poly(text)
        assert parse_poly(render_poly(g)) == g


def test_round_trip_cyclotomic_coefficients():
    # every conductor up to 16, mixing basis powers and rational parts
    for n in range(1, 17):
        coeff = Cyclo.zeta(n) + Cyclo.rational(Fraction(3, 7))
        g = Poly2(4, {(4, 0): coeff, (1, 3): -coeff * coeff, (0, 4): coeff ** 3})
        assert parse_poly(render_poly(g)) == g, "conductor %d" % n


def test_render_scalar_round_trip():
    values = [Cyclo.rational(Fraction(-5, 3)), Cyclo.i(), -Cyclo.i(),
              Cyclo.zeta(12) * 2 + 1, Cyclo.zeta(7, 3)]
    for v in values:
        g = parse_poly("(%s)*u0*u1" % render_scalar(v))
        assert g.coeff(1, 1) == v


def test_scalar_json_shape():
    enc = scalar_json(Cyclo.zeta(4))
    assert enc == {"conductor": 4, "coeffs": ["0", "1"]}
    enc = scalar_json(Cyclo.rational(Fraction(1, 2)))
    assert enc == {"conductor": 1, "coeffs": ["1/2"]}


def test_matrix_json_shape():
    enc = matrix_json(Mat2.identity())
    assert enc["entries"][0][0] == {"conductor": 1, "coeffs": ["1"]}
    assert enc["entries"][0][1] == {"conductor": 1, "coeffs": ["0"]}


def test_parse_error_carries_position():
    with pytest.raises(ParseError) as info:
        parse_poly("u0^2 + $")
    assert info.value.position == 7
