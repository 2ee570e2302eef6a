import pytest

from towerforge.grammar import ParseError, format_poly, parse_element, parse_poly
from strategies import F2, F3, F4, F9


def test_implicit_multiplication_and_braces():
    a = parse_poly("T^{11}(T + 1)^{11}XY", F2)
    b = parse_poly("T^11*(T+1)^11*X*Y", F2)
    assert a == b


def test_superscripts_and_unicode_minus():
    assert parse_poly("T² − 1", F3) == parse_poly("T^2 + 2", F3)
    assert parse_poly("T·s", F2) == parse_poly("T*s", F2)


def test_identifier_splitting():
    assert parse_poly("XY^2", F2) == parse_poly("X*Y^2", F2)
    assert parse_poly("u0u1", F2) == parse_poly("u0*u1", F2)
    assert parse_poly("u_0 u_1", F2) == parse_poly("u0*u1", F2)


def test_field_generator_symbol():
    g = F4.gen
    assert parse_element("g^2", F4) == g * g
    assert parse_element("1/g", F4) == g.inverse()
    assert parse_element("g+1", F9) == F9.gen + 1


def test_canonical_printer():
    f = parse_poly("1 + s + Y X^2 + X^4 + Y^4 X^3", F2)
    # graded lex, highest total degree first
    assert format_poly(f) == "X^3*Y^4 + X^4 + X^2*Y + s + 1"
    assert format_poly(parse_poly("0", F2)) == "0"
    assert format_poly(parse_poly("2*T + 1", F3)) == "2*T + 1"


@pytest.mark.parametrize("bad", ["T^", "(T+1", "T + * 1", "w + 1", "T^-1", ""])
def test_parse_errors(bad):
    with pytest.raises((ParseError, ValueError)):
        parse_poly(bad, F2)


def test_division_by_nonconstant_rejected_for_poly():
    with pytest.raises((ParseError, ValueError)):
        parse_poly("1/T", F2)


def test_element_rejects_variables():
    with pytest.raises(ParseError):
        parse_element("T", F4)
