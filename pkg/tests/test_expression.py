import random
from fractions import Fraction

import pytest

from proximity_lab.algebra import MultivariatePolynomial
from proximity_lab.errors import ParseError
from proximity_lab.expression import format_polynomial, parse_polynomial, tokenize

XYZ = ("x", "y", "z")


def random_polynomial(rng, variables=XYZ, terms=5, degree=3):
    result = {}
    for _ in range(rng.randint(0, terms)):
        exps = tuple(rng.randint(0, degree) for _ in variables)
        result[exps] = Fraction(rng.randint(-9, 9), rng.randint(1, 5))
    return MultivariatePolynomial(variables, result)


def test_parse_simple_surface():
    expr = parse_polynomial("x + y - z", XYZ)
    assert expr.polynomial == MultivariatePolynomial(XYZ, {(1, 0, 0): 1, (0, 1, 0): 1, (0, 0, 1): -1})
    assert expr.source_text == "x + y - z"
    assert expr.variables == XYZ


def test_parse_rational_coefficients_and_powers():
    p = parse_polynomial("3/2*x^2*y - (x - 1)^2", XYZ).polynomial
    expected = MultivariatePolynomial(XYZ, {(2, 1, 0): Fraction(3, 2), (2, 0, 0): -1, (1, 0, 0): 2, (0, 0, 0): -1})
    assert p == expected


def test_parse_infers_used_variables():
    assert parse_polynomial("y - x^3").variables == ("x", "y")
    assert parse_polynomial("z").variables == ("z",)


def test_leading_sign_and_zero_exponent():
    assert parse_polynomial("-x + 1", XYZ).polynomial(2, 0, 0) == -1
    assert parse_polynomial("x^0", XYZ).polynomial == MultivariatePolynomial.constant(1, XYZ)


def test_format_round_trips_seeded_polynomials():
    rng = random.Random(31337)
    for _ in range(200):
        p = random_polynomial(rng)
        assert parse_polynomial(format_polynomial(p), XYZ).polynomial == p


def test_format_examples():
    assert format_polynomial(parse_polynomial("z - x^2 - x*y", XYZ).polynomial) == "-x^2 - x*y + z"
    assert format_polynomial(MultivariatePolynomial(XYZ)) == "0"
    assert format_polynomial(parse_polynomial("1/2 - 3/4*y", XYZ).polynomial) == "-3/4*y + 1/2"


@pytest.mark.parametrize(
    "text,position",
    [
        ("2x", 1),
        ("x y", 2),
        ("x + + y", 4),
        ("x^y", 2),
        ("1/0", 2),
        ("x + w", 4),
        ("(x + 1", 6),
        ("x $ y", 2),
        ("", 0),
    ],
)
def test_parse_errors_report_positions(text, position):
    with pytest.raises(ParseError) as info:
        parse_polynomial(text, XYZ)
    assert info.value.position == position
    assert f"position {position}" in str(info.value)
    assert info.value.exit_code == 2


def test_unknown_variable_without_declaration():
    with pytest.raises(ParseError) as info:
        parse_polynomial("x + t")
    assert info.value.position == 4


def test_tokenize_positions():
    tokens = tokenize(" 12*x'")
    assert [(t.kind, t.text, t.position) for t in tokens] == [
        ("int", "12", 1),
        ("op", "*", 3),
        ("name", "x'", 4),
        ("end", "", 6),
    ]
