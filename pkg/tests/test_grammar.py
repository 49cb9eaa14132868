from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from contclosure.grammar import ParseError, parse_ideal, parse_polynomial, scan_variables
from contclosure.poly import Polynomial

NAMES = ["z", "w"]
z = Polynomial.variable(0, 2)
w = Polynomial.variable(1, 2)


def test_parse_examples():
    assert parse_polynomial("z^2*w^2", NAMES) == z ** 2 * w ** 2
    assert parse_polynomial("z**3 - 1/2*w", NAMES) == z ** 3 - Fraction(1, 2) * w
    assert parse_polynomial("(z+w)^2", NAMES) == z ** 2 + 2 * z * w + w ** 2
    assert parse_polynomial("-z + 3", NAMES) == 3 - z
    assert parse_polynomial("  z  *  w ", NAMES) == z * w


def test_parse_ideal():
    gens = parse_ideal("z^3, z^2*w, (z+w)^3", NAMES)
    assert gens[:2] == [z ** 3, z ** 2 * w]
    assert gens[2] == (z + w) ** 3


def test_variable_scan_uses_first_occurrence():
    assert scan_variables("w^2 + z*w + x") == ["w", "z", "x"]
    assert scan_variables("z1^2, z2^3, z1*z3") == ["z1", "z2", "z3"]


@pytest.mark.parametrize("text, pos", [
    ("z^-1", 2),
    ("z + q", 4),
    ("", 0),
    ("z^", 2),
    ("(z + w", 6),
    ("z $ w", 2),
])
def test_parse_errors_carry_positions(text, pos):
    with pytest.raises(ParseError) as err:
        parse_polynomial(text, NAMES)
    assert err.value.pos == pos


def test_ideal_errors_are_offset_into_the_full_text():
    with pytest.raises(ParseError) as err:
        parse_ideal("z^2, w^", NAMES)
    assert err.value.pos == 7


def test_division_by_zero_literal():
    with pytest.raises((ParseError, ZeroDivisionError)):
        parse_polynomial("1/0*z", NAMES)


coeffs = st.fractions(min_value=-7, max_value=7, max_denominator=5)
polys = st.dictionaries(st.tuples(st.integers(0, 4), st.integers(0, 4)), coeffs, max_size=5).map(
    lambda d: Polynomial(d, 2))


@given(polys)
def test_print_parse_round_trip(p):
    assert parse_polynomial(p.to_str(NAMES), NAMES) == p
