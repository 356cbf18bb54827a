from fractions import Fraction
import pytest
from hypothesis import given, settings
from exceptions import ParseError
from services.exactpoly import (
    D,
    LAM,
    MU,
    ZERO,
    coeff_of,
    degree_in,
    degrees,
    is_scalar_multiple,
    render,
    render_scalar,
    scalar,
    split_affine,
    substitute,
    substitute_many,
    top_homogeneous_part,
    total_degree,
    uses_only,
)
from services.polyparse import parse_poly, parse_scalar
from tests.strategies import polys, scalars


class TestScalars:
    def test_render_forms(self):
        assert render_scalar(scalar(3)) == "3"
        assert render_scalar(scalar(Fraction(-2, 3))) == "-2/3"
        assert render_scalar(scalar(0, 1)) == "i"
        assert render_scalar(scalar(0, -1)) == "-i"
        assert render_scalar(scalar(1, Fraction(1, 2))) == "1+1/2*i"
        assert render_scalar(scalar(Fraction(1, 2), -3)) == "1/2-3*i"

    def test_parse_scalar(self):
        assert parse_scalar("-2/3") == scalar(Fraction(-2, 3))
        assert parse_scalar("1+i") == scalar(1, 1)
        assert parse_scalar(5) == scalar(5)
        assert parse_scalar(Fraction(7, 4)) == scalar(Fraction(7, 4))

    def test_parse_scalar_rejects_polynomials(self):
        with pytest.raises(ParseError):
            parse_scalar("d + 1")

    @given(scalars())
    def test_scalar_text_reparses(self, c):
        assert parse_scalar(render_scalar(c)) == c


class TestRender:
    def test_graded_lex_order(self):
        assert render(D + 2 * LAM) == "d + 2*l"
        assert render(LAM**2 - D * LAM + 3) == "-d*l + l^2 + 3"
        assert render(ZERO) == "0"

    def test_complex_coefficients_are_parenthesized(self):
        p = D.mul_ground(scalar(1, 1)) - LAM.mul_ground(scalar(0, 2))
        assert render(p) == "(1+i)*d - 2*i*l"

    @given(polys(variables=3))
    @settings(max_examples=60)
    def test_render_reparses(self, p):
        assert parse_poly(render(p)) == p


class TestParser:
    def test_precedence_and_power(self):
        assert parse_poly("(d + l)^2 - 2*d*l") == D**2 + LAM**2
        assert parse_poly("-d + 1/2*l") == -D + LAM.mul_ground(scalar(Fraction(1, 2)))

    def test_constants(self):
        vir = D + 2 * LAM
        assert parse_poly("3*vir", {"vir": vir}) == vir * 3

    def test_error_position(self):
        with pytest.raises(ParseError) as e:
            parse_poly("d + + l")
        assert (e.value.line, e.value.column) == (1, 5)

    def test_error_position_with_offset(self):
        with pytest.raises(ParseError) as e:
            parse_poly("d $ l", line=4, column=10)
        assert (e.value.line, e.value.column) == (4, 12)

    @pytest.mark.parametrize("text", ["d^l", "d^1/2", "(d + l", "foo", "d l"])
    def test_rejects(self, text):
        with pytest.raises(ParseError):
            parse_poly(text)


class TestOperations:
    def test_substitute_is_simultaneous(self):
        p = D * LAM**2
        assert substitute_many(p, [(D, LAM), (LAM, D)]) == LAM * D**2
        assert substitute(p, D, D + LAM) == (D + LAM) * LAM**2

    def test_coefficients(self):
        p = (D + LAM) ** 3
        assert coeff_of(p, LAM, 2) == D * 3
        assert coeff_of(p, MU, 1) == ZERO

    def test_degrees(self):
        p = D**3 + D * LAM**3
        assert total_degree(p) == 4
        assert degree_in(p, LAM) == 3
        assert degrees(p).of("d") == 3
        assert top_homogeneous_part(p + D) == D * LAM**3
        assert total_degree(ZERO) < 0

    def test_uses_only(self):
        assert uses_only(D * LAM + 1, (D, LAM))
        assert not uses_only(D * MU, (D, LAM))

    def test_split_affine(self):
        assert split_affine(D + 2 * LAM) == (scalar(2), scalar(0))
        assert split_affine(D + LAM + 3) == (scalar(1), scalar(3))
        assert split_affine(2 * D + LAM) is None
        assert split_affine(D + LAM**2) is None

    def test_scalar_multiple(self):
        assert is_scalar_multiple(D * 3 + LAM * 6, D + 2 * LAM)
        assert not is_scalar_multiple(D + LAM, D + 2 * LAM)
        assert is_scalar_multiple(ZERO, ZERO)
