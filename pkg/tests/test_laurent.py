"""
Tests for exact Laurent polynomials.
"""

from fractions import Fraction

import pytest
import sympy

from src.braids.exceptions import BraidError
from src.braids.knots.laurent import LaurentPoly


def poly(*terms, scale=1):
    return LaurentPoly.build(terms, scale=scale)


class TestConstruction:
    def test_zero_coefficients_are_dropped(self):
        p = poly((1, 2), (1, -2), (0, 3))
        assert p.terms == {0: 3}

    def test_scale_is_kept_minimal(self):
        p = poly((2, 1), (4, 3), scale=2)
        assert p.scale == 1
        assert p.terms == {1: 1, 2: 3}

    def test_half_integer_exponents(self):
        p = poly((1, -1), (5, -1), scale=2)
        assert p.scale == 2
        assert p.coefficient(Fraction(5, 2)) == -1
        assert p.coefficient(1) == 0

    def test_from_sympy(self):
        t = sympy.Symbol("t")
        assert LaurentPoly.from_sympy(t ** -1 + 2 * t, t) == poly((-1, 1), (1, 2))

    def test_from_sympy_rejects_fractions(self):
        t = sympy.Symbol("t")
        with pytest.raises(BraidError) as exc:
            LaurentPoly.from_sympy(t / 2, t)
        assert exc.value.code == "INCONSISTENT_DATA"


class TestArithmetic:
    def test_difference_of_squares(self):
        assert poly((1, 1), (0, 1)) * poly((1, 1), (0, -1)) == poly((2, 1), (0, -1))

    def test_subtraction_cancels(self):
        p = poly((-2, 1), (3, 4))
        assert (p - p).is_zero

    def test_mixed_scales_add(self):
        total = poly((1, 1), scale=2) + poly((1, 1))
        assert total.scale == 2
        assert total.terms == {1: 1, 2: 1}

    def test_integer_multiple(self):
        assert 3 * poly((1, 1)) == poly((1, 3))

    def test_powers(self):
        assert poly((1, 1), (0, 1)) ** 2 == poly((2, 1), (1, 2), (0, 1))
        with pytest.raises(BraidError):
            poly((1, 1)) ** -1

    def test_shift_by_a_half(self):
        shifted = poly((0, 1)).shifted(Fraction(1, 2))
        assert shifted.min_exponent == Fraction(1, 2)

    def test_reflect_and_symmetrize(self):
        p = poly((0, 1), (2, 1))
        assert p.reflected() == poly((0, 1), (-2, 1))
        assert p.symmetrized() == poly((-1, 1), (1, 1))
        assert p.span == 2


class TestInspection:
    def test_evaluate(self):
        assert poly((-1, 1), (0, -1), (1, 1)).evaluate(-1) == -3

    def test_evaluate_needs_integral_exponents(self):
        with pytest.raises(BraidError) as exc:
            poly((1, 1), scale=2).evaluate(1)
        assert exc.value.code == "PRECONDITION_FAILED"

    def test_text(self):
        assert poly((-1, 1), (1, 2)).text == "[1*t^-1, 2*t^1]"
        assert poly((1, -1), scale=2).text == "[-1*t^1/2]"

    def test_to_sympy(self):
        t = sympy.Symbol("t")
        assert sympy.expand(poly((-1, 1), (2, 3)).to_sympy(t) - (1 / t + 3 * t ** 2)) == 0
