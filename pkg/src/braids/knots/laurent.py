"""
Exact one-variable Laurent polynomials with integer coefficients.

Exponents are stored as integers over a common ``scale`` so that Jones
polynomials of links (half-integer powers of t) and the intermediate
bracket in A = t^{-1/4} share one type. The scale is kept minimal.
"""

from fractions import Fraction
from math import gcd
from typing import Dict, Iterable, Tuple, Union

import sympy
from pydantic import Field

from src.braids.exceptions import BraidError
from src.braids.models.schemas import BraidsBaseModel


Number = Union[int, Fraction]


class LaurentPoly(BraidsBaseModel):
    """Σ c_e · t^{e / scale}; zero coefficients are never stored."""

    terms: Dict[int, int] = Field(default_factory=dict)
    scale: int = Field(default=1, ge=1)
    variable: str = "t"

    # ============================================================
    # CONSTRUCTION
    # ============================================================

    @classmethod
    def build(cls, terms: Iterable[Tuple[int, int]], scale: int = 1, variable: str = "t") -> "LaurentPoly":
        collected: Dict[int, int] = {}
        for exponent, coefficient in terms:
            collected[exponent] = collected.get(exponent, 0) + coefficient
        collected = {e: c for e, c in collected.items() if c}
        divisor = scale
        for exponent in collected:
            divisor = gcd(divisor, exponent)
        divisor = max(divisor, 1)
        return cls(
            terms={e // divisor: c for e, c in collected.items()},
            scale=scale // divisor,
            variable=variable,
        )

    @classmethod
    def constant(cls, value: int, variable: str = "t") -> "LaurentPoly":
        return cls.build([(0, value)], variable=variable)

    @classmethod
    def monomial(cls, exponent: int, coefficient: int = 1, variable: str = "t") -> "LaurentPoly":
        return cls.build([(exponent, coefficient)], variable=variable)

    @classmethod
    def from_sympy(cls, expr, symbol: sympy.Symbol, variable: str = "t") -> "LaurentPoly":
        """Read an expression that is a Laurent polynomial with integer coefficients in ``symbol``."""
        expanded = sympy.expand(expr)
        terms = []
        for term in sympy.Add.make_args(expanded):
            if term == 0:
                continue
            coefficient, exponent = term.as_coeff_exponent(symbol)
            if not coefficient.is_Integer or not sympy.Integer(exponent) == exponent:
                raise BraidError("INCONSISTENT_DATA", f"{term} is not an integral Laurent monomial")
            terms.append((int(exponent), int(coefficient)))
        return cls.build(terms, variable=variable)

    # ============================================================
    # ARITHMETIC
    # ============================================================

    def _rescaled(self, scale: int) -> Dict[int, int]:
        factor = scale // self.scale
        return {e * factor: c for e, c in self.terms.items()}

    def _common(self, other: "LaurentPoly") -> Tuple[int, Dict[int, int], Dict[int, int]]:
        scale = self.scale * other.scale // gcd(self.scale, other.scale)
        return scale, self._rescaled(scale), other._rescaled(scale)

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        scale, mine, theirs = self._common(other)
        return LaurentPoly.build(list(mine.items()) + list(theirs.items()), scale, self.variable)

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly(terms={e: -c for e, c in self.terms.items()}, scale=self.scale, variable=self.variable)

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def __mul__(self, other: Union["LaurentPoly", int]) -> "LaurentPoly":
        if isinstance(other, int):
            return LaurentPoly.build(((e, c * other) for e, c in self.terms.items()), self.scale, self.variable)
        scale, mine, theirs = self._common(other)
        products = [(e1 + e2, c1 * c2) for e1, c1 in mine.items() for e2, c2 in theirs.items()]
        return LaurentPoly.build(products, scale, self.variable)

    def __rmul__(self, other: int) -> "LaurentPoly":
        return self.__mul__(other)

    def __pow__(self, exponent: int) -> "LaurentPoly":
        if exponent < 0:
            raise BraidError("PRECONDITION_FAILED", "Negative powers of a Laurent polynomial are not polynomials")
        result = LaurentPoly.constant(1, self.variable)
        for _ in range(exponent):
            result = result * self
        return result

    def shifted(self, exponent: Number) -> "LaurentPoly":
        """Multiply by t^exponent."""
        exponent = Fraction(exponent)
        scale = self.scale * exponent.denominator // gcd(self.scale, exponent.denominator)
        offset = int(exponent * scale)
        return LaurentPoly.build(((e + offset, c) for e, c in self._rescaled(scale).items()), scale, self.variable)

    def reflected(self) -> "LaurentPoly":
        """t ↦ t^{-1}."""
        return LaurentPoly(terms={-e: c for e, c in self.terms.items()}, scale=self.scale, variable=self.variable)

    def symmetrized(self) -> "LaurentPoly":
        """Shift so the lowest and highest exponents are negatives of each other."""
        if not self.terms:
            return self
        return self.shifted(-Fraction(self.min_exponent + self.max_exponent, 2))

    # ============================================================
    # INSPECTION
    # ============================================================

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def min_exponent(self) -> Fraction:
        return Fraction(min(self.terms), self.scale)

    @property
    def max_exponent(self) -> Fraction:
        return Fraction(max(self.terms), self.scale)

    @property
    def span(self) -> Fraction:
        return self.max_exponent - self.min_exponent if self.terms else Fraction(0)

    def coefficient(self, exponent: Number) -> int:
        scaled = Fraction(exponent) * self.scale
        if scaled.denominator != 1:
            return 0
        return self.terms.get(int(scaled), 0)

    def evaluate(self, value: Number) -> Fraction:
        if self.scale != 1:
            raise BraidError("PRECONDITION_FAILED", "Only integral exponents can be evaluated exactly")
        value = Fraction(value)
        return sum((c * value ** e for e, c in self.terms.items()), Fraction(0))

    def sorted_terms(self) -> Tuple[Tuple[Fraction, int], ...]:
        return tuple((Fraction(e, self.scale), self.terms[e]) for e in sorted(self.terms))

    def to_sympy(self, symbol: sympy.Symbol):
        return sympy.Add(*(c * symbol ** sympy.Rational(e, self.scale) for e, c in self.terms.items()))

    @property
    def text(self) -> str:
        parts = []
        for exponent, coefficient in self.sorted_terms():
            power = str(exponent.numerator) if exponent.denominator == 1 else f"{exponent.numerator}/{exponent.denominator}"
            parts.append(f"{coefficient}*{self.variable}^{power}")
        return "[" + ", ".join(parts) + "]"

    def __str__(self) -> str:
        return self.text
