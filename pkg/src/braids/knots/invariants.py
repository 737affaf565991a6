"""
Exact knot and link invariants of braid closures.

Conventions, pinned by close(σ1³) having V = t + t³ − t⁴ and Conway 1 + z²:

- Jones: Kauffman bracket with A = t^{-1/4}, σ_i ↦ A + A^{-1} e_i,
  σ_i^{-1} ↦ A^{-1} + A e_i, loop value δ = −A² − A^{-2},
  V = (−A³)^{-writhe} ⟨K⟩.
- Alexander: reduced Burau, σ_i acting by the block
  [[1, t, 0], [0, −t, 0], [0, 1, 1]] on rows and columns i−1, i, i+1
  (clipped), Δ(t) = det(I − B) / (1 + t + … + t^{k−1}) made symmetric
  with Δ(1) = 1.

Both the bracket and the Burau matrix are pushed through the word one
letter at a time, so cost is linear in word length. The finite-type probe
repeats the computation over truncated power series (A = 1 + u for the
bracket, t = 1 + h for Burau), which keeps words of thousands of letters
cheap.
"""

import logging
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
import sympy

from src.braids.algebra.braid_core import crossing_strands, permutation_of, require_pure
from src.braids.exceptions import BraidError
from src.braids.knots.laurent import LaurentPoly
from src.braids.models.schemas import BraidWord, BraidsBaseModel, Diagram


logger = logging.getLogger("braids.knots.invariants")

DEFAULT_W_SERIES_MAX = 6

# Conway coefficients a_2, a_4 need Δ(1 + h) up to h^4.
_BURAU_ORDER = 5

_T = sympy.Symbol("t")
_H = sympy.Symbol("h")

Matching = Tuple[int, ...]


# ================================================================
# MODELS
# ================================================================

class Battery(BraidsBaseModel):
    """The invariants compared by every equivalence check; knot-only fields are None for links."""

    components: int
    jones: LaurentPoly
    alexander: Optional[LaurentPoly] = None
    conway: Optional[Tuple[int, ...]] = None
    determinant: Optional[int] = None
    w2: Optional[Fraction] = None
    w3: Optional[Fraction] = None

    def conway_coefficient(self, degree: int) -> int:
        if self.conway is None:
            raise BraidError("NOT_A_KNOT", "Conway coefficients are only computed for knots")
        return self.conway[degree] if degree < len(self.conway) else 0


class FiniteTypeProbe(BraidsBaseModel):
    """Low-order additive and Conway coefficients of a knot."""

    w2: Fraction
    w3: Fraction
    a2: int
    a3: int = 0
    a4: int

    @property
    def fingerprint(self) -> Tuple[str, ...]:
        return tuple(str(value) for value in (self.w2, self.w3, self.a2, self.a3, self.a4))


# ================================================================
# TEMPERLEY–LIEB STATES
# ================================================================
# A state is a perfect matching of 2k points: 0..k-1 on top, k..2k-1 on the
# bottom. The identity braid pairs top j with bottom k + j.

def _identity_matching(k: int) -> Matching:
    return tuple(list(range(k, 2 * k)) + list(range(k)))


def _times_e(matching: Matching, p: int, q: int) -> Tuple[Matching, bool]:
    """Right-multiply by e on bottom points p, q; the flag reports a closed loop."""
    if matching[p] == q:
        return matching, True
    a, b = matching[p], matching[q]
    result = list(matching)
    result[a], result[b] = b, a
    result[p], result[q] = q, p
    return tuple(result), False


def _closure_loops(matching: Matching, k: int) -> int:
    """Loops formed by joining top j to bottom k + j."""
    seen = [False] * (2 * k)
    loops = 0
    for start in range(2 * k):
        if seen[start]:
            continue
        loops += 1
        point = start
        while not seen[point]:
            seen[point] = True
            partner = matching[point]
            seen[partner] = True
            point = partner - k if partner >= k else partner + k
    return loops


# ================================================================
# JONES POLYNOMIAL
# ================================================================

def _add_shifted(target: Dict[int, int], source: Dict[int, int], shift: int, factor: int = 1) -> None:
    for exponent, coefficient in source.items():
        key = exponent + shift
        value = target.get(key, 0) + factor * coefficient
        if value:
            target[key] = value
        else:
            target.pop(key, None)


def _times_delta(poly: Dict[int, int]) -> Dict[int, int]:
    result: Dict[int, int] = {}
    _add_shifted(result, poly, 2, -1)
    _add_shifted(result, poly, -2, -1)
    return result


def _accumulate(states: Dict[Matching, Dict[int, int]], matching: Matching, poly: Dict[int, int], shift: int) -> None:
    target = states.setdefault(matching, {})
    _add_shifted(target, poly, shift)
    if not target:
        del states[matching]


def kauffman_bracket(b: BraidWord) -> Dict[int, int]:
    """⟨cl(b)⟩ as exponent of A → coefficient, normalized to 1 on a single loop."""
    k = b.strands
    states: Dict[Matching, Dict[int, int]] = {_identity_matching(k): {0: 1}}
    for letter in b.letters:
        p = k + abs(letter) - 1
        identity_shift = 1 if letter > 0 else -1
        updated: Dict[Matching, Dict[int, int]] = {}
        for matching, poly in states.items():
            _accumulate(updated, matching, poly, identity_shift)
            smoothed, closed = _times_e(matching, p, p + 1)
            _accumulate(updated, smoothed, _times_delta(poly) if closed else poly, -identity_shift)
        states = updated

    bracket: Dict[int, int] = {}
    for matching, poly in states.items():
        term = poly
        for _ in range(_closure_loops(matching, k) - 1):
            term = _times_delta(term)
        _add_shifted(bracket, term, 0)
    return bracket


def jones_of_word(b: BraidWord) -> LaurentPoly:
    bracket = kauffman_bracket(b)
    writhe = b.exponent_sum
    sign = -1 if writhe % 2 else 1
    # V = (−A³)^{-w} ⟨K⟩ and A = t^{-1/4}: A^e becomes t^{-e/4}.
    return LaurentPoly.build(((-(e - 3 * writhe), sign * c) for e, c in bracket.items()), scale=4)


def jones(d: Diagram) -> LaurentPoly:
    """Jones polynomial of the diagram's braid closure, 1 on the unknot."""
    return jones_of_word(d.word)


# ================================================================
# w_m: LOG-JONES COEFFICIENTS
# ================================================================

def _series_mul(left: Sequence, right: Sequence, order: int) -> List:
    result = [0] * (order + 1)
    for i, a in enumerate(left[: order + 1]):
        if a:
            for j, b in enumerate(right[: order + 1 - i]):
                result[i + j] += a * b
    return result


def _series_log(series: Sequence[Fraction], order: int) -> List[Fraction]:
    """log f for f_0 = 1."""
    if series[0] != 1:
        raise BraidError("NOT_A_KNOT", f"log-Jones needs J(1) = 1, got {series[0]}")
    logs = [Fraction(0)] * (order + 1)
    for n in range(1, order + 1):
        total = Fraction(series[n])
        for j in range(1, n):
            total -= Fraction(j, n) * logs[j] * series[n - j]
        logs[n] = total
    return logs


def _binomial_series(exponent: int, order: int) -> List[int]:
    """(1 + u)^exponent truncated after u^order."""
    coefficients = [1]
    for n in range(1, order + 1):
        coefficients.append(coefficients[-1] * (exponent - n + 1) // n)
    return coefficients


def _bracket_series(b: BraidWord, order: int) -> List[int]:
    """⟨cl(b)⟩ at A = 1 + u as integer coefficients of u^0..u^order."""
    k = b.strands
    a_inverse = [(-1) ** n for n in range(order + 1)]
    delta = [-(x + y) for x, y in zip(_binomial_series(2, order), _binomial_series(-2, order))]
    up, down = [1, 1], a_inverse

    states: Dict[Matching, List[int]] = {_identity_matching(k): [1] + [0] * order}
    for letter in b.letters:
        p = k + abs(letter) - 1
        keep, smooth = (up, down) if letter > 0 else (down, up)
        updated: Dict[Matching, List[int]] = {}
        for matching, series in states.items():
            kept = _series_mul(series, keep, order)
            current = updated.setdefault(matching, [0] * (order + 1))
            updated[matching] = [x + y for x, y in zip(current, kept)]
            smoothed, closed = _times_e(matching, p, p + 1)
            added = _series_mul(series, smooth, order)
            if closed:
                added = _series_mul(added, delta, order)
            current = updated.setdefault(smoothed, [0] * (order + 1))
            updated[smoothed] = [x + y for x, y in zip(current, added)]
        states = {m: s for m, s in updated.items() if any(s)}

    bracket = [0] * (order + 1)
    for matching, series in states.items():
        term = series
        for _ in range(_closure_loops(matching, k) - 1):
            term = _series_mul(term, delta, order)
        bracket = [x + y for x, y in zip(bracket, term)]
    return bracket


@lru_cache(maxsize=16)
def _u_powers(order: int) -> Tuple[Tuple[Fraction, ...], ...]:
    """Powers of u(x) = e^{-x/4} − 1 as series in x."""
    u = [Fraction(0)] + [Fraction(-1, 4) ** n / factorial(n) for n in range(1, order + 1)]
    powers = [[Fraction(1)] + [Fraction(0)] * order]
    for _ in range(order):
        powers.append(_series_mul(powers[-1], u, order))
    return tuple(tuple(p) for p in powers)


def w_series_of_word(b: BraidWord, mmax: int = DEFAULT_W_SERIES_MAX) -> List[Fraction]:
    """w_0..w_mmax from the truncated bracket series; exact rationals."""
    writhe = b.exponent_sum
    bracket = _bracket_series(b, mmax)
    sign = -1 if writhe % 2 else 1
    normalizer = [sign * c for c in _binomial_series(-3 * writhe, mmax)]
    v_of_u = _series_mul(bracket, normalizer, mmax)
    powers = _u_powers(mmax)
    j_of_x = [Fraction(0)] * (mmax + 1)
    for degree, coefficient in enumerate(v_of_u):
        if coefficient:
            for n in range(mmax + 1):
                j_of_x[n] += coefficient * powers[degree][n]
    return _series_log(j_of_x, mmax)


def w_series(d: Diagram, mmax: int = DEFAULT_W_SERIES_MAX) -> List[Fraction]:
    """Coefficients of x^m in log V(e^x), m = 0..mmax."""
    if not d.is_knot:
        raise BraidError("NOT_A_KNOT", f"w_series needs a knot, the closure has {d.component_count} components")
    return w_series_of_word(d.word, mmax)


def w_series_from_jones(polynomial: LaurentPoly, mmax: int = DEFAULT_W_SERIES_MAX) -> List[Fraction]:
    """The same coefficients read off an already computed Jones polynomial."""
    series = []
    for m in range(mmax + 1):
        total = Fraction(0)
        for exponent, coefficient in polynomial.sorted_terms():
            total += coefficient * exponent ** m
        series.append(total / factorial(m))
    return _series_log(series, mmax)


# ================================================================
# ALEXANDER AND CONWAY
# ================================================================

def _burau_columns(b: BraidWord, one, t, t_inverse, add, mul, zero) -> List[List]:
    """Reduced Burau matrix of b, as a list of columns, over any coefficient ring."""
    size = b.strands - 1
    columns = [[one if r == c else zero for r in range(size)] for c in range(size)]
    for letter in b.letters:
        c = abs(letter) - 1
        if letter > 0:
            weights = ((c - 1, t), (c, mul(t, -1)), (c + 1, one))
        else:
            weights = ((c - 1, one), (c, mul(t_inverse, -1)), (c + 1, t_inverse))
        column = [zero] * size
        for source, weight in weights:
            if 0 <= source < size:
                column = [add(x, mul(y, weight)) for x, y in zip(column, columns[source])]
        columns[c] = column
    return columns


def _laurent_mul(x, y):
    if isinstance(y, int):
        return {e: c * y for e, c in x.items()}
    result: Dict[int, int] = {}
    for e1, c1 in x.items():
        _add_shifted(result, y, e1, c1)
    return result


def _laurent_add(x, y):
    result = dict(x)
    _add_shifted(result, y, 0)
    return result


def _cyclotomic(k: int):
    return sum((_T ** j for j in range(k)), sympy.Integer(0))


def _normalize_alexander(polynomial: LaurentPoly) -> LaurentPoly:
    symmetric = polynomial.symmetrized()
    value = symmetric.evaluate(1)
    if abs(value) != 1:
        raise BraidError("INCONSISTENT_DATA", f"Alexander polynomial has Δ(1) = {value}")
    return symmetric * int(value)


def alexander_polynomial(b: BraidWord) -> LaurentPoly:
    """Δ(t) of a knot closure via the reduced Burau determinant."""
    _require_knot(b)
    k = b.strands
    if k == 1:
        return LaurentPoly.constant(1)
    columns = _burau_columns(b, {0: 1}, {1: 1}, {-1: 1}, _laurent_add, _laurent_mul, {})
    size = k - 1
    lowest = min((e for column in columns for entry in column for e in entry), default=0)
    offset = max(0, -lowest)
    matrix = sympy.zeros(size, size)
    for c, column in enumerate(columns):
        for r, entry in enumerate(column):
            value = (_T ** offset if r == c else 0) - sum((coef * _T ** (e + offset) for e, coef in entry.items()), 0)
            matrix[r, c] = sympy.expand(value)
    determinant = sympy.expand(matrix.det(method="berkowitz"))
    quotient, remainder = sympy.div(sympy.Poly(determinant, _T), sympy.Poly(_cyclotomic(k), _T))
    if not remainder.is_zero:
        raise BraidError("INCONSISTENT_DATA", f"det(I − B) of {b.text} is not divisible by Φ_{k}")
    return _normalize_alexander(LaurentPoly.from_sympy(quotient.as_expr(), _T))


def conway_from_alexander(polynomial: LaurentPoly) -> Tuple[int, ...]:
    """Coefficients of ∇(z) by z-degree, using t^j + t^{-j} as a polynomial in z² + 2."""
    top = int(polynomial.max_exponent) if polynomial.terms else 0
    # chebyshev[j] holds t^j + t^{-j} as coefficients of (z²)^0, (z²)^1, ...
    chebyshev = [[2], [2, 1]]
    for _ in range(2, top + 1):
        previous, current = chebyshev[-2], chebyshev[-1]
        shifted = [0] + current
        doubled = [2 * x for x in current] + [0]
        chebyshev.append([s + d - (previous[i] if i < len(previous) else 0) for i, (s, d) in enumerate(zip(shifted, doubled))])
    in_q = [polynomial.coefficient(0)] + [0] * top
    for j in range(1, top + 1):
        for i, value in enumerate(chebyshev[j]):
            in_q[i] += polynomial.coefficient(j) * value
    while len(in_q) > 1 and in_q[-1] == 0:
        in_q.pop()
    conway = [0] * (2 * len(in_q) - 1)
    for i, value in enumerate(in_q):
        conway[2 * i] = value
    return tuple(conway)


def alexander_conway(b: BraidWord) -> Tuple[LaurentPoly, Tuple[int, ...]]:
    polynomial = alexander_polynomial(b)
    return polynomial, conway_from_alexander(polynomial)


def determinant(b: BraidWord) -> int:
    """|Δ(−1)|."""
    return abs(int(alexander_polynomial(b).evaluate(-1)))


def _truncated(series: np.ndarray) -> np.ndarray:
    return series[:_BURAU_ORDER]


def _series_times(x: np.ndarray, y) -> np.ndarray:
    if isinstance(y, int):
        return x * y
    result = np.array([0] * _BURAU_ORDER, dtype=object)
    for i in range(_BURAU_ORDER):
        for j in range(_BURAU_ORDER - i):
            result[i + j] += x[i] * y[j]
    return result


def conway_probe(b: BraidWord) -> Tuple[int, int, int]:
    """(a_2, a_3, a_4) of a knot from Burau over t = 1 + h truncated after h^4."""
    _require_knot(b)
    k = b.strands
    if k == 1:
        return 0, 0, 0
    order = _BURAU_ORDER

    def constant(value: int) -> np.ndarray:
        return np.array([value] + [0] * (order - 1), dtype=object)

    t = np.array([1, 1] + [0] * (order - 2), dtype=object)
    t_inverse = np.array([(-1) ** n for n in range(order)], dtype=object)
    columns = _burau_columns(
        b, constant(1), t, t_inverse, lambda x, y: x + y, _series_times, constant(0)
    )

    size = k - 1
    matrix = sympy.zeros(size, size)
    for c, column in enumerate(columns):
        for r, entry in enumerate(column):
            value = (1 if r == c else 0) - sum((int(coef) * _H ** n for n, coef in enumerate(entry)), 0)
            matrix[r, c] = sympy.expand(value)
    determinant_poly = sympy.Poly(sympy.expand(matrix.det(method="berkowitz")), _H)
    det_series = [Fraction(int(determinant_poly.coeff_monomial(_H ** n))) for n in range(order)]

    cyclotomic = [Fraction(0)] * order
    for j in range(k):
        for n, value in enumerate(_binomial_series(j, order - 1)):
            cyclotomic[n] += value
    g = [Fraction(0)] * order
    for n in range(order):
        g[n] = (det_series[n] - sum(g[i] * cyclotomic[n - i] for i in range(n))) / cyclotomic[0]

    epsilon = g[0]
    if abs(epsilon) != 1 or (g[1] / epsilon).denominator != 1:
        raise BraidError("INCONSISTENT_DATA", f"Burau series of {b.text} does not normalize: {g[:2]}")
    shift = int(g[1] / epsilon)
    unit = [Fraction(c) for c in _binomial_series(-shift, order - 1)]
    symmetric = [epsilon * x for x in _series_mul(unit, g, order - 1)]
    # Δ(1 + h) = a_0 + a_2 (h² − h³ + h⁴) + a_4 h⁴ + O(h⁵)
    a2 = symmetric[2]
    a4 = symmetric[4] - a2
    return int(a2), 0, int(a4)


# ================================================================
# STRAND LINKING
# ================================================================

def strand_linking(p: BraidWord) -> np.ndarray:
    """Entry (i-1, j-1), i < j, is the linking number of strands i and j."""
    require_pure(p)
    k = p.strands
    counts = np.zeros((k, k), dtype=np.int64)
    for left, right, sign in crossing_strands(p):
        counts[min(left, right) - 1, max(left, right) - 1] += sign
    return counts // 2


# ================================================================
# AGGREGATES
# ================================================================

def _component_count(b: BraidWord) -> int:
    return len(permutation_of(b).cycles())


def _require_knot(b: BraidWord) -> None:
    count = _component_count(b)
    if count != 1:
        raise BraidError("NOT_A_KNOT", f"The closure of {b.text} has {count} components", {"components": count})


def battery(b: BraidWord) -> Battery:
    components = _component_count(b)
    polynomial = jones_of_word(b)
    if components != 1:
        return Battery(components=components, jones=polynomial)
    alexander, conway = alexander_conway(b)
    w = w_series_from_jones(polynomial, 3)
    logger.debug(f"Battery of {b.length} letters in B_{b.strands}: jones={polynomial.text}")
    return Battery(
        components=1,
        jones=polynomial,
        alexander=alexander,
        conway=conway,
        determinant=abs(int(alexander.evaluate(-1))),
        w2=w[2],
        w3=w[3],
    )


def finite_type_probe(b: BraidWord) -> FiniteTypeProbe:
    """w_2, w_3, a_2, a_3, a_4 through the truncated-series paths."""
    _require_knot(b)
    w = w_series_of_word(b, 3)
    a2, a3, a4 = conway_probe(b)
    return FiniteTypeProbe(w2=w[2], w3=w[3], a2=a2, a3=a3, a4=a4)
